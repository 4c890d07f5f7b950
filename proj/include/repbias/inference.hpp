// Copyright 2026 The repbias Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "repbias/protocol.hpp"

namespace repbias {

// Log-likelihood of one candidate ticker as the forced continuation of a
// prompt: the sum of its sub-token logprobs (natural log).
struct CandidateScore {
  std::string ticker;
  std::vector<std::pair<std::string, double>> subtoken_logprobs;
  double total_logprob = 0.0;
};

// Outcome of one scored comparison. `confidence` is the two-way softmax
// probability of the chosen side, so it is always >= 0.5 and the unchosen
// side's confidence is exactly 1 - confidence.
struct ComparisonRecord {
  std::string task_key;
  std::string firm_a, firm_b;
  std::string category;
  int variant = 1;
  int order = 1;
  int rep = 1;
  std::string chosen;
  double confidence = 0.5;
  CandidateScore score_first, score_second;
  std::string backend_id, model_id;
  std::string ts;  // ISO-8601 UTC

  double l_first() const { return score_first.total_logprob; }
  double l_second() const { return score_second.total_logprob; }
};

// Two-way softmax over summed token logprobs: p_i = e^{l_i}/(e^{l_i}+e^{l_j})
// evaluated in the overflow-safe form. Guarantees p_i + p_j == 1 exactly and
// pair_confidence(a, b) == swap(pair_confidence(b, a)) exactly.
std::pair<double, double> pair_confidence(double l_i, double l_j);

// A model that can score both sides of a comparison. Implementations must be
// safe for concurrent score_pair calls up to the configured parallelism.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  virtual std::string id() const = 0;
  virtual std::string model_id() const = 0;
  // Scores the task's first- and second-listed tickers as forced
  // continuations of the rendered prompt.
  virtual std::pair<CandidateScore, CandidateScore> score_pair(const ComparisonTask& task) = 0;
  // Deterministic backends get a fixed record timestamp so identical runs
  // produce byte-identical stores.
  virtual bool deterministic() const { return false; }
};

// Applies the backend to one task: scores both candidates, normalizes with
// pair_confidence, picks the argmax (exact ties go to the lexicographically
// smaller ticker). Restricting scoring to the two candidates realizes the
// two-way grammar constraint.
ComparisonRecord score_task(const ComparisonTask& task, ModelBackend& backend);

class ResultStore;

struct RunSummary {
  size_t completed = 0;
  size_t skipped = 0;
  size_t failed = 0;
};

struct RunOptions {
  int parallelism = 1;
  // Tasks are scored in chunks of chunk_size * parallelism and appended in
  // schedule order, so an interrupted run leaves a resumable prefix.
  int chunk_size = 64;
  // Stop after roughly this many new records (0 = no limit). Used for smoke
  // runs and for exercising resume.
  size_t max_new_records = 0;
  int retries = 3;
  double retry_base_delay_s = 1.0;  // 1s, 2s, 4s by default
};

// Executes every task not already present in the store (resume by task_key).
// Transport errors are retried with exponential backoff; a task that still
// fails is written to the store's error sidecar and counted as failed.
RunSummary run_batch(const std::vector<ComparisonTask>& tasks, ModelBackend& backend,
                     ResultStore& store, const RunOptions& options);

}  // namespace repbias
