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

#include <cstdint>
#include <string>
#include <vector>

#include "repbias/universe.hpp"

namespace repbias {

// One prompt phrasing for one category. `text` must contain {company1} and
// {company2} exactly once each and end with the fixed answer instruction.
struct PromptTemplate {
  std::string category;
  int variant = 1;
  std::string text;
};

inline constexpr const char* kAnswerInstruction = "Answer with only the ticker symbol.";

// One scheduled pairwise query. The unordered pair is stored with
// firm_a < firm_b; `order` selects which of the two fills {company1}.
struct ComparisonTask {
  std::string task_key;  // stable hash of (firm_a, firm_b, category, variant, order, rep)
  std::string firm_a;
  std::string firm_b;
  std::string category;
  int variant = 1;
  int order = 1;  // 1: firm_a first, 2: firm_b first
  int rep = 1;
  std::string rendered_prompt;

  const std::string& first_ticker() const { return order == 1 ? firm_a : firm_b; }
  const std::string& second_ticker() const { return order == 1 ? firm_b : firm_a; }
};

struct ScheduleParams {
  std::vector<std::string> categories;
  int variants = 2;
  int orders = 2;
  int reps = 3;
  uint64_t seed = 0;
};

// Pure function of the task coordinates; 16 hex digits.
std::string make_task_key(const std::string& firm_a, const std::string& firm_b,
                          const std::string& category, int variant, int order, int rep);

// Substitutes {company1}/{company2} with the firms' display names. Throws
// ConfigError if a placeholder is absent or duplicated.
std::string render_prompt(const PromptTemplate& tmpl, const FirmRecord& first,
                          const FirmRecord& second);

// Throws ConfigError if the template violates the placeholder or trailing
// instruction invariants.
void validate_template(const PromptTemplate& tmpl);

// Full balanced cross product: every unordered pair once per
// (category, variant, order, rep) cell, then a seeded deterministic shuffle.
// Each firm appears in (n-1) * k * v * o * r tasks.
std::vector<ComparisonTask> build_schedule(const std::vector<FirmRecord>& firms,
                                           const std::vector<PromptTemplate>& templates,
                                           const ScheduleParams& params);

// Shipped prompt set: the two generic `baseline` phrasings plus the nine
// category prompts, each in both phrasings.
std::vector<PromptTemplate> default_templates();

// The nine category labels (excluding `baseline`), in shipped order.
std::vector<std::string> default_categories();

// Templates file: JSON array of {category, variant, text}.
std::vector<PromptTemplate> load_templates(const std::string& path);
void write_templates(const std::vector<PromptTemplate>& templates, const std::string& path);

// JSONL dump of a schedule for audit, one task per line.
void dump_schedule(const std::vector<ComparisonTask>& tasks, const std::string& path);

}  // namespace repbias
