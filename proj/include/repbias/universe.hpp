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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repbias {

// One firm in the audited universe.
struct FirmRecord {
  std::string ticker;    // short uppercase identifier, unique, no whitespace
  std::string name;      // display name used inside prompts
  std::string sector;    // GICS-style sector label
  std::string industry;  // GICS-style industry label; one sector per industry
};

// Firm x month x feature panel of raw or standardized values. Cells are
// either finite or explicitly missing; the storage sentinel never escapes
// through the public accessors.
class FeaturePanel {
 public:
  FeaturePanel() = default;
  FeaturePanel(std::vector<std::string> tickers, std::vector<std::string> months,
               std::vector<std::string> features);

  const std::vector<std::string>& tickers() const { return tickers_; }
  const std::vector<std::string>& months() const { return months_; }
  const std::vector<std::string>& features() const { return features_; }

  std::optional<size_t> firm_index(std::string_view ticker) const;
  std::optional<size_t> feature_index(std::string_view feature) const;

  std::optional<double> value(size_t firm, size_t month, size_t feature) const;
  bool is_missing(size_t firm, size_t month, size_t feature) const;
  void set(size_t firm, size_t month, size_t feature, double v);
  void set_missing(size_t firm, size_t month, size_t feature);

  size_t n_firms() const { return tickers_.size(); }
  size_t n_months() const { return months_.size(); }
  size_t n_features() const { return features_.size(); }

 private:
  size_t idx(size_t f, size_t m, size_t k) const {
    return (f * months_.size() + m) * features_.size() + k;
  }
  std::vector<std::string> tickers_, months_, features_;
  std::map<std::string, size_t, std::less<>> ticker_idx_, feature_idx_;
  std::vector<double> values_;
  std::vector<uint8_t> present_;
};

// Feature -> group labels and prompt-category -> feature lists.
struct FeatureTaxonomy {
  std::map<std::string, std::string> groups;
  std::map<std::string, std::vector<std::string>> categories;

  // Group label for a feature, or "-" when the feature is ungrouped.
  std::string group_of(const std::string& feature) const;
};

struct Universe {
  std::vector<FirmRecord> firms;
  FeaturePanel panel;
  FeatureTaxonomy taxonomy;

  const FirmRecord* find(std::string_view ticker) const;
  const FirmRecord& require(std::string_view ticker) const;
};

struct UniversePaths {
  std::string firms_csv;
  std::string panel_csv;
  std::string taxonomy_json;
};

// Loads and validates the three input files. Throws DataError naming the
// offending entity (duplicate ticker, unknown category feature, malformed
// cell with line number).
Universe load_universe(const UniversePaths& paths);

// Validates an in-memory universe (same checks load_universe applies).
void validate_universe(const Universe& u);

// Cross-sectional z-scores per (month, feature) over non-missing firms,
// sample (n-1) standard deviation. Columns with fewer than two non-missing
// firms or zero variance standardize to all-missing.
FeaturePanel standardize_panel(const FeaturePanel& panel);

enum class ProfileReducer { kMean, kLastMonth, kSpecificMonth };

// Collapses a (standardized) panel to one value per (firm, feature).
// kMean: arithmetic mean over non-missing months. kLastMonth: last
// non-missing month. kSpecificMonth: exactly `month`, missing if absent.
// Throws DataError for an unknown ticker.
std::vector<std::optional<double>> firm_profile(const FeaturePanel& panel, std::string_view ticker,
                                                ProfileReducer reducer = ProfileReducer::kMean,
                                                std::string_view month = {});

// Per-firm profiles for the whole panel, indexed [firm][feature].
std::vector<std::vector<std::optional<double>>> profile_matrix(
    const FeaturePanel& panel, ProfileReducer reducer = ProfileReducer::kMean,
    std::string_view month = {});

// The default taxonomy shipped with the tool (also data/taxonomy.json).
FeatureTaxonomy default_taxonomy();

// Deterministic synthetic universe used by tests and the `simulate` demo:
// n_firms firms cycled over the eight shipped sectors with consistent
// industries, and a seeded panel covering every taxonomy feature.
Universe synthetic_universe(int n_firms, int n_months, uint64_t seed);

// Writes a universe to the on-disk CSV/JSON formats read by load_universe.
void write_universe(const Universe& u, const UniversePaths& paths);

}  // namespace repbias
