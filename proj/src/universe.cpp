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

#include "repbias/universe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "repbias/csv.hpp"
#include "repbias/errors.hpp"
#include "repbias/rng.hpp"

namespace repbias {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool valid_month(const std::string& m) {
  if (m.size() != 7 || m[4] != '-') return false;
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u})
    if (!std::isdigit(static_cast<unsigned char>(m[i]))) return false;
  int mm = (m[5] - '0') * 10 + (m[6] - '0');
  return mm >= 1 && mm <= 12;
}

bool has_whitespace(const std::string& s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

FeaturePanel::FeaturePanel(std::vector<std::string> tickers, std::vector<std::string> months,
                           std::vector<std::string> features)
    : tickers_(std::move(tickers)), months_(std::move(months)), features_(std::move(features)) {
  for (size_t i = 0; i < tickers_.size(); ++i) ticker_idx_.emplace(tickers_[i], i);
  for (size_t i = 0; i < features_.size(); ++i) feature_idx_.emplace(features_[i], i);
  if (feature_idx_.size() != features_.size()) throw DataError("panel feature names are not unique");
  if (ticker_idx_.size() != tickers_.size()) throw DataError("panel tickers are not unique");
  values_.assign(tickers_.size() * months_.size() * features_.size(), kMissing);
  present_.assign(values_.size(), 0);
}

std::optional<size_t> FeaturePanel::firm_index(std::string_view ticker) const {
  auto it = ticker_idx_.find(ticker);
  if (it == ticker_idx_.end()) return std::nullopt;
  return it->second;
}

std::optional<size_t> FeaturePanel::feature_index(std::string_view feature) const {
  auto it = feature_idx_.find(feature);
  if (it == feature_idx_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> FeaturePanel::value(size_t firm, size_t month, size_t feature) const {
  size_t i = idx(firm, month, feature);
  if (!present_[i]) return std::nullopt;
  return values_[i];
}

bool FeaturePanel::is_missing(size_t firm, size_t month, size_t feature) const {
  return !present_[idx(firm, month, feature)];
}

void FeaturePanel::set(size_t firm, size_t month, size_t feature, double v) {
  if (!std::isfinite(v)) throw DataError("panel cell must be finite");
  size_t i = idx(firm, month, feature);
  values_[i] = v;
  present_[i] = 1;
}

void FeaturePanel::set_missing(size_t firm, size_t month, size_t feature) {
  size_t i = idx(firm, month, feature);
  values_[i] = kMissing;
  present_[i] = 0;
}

std::string FeatureTaxonomy::group_of(const std::string& feature) const {
  auto it = groups.find(feature);
  return it == groups.end() ? "-" : it->second;
}

const FirmRecord* Universe::find(std::string_view ticker) const {
  for (const auto& f : firms)
    if (f.ticker == ticker) return &f;
  return nullptr;
}

const FirmRecord& Universe::require(std::string_view ticker) const {
  const FirmRecord* f = find(ticker);
  if (!f) throw DataError("unknown ticker: " + std::string(ticker));
  return *f;
}

namespace {

std::vector<FirmRecord> load_firms_csv(const std::string& path) {
  auto rows = csv::read_file(path);
  if (rows.empty()) throw DataError(path + ": empty universe file");
  const std::vector<std::string> expected = {"ticker", "name", "sector", "industry"};
  if (rows[0].fields != expected)
    throw DataError(path + ":1: expected header ticker,name,sector,industry");
  std::vector<FirmRecord> firms;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.fields.size() != 4)
      throw DataError(path + ":" + std::to_string(r.line) + ": expected 4 fields, got " +
                      std::to_string(r.fields.size()));
    firms.push_back({r.fields[0], r.fields[1], r.fields[2], r.fields[3]});
  }
  return firms;
}

FeaturePanel load_panel_csv(const std::string& path, const std::vector<FirmRecord>& firms) {
  auto rows = csv::read_file(path);
  if (rows.empty()) throw DataError(path + ": empty panel file");
  const std::vector<std::string> expected = {"ticker", "month", "feature", "value"};
  if (rows[0].fields != expected)
    throw DataError(path + ":1: expected header ticker,month,feature,value");

  std::set<std::string> known_tickers;
  for (const auto& f : firms) known_tickers.insert(f.ticker);

  // First pass fixes the ordered month and feature axes (first-seen order for
  // features, sorted months).
  std::set<std::string> months;
  std::vector<std::string> features;
  std::set<std::string> feature_seen;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.fields.size() != 4)
      throw DataError(path + ":" + std::to_string(r.line) + ": expected 4 fields, got " +
                      std::to_string(r.fields.size()));
    if (!known_tickers.count(r.fields[0]))
      throw DataError(path + ":" + std::to_string(r.line) + ": panel ticker \"" + r.fields[0] +
                      "\" not in universe");
    if (!valid_month(r.fields[1]))
      throw DataError(path + ":" + std::to_string(r.line) + ": bad month \"" + r.fields[1] +
                      "\" (want YYYY-MM)");
    months.insert(r.fields[1]);
    if (feature_seen.insert(r.fields[2]).second) features.push_back(r.fields[2]);
  }

  std::vector<std::string> tickers;
  for (const auto& f : firms) tickers.push_back(f.ticker);
  FeaturePanel panel(tickers, std::vector<std::string>(months.begin(), months.end()), features);

  std::map<std::string, size_t> month_idx;
  for (size_t i = 0; i < panel.months().size(); ++i) month_idx[panel.months()[i]] = i;

  std::set<std::tuple<size_t, size_t, size_t>> filled;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    size_t fi = *panel.firm_index(r.fields[0]);
    size_t mi = month_idx.at(r.fields[1]);
    size_t ki = *panel.feature_index(r.fields[2]);
    if (!filled.insert({fi, mi, ki}).second)
      throw DataError(path + ":" + std::to_string(r.line) + ": duplicate cell (" + r.fields[0] +
                      ", " + r.fields[1] + ", " + r.fields[2] + ")");
    if (r.fields[3].empty()) continue;  // explicit missing
    double v;
    try {
      size_t pos = 0;
      v = std::stod(r.fields[3], &pos);
      if (pos != r.fields[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(r.line) + ": bad value \"" + r.fields[3] + "\"");
    }
    if (!std::isfinite(v))
      throw DataError(path + ":" + std::to_string(r.line) + ": non-finite value");
    panel.set(fi, mi, ki, v);
  }
  return panel;
}

FeatureTaxonomy load_taxonomy_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open taxonomy file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  FeatureTaxonomy t;
  if (!j.contains("groups") || !j.contains("categories"))
    throw DataError(path + ": taxonomy needs \"groups\" and \"categories\" objects");
  for (auto& [k, v] : j.at("groups").items()) t.groups[k] = v.get<std::string>();
  for (auto& [k, v] : j.at("categories").items())
    t.categories[k] = v.get<std::vector<std::string>>();
  return t;
}

}  // namespace

void validate_universe(const Universe& u) {
  std::set<std::string> seen;
  std::map<std::string, std::string> industry_sector;
  for (const auto& f : u.firms) {
    if (f.ticker.empty()) throw DataError("firm with empty ticker (name: \"" + f.name + "\")");
    if (has_whitespace(f.ticker))
      throw DataError("ticker \"" + f.ticker + "\" contains whitespace");
    if (!seen.insert(f.ticker).second)
      throw DataError("duplicate ticker \"" + f.ticker + "\" in universe");
    if (f.sector.empty() || f.industry.empty())
      throw DataError("firm \"" + f.ticker + "\" has empty sector or industry");
    auto [it, inserted] = industry_sector.emplace(f.industry, f.sector);
    if (!inserted && it->second != f.sector)
      throw DataError("industry \"" + f.industry + "\" maps to both sector \"" + it->second +
                      "\" and \"" + f.sector + "\"");
  }

  const auto& have = u.panel.features();
  std::set<std::string> feature_set(have.begin(), have.end());
  static const std::vector<std::string> kMapped = {"Fundamental", "Growth", "Risk", "Technical"};
  std::vector<std::string> cat_names;
  for (const auto& [name, features] : u.taxonomy.categories) {
    cat_names.push_back(name);
    for (const auto& f : features)
      if (!feature_set.count(f))
        throw DataError("taxonomy category \"" + name + "\" lists feature \"" + f +
                        "\" absent from the panel");
  }
  if (cat_names != kMapped)
    throw DataError(
        "taxonomy categories must be exactly Fundamental, Growth, Risk, Technical");
}

Universe load_universe(const UniversePaths& paths) {
  Universe u;
  u.firms = load_firms_csv(paths.firms_csv);
  u.panel = load_panel_csv(paths.panel_csv, u.firms);
  u.taxonomy = load_taxonomy_json(paths.taxonomy_json);
  validate_universe(u);
  return u;
}

FeaturePanel standardize_panel(const FeaturePanel& panel) {
  FeaturePanel out(panel.tickers(), panel.months(), panel.features());
  const size_t nf = panel.n_firms(), nm = panel.n_months(), nk = panel.n_features();
  for (size_t m = 0; m < nm; ++m) {
    for (size_t k = 0; k < nk; ++k) {
      double sum = 0.0;
      size_t n = 0;
      for (size_t f = 0; f < nf; ++f) {
        if (auto v = panel.value(f, m, k)) {
          sum += *v;
          ++n;
        }
      }
      if (n < 2) continue;  // column stays all-missing
      double mean = sum / static_cast<double>(n);
      double ss = 0.0;
      for (size_t f = 0; f < nf; ++f) {
        if (auto v = panel.value(f, m, k)) {
          double d = *v - mean;
          ss += d * d;
        }
      }
      double sd = std::sqrt(ss / static_cast<double>(n - 1));
      if (sd == 0.0) continue;  // constant cross-section carries no ranking signal
      for (size_t f = 0; f < nf; ++f) {
        if (auto v = panel.value(f, m, k)) out.set(f, m, k, (*v - mean) / sd);
      }
    }
  }
  return out;
}

std::vector<std::optional<double>> firm_profile(const FeaturePanel& panel, std::string_view ticker,
                                                ProfileReducer reducer, std::string_view month) {
  auto fi = panel.firm_index(ticker);
  if (!fi) throw DataError("unknown ticker: " + std::string(ticker));
  const size_t nm = panel.n_months(), nk = panel.n_features();

  std::optional<size_t> month_i;
  if (reducer == ProfileReducer::kSpecificMonth) {
    for (size_t m = 0; m < nm; ++m)
      if (panel.months()[m] == month) month_i = m;
    if (!month_i) throw DataError("profile month \"" + std::string(month) + "\" not in panel");
  }

  std::vector<std::optional<double>> profile(nk);
  for (size_t k = 0; k < nk; ++k) {
    switch (reducer) {
      case ProfileReducer::kMean: {
        double sum = 0.0;
        size_t n = 0;
        for (size_t m = 0; m < nm; ++m) {
          if (auto v = panel.value(*fi, m, k)) {
            sum += *v;
            ++n;
          }
        }
        if (n > 0) profile[k] = sum / static_cast<double>(n);
        break;
      }
      case ProfileReducer::kLastMonth: {
        for (size_t m = nm; m-- > 0;) {
          if (auto v = panel.value(*fi, m, k)) {
            profile[k] = *v;
            break;
          }
        }
        break;
      }
      case ProfileReducer::kSpecificMonth:
        profile[k] = panel.value(*fi, *month_i, k);
        break;
    }
  }
  return profile;
}

std::vector<std::vector<std::optional<double>>> profile_matrix(const FeaturePanel& panel,
                                                               ProfileReducer reducer,
                                                               std::string_view month) {
  std::vector<std::vector<std::optional<double>>> out;
  out.reserve(panel.n_firms());
  for (const auto& t : panel.tickers()) out.push_back(firm_profile(panel, t, reducer, month));
  return out;
}

namespace {

// Sector -> industries mapping shipped with the tool; industries never span
// sectors so generated universes always satisfy the consistency invariant.
const std::vector<std::pair<std::string, std::vector<std::string>>>& sector_industries() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> kMap = {
      {"Communication Services", {"Entertainment", "Internet Content & Information"}},
      {"Consumer Cyclical", {"Restaurants", "Home Improvement Retail", "Lodging"}},
      {"Consumer Defensive",
       {"Packaged Foods", "Discount Stores", "Beverages - Non-Alcoholic",
        "Household & Personal Products", "Tobacco"}},
      {"Energy",
       {"Oil & Gas E&P", "Oil & Gas Integrated", "Oil & Gas Equipment & Services",
        "Oil & Gas Refining & Marketing"}},
      {"Financial Services",
       {"Banks - Diversified", "Banks - Regional", "Capital Markets", "Credit Services"}},
      {"Healthcare", {"Drug Manufacturers - General", "Diagnostics & Research", "Healthcare Plans"}},
      {"Industrials",
       {"Aerospace & Defense", "Farm & Heavy Construction Machinery",
        "Integrated Freight & Logistics", "Conglomerates"}},
      {"Technology", {"Semiconductors", "Software - Infrastructure"}},
  };
  return kMap;
}

}  // namespace

FeatureTaxonomy default_taxonomy() {
  FeatureTaxonomy t;
  const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
      {"Valuation Ratios",
       {"market_cap", "enterprise_value", "sharpe_ratio", "price_to_sales", "book_to_market",
        "ev_to_revenue", "price_to_book", "forward_pe"}},
      {"Financial Health",
       {"free_cash_flow", "quick_ratio", "current_ratio", "cash_per_share", "debt_to_equity"}},
      {"Profitability",
       {"gross_margin", "earnings_yield", "roa", "net_profit_margin", "operating_margin", "roe"}},
      {"Risk & Volatility",
       {"beta", "returns_1y", "volatility_1y", "returns_3m", "returns_6m", "volatility_3m",
        "volatility_6m", "max_drawdown"}},
      {"Market Structure",
       {"shares_outstanding", "float_shares", "avg_volume_3m", "volume_trend",
        "volume_sma_ratio"}},
      {"Technical Indicators", {"moving_avg_200d_ratio", "moving_avg_50d_ratio", "rsi"}},
      {"Growth Metrics", {"revenue_growth", "sustainable_growth_rate", "earnings_growth"}},
      {"Dividend Policy", {"dividend_yield", "dividend_payout_ratio"}},
  };
  for (const auto& [group, features] : groups)
    for (const auto& f : features) t.groups[f] = group;
  t.categories = {
      {"Fundamental",
       {"roe", "roa", "net_profit_margin", "operating_margin", "gross_margin", "revenue_growth",
        "earnings_growth", "debt_to_equity", "current_ratio", "quick_ratio", "free_cash_flow"}},
      {"Technical",
       {"returns_1y", "returns_6m", "returns_3m", "rsi", "moving_avg_50d_ratio",
        "moving_avg_200d_ratio", "price_vs_52w_high", "price_vs_52w_low", "volume_sma_ratio",
        "volume_trend", "avg_volume_3m"}},
      {"Risk",
       {"volatility_1y", "volatility_6m", "volatility_3m", "sharpe_ratio", "max_drawdown",
        "beta"}},
      {"Growth", {"revenue_growth", "earnings_growth", "sustainable_growth_rate"}},
  };
  return t;
}

Universe synthetic_universe(int n_firms, int n_months, uint64_t seed) {
  if (n_firms < 2) throw ConfigError("synthetic universe needs at least 2 firms");
  if (n_months < 1) throw ConfigError("synthetic universe needs at least 1 month");
  Universe u;
  u.taxonomy = default_taxonomy();

  const auto& sectors = sector_industries();
  for (int i = 0; i < n_firms; ++i) {
    FirmRecord f;
    char t0 = static_cast<char>('A' + (i / 26) % 26);
    char t1 = static_cast<char>('A' + i % 26);
    f.ticker = std::string{t0, t1, static_cast<char>('A' + (i / 676) % 26)};
    f.name = f.ticker + " Holdings";
    const auto& [sector, industries] = sectors[i % sectors.size()];
    f.sector = sector;
    f.industry = industries[(i / static_cast<int>(sectors.size())) % industries.size()];
    u.firms.push_back(std::move(f));
  }

  std::set<std::string> feature_set;
  for (const auto& [f, g] : u.taxonomy.groups) feature_set.insert(f);
  for (const auto& [c, fs] : u.taxonomy.categories) feature_set.insert(fs.begin(), fs.end());
  std::vector<std::string> features(feature_set.begin(), feature_set.end());

  std::vector<std::string> tickers;
  for (const auto& f : u.firms) tickers.push_back(f.ticker);
  std::vector<std::string> months;
  for (int m = 0; m < n_months; ++m) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", 2017 + m / 12, 1 + m % 12);
    months.emplace_back(buf);
  }

  u.panel = FeaturePanel(tickers, months, features);

  // Each firm carries a persistent per-feature level plus monthly noise, so
  // cross-sectional standardization and time-mean profiles behave like they
  // do on real panels.
  for (size_t f = 0; f < tickers.size(); ++f) {
    for (size_t k = 0; k < features.size(); ++k) {
      SplitMix64 firm_rng(mix64(seed, fnv1a64(tickers[f] + "|" + features[k])));
      double level = firm_rng.next_normal();
      for (size_t m = 0; m < months.size(); ++m) {
        double v = level + 0.25 * firm_rng.next_normal();
        u.panel.set(f, m, k, v);
      }
    }
  }
  validate_universe(u);
  return u;
}

void write_universe(const Universe& u, const UniversePaths& paths) {
  {
    std::ofstream out(paths.firms_csv, std::ios::binary);
    if (!out) throw DataError("cannot write " + paths.firms_csv);
    out << "ticker,name,sector,industry\n";
    for (const auto& f : u.firms)
      out << csv::join({f.ticker, f.name, f.sector, f.industry}) << "\n";
  }
  {
    std::ofstream out(paths.panel_csv, std::ios::binary);
    if (!out) throw DataError("cannot write " + paths.panel_csv);
    out << "ticker,month,feature,value\n";
    char buf[64];
    for (size_t f = 0; f < u.panel.n_firms(); ++f) {
      for (size_t m = 0; m < u.panel.n_months(); ++m) {
        for (size_t k = 0; k < u.panel.n_features(); ++k) {
          auto v = u.panel.value(f, m, k);
          std::string val;
          if (v) {
            std::snprintf(buf, sizeof(buf), "%.17g", *v);
            val = buf;
          }
          out << csv::join({u.panel.tickers()[f], u.panel.months()[m], u.panel.features()[k], val})
              << "\n";
        }
      }
    }
  }
  {
    nlohmann::ordered_json j;
    j["groups"] = nlohmann::ordered_json::object();
    for (const auto& [f, g] : u.taxonomy.groups) j["groups"][f] = g;
    j["categories"] = nlohmann::ordered_json::object();
    for (const auto& [c, fs] : u.taxonomy.categories) j["categories"][c] = fs;
    std::ofstream out(paths.taxonomy_json, std::ios::binary);
    if (!out) throw DataError("cannot write " + paths.taxonomy_json);
    out << j.dump(2) << "\n";
  }
}

}  // namespace repbias
