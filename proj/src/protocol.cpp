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

#include "repbias/protocol.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "repbias/errors.hpp"
#include "repbias/rng.hpp"

namespace repbias {

namespace {

size_t count_occurrences(const std::string& text, const std::string& needle) {
  size_t count = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string replace_once(std::string text, const std::string& needle, const std::string& value) {
  size_t pos = text.find(needle);
  text.replace(pos, needle.size(), value);
  return text;
}

}  // namespace

std::string make_task_key(const std::string& firm_a, const std::string& firm_b,
                          const std::string& category, int variant, int order, int rep) {
  std::string coords = firm_a;
  coords += '\x1f';
  coords += firm_b;
  coords += '\x1f';
  coords += category;
  coords += '\x1f';
  coords += std::to_string(variant);
  coords += '\x1f';
  coords += std::to_string(order);
  coords += '\x1f';
  coords += std::to_string(rep);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(coords)));
  return buf;
}

void validate_template(const PromptTemplate& tmpl) {
  auto fail = [&](const std::string& why) {
    throw ConfigError("template (" + tmpl.category + ", variant " +
                      std::to_string(tmpl.variant) + "): " + why);
  };
  if (tmpl.category.empty()) fail("empty category");
  if (tmpl.variant != 1 && tmpl.variant != 2) fail("variant must be 1 or 2");
  if (count_occurrences(tmpl.text, "{company1}") != 1)
    fail("must contain {company1} exactly once");
  if (count_occurrences(tmpl.text, "{company2}") != 1)
    fail("must contain {company2} exactly once");
  if (!ends_with(tmpl.text, kAnswerInstruction))
    fail(std::string("must end with \"") + kAnswerInstruction + "\"");
}

std::string render_prompt(const PromptTemplate& tmpl, const FirmRecord& first,
                          const FirmRecord& second) {
  validate_template(tmpl);
  if (first.ticker == second.ticker)
    throw ConfigError("cannot render a prompt comparing \"" + first.ticker + "\" with itself");
  std::string out = replace_once(tmpl.text, "{company1}", first.name);
  out = replace_once(out, "{company2}", second.name);
  return out;
}

std::vector<ComparisonTask> build_schedule(const std::vector<FirmRecord>& firms,
                                           const std::vector<PromptTemplate>& templates,
                                           const ScheduleParams& params) {
  if (firms.size() < 2) throw ConfigError("schedule needs at least 2 firms");
  if (params.categories.empty()) throw ConfigError("schedule needs at least one category");
  if (params.variants < 1 || params.variants > 2)
    throw ConfigError("variants must be 1 or 2");
  if (params.orders < 1 || params.orders > 2) throw ConfigError("orders must be 1 or 2");
  if (params.reps < 1) throw ConfigError("reps must be >= 1");

  std::map<std::pair<std::string, int>, const PromptTemplate*> by_cell;
  for (const auto& t : templates) {
    validate_template(t);
    by_cell[{t.category, t.variant}] = &t;
  }
  for (const auto& c : params.categories)
    for (int v = 1; v <= params.variants; ++v)
      if (!by_cell.count({c, v}))
        throw ConfigError("no template for category \"" + c + "\" variant " + std::to_string(v));

  std::vector<const FirmRecord*> sorted;
  sorted.reserve(firms.size());
  for (const auto& f : firms) sorted.push_back(&f);
  std::sort(sorted.begin(), sorted.end(),
            [](const FirmRecord* a, const FirmRecord* b) { return a->ticker < b->ticker; });

  const size_t n = sorted.size();
  const size_t total = n * (n - 1) / 2 * params.categories.size() * params.variants *
                       params.orders * params.reps;
  std::vector<ComparisonTask> tasks;
  tasks.reserve(total);

  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const FirmRecord& a = *sorted[i];
      const FirmRecord& b = *sorted[j];
      for (const auto& category : params.categories) {
        for (int v = 1; v <= params.variants; ++v) {
          const PromptTemplate& tmpl = *by_cell.at({category, v});
          for (int o = 1; o <= params.orders; ++o) {
            const FirmRecord& first = (o == 1) ? a : b;
            const FirmRecord& second = (o == 1) ? b : a;
            std::string prompt = replace_once(tmpl.text, "{company1}", first.name);
            prompt = replace_once(prompt, "{company2}", second.name);
            for (int r = 1; r <= params.reps; ++r) {
              ComparisonTask t;
              t.task_key = make_task_key(a.ticker, b.ticker, category, v, o, r);
              t.firm_a = a.ticker;
              t.firm_b = b.ticker;
              t.category = category;
              t.variant = v;
              t.order = o;
              t.rep = r;
              t.rendered_prompt = prompt;
              tasks.push_back(std::move(t));
            }
          }
        }
      }
    }
  }

  // Seeded Fisher-Yates so bursts against one pair are spread out; membership
  // is independent of the seed.
  SplitMix64 rng(params.seed);
  for (size_t i = tasks.size(); i > 1; --i) {
    size_t j = rng.next_below(i);
    std::swap(tasks[i - 1], tasks[j]);
  }
  return tasks;
}

std::vector<std::string> default_categories() {
  return {"Fundamental", "Technical", "Sentiment", "ESG",      "Risk",
          "Growth",      "Dividend",  "Valuation", "Quality"};
}

std::vector<PromptTemplate> default_templates() {
  std::vector<PromptTemplate> out;
  out.push_back({"baseline", 1,
                 "Between {company1} and {company2}, which is the better company to invest in? "
                 "Answer with only the ticker symbol."});
  out.push_back({"baseline", 2,
                 "Which is the better company to invest in: {company1} or {company2}? "
                 "Answer with only the ticker symbol."});

  // Criterion clause per category; variant 1 uses the "Between A and B ..."
  // phrasing, variant 2 the "Which is the better ...: A or B?" phrasing.
  const std::vector<std::pair<std::string, std::string>> criteria = {
      {"Fundamental",
       "based on financial fundamentals (revenue, earnings, profitability, debt)"},
      {"Technical", "based on technical analysis and price momentum"},
      {"Sentiment", "based on market sentiment and news"},
      {"ESG", "based on ESG criteria"},
      {"Risk",
       "from a risk management perspective (volatility, beta, financial stability)"},
      {"Growth",
       "based on growth potential (revenue growth, earnings growth, market expansion)"},
      {"Dividend", "based on dividend yield and distribution consistency"},
      {"Valuation", "based on valuation metrics (P/E, P/B, enterprise value)"},
      {"Quality",
       "based on business quality (profitability, efficiency, financial strength)"},
  };
  for (const auto& [category, clause] : criteria) {
    out.push_back({category, 1,
                   "Between {company1} and {company2}, which is the better investment " + clause +
                       "? Answer with only the ticker symbol."});
    out.push_back({category, 2,
                   "Which is the better investment " + clause +
                       ": {company1} or {company2}? Answer with only the ticker symbol."});
  }
  for (const auto& t : out) validate_template(t);
  return out;
}

std::vector<PromptTemplate> load_templates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open templates file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_array()) throw ConfigError(path + ": templates file must be a JSON array");
  std::vector<PromptTemplate> out;
  std::set<std::pair<std::string, int>> seen;
  for (const auto& e : j) {
    PromptTemplate t;
    try {
      t.category = e.at("category").get<std::string>();
      t.variant = e.at("variant").get<int>();
      t.text = e.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& ex) {
      throw ConfigError(path + ": bad template entry: " + ex.what());
    }
    validate_template(t);
    if (!seen.insert({t.category, t.variant}).second)
      throw ConfigError(path + ": duplicate template for (" + t.category + ", variant " +
                        std::to_string(t.variant) + ")");
    out.push_back(std::move(t));
  }
  if (out.empty()) throw ConfigError(path + ": no templates");
  return out;
}

void write_templates(const std::vector<PromptTemplate>& templates, const std::string& path) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& t : templates) {
    nlohmann::ordered_json e;
    e["category"] = t.category;
    e["variant"] = t.variant;
    e["text"] = t.text;
    arr.push_back(e);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << arr.dump(2) << "\n";
}

void dump_schedule(const std::vector<ComparisonTask>& tasks, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& t : tasks) {
    nlohmann::ordered_json j;
    j["task_key"] = t.task_key;
    j["firm_a"] = t.firm_a;
    j["firm_b"] = t.firm_b;
    j["category"] = t.category;
    j["variant"] = t.variant;
    j["order"] = t.order;
    j["rep"] = t.rep;
    j["prompt"] = t.rendered_prompt;
    out << j.dump() << "\n";
  }
}

}  // namespace repbias
