// Copyright 2026 The maxmin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maxmin/instance.h"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace maxmin {

Instance::Instance(Epsilon eps, std::vector<ItemKind> kinds,
                   std::vector<std::vector<int>> interests)
    : eps_(eps), kinds_(std::move(kinds)), interests_(std::move(interests)) {
  if (interests_.empty()) throw ParseError("instance needs at least one agent");
  const int m = num_items();
  fans_.assign(m, {});
  heavy_.assign(interests_.size(), {});
  light_.assign(interests_.size(), {});
  for (ItemKind k : kinds_) num_heavy_ += k == ItemKind::kHeavy;
  for (size_t i = 0; i < interests_.size(); ++i) {
    auto& list = interests_[i];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (int j : list) {
      if (j < 0 || j >= m) {
        throw ParseError("unknown item id " + std::to_string(j));
      }
      (is_heavy(j) ? heavy_[i] : light_[i]).push_back(j);
      fans_[j].push_back(static_cast<int>(i));
    }
  }
}

bool Instance::interested(int agent, int item) const {
  const auto& list = interests_[agent];
  return std::binary_search(list.begin(), list.end(), item);
}

std::vector<Violation> VerifyAllocation(const Instance& inst,
                                        const Allocation& alloc) {
  std::vector<Violation> out;
  const int n = inst.num_agents();
  const int m = inst.num_items();
  if (static_cast<int>(alloc.bundles.size()) > n) {
    for (int a = n; a < static_cast<int>(alloc.bundles.size()); ++a) {
      if (!alloc.bundles[a].empty()) {
        out.push_back({Violation::Kind::kUnknownAgent, a, -1,
                       "unknown agent " + std::to_string(a)});
      }
    }
  }
  std::vector<int> owner(m, -1);
  const int limit = std::min<int>(n, alloc.bundles.size());
  for (int a = 0; a < limit; ++a) {
    for (int j : alloc.bundles[a]) {
      if (j < 0 || j >= m) {
        out.push_back({Violation::Kind::kUnknownItem, a, j,
                       "unknown item " + std::to_string(j)});
        continue;
      }
      if (owner[j] != -1) {
        out.push_back({Violation::Kind::kDuplicateItem, a, j,
                       "duplicate item " + std::to_string(j) + " (agents " +
                           std::to_string(owner[j]) + " and " +
                           std::to_string(a) + ")"});
        continue;
      }
      owner[j] = a;
      if (!inst.interested(a, j)) {
        out.push_back({Violation::Kind::kNotInterested, a, j,
                       "agent " + std::to_string(a) + " not interested in item " +
                           std::to_string(j)});
      }
    }
  }
  return out;
}

LatticeValue BundleValue(const Instance& inst, std::span<const int> bundle) {
  LatticeValue v;
  for (int j : bundle) (inst.is_heavy(j) ? v.heavy : v.light) += 1;
  return v;
}

LatticeValue MinValue(const Instance& inst, const Allocation& alloc) {
  const auto violations = VerifyAllocation(inst, alloc);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid allocation: " + violations[0].message);
  }
  LatticeValue best;
  bool first = true;
  for (int a = 0; a < inst.num_agents(); ++a) {
    LatticeValue v;
    if (a < static_cast<int>(alloc.bundles.size())) {
      v = BundleValue(inst, alloc.bundles[a]);
    }
    if (first || Less(v, best, inst.eps())) best = v;
    first = false;
  }
  return best;
}

std::vector<LatticeValue> LatticeValues(const Instance& inst) {
  const Epsilon& eps = inst.eps();
  // Keyed by scaled value; iterating h upwards keeps the largest heavy count.
  std::map<int64_t, LatticeValue> by_value;
  for (int64_t h = 0; h <= inst.num_heavy(); ++h) {
    for (int64_t l = 0; l <= inst.num_light(); ++l) {
      const LatticeValue v{h, l};
      by_value[Scaled(v, eps)] = v;
    }
  }
  std::vector<LatticeValue> out;
  out.reserve(by_value.size());
  for (const auto& [key, v] : by_value) out.push_back(v);
  return out;
}

// --- JSON ------------------------------------------------------------------

namespace {

using nlohmann::json;

const json& Require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "' in " + where);
  }
  return obj.at(key);
}

int RequireInt(const json& v, const char* what) {
  if (!v.is_number_integer()) {
    throw ParseError(std::string(what) + " must be an integer");
  }
  return v.get<int>();
}

}  // namespace

Instance ParseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");

  const json& eps_field = Require(doc, "epsilon", "instance");
  if (!eps_field.is_string()) throw ParseError("epsilon must be a \"p/q\" string");
  Epsilon eps;
  try {
    eps = Epsilon::Parse(eps_field.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }

  const json& items = Require(doc, "items", "instance");
  if (!items.is_array()) throw ParseError("items must be an array");
  const int m = static_cast<int>(items.size());
  std::vector<ItemKind> kinds(m);
  std::vector<bool> seen(m, false);
  for (const json& item : items) {
    const int id = RequireInt(Require(item, "id", "item"), "item id");
    const json& kind = Require(item, "kind", "item");
    if (id < 0 || id >= m) {
      throw ParseError("item ids must be 0..m-1; got " + std::to_string(id));
    }
    if (seen[id]) throw ParseError("duplicate item id " + std::to_string(id));
    seen[id] = true;
    if (kind == "heavy") {
      kinds[id] = ItemKind::kHeavy;
    } else if (kind == "light") {
      kinds[id] = ItemKind::kLight;
    } else {
      throw ParseError("item kind must be \"heavy\" or \"light\"");
    }
  }

  const json& agents = Require(doc, "agents", "instance");
  if (!agents.is_array()) throw ParseError("agents must be an array");
  const int n = static_cast<int>(agents.size());
  std::vector<std::vector<int>> interests(n);
  std::vector<bool> agent_seen(n, false);
  for (const json& agent : agents) {
    const int id = RequireInt(Require(agent, "id", "agent"), "agent id");
    if (id < 0 || id >= n) {
      throw ParseError("agent ids must be 0..n-1; got " + std::to_string(id));
    }
    if (agent_seen[id]) throw ParseError("duplicate agent id " + std::to_string(id));
    agent_seen[id] = true;
    const json& list = Require(agent, "interests", "agent");
    if (!list.is_array()) throw ParseError("interests must be an array");
    for (const json& j : list) {
      const int item = RequireInt(j, "interest");
      if (item < 0 || item >= m) {
        throw ParseError("unknown item id " + std::to_string(item));
      }
      interests[id].push_back(item);
    }
  }
  return Instance(eps, std::move(kinds), std::move(interests));
}

std::string SerializeInstance(const Instance& inst) {
  json doc;
  doc["epsilon"] = inst.eps().ToString();
  json items = json::array();
  for (int j = 0; j < inst.num_items(); ++j) {
    items.push_back({{"id", j}, {"kind", inst.is_heavy(j) ? "heavy" : "light"}});
  }
  doc["items"] = std::move(items);
  json agents = json::array();
  for (int a = 0; a < inst.num_agents(); ++a) {
    const auto span = inst.interests(a);
    agents.push_back({{"id", a},
                      {"interests", std::vector<int>(span.begin(), span.end())}});
  }
  doc["agents"] = std::move(agents);
  return doc.dump() + "\n";
}

Allocation ParseAllocation(std::string_view text, int num_agents) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  const json& assignment = Require(doc, "assignment", "allocation");
  if (!assignment.is_object()) throw ParseError("assignment must be an object");
  Allocation alloc(num_agents);
  for (const auto& [key, items] : assignment.items()) {
    int agent = -1;
    try {
      size_t used = 0;
      agent = std::stoi(key, &used);
      if (used != key.size()) agent = -1;
    } catch (const std::exception&) {
      agent = -1;
    }
    if (agent < 0) throw ParseError("malformed agent key '" + key + "'");
    if (agent >= num_agents) {
      throw ParseError("unknown agent id " + std::to_string(agent));
    }
    if (!items.is_array()) throw ParseError("bundle must be an array");
    for (const json& j : items) alloc.bundles[agent].push_back(RequireInt(j, "item"));
  }
  return alloc;
}

std::string SerializeAllocation(const Allocation& alloc) {
  json assignment = json::object();
  for (size_t a = 0; a < alloc.bundles.size(); ++a) {
    std::vector<int> bundle = alloc.bundles[a];
    std::sort(bundle.begin(), bundle.end());
    assignment[std::to_string(a)] = bundle;
  }
  json doc;
  doc["assignment"] = std::move(assignment);
  return doc.dump() + "\n";
}

}  // namespace maxmin
