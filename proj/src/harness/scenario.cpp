/*
 * Copyright 2026 The themis-sim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "themis/error.hpp"
#include "themis/harness.hpp"

namespace themis {

namespace {

// Reads fields of one TOML table, collecting errors with their paths.
class Fields {
 public:
  Fields(const toml::table& table, std::string prefix, std::vector<std::string>& errors)
      : table_(table), prefix_(std::move(prefix)), errors_(errors) {}

  std::string path(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

  void error(std::string_view key, const std::string& message) {
    errors_.push_back(path(key) + ": " + message);
  }

  const toml::node* get(std::string_view key) {
    known_.insert(std::string(key));
    return table_.get(key);
  }

  template <class T>
  void uint(std::string_view key, T& out, bool required = false) {
    const auto* node = get(key);
    if (node == nullptr) {
      if (required) error(key, "missing");
      return;
    }
    read_uint(*node, path(key), out);
  }

  void string(std::string_view key, std::string& out) {
    const auto* node = get(key);
    if (node == nullptr) return;
    if (auto v = node->value<std::string>()) {
      out = *v;
    } else {
      error(key, "expected a string");
    }
  }

  template <class T>
  void uint_array(std::string_view key, std::vector<T>& out, bool required = false) {
    const auto* node = get(key);
    if (node == nullptr) {
      if (required) error(key, "missing");
      return;
    }
    read_array(*node, path(key), out);
  }

  const toml::table* table(std::string_view key) {
    const auto* node = get(key);
    if (node == nullptr) return nullptr;
    if (!node->is_table()) {
      error(key, "expected a table");
      return nullptr;
    }
    return node->as_table();
  }

  void reject_unknown() {
    for (const auto& [key, node] : table_) {
      if (!known_.contains(std::string(key.str()))) error(key.str(), "unknown field");
    }
  }

  template <class T>
  void read_uint(const toml::node& node, const std::string& where, T& out) {
    auto v = node.value_exact<std::int64_t>();
    if (!v) {
      errors_.push_back(where + ": expected an integer");
    } else if (*v < 0) {
      errors_.push_back(where + ": must be non-negative");
    } else if (static_cast<std::uint64_t>(*v) > std::numeric_limits<T>::max()) {
      errors_.push_back(where + ": too large");
    } else {
      out = static_cast<T>(*v);
    }
  }

  template <class T>
  void read_array(const toml::node& node, const std::string& where, std::vector<T>& out) {
    const auto* arr = node.as_array();
    if (arr == nullptr) {
      errors_.push_back(where + ": expected an array");
      return;
    }
    out.assign(arr->size(), 0);
    for (std::size_t i = 0; i < arr->size(); ++i) {
      read_uint((*arr)[i], where + "[" + std::to_string(i) + "]", out[i]);
    }
  }

  std::vector<std::string>& errors() { return errors_; }

 private:
  const toml::table& table_;
  std::string prefix_;
  std::vector<std::string>& errors_;
  std::set<std::string> known_;
};

[[noreturn]] void config_fail(const std::vector<std::string>& errors) {
  std::string msg;
  for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
  fail(ErrorCode::kConfigError, msg);
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
        << e.description();
    fail(ErrorCode::kConfigError, msg.str());
  }

  Scenario s;
  std::vector<std::string> errors;
  Fields top(root, "", errors);
  top.string("name", s.name);
  top.uint("seed", s.seed);
  top.uint("catalog_size", s.catalog_size, true);
  top.uint("epoch_blocks", s.epoch_blocks);
  top.uint("reward_cap", s.reward_cap);
  top.uint("chains", s.chains);
  std::string mode = "honest";
  top.string("cf_mode", mode);
  if (auto m = parse_cf_mode(mode)) {
    s.cf_mode = *m;
  } else {
    top.error("cf_mode", "expected honest, underpay or divert, got \"" + mode + "\"");
  }
  top.uint("cf_deviation", s.cf_deviation);

  if (const auto* users = top.table("users")) {
    Fields f(*users, "users", errors);
    f.uint("count", s.users, true);
    f.uint("max_interactions", s.max_interactions);
    if (const auto* node = f.get("vectors")) {
      if (const auto* arr = node->as_array()) {
        s.vectors.resize(arr->size());
        for (std::size_t i = 0; i < arr->size(); ++i) {
          f.read_array((*arr)[i], "users.vectors[" + std::to_string(i) + "]", s.vectors[i]);
        }
      } else {
        f.error("vectors", "expected an array of arrays");
      }
    }
    f.reject_unknown();
  } else {
    errors.push_back("users: missing");
  }

  if (const auto* pool = top.table("pool")) {
    Fields f(*pool, "pool", errors);
    f.uint("k", s.pool.k, true);
    f.uint("nu", s.pool.n, true);
    f.uint("draw_pool", s.pool.draw_pool, true);
    f.uint("vrf_space", s.pool.p);
    f.string("epsilon", s.epsilon);
    f.reject_unknown();
  }

  if (const auto* node = top.get("advertiser")) {
    if (const auto* arr = node->as_array(); arr != nullptr && arr->is_array_of_tables()) {
      for (std::size_t i = 0; i < arr->size(); ++i) {
        AdvertiserSpec entry;
        Fields f(*(*arr)[i].as_table(), "advertiser[" + std::to_string(i) + "]", errors);
        f.uint_array("ads", entry.ads, true);
        f.uint_array("policies", entry.policies, true);
        f.uint_array("impressions", entry.impressions);
        f.uint("fee", entry.fee);
        f.reject_unknown();
        s.advertisers.push_back(std::move(entry));
      }
    } else {
      top.error("advertiser", "expected [[advertiser]] tables");
    }
  }

  if (const auto* gen = top.table("advertisers")) {
    AdvertiserGen g;
    Fields f(*gen, "advertisers", errors);
    f.uint("count", g.count, true);
    f.uint("policy_min", g.policy_min);
    f.uint("policy_max", g.policy_max);
    f.uint("fee", g.fee);
    f.reject_unknown();
    s.generated = g;
  }
  top.reject_unknown();

  if (!errors.empty()) config_fail(errors);
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kConfigError, path.string() + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.string());
}

void Scenario::validate() const {
  std::vector<std::string> errors;
  auto err = [&](const std::string& e) { errors.push_back(e); };

  if (catalog_size == 0) err("catalog_size: must be at least 1");
  if (chains == 0) err("chains: must be at least 1");
  if (epoch_blocks == 0) err("epoch_blocks: must be at least 1");
  if (cf_mode != CfMode::kHonest && cf_deviation == 0) {
    err("cf_deviation: must be at least 1 when cf_mode is not honest");
  }
  if (max_interactions >= kAnalyticsBound) err("users.max_interactions: exceeds 2^32 - 1");
  if (!vectors.empty()) {
    if (vectors.size() != users) {
      err("users.vectors: " + std::to_string(vectors.size()) + " vectors for count " +
          std::to_string(users));
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != catalog_size) {
        err("users.vectors[" + std::to_string(i) + "]: length " +
            std::to_string(vectors[i].size()) + ", expected catalog_size " +
            std::to_string(catalog_size));
      }
      for (auto c : vectors[i]) {
        if (c >= kAnalyticsBound) {
          err("users.vectors[" + std::to_string(i) + "]: count exceeds 2^32 - 1");
          break;
        }
      }
    }
  }

  if (pool.k == 0) err("pool.k: must be at least 1");
  if (pool.k > pool.n || pool.n > pool.draw_pool) {
    err("pool: need k <= nu <= draw_pool, got " + std::to_string(pool.k) + ", " +
        std::to_string(pool.n) + ", " + std::to_string(pool.draw_pool));
  }
  if (pool.p < 2) err("pool.vrf_space: must be at least 2");

  if (!advertisers.empty() && generated) {
    err("advertisers: give either [[advertiser]] entries or an [advertisers] generator");
  } else if (advertisers.empty() && !generated) {
    err("advertiser: at least one advertiser is required");
  }
  if (generated) {
    if (generated->count == 0) err("advertisers.count: must be at least 1");
    if (generated->count > catalog_size) err("advertisers.count: more advertisers than ads");
    if (generated->policy_min > generated->policy_max) {
      err("advertisers.policy_min: greater than policy_max");
    }
  }
  std::vector<int> owner(catalog_size, -1);
  for (std::size_t a = 0; a < advertisers.size(); ++a) {
    const auto& entry = advertisers[a];
    const std::string at = "advertiser[" + std::to_string(a) + "]";
    if (entry.ads.empty()) err(at + ".ads: must not be empty");
    if (entry.policies.size() != entry.ads.size()) {
      err(at + ".policies: length " + std::to_string(entry.policies.size()) +
          " != ads length " + std::to_string(entry.ads.size()));
    }
    if (!entry.impressions.empty() && entry.impressions.size() != entry.ads.size()) {
      err(at + ".impressions: length " + std::to_string(entry.impressions.size()) +
          " != ads length " + std::to_string(entry.ads.size()));
    }
    for (auto ad : entry.ads) {
      if (ad >= catalog_size) {
        err(at + ".ads: index " + std::to_string(ad) + " outside catalog of " +
            std::to_string(catalog_size));
      } else if (owner[ad] >= 0) {
        err(at + ".ads: ad " + std::to_string(ad) + " already assigned to advertiser[" +
            std::to_string(owner[ad]) + "]");
      } else {
        owner[ad] = static_cast<int>(a);
      }
    }
  }
  if (!advertisers.empty()) {
    std::string missing;
    for (std::uint32_t i = 0; i < catalog_size; ++i) {
      if (owner[i] < 0) missing += (missing.empty() ? "" : ", ") + std::to_string(i);
    }
    if (!missing.empty()) err("advertiser: ads " + missing + " not assigned to any advertiser");
  }

  if (!errors.empty()) config_fail(errors);
}

std::vector<AdvertiserSpec> resolve_advertisers(const Scenario& s) {
  std::vector<AdvertiserSpec> out = s.advertisers;
  if (s.generated) {
    Rng rng = Rng(s.seed).fork("advertisers");
    const auto count = s.generated->count;
    for (std::uint32_t a = 0; a < count; ++a) {
      AdvertiserSpec entry;
      const auto begin = static_cast<std::uint32_t>(std::uint64_t{a} * s.catalog_size / count);
      const auto end = static_cast<std::uint32_t>(std::uint64_t{a + 1} * s.catalog_size / count);
      for (auto ad = begin; ad < end; ++ad) {
        entry.ads.push_back(ad);
        entry.policies.push_back(rng.range(s.generated->policy_min, s.generated->policy_max));
      }
      entry.fee = s.generated->fee;
      out.push_back(std::move(entry));
    }
  }
  std::uint64_t max_count = s.max_interactions;
  if (!s.vectors.empty()) {
    max_count = 0;
    for (const auto& v : s.vectors) {
      for (auto c : v) max_count = std::max(max_count, c);
    }
  }
  for (auto& entry : out) {
    if (entry.impressions.empty()) {
      entry.impressions.assign(entry.ads.size(), std::uint64_t{s.users} * max_count);
    }
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> resolve_interactions(const Scenario& s) {
  if (!s.vectors.empty()) return s.vectors;
  std::vector<std::vector<std::uint64_t>> out(s.users);
  const Rng base = Rng(s.seed).fork("interactions");
  for (std::uint32_t u = 0; u < s.users; ++u) {
    Rng rng = base.fork("user", u);
    out[u].resize(s.catalog_size);
    for (auto& c : out[u]) c = rng.range(0, s.max_interactions);
  }
  return out;
}

}  // namespace themis
