#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "ldr/error.hpp"
#include "ldr/learn/model.hpp"

namespace ldr {

struct DatasetSpec {
  enum class Kind { Synthetic, Csv } kind = Kind::Synthetic;
  // synthetic
  std::size_t n = 64;
  std::size_t samples = 2000;
  double noise = 0.0;
  // csv
  std::string path;
  int label_column = -1;
};

struct TrainConfig {
  LayerClass cls = LayerClass::LdrSd;
  std::size_t rank = 1;
  double lr = 1e-3;
  double momentum = 0.9;
  std::size_t epochs = 10;
  std::size_t batch_size = 50;
  std::uint64_t seed = 0;
  DatasetSpec dataset;
};

namespace detail {

template <class T>
T json_get(const nlohmann::json& j, const std::string& key, const std::string& path) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(path + key, "has the wrong type");
  }
}

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(path + it.key(), "is not a recognised key");
}

}  // namespace detail

/// Parses the flat JSON config. Every error names the offending key.
inline TrainConfig parse_train_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("<document>", std::string("is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("<document>", "must be a JSON object");
  detail::reject_unknown(j, {"class", "rank", "lr", "momentum", "epochs", "batch_size", "seed", "dataset"}, "");

  TrainConfig c;
  if (!j.contains("class")) throw SchemaError("class", "is required");
  const auto name = detail::json_get<std::string>(j, "class", "");
  const auto cls = parse_layer_class(name);
  if (!cls) throw SchemaError("class", "unknown class '" + name + "'");
  c.cls = *cls;

  if (j.contains("rank")) {
    const auto r = detail::json_get<long long>(j, "rank", "");
    if (r < 1) throw SchemaError("rank", "must be at least 1");
    c.rank = static_cast<std::size_t>(r);
  } else if (c.cls != LayerClass::Unstructured) {
    throw SchemaError("rank", "is required for structured classes");
  }
  if (j.contains("lr")) {
    c.lr = detail::json_get<double>(j, "lr", "");
    if (!(c.lr > 0.0)) throw SchemaError("lr", "must be positive");
  }
  if (j.contains("momentum")) {
    c.momentum = detail::json_get<double>(j, "momentum", "");
    if (!(c.momentum >= 0.0 && c.momentum < 1.0)) throw SchemaError("momentum", "must lie in [0, 1)");
  }
  if (j.contains("epochs")) {
    const auto e = detail::json_get<long long>(j, "epochs", "");
    if (e < 1) throw SchemaError("epochs", "must be at least 1");
    c.epochs = static_cast<std::size_t>(e);
  }
  if (j.contains("batch_size")) {
    const auto b = detail::json_get<long long>(j, "batch_size", "");
    if (b < 1) throw SchemaError("batch_size", "must be at least 1");
    c.batch_size = static_cast<std::size_t>(b);
  }
  if (j.contains("seed")) {
    const auto s = detail::json_get<long long>(j, "seed", "");
    if (s < 0) throw SchemaError("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (!j.contains("dataset")) throw SchemaError("dataset", "is required");
  const auto& d = j.at("dataset");
  if (!d.is_object()) throw SchemaError("dataset", "must be an object");
  const auto type = d.contains("type") ? detail::json_get<std::string>(d, "type", "dataset.") : std::string();
  if (type == "synthetic") {
    detail::reject_unknown(d, {"type", "n", "samples", "noise"}, "dataset.");
    c.dataset.kind = DatasetSpec::Kind::Synthetic;
    if (d.contains("n")) {
      const auto n = detail::json_get<long long>(d, "n", "dataset.");
      if (n < 2 || !is_power_of_two(static_cast<std::size_t>(n))) throw SchemaError("dataset.n", "must be a power of two >= 2");
      c.dataset.n = static_cast<std::size_t>(n);
    }
    if (d.contains("samples")) {
      const auto s = detail::json_get<long long>(d, "samples", "dataset.");
      if (s < 2) throw SchemaError("dataset.samples", "must be at least 2");
      c.dataset.samples = static_cast<std::size_t>(s);
    }
    if (d.contains("noise")) {
      c.dataset.noise = detail::json_get<double>(d, "noise", "dataset.");
      if (!(c.dataset.noise >= 0.0)) throw SchemaError("dataset.noise", "must be non-negative");
    }
  } else if (type == "csv") {
    detail::reject_unknown(d, {"type", "path", "label_column"}, "dataset.");
    c.dataset.kind = DatasetSpec::Kind::Csv;
    if (!d.contains("path")) throw SchemaError("dataset.path", "is required for csv datasets");
    c.dataset.path = detail::json_get<std::string>(d, "path", "dataset.");
    if (d.contains("label_column")) c.dataset.label_column = detail::json_get<int>(d, "label_column", "dataset.");
  } else {
    throw SchemaError("dataset.type", "must be \"synthetic\" or \"csv\"");
  }
  return c;
}

inline TrainConfig load_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("<file>", "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_train_config(ss.str());
}

/// LDR_SEED, when set to a non-negative integer, replaces the config seed.
inline void apply_seed_override(TrainConfig& c) {
  const char* env = std::getenv("LDR_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || env[0] == '-') throw SchemaError("LDR_SEED", "must be a non-negative integer");
  c.seed = v;
}

}  // namespace ldr
