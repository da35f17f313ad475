#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/error.hpp"
#include "ldr/numerics.hpp"

namespace ldr {

/// Samples are columns. Regression targets live in `targets`; class labels
/// in `labels`. Exactly one of the two is populated.
struct Split {
  DenseMatrix inputs;
  DenseMatrix targets;
  std::vector<int> labels;
  std::size_t size() const noexcept { return inputs.cols(); }
};

struct Dataset {
  Split train, validation;
  std::size_t num_classes = 0;  // 0 for regression
  DenseMatrix target_matrix;    // synthetic task only: y = T x
  bool is_regression() const noexcept { return num_classes == 0; }
};

/// Validation size for the 85/15 split.
inline std::size_t validation_count(std::size_t total) {
  return static_cast<std::size_t>(std::ceil(0.15 * static_cast<double>(total)));
}

namespace detail {

inline std::vector<std::size_t> shuffled_indices(std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

inline DenseMatrix gather_columns(const DenseMatrix& m, std::span<const std::size_t> cols) {
  DenseMatrix out(m.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) std::copy(m.col(cols[j]).begin(), m.col(cols[j]).end(), out.col(j).begin());
  return out;
}

}  // namespace detail

/// Random Toeplitz T with N(0, 1/n) entries and pairs (x, T x + noise eps).
/// The last 15% of the draws form the validation split.
inline Dataset synth_shift_task(std::size_t n, std::size_t samples, double noise, std::uint64_t seed) {
  if (!is_power_of_two(n)) throw SizeError("synth_shift_task: n must be a power of two");
  if (samples < 2) throw SizeError("synth_shift_task: need at least two samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Vector col(n), row(n);
  for (auto& v : col) v = nd(rng) * scale;
  for (auto& v : row) v = nd(rng) * scale;
  row[0] = col[0];
  Dataset ds;
  ds.target_matrix = toeplitz(col, row);
  DenseMatrix x(n, samples);
  for (auto& v : x.data()) v = nd(rng);
  DenseMatrix y = matmul(ds.target_matrix, x);
  if (noise != 0.0)
    for (auto& v : y.data()) v += noise * nd(rng);
  const std::size_t nval = validation_count(samples);
  const std::size_t ntrain = samples - nval;
  std::vector<std::size_t> tr(ntrain), va(nval);
  std::iota(tr.begin(), tr.end(), std::size_t{0});
  std::iota(va.begin(), va.end(), ntrain);
  ds.train = {detail::gather_columns(x, tr), detail::gather_columns(y, tr), {}};
  ds.validation = {detail::gather_columns(x, va), detail::gather_columns(y, va), {}};
  return ds;
}

/// Relative Frobenius tail beyond the best rank-p approximation of T.
inline double low_rank_floor(const DenseMatrix& t, std::size_t p) {
  const auto s = singular_values(t);
  double tail = 0.0, total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    total += s[i] * s[i];
    if (i >= p) tail += s[i] * s[i];
  }
  return total == 0.0 ? 0.0 : std::sqrt(tail / total);
}

/// Parsed numeric table, one row per sample.
struct CsvTable {
  std::vector<std::vector<double>> rows;
};

inline CsvTable parse_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      const std::string trimmed = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(trimmed, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (trimmed.empty() || used != trimmed.size() || !std::isfinite(v)) {
        throw ParseError("non-numeric cell '" + trimmed + "'", line_no);
      }
      row.push_back(v);
    }
    if (!line.empty() && line.back() == ',') throw ParseError("empty trailing cell", line_no);
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " cells, found " + std::to_string(row.size()), line_no);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.rows.empty()) throw ParseError("no data rows", line_no == 0 ? 1 : line_no);
  return t;
}

/// Features min-max scaled to [0, 1]; integer labels from `label_col`
/// (negative counts from the end). Seeded shuffle, then ceil(15%) validation.
inline Dataset load_csv_dataset(const std::string& path, int label_col, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  const CsvTable table = parse_csv(in);
  const std::size_t width = table.rows.front().size();
  if (width < 2) throw ParseError("need at least one feature column and a label column", 1);
  const long lc = label_col < 0 ? static_cast<long>(width) + label_col : label_col;
  if (lc < 0 || lc >= static_cast<long>(width)) throw SizeError("label column out of range");
  const std::size_t label = static_cast<std::size_t>(lc);
  const std::size_t nfeat = width - 1;
  const std::size_t count = table.rows.size();

  DenseMatrix x(nfeat, count);
  std::vector<int> labels(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::size_t f = 0;
    for (std::size_t c = 0; c < width; ++c) {
      const double v = table.rows[s][c];
      if (c == label) {
        if (v < 0 || v != std::floor(v)) throw ParseError("label must be a non-negative integer", s + 1);
        labels[s] = static_cast<int>(v);
      } else {
        x(f++, s) = v;
      }
    }
  }
  for (std::size_t f = 0; f < nfeat; ++f) {
    double lo = x(f, 0), hi = x(f, 0);
    for (std::size_t s = 0; s < count; ++s) {
      lo = std::min(lo, x(f, s));
      hi = std::max(hi, x(f, s));
    }
    for (std::size_t s = 0; s < count; ++s) x(f, s) = hi > lo ? (x(f, s) - lo) / (hi - lo) : 0.0;
  }
  Dataset ds;
  ds.num_classes = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
  const auto order = detail::shuffled_indices(count, seed);
  const std::size_t nval = validation_count(count);
  const std::span<const std::size_t> all(order);
  auto pick = [&](std::span<const std::size_t> ids) {
    std::vector<int> l(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) l[k] = labels[ids[k]];
    return Split{detail::gather_columns(x, ids), DenseMatrix(), std::move(l)};
  };
  ds.train = pick(all.subspan(0, count - nval));
  ds.validation = pick(all.subspan(count - nval));
  return ds;
}

}  // namespace ldr
