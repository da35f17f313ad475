#pragma once

// Matrix-vector timing harness. Each (class, n, r) cell runs `warmup`
// untimed multiplies, then `repeats` timed blocks of `trials` multiplies;
// the reported time is the fastest block divided by `trials`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/error.hpp"
#include "ldr/fastmult.hpp"

namespace ldr {

enum class BenchClass { Unstructured, LowRank, ToeplitzLike, LdrSd };

inline std::string to_string(BenchClass c) {
  switch (c) {
    case BenchClass::Unstructured: return "unstructured";
    case BenchClass::LowRank: return "low-rank";
    case BenchClass::ToeplitzLike: return "toeplitz-like";
    case BenchClass::LdrSd: return "ldr-sd";
  }
  return "unknown";
}

inline std::optional<BenchClass> parse_bench_class(const std::string& s) {
  for (BenchClass c : {BenchClass::Unstructured, BenchClass::LowRank, BenchClass::ToeplitzLike, BenchClass::LdrSd})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

struct BenchConfig {
  std::vector<std::size_t> sizes{512, 1024, 2048, 4096, 8192, 16384, 32768};
  std::vector<std::size_t> ranks{1, 2, 4, 8, 16};
  std::vector<BenchClass> classes{BenchClass::Unstructured, BenchClass::LowRank, BenchClass::ToeplitzLike,
                                  BenchClass::LdrSd};
  std::size_t trials = 1000;
  std::size_t repeats = 10;
  std::size_t warmup = 3;
  std::uint64_t seed = 0;
};

struct BenchRow {
  BenchClass cls = BenchClass::Unstructured;
  std::size_t n = 0, r = 0;
  double time_ns = std::numeric_limits<double>::quiet_NaN();
  double speedup = std::numeric_limits<double>::quiet_NaN();
  double reference_speedup = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";  // ok | skipped-memory | no-baseline
};

/// Published reference speedups over unstructured, keyed by
/// (class, log2 n, rank). Printed for comparison only.
inline std::optional<double> reference_speedup(BenchClass c, std::size_t n, std::size_t r) {
  static const std::map<BenchClass, std::map<std::size_t, std::vector<double>>> table = {
      {BenchClass::LowRank,
       {{9, {51.5, 24.3, 24.6, 20.8, 18.1}},
        {10, {139, 54.1, 56.6, 46.2, 34.3}},
        {11, {414, 160, 171, 105, 69.0}},
        {12, {2380, 871, 746, 473, 359}},
        {13, {5960, 1750, 1650, 1130, 886}},
        {14, {8350, 3440, 3400, 2290, 1740}},
        {15, {17900, 7500, 7530, 4910, 3700}}}},
      {BenchClass::ToeplitzLike,
       {{9, {0.306, 0.260, 0.232, 0.186, 0.161}},
        {10, {0.734, 0.621, 0.518, 0.400, 0.328}},
        {11, {1.90, 1.71, 1.38, 1.08, 0.846}},
        {12, {12.3, 10.1, 7.92, 5.97, 4.62}},
        {13, {33.4, 27.3, 22.6, 15.2, 12.3}},
        {14, {69.6, 56.8, 41.9, 30.0, 22.6}},
        {15, {149, 119, 90.7, 54.6, 38.2}}}},
      {BenchClass::LdrSd,
       {{9, {0.0668, 0.0463, 0.0405, 0.0310, 0.0256}},
        {10, {0.149, 0.120, 0.0945, 0.0673, 0.0524}},
        {11, {0.499, 0.432, 0.302, 0.194, 0.137}},
        {12, {3.34, 2.57, 1.61, 1.06, 0.752}},
        {13, {9.71, 6.61, 4.40, 2.46, 1.68}},
        {14, {21.2, 14.1, 8.38, 4.35, 3.00}},
        {15, {46.1, 28.2, 16.0, 8.58, 5.70}}}},
  };
  if (c == BenchClass::Unstructured) return 1.0;
  if (!is_power_of_two(n)) return std::nullopt;
  const std::size_t lg = log2_exact(n);
  static const std::size_t rank_cols[] = {1, 2, 4, 8, 16};
  const auto rc = std::find(std::begin(rank_cols), std::end(rank_cols), r);
  if (rc == std::end(rank_cols)) return std::nullopt;
  const auto cls = table.find(c);
  const auto row = cls->second.find(lg);
  if (row == cls->second.end()) return std::nullopt;
  return row->second[static_cast<std::size_t>(rc - std::begin(rank_cols))];
}

/// MemAvailable from /proc/meminfo in bytes; nullopt when unknown.
inline std::optional<std::uint64_t> available_memory_bytes() {
  std::ifstream in("/proc/meminfo");
  std::string key;
  std::uint64_t value = 0;
  std::string unit;
  while (in >> key >> value >> unit) {
    if (key == "MemAvailable:") return value * 1024;
  }
  return std::nullopt;
}

namespace detail {

template <class F>
double time_per_call_ns(F&& fn, std::size_t warmup, std::size_t trials, std::size_t repeats) {
  for (std::size_t i = 0; i < warmup; ++i) fn();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < trials; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  return best / static_cast<double>(trials);
}

// Keeps results observable so the optimizer cannot drop the work.
inline volatile double bench_sink = 0.0;

}  // namespace detail

/// Times one (class, n, r) cell. Returns nullopt when the dense baseline
/// would not fit in memory.
inline std::optional<double> bench_cell(BenchClass c, std::size_t n, std::size_t r, const BenchConfig& cfg) {
  if (!is_power_of_two(n)) throw SizeError("bench: n = " + std::to_string(n) + " is not a power of two");
  std::mt19937_64 rng(cfg.seed ^ (n * 1315423911u) ^ (r << 7));
  std::normal_distribution<double> nd;
  Vector x(n);
  for (auto& v : x) v = nd(rng);
  auto random_matrix = [&](std::size_t rows, std::size_t cols) {
    DenseMatrix m(rows, cols);
    for (auto& v : m.data()) v = nd(rng) / std::sqrt(static_cast<double>(rows));
    return m;
  };
  switch (c) {
    case BenchClass::Unstructured: {
      const auto avail = available_memory_bytes();
      const double need = 8.0 * static_cast<double>(n) * static_cast<double>(n);
      if (avail && need > 0.6 * static_cast<double>(*avail)) return std::nullopt;
      const DenseMatrix w = random_matrix(n, n);
      return detail::time_per_call_ns([&] { detail::bench_sink = dense_matvec(w, x)[0]; }, cfg.warmup, cfg.trials,
                                      cfg.repeats);
    }
    case BenchClass::LowRank: {
      const DenseMatrix g = random_matrix(n, r), h = random_matrix(n, r);
      return detail::time_per_call_ns([&] { detail::bench_sink = low_rank_matvec(g, h, x)[0]; }, cfg.warmup,
                                      cfg.trials, cfg.repeats);
    }
    case BenchClass::ToeplitzLike: {
      const DenseMatrix g = random_matrix(n, r), h = random_matrix(n, r);
      return detail::time_per_call_ns([&] { detail::bench_sink = toeplitz_like_matvec(g, h, x)[0]; }, cfg.warmup,
                                      cfg.trials, cfg.repeats);
    }
    case BenchClass::LdrSd: {
      Vector sa(n - 1), sb(n - 1);
      for (auto& v : sa) v = nd(rng);
      for (auto& v : sb) v = nd(rng);
      const LdrMatrix m(make_subdiagonal(std::move(sa)), make_subdiagonal(std::move(sb)), random_matrix(n, r),
                        random_matrix(n, r));
      const DenseMatrix xm(n, 1, x);
      return detail::time_per_call_ns([&] { detail::bench_sink = ldr_sd_matvec(m, xm)(0, 0); }, cfg.warmup,
                                      cfg.trials, cfg.repeats);
    }
  }
  return std::nullopt;
}

/// Runs every requested cell. The unstructured baseline is timed once per n
/// (it has no rank) and reported once, at the first requested rank.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg, const std::function<void(const BenchRow&)>& on_row = {}) {
  if (cfg.trials == 0 || cfg.repeats == 0) throw SizeError("bench: trials and repeats must be at least 1");
  std::vector<BenchRow> rows;
  for (std::size_t n : cfg.sizes) {
    if (!is_power_of_two(n)) throw SizeError("bench: n = " + std::to_string(n) + " is not a power of two");
    const std::optional<double> base = bench_cell(BenchClass::Unstructured, n, 1, cfg);
    for (BenchClass c : cfg.classes) {
      const std::vector<std::size_t> ranks =
          c == BenchClass::Unstructured ? std::vector<std::size_t>{cfg.ranks.empty() ? 1 : cfg.ranks.front()} : cfg.ranks;
      for (std::size_t r : ranks) {
        BenchRow row;
        row.cls = c;
        row.n = n;
        row.r = r;
        if (auto p = reference_speedup(c, n, r)) row.reference_speedup = *p;
        const std::optional<double> t = c == BenchClass::Unstructured ? base : bench_cell(c, n, r, cfg);
        if (!t) {
          row.status = "skipped-memory";
        } else {
          row.time_ns = *t;
          if (base) row.speedup = *base / *t;
          else row.status = "no-baseline";
        }
        rows.push_back(row);
        if (on_row) on_row(row);
      }
    }
  }
  return rows;
}

inline std::string bench_csv_header() {
  return "class,n,r,time_ns,speedup_vs_unstructured,warmup,trials,repeats,reference_speedup,status\n";
}

inline std::string bench_csv_row(const BenchRow& row, const BenchConfig& cfg) {
  auto num = [](double v) {
    if (std::isnan(v)) return std::string();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  return to_string(row.cls) + "," + std::to_string(row.n) + "," + std::to_string(row.r) + "," + num(row.time_ns) + "," +
         num(row.speedup) + "," + std::to_string(cfg.warmup) + "," + std::to_string(cfg.trials) + "," +
         std::to_string(cfg.repeats) + "," + num(row.reference_speedup) + "," + row.status + "\n";
}

}  // namespace ldr
