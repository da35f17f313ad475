// Acceptance run: one PASS/FAIL line per criterion, then a summary.
// Exit status is 0 only when every criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ldr/ldr.hpp"

namespace fs = std::filesystem;
using namespace ldr;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const PropertyResult* find(const std::vector<PropertyResult>& rs, const std::string& property) {
  for (const auto& r : rs)
    if (r.property == property) return &r;
  return nullptr;
}

/// All listed properties must be present and passing.
Outcome require(const std::vector<PropertyResult>& rs, const std::vector<std::string>& props) {
  Outcome o{true, ""};
  for (const auto& p : props) {
    const PropertyResult* r = find(rs, p);
    std::string part;
    if (!r) {
      o.pass = false;
      part = p + " missing";
    } else {
      o.pass = o.pass && r->pass;
      part = p + (r->pass ? " ok" : " FAILED (" + r->detail + ")") + " worst " + fmt("%.3g", r->worst);
    }
    o.detail += (o.detail.empty() ? "" : "; ") + part;
  }
  return o;
}

Outcome all_pass(const std::vector<PropertyResult>& rs) {
  std::vector<std::string> names;
  for (const auto& r : rs) names.push_back(r.property);
  return require(rs, names);
}

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  SuiteOptions o;
  o.oracle_instances = 100;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rs = suite_oracle(o);
  const double secs = seconds_since(t0);
  Outcome out = all_pass(rs);
  out.pass = out.pass && secs < 120.0;
  out.detail = "100 instances per cell, tol 1e-8, " + fmt("%.1f s", secs) + " (limit 120 s); " + out.detail;
  return out;
}

std::vector<PropertyResult> rank_results() {
  SuiteOptions o;
  o.rank_instances = 100;
  static const auto rs = suite_ranks(o);
  return rs;
}

Outcome classic_ranks() {
  Outcome out = require(rank_results(), {"toeplitz<=2", "hankel<=2", "vandermonde<=1", "cauchy<=1"});
  out.detail = "100 instances per n in {8,16,32}; " + out.detail;
  return out;
}

Outcome expressiveness() {
  return require(rank_results(), {"dct2-certified=1", "acdc-certified<=2"});
}

Outcome closure_algebra() {
  SuiteOptions o;
  o.rank_instances = 100;
  std::vector<PropertyResult> rs = suite_closure(o);
  for (const auto& r : rank_results())
    if (r.property == "block-toeplitz<=rkl+2k+2l") rs.push_back(r);
  Outcome out = all_pass(rs);
  out.detail = "tol 1e-8; " + out.detail;
  return out;
}

Outcome inverse_certificate() { return require(rank_results(), {"inverse-certificate<=2r"}); }

Outcome gradients() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rs = suite_gradients(SuiteOptions{});
  const double secs = seconds_since(t0);
  Outcome out = all_pass(rs);
  out.pass = out.pass && secs < 60.0;
  out.detail = "tol 1e-5, " + fmt("%.2f s", secs) + " (limit 60 s); " + out.detail;
  return out;
}

Outcome accounting() { return all_pass(suite_accounting(SuiteOptions{})); }

Outcome complexity_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  BenchConfig cfg;
  cfg.warmup = 3;
  cfg.repeats = 7;
  std::vector<double> sd;
  std::ostringstream detail;
  for (std::size_t lg = 12; lg <= 15; ++lg) {
    const std::size_t n = std::size_t{1} << lg;
    cfg.trials = lg <= 13 ? 100 : 40;
    const auto t = bench_cell(BenchClass::LdrSd, n, 1, cfg);
    sd.push_back(t ? *t : NAN);
    detail << "t(2^" << lg << ")=" << fmt("%.0f", sd.back()) << "ns ";
  }
  bool pass = true;
  for (std::size_t k = 0; k + 1 < sd.size(); ++k) {
    const double ratio = sd[k + 1] / sd[k];
    pass = pass && ratio < 3.0;
    detail << "ratio(2^" << 12 + k << ")=" << fmt("%.2f", ratio) << " ";
  }
  cfg.trials = 2;
  cfg.repeats = 3;
  const std::size_t n14 = std::size_t{1} << 14;
  const auto dense = bench_cell(BenchClass::Unstructured, n14, 1, cfg);
  if (!dense) {
    pass = false;
    detail << "dense baseline at 2^14 does not fit in memory";
  } else {
    const double speedup = *dense / sd[2];
    pass = pass && speedup > 1.0;
    detail << "speedup(2^14)=" << fmt("%.1f", speedup) << "x";
  }
  detail << "; reference " << fmt("%.1f", *reference_speedup(BenchClass::LdrSd, n14, 1)) << "x at 2^14 and "
         << fmt("%.1f", *reference_speedup(BenchClass::LdrSd, n14 * 2, 1)) << "x at 2^15 (r=1, not asserted)";
  const double secs = seconds_since(t0);
  pass = pass && secs < 600.0;
  detail << "; " << fmt("%.1f s", secs);
  return {pass, detail.str()};
}

struct SweepPoint {
  double lr = 0.0;
  bool diverged = false;
  double val = INFINITY;   // best validation loss
  double rel = INFINITY;   // relative matvec error of the best-by-validation model
  double min_rel = INFINITY;  // lowest relative error seen in any epoch
};

SweepPoint run_point(LayerClass cls, double lr, const Dataset& ds) {
  TrainConfig c;
  c.cls = cls;
  c.rank = 2;
  c.lr = lr;
  c.epochs = 200;
  c.batch_size = 50;
  c.seed = 0;
  SweepPoint p;
  p.lr = lr;
  try {
    const TrainResult r = train(c, ds);
    p.val = r.history[r.best_epoch - 1].val_metric;
    p.rel = frobenius_norm(r.best.W1.to_dense() - ds.target_matrix) / frobenius_norm(ds.target_matrix);
    for (const auto& h : r.history) p.min_rel = std::min(p.min_rel, h.rel_error);
  } catch (const NumericError&) {
    p.diverged = true;
  }
  return p;
}

Outcome learning_separation() {
  const auto t0 = std::chrono::steady_clock::now();
  const Dataset ds = synth_shift_task(64, 2000, 0.0, 0);
  const double floor = low_rank_floor(ds.target_matrix, 2);
  const double lrs[] = {1e-3, 3e-3, 1e-2};
  std::ostringstream detail;
  bool pass = true;
  for (LayerClass cls : {LayerClass::LdrSd, LayerClass::ToeplitzLike, LayerClass::LowRank}) {
    std::vector<SweepPoint> pts;
    for (double lr : lrs) pts.push_back(run_point(cls, lr, ds));
    const SweepPoint* best = nullptr;
    for (const auto& p : pts)
      if (!p.diverged && (!best || p.val < best->val)) best = &p;
    detail << to_string(cls) << ": ";
    if (!best) {
      pass = false;
      detail << "every lr diverged; ";
      continue;
    }
    if (cls == LayerClass::LowRank) {
      double lowest = INFINITY;
      for (const auto& p : pts)
        if (!p.diverged) lowest = std::min(lowest, p.min_rel);
      const bool ok = lowest >= 0.9 * floor;
      pass = pass && ok;
      detail << "lowest error over the sweep " << fmt("%.3g", lowest) << " vs 0.9 x floor " << fmt("%.3g", 0.9 * floor)
             << (ok ? "" : " BELOW FLOOR") << "; ";
    } else {
      const bool ok = best->rel < 1e-2;
      pass = pass && ok;
      detail << "lr " << fmt("%g", best->lr) << " error " << fmt("%.3g", best->rel) << (ok ? "" : " (needs < 1e-2)")
             << "; ";
    }
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 900.0;
  detail << "floor " << fmt("%.3g", floor) << ", " << fmt("%.1f s", secs) << " (limit 900 s)";
  return {pass, detail.str()};
}

Outcome equivariance() { return all_pass(suite_equivariance(SuiteOptions{})); }

#ifdef LDR_CLI_PATH
std::pair<int, std::string> run_cli(const std::string& args) {
  FILE* pipe = popen((std::string(LDR_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}
#endif

Outcome determinism_and_io() {
  const fs::path dir = fs::temp_directory_path() / "ldr_acceptance";
  fs::create_directories(dir);
  const fs::path cfg = dir / "train.json";
  std::ofstream(cfg) << R"({"class": "ldr-sd", "rank": 2, "lr": 0.01, "epochs": 5, "batch_size": 50, "seed": 11,
                           "dataset": {"type": "synthetic", "n": 32, "samples": 400}})";
  std::ostringstream detail;
  bool pass = true;

#ifdef LDR_CLI_PATH
  const fs::path ckpt = dir / "best.ckpt";
  const auto a = run_cli("train --config " + cfg.string() + " --save " + ckpt.string());
  const auto b = run_cli("train --config " + cfg.string());
  const bool same = a.first == 0 && b.first == 0 && a.second == b.second && !a.second.empty();
  pass = pass && same;
  detail << "CLI history " << (same ? "byte-identical" : "DIFFERS") << " across two runs (" << a.second.size()
         << " bytes); ";
#else
  const fs::path ckpt = dir / "best.ckpt";
  const TrainConfig tc = load_train_config(cfg.string());
  const std::string h1 = history_csv(train(tc).history), h2 = history_csv(train(tc).history);
  pass = pass && h1 == h2;
  save_checkpoint_file(ckpt.string(), train(tc).best);
  detail << "history " << (h1 == h2 ? "byte-identical" : "DIFFERS") << "; ";
#endif

  const ShlModel m = load_checkpoint_file(ckpt.string());
  const auto bytes = save_checkpoint(m);
  const ShlModel back = load_checkpoint(bytes);
  const bool exact = model_params(back) == model_params(m) && save_checkpoint(back) == bytes &&
                     back.W1.ldr == m.W1.ldr && dump_csv(back) == dump_csv(m);
  pass = pass && exact;
  detail << "checkpoint round trip " << (exact ? "exact" : "NOT exact") << " (" << bytes.size() << " bytes)";
  return {pass, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"classic rank bounds", classic_ranks},
      {"expressiveness (DCT-II, ACDC)", expressiveness},
      {"closure algebra", closure_algebra},
      {"inverse-operator certificate", inverse_certificate},
      {"gradient correctness", gradients},
      {"FFT-call accounting", accounting},
      {"complexity trend", complexity_trend},
      {"learning separation", learning_separation},
      {"equivariance", equivariance},
      {"determinism and I/O", determinism_and_io},
  };
  std::size_t passed = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    passed += o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " #" << k << " " << name << ": " << o.detail << std::endl;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed" << std::endl;
  return passed == criteria.size() ? 0 : 1;
}
