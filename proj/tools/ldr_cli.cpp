// ldr: correctness suites, matvec benchmark, training runs and checkpoint dumps.
//
// CSV goes to stdout, diagnostics to stderr. Exit codes: 0 success,
// 1 property failure (or a numeric failure during training), 2 usage or
// configuration error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldr/ldr.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsageError = 2;

struct CheckArgs {
  std::string only;
  double tol = 1e-8;
  std::size_t instances = 10;
  std::uint64_t seed = 0;
  bool inject_fault = false;
};

int cmd_check(const CheckArgs& a) {
  ldr::SuiteOptions opt;
  opt.tol = a.tol;
  opt.oracle_instances = a.instances;
  opt.seed = a.seed;
  ldr::testing::corrupt_fft_twiddle.store(a.inject_fault);
  std::cout << ldr::suite_csv_header();
  std::vector<std::string> failing;
  std::size_t total = 0, passed = 0;
  ldr::run_suites(opt, a.only, [&](const ldr::PropertyResult& r) {
    std::cout << ldr::suite_csv_row(r) << std::flush;
    ++total;
    if (r.pass) {
      ++passed;
    } else {
      std::cerr << "FAIL " << r.suite << "/" << r.property << ": " << r.detail << "\n";
      if (std::find(failing.begin(), failing.end(), r.suite) == failing.end()) failing.push_back(r.suite);
    }
  });
  std::cerr << "check: " << passed << "/" << total << " properties passed";
  if (!failing.empty()) {
    std::cerr << "; failing suites:";
    for (const auto& s : failing) std::cerr << " " << s;
  }
  std::cerr << "\n";
  return failing.empty() ? kOk : kPropertyFailure;
}

struct BenchArgs {
  std::vector<std::size_t> sizes, ranks;
  std::vector<std::string> classes;
  std::size_t trials = 1000, repeats = 10, warmup = 3;
  std::uint64_t seed = 0;
};

int cmd_bench(const BenchArgs& a) {
  ldr::BenchConfig cfg;
  if (!a.sizes.empty()) cfg.sizes = a.sizes;
  if (!a.ranks.empty()) cfg.ranks = a.ranks;
  if (!a.classes.empty()) {
    cfg.classes.clear();
    for (const auto& c : a.classes) {
      const auto parsed = ldr::parse_bench_class(c);
      if (!parsed) {
        std::cerr << "bench: unknown class '" << c << "' (unstructured, low-rank, toeplitz-like, ldr-sd)\n";
        return kUsageError;
      }
      cfg.classes.push_back(*parsed);
    }
  }
  for (std::size_t n : cfg.sizes) {
    if (!ldr::is_power_of_two(n) || n < 2) {
      std::cerr << "bench: size " << n << " is not a power of two >= 2\n";
      return kUsageError;
    }
  }
  for (std::size_t r : cfg.ranks) {
    if (r == 0) {
      std::cerr << "bench: ranks must be at least 1\n";
      return kUsageError;
    }
  }
  if (a.trials == 0 || a.repeats == 0) {
    std::cerr << "bench: --trials and --repeats must be at least 1\n";
    return kUsageError;
  }
  cfg.trials = a.trials;
  cfg.repeats = a.repeats;
  cfg.warmup = a.warmup;
  cfg.seed = a.seed;
  std::cerr << "bench: " << cfg.warmup << " untimed warm-up calls per cell; time_ns = min over " << cfg.repeats
            << " repeats of (block of " << cfg.trials << " calls) / " << cfg.trials << "\n";
  std::cout << ldr::bench_csv_header() << std::flush;
  ldr::run_bench(cfg, [&](const ldr::BenchRow& row) {
    std::cout << ldr::bench_csv_row(row, cfg) << std::flush;
    if (row.status != "ok") std::cerr << "bench: " << ldr::to_string(row.cls) << " n=" << row.n << " " << row.status << "\n";
  });
  return kOk;
}

int cmd_train(const std::string& config_path, const std::string& save_path) {
  ldr::TrainConfig cfg = ldr::load_train_config(config_path);
  ldr::apply_seed_override(cfg);
  const ldr::TrainResult res = ldr::train(cfg);
  std::cout << ldr::history_csv(res.history);
  std::cerr << "train: best validation metric at epoch " << res.best_epoch << "\n";
  if (!save_path.empty()) {
    ldr::save_checkpoint_file(save_path, res.best);
    std::cerr << "train: saved best checkpoint to " << save_path << "\n";
  }
  return kOk;
}

int cmd_dump(const std::string& path) {
  const ldr::ShlModel m = ldr::load_checkpoint_file(path);
  std::cout << ldr::dump_csv(m);
  if (!m.W1.structured()) std::cerr << "dump: unstructured checkpoint has no structured operators\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned low displacement rank matrices: checks, benchmarks, training"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* sc_check = app.add_subcommand("check", "Run the property suites");
  sc_check->add_option("--only", check.only, "Run a single suite (oracle-equivalence, ranks, closure, gradient, equivariance, accounting)");
  sc_check->add_option("--tol", check.tol, "Relative tolerance for oracle and closure checks")->check(CLI::PositiveNumber);
  sc_check->add_option("--instances", check.instances, "Random instances per oracle cell")->check(CLI::PositiveNumber);
  sc_check->add_option("--seed", check.seed, "Base seed");
  sc_check->add_flag("--inject-fft-fault", check.inject_fault, "Corrupt one FFT twiddle (test hook)")->group("");

  BenchArgs bench;
  auto* sc_bench = app.add_subcommand("bench", "Time matrix-vector products (CSV)");
  sc_bench->add_option("--sizes", bench.sizes, "Matrix sizes (powers of two)");
  sc_bench->add_option("--ranks", bench.ranks, "Displacement ranks");
  sc_bench->add_option("--classes", bench.classes, "Classes: unstructured, low-rank, toeplitz-like, ldr-sd");
  sc_bench->add_option("--trials", bench.trials, "Calls per timed block");
  sc_bench->add_option("--repeats", bench.repeats, "Timed blocks; the fastest is reported");
  sc_bench->add_option("--warmup", bench.warmup, "Untimed warm-up calls per cell");
  sc_bench->add_option("--seed", bench.seed, "Seed for the random instances");

  std::string config_path, save_path;
  auto* sc_train = app.add_subcommand("train", "Train a single-hidden-layer model (history CSV)");
  sc_train->add_option("--config", config_path, "JSON config file")->required();
  sc_train->add_option("--save", save_path, "Write the best-by-validation checkpoint here");

  std::string dump_path;
  auto* sc_dump = app.add_subcommand("dump", "Print learnable operator and generator entries (CSV)");
  sc_dump->add_option("checkpoint", dump_path, "Checkpoint file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*sc_check) return cmd_check(check);
    if (*sc_bench) return cmd_bench(bench);
    if (*sc_train) return cmd_train(config_path, save_path);
    if (*sc_dump) return cmd_dump(dump_path);
  } catch (const ldr::SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ldr::ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ldr::FormatError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ldr::ClassError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ldr::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kPropertyFailure;
  } catch (const ldr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
