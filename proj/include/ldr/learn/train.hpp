#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/error.hpp"
#include "ldr/learn/config.hpp"
#include "ldr/learn/data.hpp"
#include "ldr/learn/model.hpp"

namespace ldr {

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_metric = 0.0;  // accuracy (classification) or loss (regression)
  double rel_error = std::numeric_limits<double>::quiet_NaN();  // ||W - T||_F / ||T||_F, synthetic only
};

struct TrainResult {
  std::vector<EpochRecord> history;
  ShlModel best;
  std::size_t best_epoch = 0;
  ShlModel final_model;
};

/// Mean over samples and outputs of the squared error; writes dL/dY.
inline double mse_loss(const DenseMatrix& pred, const DenseMatrix& target, DenseMatrix* grad) {
  const double denom = static_cast<double>(pred.data().size());
  double s = 0.0;
  if (grad) *grad = DenseMatrix(pred.rows(), pred.cols());
  for (std::size_t k = 0; k < pred.data().size(); ++k) {
    const double e = pred.data()[k] - target.data()[k];
    s += e * e;
    if (grad) grad->data()[k] = 2.0 * e / denom;
  }
  return s / denom;
}

/// Mean softmax cross-entropy over the batch; writes dL/dlogits.
inline double cross_entropy_loss(const DenseMatrix& logits, std::span<const int> labels, DenseMatrix* grad) {
  const std::size_t c = logits.rows(), b = logits.cols();
  if (labels.size() != b) throw SizeError("cross_entropy_loss: label count mismatch");
  if (grad) *grad = DenseMatrix(c, b);
  double total = 0.0;
  for (std::size_t j = 0; j < b; ++j) {
    const auto z = logits.col(j);
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - zmax);
    const auto y = static_cast<std::size_t>(labels[j]);
    if (y >= c) throw SizeError("cross_entropy_loss: label exceeds class count");
    total += -(z[y] - zmax - std::log(sum));
    if (grad) {
      for (std::size_t i = 0; i < c; ++i) (*grad)(i, j) = (std::exp(z[i] - zmax) / sum - (i == y ? 1.0 : 0.0)) / static_cast<double>(b);
    }
  }
  return total / static_cast<double>(b);
}

inline double accuracy(const DenseMatrix& logits, std::span<const int> labels) {
  if (labels.empty()) return 0.0;
  std::size_t hit = 0;
  for (std::size_t j = 0; j < logits.cols(); ++j) {
    const auto z = logits.col(j);
    const auto arg = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
    if (arg == labels[j]) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(labels.size());
}

inline ShlModel init_model(const TrainConfig& cfg, const Dataset& ds, std::mt19937_64& rng) {
  const std::size_t n = ds.train.inputs.rows();
  ShlModel m;
  m.W1 = make_layer(cfg.cls, n, cfg.rank, rng);
  if (!ds.is_regression()) {
    Head h{DenseMatrix(ds.num_classes, n), Vector(ds.num_classes, 0.0)};
    std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(static_cast<double>(n)));
    for (auto& v : h.W2.data()) v = nd(rng);
    m.head = std::move(h);
  }
  return m;
}

/// Loss (and metric) over a whole split, evaluated in fixed-size chunks.
inline std::pair<double, double> evaluate(const ShlModel& model, const Split& split, bool regression) {
  if (split.size() == 0) return {0.0, 0.0};
  const DenseMatrix out = shl_forward(model, split.inputs);
  if (regression) {
    const double l = mse_loss(out, split.targets, nullptr);
    return {l, l};
  }
  return {cross_entropy_loss(out, split.labels, nullptr), accuracy(out, split.labels)};
}

/// Minibatch SGD with classical momentum. Deterministic in cfg.seed. The
/// best model is chosen by validation metric (highest accuracy, or lowest
/// loss for regression).
inline TrainResult train(const TrainConfig& cfg, const Dataset& ds) {
  if (!(cfg.lr >= 0.0)) throw SchemaError("lr", "must be non-negative");
  if (cfg.batch_size == 0) throw SchemaError("batch_size", "must be at least 1");
  const bool regression = ds.is_regression();
  std::mt19937_64 rng(cfg.seed);
  ShlModel model = init_model(cfg, ds, rng);
  Vector params = model_params(model);
  Vector velocity(params.size(), 0.0);

  TrainResult result;
  result.best = model;
  double best_val = regression ? std::numeric_limits<double>::infinity() : -1.0;
  const double target_norm = regression && ds.target_matrix.rows() > 0 ? frobenius_norm(ds.target_matrix) : 0.0;

  const std::size_t count = ds.train.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < count; start += cfg.batch_size) {
      const std::size_t stop = std::min(count, start + cfg.batch_size);
      const std::span<const std::size_t> ids(order.data() + start, stop - start);
      const DenseMatrix xb = detail::gather_columns(ds.train.inputs, ids);
      ShlCache cache;
      const DenseMatrix out = shl_forward(model, xb, &cache);
      DenseMatrix d_out;
      double loss = 0.0;
      if (regression) {
        loss = mse_loss(out, detail::gather_columns(ds.train.targets, ids), &d_out);
      } else {
        std::vector<int> lb(ids.size());
        for (std::size_t k = 0; k < ids.size(); ++k) lb[k] = ds.train.labels[ids[k]];
        loss = cross_entropy_loss(out, lb, &d_out);
      }
      if (!std::isfinite(loss)) {
        throw NumericError("training diverged: non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                           std::to_string(batches + 1));
      }
      const Vector grads = shl_backward(model, cache, d_out);
      sgd_step(params, grads, cfg.lr, cfg.momentum, velocity);
      set_model_params(model, params);
      loss_sum += loss;
      ++batches;
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = batches ? loss_sum / static_cast<double>(batches) : 0.0;
    if (!std::isfinite(rec.train_loss)) throw NumericError("training diverged at epoch " + std::to_string(epoch));
    rec.val_metric = evaluate(model, ds.validation, regression).second;
    if (target_norm > 0.0) rec.rel_error = frobenius_norm(model.W1.to_dense() - ds.target_matrix) / target_norm;
    const bool better = regression ? rec.val_metric < best_val : rec.val_metric > best_val;
    if (better) {
      best_val = rec.val_metric;
      result.best = model;
      result.best_epoch = epoch;
    }
    result.history.push_back(rec);
  }
  result.final_model = std::move(model);
  return result;
}

inline Dataset load_dataset(const TrainConfig& cfg) {
  if (cfg.dataset.kind == DatasetSpec::Kind::Synthetic) {
    return synth_shift_task(cfg.dataset.n, cfg.dataset.samples, cfg.dataset.noise, cfg.seed);
  }
  return load_csv_dataset(cfg.dataset.path, cfg.dataset.label_column, cfg.seed);
}

inline TrainResult train(const TrainConfig& cfg) { return train(cfg, load_dataset(cfg)); }

/// History as CSV with a fixed header and locale-independent formatting.
inline std::string history_csv(const std::vector<EpochRecord>& history) {
  std::string out = "epoch,train_loss,val_metric,rel_error\n";
  char buf[128];
  for (const auto& r : history) {
    if (std::isnan(r.rel_error)) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,\n", r.epoch, r.train_loss, r.val_metric);
    } else {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", r.epoch, r.train_loss, r.val_metric, r.rel_error);
    }
    out += buf;
  }
  return out;
}

}  // namespace ldr
