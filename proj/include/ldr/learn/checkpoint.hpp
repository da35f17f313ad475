#pragma once

// Checkpoint layout (little-endian):
//
//   "LDRC", u32 version (1), u32 layer class, u32 has_head
//   W1: unstructured -> u64 rows, u64 cols, f64 data (column-major)
//       otherwise    -> an embedded LdrMatrix block ("LDRM", see serialize.hpp)
//   head (if has_head): u64 classes, u64 hidden, f64 W2 (column-major), f64 b2

#include <cstdint>
#include <cstdio>
#include <utility>
#include <string>
#include <vector>

#include "ldr/error.hpp"
#include "ldr/learn/model.hpp"
#include "ldr/serialize.hpp"

namespace ldr {

inline constexpr std::uint32_t kCheckpointVersion = 1;

inline std::vector<std::uint8_t> save_checkpoint(const ShlModel& m) {
  ByteWriter w;
  w.raw("LDRC");
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(m.W1.cls));
  w.u32(m.head ? 1 : 0);
  if (m.W1.structured()) {
    write_ldr(w, m.W1.ldr);
  } else {
    w.u64(m.W1.dense.rows());
    w.u64(m.W1.dense.cols());
    w.f64s(m.W1.dense.data());
  }
  if (m.head) {
    w.u64(m.head->W2.rows());
    w.u64(m.head->W2.cols());
    w.f64s(m.head->W2.data());
    w.f64s(m.head->b2);
  }
  return w.bytes();
}

inline ShlModel load_checkpoint(std::span<const std::uint8_t> bytes) {
  ByteReader rd(bytes);
  rd.expect("LDRC");
  std::size_t at = rd.offset();
  if (rd.u32("version") != kCheckpointVersion) throw FormatError("unsupported checkpoint version", at);
  at = rd.offset();
  const std::uint32_t cls = rd.u32("layer class");
  if (cls > static_cast<std::uint32_t>(LayerClass::LdrTd)) throw FormatError("unknown layer class " + std::to_string(cls), at);
  at = rd.offset();
  const std::uint32_t has_head = rd.u32("head flag");
  if (has_head > 1) throw FormatError("head flag must be 0 or 1", at);

  ShlModel m;
  m.W1.cls = static_cast<LayerClass>(cls);
  if (m.W1.structured()) {
    m.W1.ldr = read_ldr(rd);
  } else {
    at = rd.offset();
    const std::uint64_t rows = rd.u64("rows");
    const std::uint64_t cols = rd.u64("cols");
    if (rows == 0 || rows != cols || rows > (1u << 16)) throw FormatError("implausible dense layer shape", at);
    m.W1.dense = DenseMatrix(rows, cols, rd.f64s(rows * cols, "W1"));
  }
  if (has_head) {
    at = rd.offset();
    const std::uint64_t classes = rd.u64("classes");
    const std::uint64_t hidden = rd.u64("hidden");
    if (classes == 0 || hidden != m.W1.size() || classes > (1u << 20)) throw FormatError("head does not chain with W1", at);
    Head h;
    h.W2 = DenseMatrix(classes, hidden, rd.f64s(classes * hidden, "W2"));
    h.b2 = rd.f64s(classes, "b2");
    m.head = std::move(h);
  }
  if (!rd.at_end()) throw FormatError("trailing bytes after checkpoint", rd.offset());
  return m;
}

inline void save_checkpoint_file(const std::string& path, const ShlModel& m) { write_file_bytes(path, save_checkpoint(m)); }

inline ShlModel load_checkpoint_file(const std::string& path) { return load_checkpoint(read_file_bytes(path)); }

/// Named segments of an operator's learnable entries, in params() order.
inline std::vector<std::pair<std::string, std::size_t>> operator_segments(const Operator& op) {
  const std::size_t n = op.size();
  switch (op.kind()) {
    case OperatorKind::Shift: return {{"f", 1}};
    case OperatorKind::Subdiagonal: return {{"sub", n - 1}, {"corner", 1}};
    case OperatorKind::Tridiagonal: return {{"sub", n - 1}, {"diag", n}, {"super", n - 1}, {"corner_tr", 1}, {"corner_bl", 1}};
    case OperatorKind::Diagonal: return {{"diag", n}};
  }
  return {};
}

/// CSV rows (tensor, index, value) for the operators and generators of a
/// structured layer. Values use %.17g so a parse recovers them exactly.
/// Unstructured layers produce the header only.
inline std::string dump_csv(const ShlModel& m) {
  std::string out = "tensor,index,value\n";
  if (!m.W1.structured()) return out;
  char buf[64];
  auto emit = [&](const std::string& name, std::size_t idx, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += name + "," + std::to_string(idx) + "," + buf + "\n";
  };
  auto emit_op = [&](const std::string& prefix, const Operator& op) {
    const Vector p = op.params();
    std::size_t at = 0;
    for (const auto& [name, len] : operator_segments(op))
      for (std::size_t k = 0; k < len; ++k, ++at) emit(prefix + "." + name, k, p[at]);
  };
  emit_op("A", m.W1.ldr.op_a);
  emit_op("B", m.W1.ldr.op_b);
  for (std::size_t k = 0; k < m.W1.ldr.G.data().size(); ++k) emit("G", k, m.W1.ldr.G.data()[k]);
  for (std::size_t k = 0; k < m.W1.ldr.H.data().size(); ++k) emit("H", k, m.W1.ldr.H.data()[k]);
  return out;
}

}  // namespace ldr
