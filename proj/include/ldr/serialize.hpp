#pragma once

// Binary layout of an LdrMatrix (all integers and reals little-endian):
//
//   offset  size  field
//   0       4     magic "LDRM"
//   4       4     u32 format version (1)
//   8       8     u64 n
//   16      8     u64 r
//   24      4     u32 tag of op_a (0 shift, 1 subdiagonal, 2 tridiagonal, 3 diagonal)
//   28      4     u32 tag of op_b
//   32      ...   f64 op_a learnable entries (Operator::params order)
//           ...   f64 op_b learnable entries
//           ...   f64 G, n*r values, column-major
//           ...   f64 H, n*r values, column-major
//
// Entry counts per tag: shift 1, subdiagonal n, tridiagonal 3n, diagonal n.

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldr/displacement.hpp"
#include "ldr/error.hpp"
#include "ldr/operator.hpp"

namespace ldr {

class ByteWriter {
 public:
  void raw(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  void f64s(std::span<const double> vs) {
    for (double v : vs) f64(v);
  }

  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ == bytes_.size(); }

  void expect(std::string_view magic) {
    need(magic.size(), "magic");
    if (std::memcmp(bytes_.data() + pos_, magic.data(), magic.size()) != 0) {
      throw FormatError("bad magic, expected \"" + std::string(magic) + "\"", pos_);
    }
    pos_ += magic.size();
  }

  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::uint64_t u64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }

  double f64(const char* what) { return std::bit_cast<double>(u64(what)); }

  std::vector<double> f64s(std::size_t count, const char* what) {
    if (count > (bytes_.size() - pos_) / 8) throw FormatError(std::string("truncated ") + what, pos_);
    std::vector<double> out(count);
    for (auto& v : out) v = f64(what);
    return out;
  }

 private:
  void need(std::size_t count, const char* what) const {
    if (bytes_.size() - pos_ < count) throw FormatError(std::string("truncated ") + what, pos_);
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

inline constexpr std::uint32_t kLdrFormatVersion = 1;

namespace detail {

inline std::size_t param_count_for(std::uint32_t tag, std::size_t n) {
  switch (static_cast<OperatorKind>(tag)) {
    case OperatorKind::Shift: return 1;
    case OperatorKind::Subdiagonal: return n;
    case OperatorKind::Tridiagonal: return 3 * n;
    case OperatorKind::Diagonal: return n;
  }
  return 0;
}

/// A zero-valued operator of the given kind, used as a template for with_params.
inline Operator blank_operator(OperatorKind kind, std::size_t n) {
  switch (kind) {
    case OperatorKind::Shift: return Shift{n, 0.0};
    case OperatorKind::Subdiagonal: return Subdiagonal{std::vector<double>(n - 1, 0.0), 0.0};
    case OperatorKind::Tridiagonal:
      return TridiagonalCorners{std::vector<double>(n - 1, 0.0), std::vector<double>(n, 0.0),
                                std::vector<double>(n - 1, 0.0), 0.0, 0.0};
    case OperatorKind::Diagonal: return Diagonal{std::vector<double>(n, 0.0)};
  }
  throw ClassError("unknown operator kind");
}

}  // namespace detail

inline void write_ldr(ByteWriter& w, const LdrMatrix& m) {
  m.validate();
  w.raw("LDRM");
  w.u32(kLdrFormatVersion);
  w.u64(m.size());
  w.u64(m.rank());
  w.u32(static_cast<std::uint32_t>(m.op_a.kind()));
  w.u32(static_cast<std::uint32_t>(m.op_b.kind()));
  w.f64s(m.op_a.params());
  w.f64s(m.op_b.params());
  w.f64s(m.G.data());
  w.f64s(m.H.data());
}

inline LdrMatrix read_ldr(ByteReader& rd) {
  rd.expect("LDRM");
  const std::size_t version_at = rd.offset();
  if (rd.u32("version") != kLdrFormatVersion) throw FormatError("unsupported format version", version_at);
  const std::size_t n_at = rd.offset();
  const std::uint64_t n = rd.u64("n");
  const std::uint64_t r = rd.u64("r");
  if (n == 0 || r == 0 || n > (std::uint64_t{1} << 26) || r > (std::uint64_t{1} << 20)) throw FormatError("implausible n or r", n_at);
  std::uint32_t tags[2];
  for (auto& t : tags) {
    const std::size_t at = rd.offset();
    t = rd.u32("operator tag");
    if (t > 3) throw FormatError("unknown operator tag " + std::to_string(t), at);
  }
  const auto pa = rd.f64s(detail::param_count_for(tags[0], n), "op_a entries");
  const auto pb = rd.f64s(detail::param_count_for(tags[1], n), "op_b entries");
  auto g = rd.f64s(n * r, "G");
  auto h = rd.f64s(n * r, "H");
  Operator a = detail::blank_operator(static_cast<OperatorKind>(tags[0]), n).with_params(pa);
  Operator b = detail::blank_operator(static_cast<OperatorKind>(tags[1]), n).with_params(pb);
  return LdrMatrix(std::move(a), std::move(b), DenseMatrix(n, r, std::move(g)), DenseMatrix(n, r, std::move(h)));
}

inline std::vector<std::uint8_t> serialize(const LdrMatrix& m) {
  ByteWriter w;
  write_ldr(w, m);
  return w.bytes();
}

inline LdrMatrix deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader rd(bytes);
  LdrMatrix m = read_ldr(rd);
  if (!rd.at_end()) throw FormatError("trailing bytes after LdrMatrix", rd.offset());
  return m;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace ldr
