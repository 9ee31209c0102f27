#pragma once

// Byte formats for codewords and packet traces. All integers little-endian.
//
// Codeword: k (u16) | seq (u32) | ceil(k/8) coefficient bytes | L (u16) | payload
//   Coefficient i is bit i % 8 of byte i / 8.
// Trace: "RLFC" | version (u16) | k (u16) | seed (u64), then codewords back to back.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <span>
#include <vector>

#include "rlfc/encoder.hpp"
#include "rlfc/errors.hpp"

namespace rlfc::wire {

inline constexpr std::array<char, 4> kTraceMagic{'R', 'L', 'F', 'C'};
inline constexpr std::uint16_t kTraceVersion = 1;
inline constexpr std::size_t kTraceHeaderSize = 16;

namespace detail {

inline void put_le(Bytes& out, std::uint64_t value, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint64_t le(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
    pos_ += width;
    return v;
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw FormatError("truncated input");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::size_t encoded_size(std::size_t k, std::size_t payload_length) {
  return 2 + 4 + (k + 7) / 8 + 2 + payload_length;
}

inline void append_codeword(Bytes& out, const Codeword& cw) {
  const std::size_t k = cw.coeffs.size();
  if (k > std::numeric_limits<std::uint16_t>::max()) throw FormatError("k does not fit in 16 bits");
  if (cw.payload.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw FormatError("payload length does not fit in 16 bits");
  }
  detail::put_le(out, k, 2);
  detail::put_le(out, cw.seq, 4);
  const std::size_t first = out.size();
  out.resize(first + (k + 7) / 8, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (cw.coeffs.test(i)) out[first + i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  }
  detail::put_le(out, cw.payload.size(), 2);
  out.insert(out.end(), cw.payload.begin(), cw.payload.end());
}

inline Bytes encode_codeword(const Codeword& cw) {
  Bytes out;
  out.reserve(encoded_size(cw.coeffs.size(), cw.payload.size()));
  append_codeword(out, cw);
  return out;
}

struct Decoded {
  Codeword codeword;
  std::size_t consumed;
};

/// Parses one codeword from the front of `in`.
inline Decoded decode_codeword(std::span<const std::uint8_t> in) {
  detail::Reader r(in);
  const auto k = static_cast<std::size_t>(r.le(2));
  Codeword cw;
  cw.seq = static_cast<std::uint32_t>(r.le(4));
  cw.coeffs = CodingVector(k);
  const auto bits = r.take((k + 7) / 8);
  for (std::size_t i = 0; i < k; ++i) {
    if ((bits[i / 8] >> (i % 8)) & 1U) cw.coeffs.set(i);
  }
  if (k % 8 != 0 && (bits.back() >> (k % 8)) != 0) throw FormatError("coefficient padding bits must be zero");
  const auto len = static_cast<std::size_t>(r.le(2));
  const auto payload = r.take(len);
  cw.payload.assign(payload.begin(), payload.end());
  return {std::move(cw), r.position()};
}

struct TraceHeader {
  std::uint16_t version = kTraceVersion;
  std::uint16_t k = 0;
  std::uint64_t seed = 0;
};

inline Bytes encode_trace_header(const TraceHeader& h) {
  Bytes out(kTraceMagic.begin(), kTraceMagic.end());
  detail::put_le(out, h.version, 2);
  detail::put_le(out, h.k, 2);
  detail::put_le(out, h.seed, 8);
  return out;
}

struct Trace {
  TraceHeader header;
  std::vector<Codeword> codewords;
};

inline Bytes encode_trace(const Trace& t) {
  Bytes out = encode_trace_header(t.header);
  for (const auto& cw : t.codewords) append_codeword(out, cw);
  return out;
}

inline Trace decode_trace(std::span<const std::uint8_t> in) {
  detail::Reader r(in);
  const auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kTraceMagic.begin())) throw FormatError("not an RLFC trace");
  Trace t;
  t.header.version = static_cast<std::uint16_t>(r.le(2));
  if (t.header.version != kTraceVersion) throw FormatError("unsupported trace version");
  t.header.k = static_cast<std::uint16_t>(r.le(2));
  t.header.seed = r.le(8);
  std::size_t pos = r.position();
  while (pos < in.size()) {
    auto d = decode_codeword(in.subspan(pos));
    if (d.codeword.coeffs.size() != t.header.k) throw FormatError("codeword k differs from trace header");
    pos += d.consumed;
    t.codewords.push_back(std::move(d.codeword));
  }
  return t;
}

inline void write_trace(std::ostream& os, const Trace& t) {
  const Bytes bytes = encode_trace(t);
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline Trace read_trace(std::istream& is) {
  Bytes bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_trace(bytes);
}

}  // namespace rlfc::wire
