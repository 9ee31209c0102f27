#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rlfc/analytics.hpp"
#include "rlfc/errors.hpp"
#include "rlfc/gf2.hpp"
#include "rlfc/random.hpp"

namespace rlfc {

using Bytes = std::vector<std::uint8_t>;

inline void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  if (dst.size() != src.size()) throw DimensionError("payload lengths differ");
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

/// The k source packets of one generation, all of the same length.
class SourceGeneration {
 public:
  explicit SourceGeneration(std::vector<Bytes> packets) : packets_(std::move(packets)) {
    if (packets_.empty()) throw ConfigError("a generation needs at least one packet");
    const std::size_t len = packets_.front().size();
    if (len == 0) throw ConfigError("packets must be at least one byte long");
    for (const auto& p : packets_) {
      if (p.size() != len) throw DimensionError("all packets of a generation must have the same length");
    }
  }

  template <class Gen>
  static SourceGeneration random(std::size_t k, std::size_t length, Gen& gen) {
    std::vector<Bytes> packets(k, Bytes(length));
    for (auto& p : packets) {
      for (std::size_t i = 0; i < length; i += 8) {
        const std::uint64_t w = gen();
        for (std::size_t b = 0; b < 8 && i + b < length; ++b) p[i + b] = static_cast<std::uint8_t>(w >> (8 * b));
      }
    }
    return SourceGeneration(std::move(packets));
  }

  std::size_t k() const noexcept { return packets_.size(); }
  std::size_t packet_length() const noexcept { return packets_.front().size(); }
  const std::vector<Bytes>& packets() const noexcept { return packets_; }
  const Bytes& packet(std::size_t i) const { return packets_.at(i); }

 private:
  std::vector<Bytes> packets_;
};

struct Codeword {
  CodingVector coeffs;
  Bytes payload;
  std::uint32_t seq = 0;
  // Set when the constrained rule was bypassed: either the feasibility bound
  // was not positive or the rejection budget ran out.
  bool unconstrained = false;
};

/// XOR of the packets selected by `coeffs`, i.e. G * S^T over GF(2).
inline Bytes combine_payloads(const CodingVector& coeffs, const SourceGeneration& generation) {
  if (coeffs.size() != generation.k()) throw DimensionError("coding vector length does not match generation size");
  Bytes out(generation.packet_length(), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs.test(i)) xor_into(out, generation.packet(i));
  }
  return out;
}

enum class Scheme { traditional, gamma_constrained, blockack_assisted };

constexpr std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::traditional:
      return "traditional";
    case Scheme::gamma_constrained:
      return "gamma";
    case Scheme::blockack_assisted:
      return "gamma-blockack";
  }
  return "?";
}

/// Transmitter for one generation. Keeps the full history of emitted coding
/// vectors, which the gamma constraint is checked against.
class Encoder {
 public:
  Encoder(SourceGeneration generation, Scheme scheme, std::size_t gamma = 0)
      : generation_(std::move(generation)), scheme_(scheme), gamma_(gamma) {}

  const SourceGeneration& generation() const noexcept { return generation_; }
  std::size_t k() const noexcept { return generation_.k(); }
  Scheme scheme() const noexcept { return scheme_; }
  std::size_t gamma() const noexcept { return gamma_; }
  std::span<const CodingVector> history() const noexcept { return history_; }

  /// Records `v` as already transmitted, e.g. when resuming a session.
  void append_history(CodingVector v) {
    if (v.size() != k()) throw DimensionError("coding vector length does not match generation size");
    history_.push_back(std::move(v));
  }

  /// Next codeword under the configured scheme. The blockACK scheme behaves
  /// like the constrained scheme until a report is supplied to next_blockack.
  template <class Gen>
  Codeword next(Gen& gen) {
    return scheme_ == Scheme::traditional ? next_traditional(gen) : next_gamma_constrained(gen);
  }

  template <class Gen>
  Codeword next_traditional(Gen& gen) {
    return emit(random_vector(k(), gen), false);
  }

  template <class Gen>
  Codeword next_gamma_constrained(Gen& gen) {
    const BigInt bound = feasibility_bound(k(), 2, gamma_, history_.size());
    if (bound <= 0) return emit(random_vector(k(), gen), true);

    const std::size_t budget = rejection_budget(bound);
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
      CodingVector candidate = random_vector(k(), gen);
      if (!bounded_combination_member(candidate, history_, gamma_)) return emit(std::move(candidate), false);
    }
    return emit(random_vector(k(), gen), true);
  }

  /// Codeword outside the span of `receiver_basis`: the unit vector at the
  /// lowest column that is not a pivot of the reduced report.
  Codeword next_blockack(std::span<const CodingVector> receiver_basis) {
    ReducedBasis basis(k());
    for (const auto& v : receiver_basis) basis.reduce_and_insert(v);
    const auto column = basis.missing_pivot();
    if (!column) throw NothingToSend("receiver basis already has full rank");
    return emit(CodingVector::unit(k(), *column), false);
  }

  /// Attempts allowed before falling back to an unconstrained draw:
  /// max(1000, 64 * 2^k / max(1, bound)).
  std::size_t rejection_budget(const BigInt& bound) const {
    const double space = std::ldexp(1.0, static_cast<int>(k()));
    const double denom = std::max(1.0, bound.convert_to<double>());
    const double cap = 64.0 * space / denom;
    if (cap > 1e12) return static_cast<std::size_t>(1e12);
    return std::max<std::size_t>(1000, static_cast<std::size_t>(std::ceil(cap)));
  }

 private:
  Codeword emit(CodingVector coeffs, bool unconstrained) {
    Codeword cw;
    cw.payload = combine_payloads(coeffs, generation_);
    cw.seq = static_cast<std::uint32_t>(history_.size());
    cw.unconstrained = unconstrained;
    history_.push_back(coeffs);
    cw.coeffs = std::move(coeffs);
    return cw;
  }

  SourceGeneration generation_;
  Scheme scheme_;
  std::size_t gamma_;
  std::vector<CodingVector> history_;
};

}  // namespace rlfc
