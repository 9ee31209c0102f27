#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rlfc/encoder.hpp"
#include "rlfc/errors.hpp"
#include "rlfc/gf2.hpp"

namespace rlfc {

/// Payload row that follows its coefficient row through elimination.
struct PayloadRow {
  Bytes bytes;

  PayloadRow& operator^=(const PayloadRow& other) {
    xor_into(bytes, other.bytes);
    return *this;
  }
};

enum class ReceiveKind { innovative, dependent, complete };

struct ReceiveOutcome {
  ReceiveKind kind;
  std::size_t rank_after;
};

/// Receiver for one generation. Arrivals are eliminated immediately against
/// the reduced basis, payloads in lockstep, so at full rank every row is a
/// unit vector and its payload is the matching source packet.
class Decoder {
 public:
  Decoder(std::size_t k, std::size_t packet_length) : basis_(k), packet_length_(packet_length) {}

  std::size_t k() const noexcept { return basis_.size(); }
  std::size_t packet_length() const noexcept { return packet_length_; }
  std::size_t rank() const noexcept { return basis_.rank(); }
  bool complete() const noexcept { return basis_.full(); }
  std::size_t received_count() const noexcept { return received_; }
  const BasicReducedBasis<PayloadRow>& basis() const noexcept { return basis_; }

  ReceiveOutcome receive(const Codeword& cw) {
    if (cw.coeffs.size() != k()) throw DimensionError("codeword coefficient length does not match decoder");
    if (cw.payload.size() != packet_length_) throw DimensionError("codeword payload length does not match decoder");
    ++received_;
    // Dependent arrivals leave the basis untouched; their payload is dropped.
    const bool innovative = basis_.reduce_and_insert(cw.coeffs, PayloadRow{cw.payload}).innovative;
    if (!innovative) return {ReceiveKind::dependent, rank()};
    return {complete() ? ReceiveKind::complete : ReceiveKind::innovative, rank()};
  }

  /// The k source packets. Requires full rank.
  std::vector<Bytes> recover_packets() const {
    if (!complete()) throw InsufficientRank("decoder rank is below k");
    std::vector<Bytes> out;
    out.reserve(k());
    // Full rank and reduced form leave row i equal to e_i, sorted by pivot.
    for (const auto& row : basis_.rows()) out.push_back(row.payload.bytes);
    return out;
  }

  /// Coefficient vectors spanning what this receiver holds (the reduced pivot
  /// rows, not the raw arrivals).
  std::vector<CodingVector> blockack_report() const { return basis_.pivot_rows(); }

 private:
  BasicReducedBasis<PayloadRow> basis_;
  std::size_t packet_length_;
  std::size_t received_ = 0;
};

}  // namespace rlfc
