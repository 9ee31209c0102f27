#pragma once

// Bit-packed GF(2) vectors and matrices.
//
// Bit i of a CodingVector lives in word i / 64, bit i % 64. Bits at positions
// >= size() are always zero so whole-word comparisons and XORs stay valid.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rlfc/errors.hpp"

namespace rlfc {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class CodingVector {
 public:
  CodingVector() = default;
  explicit CodingVector(std::size_t length) : length_(length), words_(words_for(length), 0) {}

  /// Parses "1011": character i is coefficient i.
  static CodingVector from_string(std::string_view bits) {
    CodingVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw FormatError("coding vector string may only contain '0' and '1'");
      }
    }
    return v;
  }

  static CodingVector unit(std::size_t length, std::size_t index) {
    CodingVector v(length);
    v.set(index);
    return v;
  }

  /// Builds a vector from raw words, clearing any bits past `length`.
  static CodingVector from_words(std::size_t length, std::span<const Word> words) {
    if (words.size() != words_for(length)) throw DimensionError("word count does not match length");
    CodingVector v(length);
    std::copy(words.begin(), words.end(), v.words_.begin());
    v.clear_tail();
    return v;
  }

  std::size_t size() const noexcept { return length_; }
  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> mutable_words() noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  bool is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  std::size_t popcount() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::optional<std::size_t> lowest_set_bit() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return std::nullopt;
  }

  /// Zeroes bits past size(); call after writing whole words.
  void clear_tail() noexcept {
    const std::size_t rem = length_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
  }

  CodingVector& operator^=(const CodingVector& other) {
    if (other.length_ != length_) throw DimensionError("XOR of coding vectors with different lengths");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  friend CodingVector operator^(CodingVector a, const CodingVector& b) {
    a ^= b;
    return a;
  }

  friend bool operator==(const CodingVector&, const CodingVector&) = default;

  std::string to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

 private:
  std::size_t length_ = 0;
  std::vector<Word> words_;
};

/// Row-major matrix over GF(2); every row has `cols()` entries.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t cols) : cols_(cols) {}
  BitMatrix(std::size_t cols, std::vector<CodingVector> rows) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw DimensionError("matrix rows must all have the same length");
    }
  }

  static BitMatrix from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<CodingVector> out;
    for (auto r : rows) out.push_back(CodingVector::from_string(r));
    const std::size_t cols = out.empty() ? 0 : out.front().size();
    return BitMatrix(cols, std::move(out));
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.rows_.push_back(CodingVector::unit(n, i));
    return m;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const CodingVector& row(std::size_t i) const { return rows_.at(i); }
  std::span<const CodingVector> row_span() const noexcept { return rows_; }

  void push_row(CodingVector r) {
    if (r.size() != cols_) throw DimensionError("row length does not match matrix width");
    rows_.push_back(std::move(r));
  }

  bool test(std::size_t r, std::size_t c) const { return rows_.at(r).test(c); }

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product with mismatched inner dimension");
    BitMatrix out(b.cols());
    for (const auto& ar : a.rows_) {
      CodingVector acc(b.cols());
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (ar.test(j)) acc ^= b.rows_[j];
      }
      out.rows_.push_back(std::move(acc));
    }
    return out;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<CodingVector> rows_;
};

/// Dimension of the row span, by batch elimination on a copy.
inline std::size_t rank(const BitMatrix& m) {
  std::vector<CodingVector> rows(m.row_span().begin(), m.row_span().end());
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < rows.size(); ++col) {
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                           [col](const CodingVector& v) { return v.test(col); });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(r), it);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i].test(col)) rows[i] ^= rows[r];
    }
    ++r;
  }
  return r;
}

/// Gauss-Jordan inverse. Returns nullopt when the matrix is singular.
inline std::optional<BitMatrix> invert(const BitMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() != n) throw DimensionError("only square matrices can be inverted");
  std::vector<CodingVector> lhs(m.row_span().begin(), m.row_span().end());
  std::vector<CodingVector> rhs;
  rhs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rhs.push_back(CodingVector::unit(n, i));

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !lhs[pivot].test(col)) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(lhs[col], lhs[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != col && lhs[i].test(col)) {
        lhs[i] ^= lhs[col];
        rhs[i] ^= rhs[col];
      }
    }
  }
  return BitMatrix(n, std::move(rhs));
}

/// Payload type for bases that track coefficients only.
struct NoPayload {
  NoPayload& operator^=(const NoPayload&) noexcept { return *this; }
};

/// Incrementally maintained reduced row-echelon basis.
///
/// Each row has a distinct pivot column holding its lowest set bit, and no
/// other row has that column set. Rows are kept sorted by pivot. A payload is
/// carried alongside each row and receives exactly the same XORs as the
/// coefficients, which is what lets the decoder eliminate online.
template <class Payload = NoPayload>
class BasicReducedBasis {
 public:
  struct Row {
    CodingVector coeffs;
    Payload payload;
    std::size_t pivot;
  };

  struct InsertResult {
    bool innovative;
    CodingVector residual;
  };

  explicit BasicReducedBasis(std::size_t k) : k_(k) {}

  std::size_t size() const noexcept { return k_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == k_; }
  std::span<const Row> rows() const noexcept { return rows_; }

  /// Eliminates every pivot column from `v` (and mirrors the XORs on `payload`).
  void reduce(CodingVector& v, Payload& payload) const {
    check_length(v);
    for (const auto& row : rows_) {
      if (v.test(row.pivot)) {
        v ^= row.coeffs;
        payload ^= row.payload;
      }
    }
  }

  bool in_span(CodingVector v) const {
    Payload scratch{};
    reduce(v, scratch);
    return v.is_zero();
  }

  InsertResult reduce_and_insert(CodingVector v, Payload payload = Payload{}) {
    reduce(v, payload);
    const auto pivot = v.lowest_set_bit();
    if (!pivot) return {false, std::move(v)};

    for (auto& row : rows_) {
      if (row.coeffs.test(*pivot)) {
        row.coeffs ^= v;
        row.payload ^= payload;
      }
    }
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), *pivot,
                                [](const Row& r, std::size_t p) { return r.pivot < p; });
    CodingVector residual = v;
    rows_.insert(pos, Row{std::move(v), std::move(payload), *pivot});
    return {true, std::move(residual)};
  }

  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> cols;
    cols.reserve(rows_.size());
    for (const auto& r : rows_) cols.push_back(r.pivot);
    return cols;
  }

  /// Lowest column that is not a pivot, if the basis is not full.
  std::optional<std::size_t> missing_pivot() const noexcept {
    std::size_t expect = 0;
    for (const auto& r : rows_) {
      if (r.pivot != expect) return expect;
      ++expect;
    }
    if (expect < k_) return expect;
    return std::nullopt;
  }

  std::vector<CodingVector> pivot_rows() const {
    std::vector<CodingVector> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.coeffs);
    return out;
  }

 private:
  void check_length(const CodingVector& v) const {
    if (v.size() != k_) throw DimensionError("coding vector length does not match basis");
  }

  std::size_t k_;
  std::vector<Row> rows_;
};

using ReducedBasis = BasicReducedBasis<>;

namespace detail {

inline bool xor_hits(std::span<const CodingVector> pool, std::size_t start, std::size_t remaining,
                     std::vector<Word>& acc) {
  for (std::size_t i = start; i < pool.size(); ++i) {
    const auto w = pool[i].words();
    bool zero = true;
    for (std::size_t j = 0; j < acc.size(); ++j) {
      acc[j] ^= w[j];
      zero = zero && acc[j] == 0;
    }
    const bool hit = zero || (remaining > 1 && xor_hits(pool, i + 1, remaining - 1, acc));
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] ^= w[j];
    if (hit) return true;
  }
  return false;
}

}  // namespace detail

/// True iff `candidate` is the XOR of some subset of `transmitted` with at most
/// `gamma` members. The empty subset counts, so a zero candidate always matches.
inline bool bounded_combination_member(const CodingVector& candidate, std::span<const CodingVector> transmitted,
                                       std::size_t gamma) {
  for (const auto& t : transmitted) {
    if (t.size() != candidate.size()) throw DimensionError("transmitted vector length does not match candidate");
  }
  if (candidate.is_zero()) return true;
  if (gamma == 0) return false;
  std::vector<Word> acc(candidate.words().begin(), candidate.words().end());
  return detail::xor_hits(transmitted, 0, std::min(gamma, transmitted.size()), acc);
}

}  // namespace rlfc
