#pragma once

// Test-only reference computations. Vectors are plain integers (bit i =
// coefficient i) and nothing here calls into the library, so these can check
// it independently.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace oracle {

using Vec = std::uint32_t;

inline int rank_of(std::vector<Vec> rows) {
  int r = 0;
  for (int bit = 31; bit >= 0; --bit) {
    const Vec mask = Vec{1} << bit;
    auto it = std::find_if(rows.begin() + r, rows.end(), [&](Vec v) { return (v & mask) != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + r, it);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) != r && (rows[i] & mask)) rows[i] ^= rows[static_cast<std::size_t>(r)];
    }
    ++r;
  }
  return r;
}

/// Every XOR of a subset of `pool` with at most `gamma` members, by bitmask
/// enumeration of all subsets.
inline std::vector<bool> excluded_set(int k, const std::vector<Vec>& pool, int gamma) {
  std::vector<bool> out(std::size_t{1} << k, false);
  const std::uint64_t subsets = std::uint64_t{1} << pool.size();
  for (std::uint64_t s = 0; s < subsets; ++s) {
    if (std::popcount(s) > gamma) continue;
    Vec x = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if ((s >> i) & 1U) x ^= pool[i];
    }
    out[x] = true;
  }
  return out;
}

inline std::int64_t binom(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

/// q^k - sum_{i<=gamma} C(U,i) for q = 2, in plain 64-bit arithmetic.
inline std::int64_t feasibility(int k, int gamma, int transmitted) {
  std::int64_t v = std::int64_t{1} << k;
  for (int i = 0; i <= gamma; ++i) v -= binom(transmitted, i);
  return v;
}

struct Rational {
  std::int64_t num;
  std::int64_t den;

  Rational reduced() const {
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    const auto x = a.reduced();
    const auto y = b.reduced();
    return x.num == y.num && x.den == y.den;
  }
};

/// Calls visit(history) for every ordered history of u linearly independent
/// vectors the lossless constrained encoder can emit (each vector outside the
/// excluded set of its predecessors).
template <class Visit>
void for_each_independent_history(int k, int gamma, int u, Visit&& visit) {
  std::vector<Vec> history;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(history.size()) == u) {
      visit(history);
      return;
    }
    const auto excluded = excluded_set(k, history, gamma);
    for (Vec v = 0; v < (Vec{1} << k); ++v) {
      if (excluded[v]) continue;
      history.push_back(v);
      if (rank_of(history) == static_cast<int>(history.size())) self(self);
      history.pop_back();
    }
  };
  rec(rec);
}

/// Among the vectors the constrained encoder may emit after `history`, the
/// fraction lying in span(history).
inline Rational dependent_fraction(int k, const std::vector<Vec>& history, int gamma) {
  const auto excluded = excluded_set(k, history, gamma);
  const int r = rank_of(history);
  std::int64_t allowed = 0;
  std::int64_t dependent = 0;
  for (Vec v = 0; v < (Vec{1} << k); ++v) {
    if (excluded[v]) continue;
    ++allowed;
    auto ext = history;
    ext.push_back(v);
    if (rank_of(ext) == r) ++dependent;
  }
  return {dependent, allowed};
}

/// Excess distribution of uniform draws (zero vector included) starting at
/// rank `from` until rank `to` (default k): convolution of geometric dependent counts per level.
inline std::vector<double> uniform_tail(int k, int from, std::size_t len, int to = -1) {
  if (to < 0) to = k;
  std::vector<double> pmf(len, 0.0);
  pmf[0] = 1.0;
  for (int u = from; u < to; ++u) {
    const double pd = std::ldexp(1.0, u - k);
    std::vector<double> next(len, 0.0);
    for (std::size_t a = 0; a < len; ++a) {
      double w = 1.0 - pd;
      for (std::size_t f = 0; a + f < len; ++f, w *= pd) next[a + f] += pmf[a] * w;
    }
    pmf = std::move(next);
  }
  return pmf;
}

/// Exact excess PMF of a lossless unicast session with the full-history
/// gamma-constrained encoder (gamma >= 1, k <= 6).
///
/// With gamma >= 1 the history never repeats a vector while the feasibility
/// bound is positive, so the future depends only on the set of transmitted
/// vectors. Probability mass is pushed forward over those sets, one
/// transmission at a time. Once the bound is not positive the encoder draws
/// uniformly, which uniform_tail handles in closed form. With `stop_rank` set
/// to k - 1 the session ends at that rank, which models a blockACK: its reply
/// is always innovative, so it adds nothing to the excess. States below
/// `prune` probability are dropped; their mass is returned in `lost`.
struct ProcessPmf {
  std::vector<double> pmf;
  double lost = 0.0;
};

inline ProcessPmf exact_process_pmf(int k, int gamma, std::size_t len = 40, double prune = 1e-13, int stop_rank = -1) {
  if (stop_rank < 0) stop_rank = k;
  ProcessPmf out;
  out.pmf.assign(len, 0.0);
  std::unordered_map<std::uint64_t, double> layer{{0, 1.0}};
  while (!layer.empty()) {
    std::unordered_map<std::uint64_t, double> next;
    for (const auto& [set, prob] : layer) {
      std::vector<Vec> history;
      for (Vec v = 0; v < (Vec{1} << k); ++v) {
        if ((set >> v) & 1U) history.push_back(v);
      }
      const int transmitted = static_cast<int>(history.size());
      const int r = rank_of(history);
      const std::size_t excess = static_cast<std::size_t>(transmitted - r);
      if (excess >= len) {
        out.lost += prob;
        continue;
      }
      if (r == stop_rank) {
        out.pmf[excess] += prob;
        continue;
      }
      if (feasibility(k, gamma, transmitted) <= 0) {
        const auto tail = uniform_tail(k, r, len, stop_rank);
        for (std::size_t d = 0; d + excess < len; ++d) out.pmf[d + excess] += prob * tail[d];
        continue;
      }
      const auto excluded = excluded_set(k, history, gamma);
      std::vector<Vec> allowed;
      for (Vec v = 0; v < (Vec{1} << k); ++v) {
        if (!excluded[v]) allowed.push_back(v);
      }
      const double share = prob / static_cast<double>(allowed.size());
      for (Vec v : allowed) next[set | (std::uint64_t{1} << v)] += share;
    }
    layer.clear();
    for (const auto& [set, prob] : next) {
      if (prob < prune) {
        out.lost += prob;
      } else {
        layer.emplace(set, prob);
      }
    }
  }
  return out;
}

}  // namespace oracle
