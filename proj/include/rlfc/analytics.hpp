#pragma once

// Closed-form decoding model for the gamma-constrained code and the plain
// random linear fountain code over GF(q).
//
// Rank level u (0 <= u < k) is the receiver rank before an arrival. Under the
// constrained encoder the excluded set at level u is every XOR of at most gamma
// of the u transmitted vectors, so
//
//   P(D_u) = (q^u - X_u) / (q^k - X_u),   X_u = sum_{i<=gamma} C(u,i) (q-1)^i.
//
// The upper binomial index is u (the number of transmitted vectors), not gamma:
// with gamma, the k=3, gamma=1, u=2 case would give 1/3 while enumerating the
// encoder's allowed vectors gives 1/5.
//
// Levels 0..gamma are dependent-free. The number of dependent arrivals at each
// remaining level is geometric, so the total excess is a sum of independent
// geometrics and its PMF is P(H_k) * h_delta(P(D_{gamma+1}), ..., P(D_B)) with
// h_delta the complete homogeneous symmetric polynomial. B = k-1, or k-2 when a
// blockACK makes the last level dependency-free.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rlfc/errors.hpp"

namespace rlfc {

using BigInt = boost::multiprecision::cpp_int;

struct ModelParams {
  std::size_t k = 1;
  std::uint64_t q = 2;
  std::size_t gamma = 0;
  bool blockack = false;
  std::size_t delta_max = 64;
  double tail_tolerance = 1e-9;

  void validate() const {
    if (k < 1) throw ConfigError("k must be at least 1");
    if (q < 2) throw ConfigError("q must be at least 2");
    if (!(tail_tolerance >= 0.0)) throw ConfigError("tail tolerance must be non-negative");
  }
};

struct ExcessDistribution {
  std::vector<double> pmf;  // pmf[d] = P(decode after exactly k + d receptions)
  std::vector<double> cdf;
  double expected_total = 0.0;
  double expected_excess = 0.0;
  double truncated_mass = 0.0;
  bool tail_warning = false;
};

/// Left side of the feasibility test q^k - sum_{i<=gamma} C(U,i)(q-1)^i.
inline BigInt feasibility_bound(std::size_t k, std::uint64_t q, std::size_t gamma, std::size_t transmitted) {
  BigInt total = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(k));
  BigInt binom = 1;  // C(U, i)
  BigInt weight = 1;  // (q-1)^i
  for (std::size_t i = 0; i <= gamma && i <= transmitted; ++i) {
    if (i > 0) {
      binom = binom * (transmitted - i + 1) / i;
      weight *= (q - 1);
    }
    total -= binom * weight;
  }
  return total;
}

/// Number of vectors the constrained encoder excludes at level u, X_u.
inline double excluded_count(std::size_t u, std::uint64_t q, std::size_t gamma) {
  double binom = 1.0;
  double weight = 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i <= gamma && i <= u; ++i) {
    if (i > 0) {
      binom = binom * static_cast<double>(u - i + 1) / static_cast<double>(i);
      weight *= static_cast<double>(q - 1);
    }
    sum += binom * weight;
  }
  return sum;
}

/// Probability that an arrival at rank u is linearly dependent.
inline double prob_dependent(std::size_t u, const ModelParams& p) {
  p.validate();
  if (u >= p.k) throw ConfigError("rank level must be below k");
  if (u <= p.gamma) return 0.0;
  const double qd = static_cast<double>(p.q);
  const double excluded = excluded_count(u, p.q, p.gamma);
  const double num = std::pow(qd, static_cast<double>(u)) - excluded;
  const double den = std::pow(qd, static_cast<double>(p.k)) - excluded;
  return num / den;
}

namespace detail {

inline std::vector<double> dependent_levels(const ModelParams& p) {
  std::vector<double> levels;
  const std::size_t first = p.gamma + 1;
  const std::size_t reduce = p.blockack ? 2 : 1;
  if (p.k < reduce) return levels;
  const std::size_t last = p.k - reduce;
  for (std::size_t u = first; u <= last; ++u) levels.push_back(prob_dependent(u, p));
  return levels;
}

inline void finish(ExcessDistribution& d, std::size_t k, double tail_tolerance) {
  d.cdf.resize(d.pmf.size());
  double running = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < d.pmf.size(); ++i) {
    running += d.pmf[i];
    d.cdf[i] = running;
    total += static_cast<double>(k + i) * d.pmf[i];
  }
  d.expected_total = total;
  d.expected_excess = total - static_cast<double>(k);
  d.truncated_mass = std::max(0.0, 1.0 - running);
  d.tail_warning = d.truncated_mass > tail_tolerance;
}

}  // namespace detail

/// PMF/CDF of the excess receptions needed to reach full rank.
///
/// When no level can produce a dependent arrival (k <= gamma + 1, or the
/// blockACK variant removes the only one) the PMF is the single entry {1}.
inline ExcessDistribution excess_distribution(const ModelParams& p) {
  p.validate();
  const auto levels = detail::dependent_levels(p);
  ExcessDistribution d;
  if (levels.empty()) {
    d.pmf = {1.0};
    detail::finish(d, p.k, p.tail_tolerance);
    return d;
  }

  double full_rank = 1.0;
  for (double x : levels) full_rank *= 1.0 - x;

  // h[d] after processing levels 0..j: complete homogeneous sum of degree d.
  std::vector<double> h(p.delta_max + 1, 0.0);
  h[0] = 1.0;
  for (double x : levels) {
    for (std::size_t deg = 1; deg <= p.delta_max; ++deg) h[deg] += x * h[deg - 1];
  }
  d.pmf.resize(p.delta_max + 1);
  for (std::size_t deg = 0; deg <= p.delta_max; ++deg) d.pmf[deg] = full_rank * h[deg];
  detail::finish(d, p.k, p.tail_tolerance);
  return d;
}

/// Expected excess as a sum of geometric means, sum P(D_u) / (1 - P(D_u)).
inline double expected_excess_closed_form(const ModelParams& p) {
  p.validate();
  double sum = 0.0;
  for (double x : detail::dependent_levels(p)) sum += x / (1.0 - x);
  return sum;
}

/// Plain random linear fountain code with uniform coefficients (zero vector
/// included): P(rank k after k + d receptions) = prod_{i<k} (1 - q^(i - k - d)).
inline ExcessDistribution baseline_traditional(std::size_t k, std::uint64_t q, std::size_t delta_max,
                                               double tail_tolerance = 1e-9) {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (q < 2) throw ConfigError("q must be at least 2");
  const double qd = static_cast<double>(q);
  ExcessDistribution d;
  d.pmf.resize(delta_max + 1);
  double prev = 0.0;
  for (std::size_t delta = 0; delta <= delta_max; ++delta) {
    double cdf = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      cdf *= 1.0 - std::pow(qd, static_cast<double>(i) - static_cast<double>(k + delta));
    }
    d.pmf[delta] = cdf - prev;
    prev = cdf;
  }
  detail::finish(d, k, tail_tolerance);
  return d;
}

/// Expected excess of the plain code, sum_{j=1..k} 1 / (q^j - 1).
inline double baseline_expected_excess_closed_form(std::size_t k, std::uint64_t q) {
  double sum = 0.0;
  for (std::size_t j = 1; j <= k; ++j) sum += 1.0 / (std::pow(static_cast<double>(q), static_cast<double>(j)) - 1.0);
  return sum;
}

}  // namespace rlfc
