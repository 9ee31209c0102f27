#pragma once

// Table builders behind the command-line tool: model tables, simulation
// summaries, and the model-vs-simulation comparison gate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "rlfc/analytics.hpp"
#include "rlfc/channel_sim.hpp"
#include "rlfc/table.hpp"

namespace rlfc {

struct AnalyzeOptions {
  std::size_t k = 1;
  std::uint64_t q = 2;
  std::size_t gamma = 0;
  bool blockack = false;
  std::size_t delta_max = 8;
  bool baseline = false;
};

/// Horizon used for expectations regardless of how many rows are printed.
inline constexpr std::size_t kExpectationHorizon = 64;

inline Table analyze_table(const AnalyzeOptions& o) {
  Table t;
  t.columns = {"model", "k", "q", "gamma", "blockack", "delta", "pmf", "cdf", "expected_total", "expected_excess"};
  const std::size_t horizon = std::max(kExpectationHorizon, o.delta_max);

  auto add = [&](const std::string& model, std::size_t gamma, bool blockack, const ExcessDistribution& d) {
    const std::size_t last = std::min(o.delta_max + 1, d.pmf.size());
    for (std::size_t delta = 0; delta < last; ++delta) {
      t.add_row({model, static_cast<std::int64_t>(o.k), static_cast<std::int64_t>(o.q),
                 static_cast<std::int64_t>(gamma), static_cast<std::int64_t>(blockack),
                 static_cast<std::int64_t>(delta), d.pmf[delta], d.cdf[delta], d.expected_total,
                 d.expected_excess});
    }
  };

  ModelParams mp{o.k, o.q, o.gamma, o.blockack, horizon};
  add(o.blockack ? "gamma-blockack" : "gamma", o.gamma, o.blockack, excess_distribution(mp));
  if (o.baseline) add("traditional", 0, false, baseline_traditional(o.k, o.q, horizon));
  return t;
}

struct SimulateOptions {
  ChannelConfig channel;
  std::size_t runs = 500;
  unsigned threads = 0;
};

inline Table simulate_table(const SimulateOptions& o, const SimReport& r) {
  Table t;
  t.columns = {"scheme", "k", "gamma", "p", "receivers", "runs", "seed", "mean_tx", "stddev", "ci95", "mean_excess"};
  const auto& c = o.channel;
  t.add_row({std::string(to_string(c.scheme)), static_cast<std::int64_t>(c.k), static_cast<std::int64_t>(c.gamma),
             c.p, static_cast<std::int64_t>(c.receivers), static_cast<std::int64_t>(r.runs),
             std::to_string(c.seed), r.mean_transmissions, r.stddev, r.ci95_halfwidth, r.mean_excess});
  return t;
}

inline Table simulate_table(const SimulateOptions& o) {
  return simulate_table(o, monte_carlo(o.channel, o.runs, o.threads));
}

struct CompareOptions {
  std::size_t k = 1;
  std::size_t gamma = 0;
  bool blockack = false;
  bool traditional = false;
  std::size_t runs = 500;
  std::uint64_t seed = 1;
  std::size_t payload_len = 16;
  unsigned threads = 0;
};

struct CompareResult {
  Table table;
  bool passed = true;
  double max_abs_deviation = 0.0;
};

/// Bins with fewer than this many expected samples are pooled into one tail bin.
inline constexpr double kMinExpectedCount = 5.0;
inline constexpr double kGateSigmas = 3.0;

/// Lossless unicast simulation against the model PMF. Each bin must sit within
/// three binomial standard errors, sqrt(p (1 - p) / n), of the model value.
inline CompareResult compare(const CompareOptions& o) {
  ChannelConfig cfg;
  cfg.k = o.k;
  cfg.gamma = o.gamma;
  cfg.scheme = o.traditional ? Scheme::traditional
               : o.blockack  ? Scheme::blockack_assisted
                             : Scheme::gamma_constrained;
  cfg.p = 0.0;
  cfg.receivers = 1;
  cfg.seed = o.seed;
  cfg.payload_len = o.payload_len;
  const SimReport sim = monte_carlo(cfg, o.runs, o.threads);

  const ExcessDistribution model =
      o.traditional ? baseline_traditional(o.k, 2, kExpectationHorizon)
                    : excess_distribution(ModelParams{o.k, 2, o.gamma, o.blockack, kExpectationHorizon});

  CompareResult res;
  auto& t = res.table;
  t.columns = {"scheme",       "k",       "q",         "gamma",     "blockack",      "p",
               "receivers",    "runs",    "seed",      "bin",       "delta",         "pmf",
               "cdf",          "empirical_pmf", "abs_deviation", "tolerance", "expected_total", "expected_excess",
               "mean_tx",      "stddev",  "ci95",      "mean_excess"};

  const double n = static_cast<double>(sim.samples());
  auto empirical = [&](std::size_t delta) {
    return delta < sim.empirical_excess_pmf.size() ? sim.empirical_excess_pmf[delta] : 0.0;
  };
  auto add = [&](const char* bin, std::size_t delta, double pmf, double cdf, double emp) {
    const double dev = std::abs(emp - pmf);
    const double pc = std::clamp(pmf, 0.0, 1.0);  // rounding can push the model past 1
    const double tol = kGateSigmas * std::sqrt(pc * (1.0 - pc) / n);
    res.max_abs_deviation = std::max(res.max_abs_deviation, dev);
    if (dev > tol + 1e-12) res.passed = false;
    t.add_row({std::string(to_string(cfg.scheme)), static_cast<std::int64_t>(o.k), std::int64_t{2},
               static_cast<std::int64_t>(o.traditional ? 0 : o.gamma), static_cast<std::int64_t>(o.blockack),
               0.0, std::int64_t{1}, static_cast<std::int64_t>(o.runs), std::to_string(o.seed), std::string(bin),
               static_cast<std::int64_t>(delta), pmf, cdf, emp, dev, tol, model.expected_total,
               model.expected_excess, sim.mean_transmissions, sim.stddev, sim.ci95_halfwidth, sim.mean_excess});
  };

  std::size_t delta = 0;
  double cdf = 0.0;
  for (; delta < model.pmf.size() && n * model.pmf[delta] >= kMinExpectedCount; ++delta) {
    cdf += model.pmf[delta];
    add("eq", delta, model.pmf[delta], model.cdf[delta], empirical(delta));
  }
  std::uint64_t tail = 0;
  for (std::size_t d = delta; d < sim.excess_counts.size(); ++d) tail += sim.excess_counts[d];
  add("ge", delta, std::max(0.0, 1.0 - cdf), 1.0, static_cast<double>(tail) / n);
  return res;
}

}  // namespace rlfc
