#pragma once

// Monte Carlo sessions over iid Bernoulli erasure channels.
//
// One transmitter sends codewords of one generation to n receivers; each
// (transmission, receiver) pair is erased independently with probability p and
// the session ends once every receiver has rank k. With the blockACK scheme
// (unicast only) the receiver reports its basis once, when its rank first hits
// k-1; the report travels on a lossless control channel and every later
// transmission is built from that same report until the receiver completes.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "rlfc/decoder.hpp"
#include "rlfc/encoder.hpp"
#include "rlfc/errors.hpp"
#include "rlfc/random.hpp"
#include "rlfc/wire.hpp"

namespace rlfc {

inline constexpr std::size_t kSessionTransmissionCap = 1'000'000;

struct ChannelConfig {
  std::size_t k = 5;
  std::size_t payload_len = 1024;
  Scheme scheme = Scheme::gamma_constrained;
  std::size_t gamma = 0;
  double p = 0.0;
  std::size_t receivers = 1;
  std::uint64_t seed = 1;

  void validate() const {
    if (k < 1) throw ConfigError("k must be at least 1");
    if (k > 65535) throw ConfigError("k must fit in 16 bits");
    if (payload_len < 1 || payload_len > 65535) throw ConfigError("payload length must be in [1, 65535]");
    if (!(p >= 0.0 && p < 1.0)) throw ConfigError("erasure probability must be in [0, 1)");
    if (receivers < 1) throw ConfigError("at least one receiver is required");
    if (scheme == Scheme::blockack_assisted && receivers != 1) {
      throw ConfigError("the blockACK scheme is defined for unicast only (receivers = 1)");
    }
  }
};

struct SessionResult {
  std::size_t total_transmissions = 0;
  std::vector<std::size_t> per_receiver_received;
  std::vector<std::size_t> per_receiver_excess;
  std::vector<bool> blockack_sent;
};

/// Runs one session. If `trace` is given, every transmitted codeword is
/// appended to it.
template <class Gen>
SessionResult run_session(const ChannelConfig& cfg, Gen& gen, wire::Trace* trace = nullptr) {
  cfg.validate();
  Encoder encoder(SourceGeneration::random(cfg.k, cfg.payload_len, gen), cfg.scheme, cfg.gamma);
  std::vector<Decoder> decoders(cfg.receivers, Decoder(cfg.k, cfg.payload_len));
  SessionResult result;
  result.blockack_sent.assign(cfg.receivers, false);

  std::optional<std::vector<CodingVector>> report;
  std::size_t remaining = cfg.receivers;
  while (remaining > 0) {
    if (cfg.scheme == Scheme::blockack_assisted && !report && decoders.front().rank() + 1 == cfg.k) {
      report = decoders.front().blockack_report();
      result.blockack_sent.front() = true;
    }
    const Codeword cw = report ? encoder.next_blockack(*report) : encoder.next(gen);
    if (++result.total_transmissions > kSessionTransmissionCap) {
      throw Error("session exceeded the transmission safety cap");
    }
    if (trace) trace->codewords.push_back(cw);

    for (auto& dec : decoders) {
      if (dec.complete() || bernoulli(gen, cfg.p)) continue;
      if (dec.receive(cw).kind == ReceiveKind::complete) --remaining;
    }
  }

  for (const auto& dec : decoders) {
    if (dec.recover_packets() != encoder.generation().packets()) {
      throw Error("decoded packets differ from the source generation");
    }
    result.per_receiver_received.push_back(dec.received_count());
    result.per_receiver_excess.push_back(dec.received_count() - cfg.k);
  }
  return result;
}

struct SimReport {
  std::size_t runs = 0;
  double mean_transmissions = 0.0;
  double stddev = 0.0;
  double ci95_halfwidth = 0.0;
  double mean_excess = 0.0;
  std::size_t blockacks = 0;
  std::vector<std::uint64_t> excess_counts;  // pooled over runs and receivers
  std::vector<double> empirical_excess_pmf;

  std::size_t samples() const {
    std::uint64_t n = 0;
    for (auto c : excess_counts) n += c;
    return static_cast<std::size_t>(n);
  }
};

/// Aggregates `runs` sessions; run i draws from make_substream(cfg.seed, i).
/// `threads` = 0 picks the hardware concurrency. The report does not depend on
/// the thread count.
inline SimReport monte_carlo(const ChannelConfig& cfg, std::size_t runs, unsigned threads = 0) {
  cfg.validate();
  if (runs < 1) throw ConfigError("at least one run is required");
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));

  std::vector<SessionResult> sessions(runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs && !failed; i = next++) {
      try {
        Rng gen = make_substream(cfg.seed, i);
        sessions[i] = run_session(cfg, gen);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SimReport rep;
  rep.runs = runs;
  double sum = 0.0;
  for (const auto& s : sessions) sum += static_cast<double>(s.total_transmissions);
  rep.mean_transmissions = sum / static_cast<double>(runs);
  double ss = 0.0;
  for (const auto& s : sessions) {
    const double d = static_cast<double>(s.total_transmissions) - rep.mean_transmissions;
    ss += d * d;
  }
  rep.stddev = runs > 1 ? std::sqrt(ss / static_cast<double>(runs - 1)) : 0.0;
  rep.ci95_halfwidth = 1.96 * rep.stddev / std::sqrt(static_cast<double>(runs));

  double excess_sum = 0.0;
  for (const auto& s : sessions) {
    for (std::size_t e : s.per_receiver_excess) {
      if (e >= rep.excess_counts.size()) rep.excess_counts.resize(e + 1, 0);
      ++rep.excess_counts[e];
      excess_sum += static_cast<double>(e);
    }
    rep.blockacks += static_cast<std::size_t>(std::count(s.blockack_sent.begin(), s.blockack_sent.end(), true));
  }
  const double n = static_cast<double>(rep.samples());
  rep.mean_excess = excess_sum / n;
  for (auto c : rep.excess_counts) rep.empirical_excess_pmf.push_back(static_cast<double>(c) / n);
  return rep;
}

}  // namespace rlfc
