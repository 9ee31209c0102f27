// rlfc: model tables, erasure-channel simulations, and model/simulation
// comparison for gamma-constrained random linear fountain codes over GF(2).
//
// Exit codes: 0 success, 1 usage error, 2 comparison gate failed, 3 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rlfc/rlfc.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitGate = 2;
constexpr int kExitInternal = 3;

struct OutputFlags {
  std::string format = "csv";
  std::string out = "stdout";
};

void add_output_flags(CLI::App* cmd, OutputFlags& f) {
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "Output path, or 'stdout'");
}

void emit(const rlfc::Table& t, const OutputFlags& f) {
  const std::string text = rlfc::render(t, f.format);
  if (f.out == "stdout" || f.out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream os(f.out, std::ios::binary);
  if (!os) throw rlfc::ConfigError("cannot open output file " + f.out);
  os << text;
}

rlfc::Scheme parse_scheme(const std::string& s) {
  if (s == "traditional") return rlfc::Scheme::traditional;
  if (s == "gamma") return rlfc::Scheme::gamma_constrained;
  return rlfc::Scheme::blockack_assisted;
}

const char* kind_name(rlfc::ReceiveKind k) {
  switch (k) {
    case rlfc::ReceiveKind::innovative:
      return "innovative";
    case rlfc::ReceiveKind::dependent:
      return "dependent";
    case rlfc::ReceiveKind::complete:
      return "complete";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma-constrained random linear fountain codes over GF(2)"};
  app.require_subcommand(1);

  // analyze
  rlfc::AnalyzeOptions an;
  OutputFlags an_out;
  auto* analyze = app.add_subcommand("analyze", "Evaluate the analytical excess-codeword distribution");
  analyze->add_option("--k", an.k, "Generation size")->required()->check(CLI::Range(1, 4096));
  analyze->add_option("--q", an.q, "Field size")->check(CLI::Range(2, 1 << 30));
  analyze->add_option("--gamma", an.gamma, "Combination bound gamma");
  analyze->add_flag("--blockack", an.blockack, "Model the blockACK modification");
  analyze->add_option("--delta-max", an.delta_max, "Largest excess delta to print");
  analyze->add_flag("--baseline", an.baseline, "Add rows for the unmodified code");
  add_output_flags(analyze, an_out);

  // simulate
  rlfc::SimulateOptions sim;
  std::string sim_scheme = "gamma";
  std::string trace_path;
  OutputFlags sim_out;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo over a Bernoulli erasure channel");
  simulate->add_option("--scheme", sim_scheme, "Encoding scheme")
      ->check(CLI::IsMember({"traditional", "gamma", "gamma-blockack"}));
  simulate->add_option("--k", sim.channel.k, "Generation size")->required()->check(CLI::Range(1, 65535));
  simulate->add_option("--gamma", sim.channel.gamma, "Combination bound gamma");
  simulate->add_option("--p", sim.channel.p, "Erasure probability in [0, 1)");
  simulate->add_option("--receivers", sim.channel.receivers, "Number of receivers");
  simulate->add_option("--runs", sim.runs, "Independent sessions")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.channel.seed, "Master seed");
  simulate->add_option("--payload-len", sim.channel.payload_len, "Packet length in bytes");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--trace", trace_path, "Write the packet trace of run 0 to this file");
  add_output_flags(simulate, sim_out);

  // compare
  rlfc::CompareOptions cmp;
  std::string cmp_scheme = "gamma";
  OutputFlags cmp_out;
  auto* compare = app.add_subcommand("compare", "Check simulated excess PMF against the model (p = 0, unicast)");
  compare->add_option("--k", cmp.k, "Generation size")->required()->check(CLI::Range(1, 65535));
  compare->add_option("--gamma", cmp.gamma, "Combination bound gamma");
  compare->add_flag("--blockack", cmp.blockack, "Use the blockACK modification");
  compare->add_option("--scheme", cmp_scheme, "Scheme to validate")->check(CLI::IsMember({"gamma", "traditional"}));
  compare->add_option("--runs", cmp.runs, "Independent sessions")->check(CLI::PositiveNumber);
  compare->add_option("--seed", cmp.seed, "Master seed");
  compare->add_option("--payload-len", cmp.payload_len, "Packet length in bytes");
  compare->add_option("--threads", cmp.threads, "Worker threads (0 = all cores)");
  add_output_flags(compare, cmp_out);

  // replay
  std::string replay_path;
  OutputFlags replay_out;
  auto* replay = app.add_subcommand("replay", "Decode a packet trace and report each arrival");
  replay->add_option("trace", replay_path, "Trace file")->required()->check(CLI::ExistingFile);
  add_output_flags(replay, replay_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) {
      emit(rlfc::analyze_table(an), an_out);
    } else if (*simulate) {
      sim.channel.scheme = parse_scheme(sim_scheme);
      sim.channel.validate();
      if (!trace_path.empty()) {
        rlfc::wire::Trace trace;
        trace.header.k = static_cast<std::uint16_t>(sim.channel.k);
        trace.header.seed = sim.channel.seed;
        rlfc::Rng gen = rlfc::make_substream(sim.channel.seed, 0);
        rlfc::run_session(sim.channel, gen, &trace);
        std::ofstream os(trace_path, std::ios::binary);
        if (!os) throw rlfc::ConfigError("cannot open trace file " + trace_path);
        rlfc::wire::write_trace(os, trace);
      }
      emit(rlfc::simulate_table(sim), sim_out);
    } else if (*compare) {
      cmp.traditional = cmp_scheme == "traditional";
      if (cmp.traditional && cmp.blockack) throw rlfc::ConfigError("--blockack applies to the gamma scheme only");
      const auto res = rlfc::compare(cmp);
      emit(res.table, cmp_out);
      if (!res.passed) {
        std::cerr << "compare: simulated PMF deviates from the model by more than 3 standard errors (max |dev| = "
                  << res.max_abs_deviation << ")\n";
        return kExitGate;
      }
    } else if (*replay) {
      std::ifstream is(replay_path, std::ios::binary);
      const auto trace = rlfc::wire::read_trace(is);
      if (trace.codewords.empty()) throw rlfc::FormatError("trace holds no codewords");
      rlfc::Decoder dec(trace.header.k, trace.codewords.front().payload.size());
      rlfc::Table t;
      t.columns = {"seq", "outcome", "rank"};
      for (const auto& cw : trace.codewords) {
        const auto r = dec.receive(cw);
        t.add_row({static_cast<std::int64_t>(cw.seq), std::string(kind_name(r.kind)),
                   static_cast<std::int64_t>(r.rank_after)});
        if (r.kind == rlfc::ReceiveKind::complete) break;
      }
      emit(t, replay_out);
    }
  } catch (const rlfc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rlfc::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
