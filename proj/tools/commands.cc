// Copyright 2026 The qmac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "CLI11.hpp"
#include "qmac/channels.hpp"
#include "qmac/checks.hpp"
#include "qmac/gaussian.hpp"
#include "qmac/info.hpp"
#include "qmac/json_io.hpp"
#include "qmac/seqdecode.hpp"
#include "qmac/simuldecode.hpp"

namespace qmac::cli {
namespace {

bool looks_like_path(const std::string& spec) {
  return spec.find('/') != std::string::npos || spec.ends_with(".json") || std::filesystem::exists(spec);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  f.close();
  if (!f) throw IoError("cannot write " + path);
}

// Reference label for a channel input: A' -> A, otherwise R_<input>.
std::string reference_for(const KrausChannel& ch, const std::string& in) {
  std::string ref = in;
  if (!ref.empty() && ref.back() == '\'') {
    ref.pop_back();
  } else {
    ref = "R_" + in;
  }
  const auto& outs = ch.out_space().labels();
  const auto& ins = ch.in_space().labels();
  while (std::find(outs.begin(), outs.end(), ref) != outs.end() || std::find(ins.begin(), ins.end(), ref) != ins.end()) {
    ref = "R_" + ref;
  }
  return ref;
}

PureState shared_state(const KrausChannel& ch, std::size_t input, const std::vector<double>& schmidt) {
  const std::string& in = ch.in_space().labels()[input];
  const std::size_t d = ch.in_space().dims()[input];
  const std::string ref = reference_for(ch, in);
  if (schmidt.empty()) return max_entangled(ref, in, d);
  if (schmidt.size() != d) throw ValidationError("Schmidt coefficient count must equal the input dimension");
  return schmidt_state(ref, in, schmidt);
}

struct RegionArgs {
  double eta = 0.5;
  double nsa = 1;
  double nsb = 1;
  std::string format = "json";
  std::string out;
};

std::string region_csv(const RegionComparison& c, double eta) {
  return sweep_csv({SweepRow{eta, c.ea, c.ys, c.sum_gap}});
}

int cmd_gaussian_region(const RegionArgs& a, std::ostream& out) {
  BosonicMacParams p{a.eta, a.nsa, a.nsb};
  p.validate();
  RegionComparison c = compare_regions(p);
  if (a.format == "csv") {
    emit(region_csv(c, a.eta), a.out, out);
    return kOk;
  }
  Json j{{"eta", round12(p.eta)},
         {"nsa", round12(p.nsa)},
         {"nsb", round12(p.nsb)},
         {"closed_form", to_json(c.ea)},
         {"numeric", to_json(ea_bosonic_region_numeric(p))},
         {"yen_shapiro", to_json(c.ys)},
         {"sum_gap", round12(c.sum_gap)},
         {"contains", c.ea_contains_ys}};
  emit(dump(j), a.out, out);
  return kOk;
}

int cmd_compare_ys(const RegionArgs& a, std::ostream& out) {
  BosonicMacParams p{a.eta, a.nsa, a.nsb};
  p.validate();
  RegionComparison c = compare_regions(p);
  if (a.format == "csv") {
    emit(region_csv(c, a.eta), a.out, out);
  } else {
    emit(dump(to_json(c, p)), a.out, out);
  }
  return kOk;
}

struct SweepArgs {
  double nsa = 1000;
  double nsb = 10;
  std::size_t steps = 101;
  std::string out;
};

int cmd_gaussian_sweep(const SweepArgs& a, std::ostream& out) {
  if (!(a.nsa >= 0)) throw ValidationError("nsa out of range");
  if (!(a.nsb >= 0)) throw ValidationError("nsb out of range");
  emit(sweep_csv(region_sweep(a.nsa, a.nsb, eta_grid(a.steps))), a.out, out);
  return kOk;
}

struct SeqArgs {
  std::string channel = "identity:2";
  std::size_t n = 1;
  std::size_t messages = 2;
  double delta = 0.3;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<double> schmidt;
  std::string out;
};

int cmd_simulate_seq(const SeqArgs& a, std::ostream& out) {
  KrausChannel ch = load_channel(a.channel);
  if (ch.in_space().size() != 1) throw ValidationError("simulate-seq needs a single-sender channel");
  if (a.n == 0) throw ValidationError("n out of range");
  if (a.messages == 0) throw ValidationError("messages out of range");
  if (!(a.delta > 0)) throw ValidationError("delta out of range");
  PureState phi = shared_state(ch, 0, a.schmidt);
  SequentialReport rep = ea_sequential_protocol(ch, phi, a.n, a.messages, a.delta, a.seed, a.trials);
  Json j = to_json(rep);
  j["channel"] = a.channel;
  emit(dump(j), a.out, out);
  return kOk;
}

struct MacArgs {
  std::string channel = "cnot-mac";
  std::size_t n = 1;
  std::size_t L = 2;
  std::size_t M = 2;
  std::string mode = "simultaneous";
  double delta = 0.5;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::vector<double> phi;
  std::vector<double> psi;
  std::string out;
};

int cmd_simulate_mac(const MacArgs& a, std::ostream& out) {
  KrausChannel ch = load_channel(a.channel);
  if (!is_mac(ch)) throw ValidationError("simulate-mac needs a two-sender channel");
  if (a.n == 0) throw ValidationError("n out of range");
  if (a.L == 0) throw ValidationError("L out of range");
  if (a.M == 0) throw ValidationError("M out of range");
  if (!(a.delta > 0)) throw ValidationError("delta out of range");
  if (a.trials == 0) throw ValidationError("trials out of range");
  if (a.mode != "simultaneous" && a.mode != "successive" && a.mode != "both") {
    throw ValidationError("mode must be simultaneous, successive or both");
  }
  MacInstance inst = make_mac_instance(ch, shared_state(ch, 0, a.phi), shared_state(ch, 1, a.psi), a.n, a.delta);
  Json j;
  if (a.mode == "both") {
    j["channel"] = a.channel;
    j["successive"] = to_json(simulate_mac(inst, a.L, a.M, "successive", a.seed, a.trials));
    j["simultaneous"] = to_json(simulate_mac(inst, a.L, a.M, "simultaneous", a.seed, a.trials));
  } else {
    j = to_json(simulate_mac(inst, a.L, a.M, a.mode, a.seed, a.trials));
    j["channel"] = a.channel;
  }
  emit(dump(j), a.out, out);
  return kOk;
}

struct RegionSpecArgs {
  std::string channel = "cnot-mac";
  std::vector<double> phi;
  std::vector<double> psi;
  std::string out;
};

int cmd_ea_region(const RegionSpecArgs& a, std::ostream& out) {
  KrausChannel ch = load_channel(a.channel);
  if (!is_mac(ch)) throw ValidationError("ea-region needs a two-sender channel");
  PureState phi = shared_state(ch, 0, a.phi);
  PureState psi = shared_state(ch, 1, a.psi);
  Json j{{"channel", a.channel},
         {"ea_cc", to_json(ea_cc_region(ch, phi, psi))},
         {"ea_q", to_json(ea_q_region(ch, phi, psi))},
         {"lsd_q", to_json(lsd_q_region(ch, phi, psi))}};
  emit(dump(j), a.out, out);
  return kOk;
}

int cmd_check(const std::vector<int>& ids, std::ostream& out) {
  std::vector<CheckResult> results;
  if (ids.empty()) {
    results = run_all_criteria();
  } else {
    for (int id : ids) {
      if (id < 1 || id > kCriterionCount) throw ValidationError("criterion out of range");
      results.push_back(run_criterion(id));
    }
  }
  bool all = true;
  for (const auto& r : results) {
    out << format_result(r) << '\n';
    all = all && r.passed;
  }
  return all ? kOk : kCheckFailed;
}

void add_region_options(CLI::App* sub, RegionArgs& a) {
  sub->add_option("--eta", a.eta, "beamsplitter transmissivity in [0, 1]");
  sub->add_option("--nsa", a.nsa, "Alice's mean photon number");
  sub->add_option("--nsb", a.nsb, "Bob's mean photon number");
  sub->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", a.out, "output path (stdout if absent)");
}

}  // namespace

KrausChannel load_channel(const std::string& spec) {
  if (!looks_like_path(spec)) return named_channel(spec);
  std::ifstream f(spec);
  if (!f) throw IoError("cannot read " + spec);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed channel JSON in " + spec);
  }
  return channel_from_json(j);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement-assisted multiple access channel toolkit"};
  app.require_subcommand(1);

  RegionArgs region;
  auto* gr = app.add_subcommand("gaussian-region", "assisted bosonic MAC region with its numeric oracle");
  add_region_options(gr, region);
  RegionArgs compare;
  auto* cy = app.add_subcommand("compare-ys", "assisted region against the Yen-Shapiro outer bound");
  add_region_options(cy, compare);

  SweepArgs sweep;
  auto* gs = app.add_subcommand("gaussian-sweep", "CSV sweep of the bosonic regions over eta");
  gs->add_option("--nsa", sweep.nsa, "Alice's mean photon number");
  gs->add_option("--nsb", sweep.nsb, "Bob's mean photon number");
  gs->add_option("--steps", sweep.steps, "grid points including both endpoints");
  gs->add_option("--out", sweep.out, "output path (stdout if absent)");

  SeqArgs seq;
  auto* ss = app.add_subcommand("simulate-seq", "assisted sequential decoding over a single-sender channel");
  ss->add_option("--channel", seq.channel, "channel name or JSON path");
  ss->add_option("--n", seq.n, "block length");
  ss->add_option("--messages", seq.messages, "number of messages");
  ss->add_option("--delta", seq.delta, "typicality slack");
  ss->add_option("--trials", seq.trials, "Monte Carlo codebooks when exhaustive enumeration is too large");
  ss->add_option("--seed", seq.seed, "RNG seed");
  ss->add_option("--schmidt", seq.schmidt, "Schmidt probabilities of the shared state")->delimiter(',');
  ss->add_option("--out", seq.out, "output path (stdout if absent)");

  MacArgs mac;
  auto* sm = app.add_subcommand("simulate-mac", "successive or simultaneous decoding over a two-sender channel");
  sm->add_option("--channel", mac.channel, "channel name or JSON path");
  sm->add_option("--n", mac.n, "block length");
  sm->add_option("--L", mac.L, "Alice's message count");
  sm->add_option("--M", mac.M, "Bob's message count");
  sm->add_option("--mode", mac.mode, "simultaneous, successive or both");
  sm->add_option("--delta", mac.delta, "typicality slack");
  sm->add_option("--trials", mac.trials, "random code pairs");
  sm->add_option("--seed", mac.seed, "RNG seed");
  sm->add_option("--phi", mac.phi, "Schmidt probabilities shared with Alice")->delimiter(',');
  sm->add_option("--psi", mac.psi, "Schmidt probabilities shared with Bob")->delimiter(',');
  sm->add_option("--out", mac.out, "output path (stdout if absent)");

  RegionSpecArgs ea;
  auto* er = app.add_subcommand("ea-region", "finite-dimensional assisted region of a MAC");
  er->add_option("--channel", ea.channel, "channel name or JSON path");
  er->add_option("--phi", ea.phi, "Schmidt probabilities shared with Alice")->delimiter(',');
  er->add_option("--psi", ea.psi, "Schmidt probabilities shared with Bob")->delimiter(',');
  er->add_option("--out", ea.out, "output path (stdout if absent)");

  std::vector<int> criteria;
  auto* ck = app.add_subcommand("check", "run the acceptance criteria");
  ck->add_option("--criterion", criteria, "criterion numbers (all if absent)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*gr) return cmd_gaussian_region(region, out);
    if (*cy) return cmd_compare_ys(compare, out);
    if (*gs) return cmd_gaussian_sweep(sweep, out);
    if (*ss) return cmd_simulate_seq(seq, out);
    if (*sm) return cmd_simulate_mac(mac, out);
    if (*er) return cmd_ea_region(ea, out);
    if (*ck) return cmd_check(criteria, out);
  } catch (const DimensionCapError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qmac::cli
