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

#include "qmac/json_io.hpp"

#include <cmath>
#include <cstdlib>

#include "qmac/channels.hpp"

namespace qmac {
namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("bad field ") + key);
  }
}

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ValidationError("matrix entry must be a number or [re, im]");
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw ValidationError("Kraus operator has the wrong number of rows");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("Kraus operator has the wrong number of columns");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry_from_json(j[r][c]);
    }
  }
  return m;
}

FactorSpace space_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("factor list must be a non-empty array");
  std::vector<std::string> labels;
  std::vector<std::size_t> dims;
  for (const auto& f : j) {
    labels.push_back(field<std::string>(f, "label"));
    dims.push_back(field<std::size_t>(f, "dim"));
  }
  return FactorSpace(labels, dims);
}

Json space_to_json(const FactorSpace& s) {
  Json out = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back({{"label", s.labels()[i]}, {"dim", s.dims()[i]}});
  return out;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

Json to_json(const RateRegion& r) {
  Json v = Json::array();
  for (const auto& p : r.vertices) v.push_back({round12(p[0]), round12(p[1])});
  return Json{{"r1", round12(r.r1)},         {"r2", round12(r.r2)},         {"sum", round12(r.sum)},
              {"raw_r1", round12(r.raw_r1)}, {"raw_r2", round12(r.raw_r2)}, {"raw_sum", round12(r.raw_sum)},
              {"vertices", v}};
}

RateRegion region_from_json(const Json& j) {
  RateRegion r;
  r.r1 = field<double>(j, "r1");
  r.r2 = field<double>(j, "r2");
  r.sum = field<double>(j, "sum");
  r.raw_r1 = field<double>(j, "raw_r1");
  r.raw_r2 = field<double>(j, "raw_r2");
  r.raw_sum = field<double>(j, "raw_sum");
  for (const auto& p : field<Json>(j, "vertices")) r.vertices.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return r;
}

Json to_json(const EaCodeBook& b) {
  Json entries = Json::array();
  for (const auto& s : b.entries) {
    Json e = Json::array();
    for (const auto& t : s.entries) e.push_back({t[0], t[1], t[2]});
    entries.push_back(e);
  }
  return Json{{"seed", b.seed}, {"message_count", b.message_count}, {"entries", entries}};
}

EaCodeBook codebook_from_json(const Json& j) {
  EaCodeBook b;
  b.seed = field<std::uint64_t>(j, "seed");
  b.message_count = field<std::size_t>(j, "message_count");
  for (const auto& e : field<Json>(j, "entries")) {
    HwIndex s;
    for (const auto& t : e) s.entries.push_back({t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(), t.at(2).get<std::size_t>()});
    b.entries.push_back(s);
  }
  if (b.entries.size() != b.message_count) throw ValidationError("codebook size does not match message_count");
  return b;
}

Json to_json(const PackingConstants& c) {
  return Json{{"epsilon", round12(c.epsilon)},
              {"inv_d", round12(c.inv_d)},
              {"inv_D", round12(c.inv_D)},
              {"commutator_residual", round12(c.commutator_residual)}};
}

PackingConstants packing_constants_from_json(const Json& j) {
  PackingConstants c;
  c.epsilon = field<double>(j, "epsilon");
  c.inv_d = field<double>(j, "inv_d");
  c.inv_D = field<double>(j, "inv_D");
  c.commutator_residual = field<double>(j, "commutator_residual");
  return c;
}

Json to_json(const SequentialReport& r) {
  return Json{{"n", r.n},
              {"messages", r.message_count},
              {"delta", round12(r.delta)},
              {"seed", r.seed},
              {"trials", r.trials},
              {"exhaustive", r.exhaustive},
              {"success_mean", round12(r.success_mean)},
              {"success_stderr", round12(r.success_stderr)},
              {"bound",
               {{"value", round12(r.bound.value)},
                {"growth", round12(r.bound.growth)},
                {"positive", r.bound.positive},
                {"eps_ok", r.bound.eps_ok}}},
              {"constants", to_json(r.constants)}};
}

SequentialReport sequential_report_from_json(const Json& j) {
  SequentialReport r;
  r.n = field<std::size_t>(j, "n");
  r.message_count = field<std::size_t>(j, "messages");
  r.delta = field<double>(j, "delta");
  r.seed = field<std::uint64_t>(j, "seed");
  r.trials = field<std::size_t>(j, "trials");
  r.exhaustive = field<bool>(j, "exhaustive");
  r.success_mean = field<double>(j, "success_mean");
  r.success_stderr = field<double>(j, "success_stderr");
  Json b = field<Json>(j, "bound");
  r.bound.value = field<double>(b, "value");
  r.bound.growth = field<double>(b, "growth");
  r.bound.positive = field<bool>(b, "positive");
  r.bound.eps_ok = field<bool>(b, "eps_ok");
  r.constants = packing_constants_from_json(field<Json>(j, "constants"));
  return r;
}

Json to_json(const ErrorBreakdown& b) {
  return Json{{"direct", round12(b.direct)},     {"cross_l", round12(b.cross_l)},
              {"cross_m", round12(b.cross_m)},   {"cross_lm", round12(b.cross_lm)},
              {"gentle", round12(b.gentle)},     {"bound", round12(b.bound())}};
}

ErrorBreakdown breakdown_from_json(const Json& j) {
  ErrorBreakdown b;
  b.direct = field<double>(j, "direct");
  b.cross_l = field<double>(j, "cross_l");
  b.cross_m = field<double>(j, "cross_m");
  b.cross_lm = field<double>(j, "cross_lm");
  b.gentle = field<double>(j, "gentle");
  return b;
}

Json to_json(const MacReport& r) {
  Json seeds = Json::array();
  for (const auto& s : r.seeds) seeds.push_back({s[0], s[1]});
  Json errs = Json::array();
  for (double e : r.trial_errors) errs.push_back(round12(e));
  Json out{{"mode", r.mode},
           {"n", r.n},
           {"L", r.L},
           {"M", r.M},
           {"delta", round12(r.delta)},
           {"seed", r.seed},
           {"trials", r.trials},
           {"avg_error", round12(r.avg_error)},
           {"avg_error_stderr", round12(r.avg_error_stderr)},
           {"max_error_randomized", round12(r.max_error_randomized)},
           {"epsilon_measured", round12(r.epsilon_measured)},
           {"povm_sum_max", round12(r.povm_sum_max)},
           {"seeds", seeds},
           {"trial_errors", errs}};
  if (r.mode == "simultaneous") out["error_terms"] = to_json(r.breakdown);
  return out;
}

MacReport mac_report_from_json(const Json& j) {
  MacReport r;
  r.mode = field<std::string>(j, "mode");
  r.n = field<std::size_t>(j, "n");
  r.L = field<std::size_t>(j, "L");
  r.M = field<std::size_t>(j, "M");
  r.delta = field<double>(j, "delta");
  r.seed = field<std::uint64_t>(j, "seed");
  r.trials = field<std::size_t>(j, "trials");
  r.avg_error = field<double>(j, "avg_error");
  r.avg_error_stderr = field<double>(j, "avg_error_stderr");
  r.max_error_randomized = field<double>(j, "max_error_randomized");
  r.epsilon_measured = field<double>(j, "epsilon_measured");
  r.povm_sum_max = field<double>(j, "povm_sum_max");
  for (const auto& s : field<Json>(j, "seeds")) r.seeds.push_back({s.at(0).get<std::uint64_t>(), s.at(1).get<std::uint64_t>()});
  for (const auto& e : field<Json>(j, "trial_errors")) r.trial_errors.push_back(e.get<double>());
  if (j.contains("error_terms")) r.breakdown = breakdown_from_json(j.at("error_terms"));
  return r;
}

Json to_json(const RegionComparison& c, const BosonicMacParams& p) {
  Json verts = Json::array();
  for (const auto& v : c.vertices) verts.push_back({{"r1", round12(v.r1)}, {"r2", round12(v.r2)}, {"inside", v.inside}});
  return Json{{"eta", round12(p.eta)},
              {"nsa", round12(p.nsa)},
              {"nsb", round12(p.nsb)},
              {"ea", to_json(c.ea)},
              {"yen_shapiro", to_json(c.ys)},
              {"sum_gap", round12(c.sum_gap)},
              {"contains", c.ea_contains_ys},
              {"vertex_checks", verts}};
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("channel spec must be a JSON object");
  if (j.contains("name")) return named_channel(field<std::string>(j, "name"));
  FactorSpace in;
  FactorSpace out;
  if (j.contains("in_dims")) {
    // Bare dimensions: one input is A' -> B, two inputs are A'B' -> C.
    auto in_dims = field<std::vector<std::size_t>>(j, "in_dims");
    auto out_dims = field<std::vector<std::size_t>>(j, "out_dims");
    if (in_dims.empty() || in_dims.size() > 2) throw ValidationError("in_dims must list one or two dimensions");
    if (out_dims.empty()) throw ValidationError("out_dims must be non-empty");
    std::vector<std::string> in_labels = in_dims.size() == 1 ? std::vector<std::string>{kSenderIn}
                                                              : std::vector<std::string>{kMacInA, kMacInB};
    const std::string base = in_dims.size() == 1 ? kSenderOut : kMacOut;
    std::vector<std::string> out_labels;
    for (std::size_t i = 0; i < out_dims.size(); ++i) {
      out_labels.push_back(out_dims.size() == 1 ? base : base + std::to_string(i + 1));
    }
    in = FactorSpace(in_labels, in_dims);
    out = FactorSpace(out_labels, out_dims);
  } else {
    in = space_from_json(field<Json>(j, "inputs"));
    out = space_from_json(field<Json>(j, "outputs"));
  }
  Json kraus = field<Json>(j, "kraus");
  if (!kraus.is_array() || kraus.empty()) throw ValidationError("kraus must be a non-empty array");
  std::vector<Matrix> ks;
  for (const auto& k : kraus) ks.push_back(matrix_from_json(k, out.dim(), in.dim()));
  return KrausChannel(in, out, ks);
}

Json to_json(const KrausChannel& ch) {
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < k.cols(); ++c) row.push_back({round12(k(r, c).real()), round12(k(r, c).imag())});
      rows.push_back(row);
    }
    kraus.push_back(rows);
  }
  return Json{{"inputs", space_to_json(ch.in_space())}, {"outputs", space_to_json(ch.out_space())}, {"kraus", kraus}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qmac
