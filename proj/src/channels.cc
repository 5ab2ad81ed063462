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

#include "qmac/channels.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace qmac {

namespace {

FactorSpace single(const std::string& label, std::size_t d) { return FactorSpace({label}, {d}); }

FactorSpace mac_inputs(std::size_t da, std::size_t db) { return FactorSpace({kMacInA, kMacInB}, {da, db}); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("bad " + what + ": '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ValidationError("bad " + what + ": '" + s + "'");
  return v;
}

std::size_t parse_dim(const std::string& s) {
  double v = parse_real(s, "dimension");
  if (v < 1 || v != std::floor(v)) throw ValidationError("bad dimension: '" + s + "'");
  return static_cast<std::size_t>(v);
}

double parse_unit(const std::string& s, const std::string& what) {
  double v = parse_real(s, what);
  if (v < 0 || v > 1) throw ValidationError(what + " out of range");
  return v;
}

}  // namespace

KrausChannel identity_channel(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return KrausChannel(single(kSenderIn, d), single(kSenderOut, d), {Matrix::Identity(n, n)});
}

KrausChannel depolarizing_channel(double p, std::size_t d) {
  if (!(p >= 0 && p <= 1)) throw ValidationError("depolarizing probability out of range");
  // Weyl twirl: (1-p) rho + p I/d = (1-p+p/d^2) rho + (p/d^2) sum_{(a,b)!=0} W rho W^dagger.
  const double dd = static_cast<double>(d * d);
  std::vector<Matrix> kraus;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      double w = (a == 0 && b == 0) ? 1 - p + p / dd : p / dd;
      if (w == 0) continue;
      kraus.push_back(std::sqrt(w) * weyl_shift(d, a) * weyl_clock(d, b));
    }
  }
  return KrausChannel(single(kSenderIn, d), single(kSenderOut, d), kraus);
}

KrausChannel amplitude_damping_channel(double gamma) {
  if (!(gamma >= 0 && gamma <= 1)) throw ValidationError("damping parameter out of range");
  Matrix k0 = Matrix::Zero(2, 2);
  Matrix k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1;
  k0(1, 1) = std::sqrt(1 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return KrausChannel(single(kSenderIn, 2), single(kSenderOut, 2), {k0, k1});
}

KrausChannel cnot_mac() {
  // Index a*2+b for |a>_{A'}|b>_{B'}; K_a = |a xor b><ab|.
  Matrix k0 = Matrix::Zero(2, 4);
  Matrix k1 = Matrix::Zero(2, 4);
  k0(0, 0) = 1;
  k0(1, 1) = 1;
  k1(1, 2) = 1;
  k1(0, 3) = 1;
  return KrausChannel(mac_inputs(2, 2), single(kMacOut, 2), {k0, k1});
}

KrausChannel adder_mac() {
  std::vector<Matrix> kraus;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Matrix k = Matrix::Zero(3, 4);
      k(a + b, a * 2 + b) = 1;
      kraus.push_back(k);
    }
  }
  return KrausChannel(mac_inputs(2, 2), single(kMacOut, 3), kraus);
}

KrausChannel replacement_mac(std::size_t da, std::size_t db, std::size_t dc) {
  std::vector<Matrix> kraus;
  const double w = 1.0 / std::sqrt(static_cast<double>(dc));
  for (std::size_t k = 0; k < dc; ++k) {
    for (std::size_t i = 0; i < da * db; ++i) {
      Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dc), static_cast<Eigen::Index>(da * db));
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = w;
      kraus.push_back(m);
    }
  }
  return KrausChannel(mac_inputs(da, db), single(kMacOut, dc), kraus);
}

KrausChannel parallel_mac(const KrausChannel& a, const KrausChannel& b) {
  if (a.in_space().size() != 1 || b.in_space().size() != 1 || a.out_space().size() != 1 ||
      b.out_space().size() != 1) {
    throw ValidationError("parallel_mac needs two single-factor channels");
  }
  std::vector<Matrix> kraus;
  for (const auto& ka : a.kraus()) {
    for (const auto& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  }
  FactorSpace out({"C1", "C2"}, {a.out_space().dim(), b.out_space().dim()});
  return KrausChannel(mac_inputs(a.in_space().dim(), b.in_space().dim()), out, kraus);
}

KrausChannel parallel_identity_mac(std::size_t d) { return parallel_mac(identity_channel(d), identity_channel(d)); }

KrausChannel named_channel(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw ValidationError("empty channel name");
  const std::string& name = parts[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
      throw ValidationError("wrong number of parameters for channel " + name);
    }
  };
  if (name == "identity") {
    arity(1, 1);
    return identity_channel(parse_dim(parts[1]));
  }
  if (name == "depolarizing") {
    arity(1, 2);
    return depolarizing_channel(parse_unit(parts[1], "depolarizing probability"),
                                parts.size() == 3 ? parse_dim(parts[2]) : 2);
  }
  if (name == "amplitude-damping") {
    arity(1, 1);
    return amplitude_damping_channel(parse_unit(parts[1], "damping parameter"));
  }
  if (name == "cnot-mac") {
    arity(0, 0);
    return cnot_mac();
  }
  if (name == "adder-mac") {
    arity(0, 0);
    return adder_mac();
  }
  if (name == "depolarizing-mac") {
    arity(0, 0);
    return replacement_mac(2, 2, 2);
  }
  if (name == "parallel-identity-mac") {
    arity(0, 1);
    return parallel_identity_mac(parts.size() == 2 ? parse_dim(parts[1]) : 2);
  }
  throw ValidationError("unknown channel: " + spec);
}

bool is_mac(const KrausChannel& ch) { return ch.in_space().size() == 2; }

}  // namespace qmac
