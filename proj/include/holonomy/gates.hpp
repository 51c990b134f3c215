// Copyright 2026 The Holonomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "holonomy/linalg.hpp"
#include "holonomy/model.hpp"

namespace holonomy::gates {

using linalg::ComplexMatrix;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  /// (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta))
  static BlochVector from_angles(double theta, double phi);
  double norm() const;
};

double dot(const BlochVector& a, const BlochVector& b);
BlochVector cross(const BlochVector& a, const BlochVector& b);

/// One loop: a pi rotation about n.
struct SingleLoop {
  BlochVector n;
  model::LoopParams loop;
};

/// Two loops driven n first, then m.
struct DoubleLoop {
  BlochVector n;
  BlochVector m;
  model::LoopParams first;
  model::LoopParams second;
};

struct TwoQubit {
  double theta = 0.0;
  double phi = 0.0;
};

struct GateSpec {
  std::string name;
  std::variant<SingleLoop, DoubleLoop, TwoQubit> variant;

  bool is_two_qubit() const { return std::holds_alternative<TwoQubit>(variant); }
  /// Loop parameters in driving order; empty for two-qubit gates.
  std::vector<model::LoopParams> loops() const;
};

GateSpec single_loop(std::string name, const model::LoopParams& loop);
GateSpec double_loop(std::string name, const model::LoopParams& first, const model::LoopParams& second);
GateSpec two_qubit(std::string name, double theta, double phi);

/// n.sigma
ComplexMatrix holonomy_single(const BlochVector& n);
/// (n.m) I - i sigma.(n x m), i.e. U(C_m) U(C_n).
ComplexMatrix holonomy_double(const BlochVector& n, const BlochVector& m);
/// Holonomy on {|00>, |01>, |10>, |11>}: the pair |00>, |11> is rotated like a
/// single qubit while |01> and |10> are left alone.
ComplexMatrix ideal_two_qubit(double theta, double phi);
/// 2x2 or 4x4 target of any gate.
ComplexMatrix ideal_unitary(const GateSpec& gate);

/// Optional angles for the parametrised catalog entries.
struct GateParams {
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<double> phi_prime;
  std::optional<double> delta_phi;
};

/// Names accepted by catalog(), in canonical spelling.
const std::vector<std::string>& gate_names();

/// Looks up a named gate (case-insensitive). `phase-shift` takes phi and either
/// phi_prime or delta_phi (= phi' - phi); `single-pulse` takes theta and phi;
/// `CZ` optionally takes theta and phi of the general two-qubit holonomy.
/// Throws std::invalid_argument listing the valid names for an unknown name.
GateSpec catalog(std::string_view name, const GateParams& params = {});

/// Places u on the computational levels (|0>,|1> per ion) of a 4- or 16-level
/// space, identity elsewhere.
ComplexMatrix embed_qubit_unitary(const ComplexMatrix& u, std::size_t dim);

}  // namespace holonomy::gates
