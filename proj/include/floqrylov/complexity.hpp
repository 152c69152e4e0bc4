// Copyright 2026 The floqrylov Authors
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

#include <string>
#include <utility>
#include <vector>

#include "floqrylov/arnoldi.hpp"
#include "floqrylov/lanczos.hpp"

namespace floqrylov {

enum class AmplitudeRoute { Direct, Recursive, HermitianOde };

std::string to_string(AmplitudeRoute route);

/// phi_n^j = <K_n | state after j steps>; rows are time steps, columns are
/// Krylov sites.
struct AmplitudeSeries {
  CMatrix amps;
  int steps = 0;
  int dk = 0;
  AmplitudeRoute route = AmplitudeRoute::Direct;

  /// max_j | sum_n |phi_n^j|^2 - 1 |.
  double max_norm_defect() const;
};

struct ComplexityTrace {
  std::vector<double> k_values;
  std::vector<double> s_values;
  double saturation_mean = 0.0;
  double saturation_std = 0.0;
};

inline constexpr double kDefaultSaturationWindow = 0.25;

/// Evolves v0 one Liouvillian application per step and projects onto the
/// basis. Throws UsageError if basis, Liouvillian and v0 disagree.
AmplitudeSeries amplitudes_direct(const KrylovBasis& basis, const Liouvillian& l, const KrylovVector& v0, int steps);

/// phi^{j+1} = h phi^j with phi^0 = e_0 (the stroboscopic chain recursion).
/// Throws UsageError if h is not upper Hessenberg of size dk.
AmplitudeSeries amplitudes_recursive(const CMatrix& hessenberg, int dk, int steps);

/// Continuous-time chain: d phi_n/dt = i a_n phi_n + b_n phi_{n-1} - b_{n+1} phi_{n+1},
/// phi(0) = e_0, solved exactly by diagonalizing the tridiagonal matrix.
/// Row j of the result holds phi(times[j]).
AmplitudeSeries evolve_hermitian_amplitudes(const LanczosData& data, const std::vector<double>& times);

/// Same generator from raw coefficients (b[0] couples sites 0 and 1).
AmplitudeSeries evolve_chain(const std::vector<double>& a, const std::vector<double>& b,
                             const std::vector<double>& times);

/// K_j = sum_n n |phi_n^j|^2.
std::vector<double> k_complexity(const AmplitudeSeries& amps);

/// S_j = -sum_n p log p with p = |phi_n^j|^2 and 0 log 0 = 0.
std::vector<double> k_entropy(const AmplitudeSeries& amps);

/// Mean and population standard deviation over the last
/// ceil(window_fraction * size) values. Throws UsageError on empty input or a
/// fraction outside (0, 1].
std::pair<double, double> saturation_stats(const std::vector<double>& values, double window_fraction);

ComplexityTrace complexity_trace(const AmplitudeSeries& amps, double window_fraction = kDefaultSaturationWindow);

/// CSV "j,k_complexity,k_entropy".
std::string complexity_csv(const ComplexityTrace& trace);

/// CSV "j,n,re,im".
std::string amplitudes_csv(const AmplitudeSeries& amps);

}  // namespace floqrylov
