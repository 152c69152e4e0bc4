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
#include <vector>

#include "floqrylov/maps.hpp"

namespace floqrylov {

/// Reference densities: Poisson e^{-s} and the GUE Wigner surmise
/// (32/pi^2) s^2 exp(-4 s^2 / pi).
double poisson_density(double s);
double gue_surmise_density(double s);

struct SpacingHistogram {
  double bin_width = 0.0;
  std::vector<double> bin_centers;
  std::vector<double> density;
  std::vector<double> poisson_ref;
  std::vector<double> gue_ref;

  /// sum_i |density_i - ref_i| * bin_width.
  double l1_to_poisson() const;
  double l1_to_gue() const;
};

struct SpectrumStats {
  std::vector<double> spacings;
  double r_mean = 0.0;
  SpacingHistogram histogram;
};

inline constexpr int kDefaultBins = 30;
inline constexpr double kDefaultSpacingMax = 4.0;

/// Nearest-neighbour gaps of the phases on the circle, wraparound included,
/// divided by the mean gap 2 pi / N. Throws UsageError for fewer than 2 phases.
std::vector<double> level_spacings(const QuasiEnergySpectrum& spectrum);
std::vector<double> level_spacings(std::vector<double> phases);

/// Cyclic mean of min(s_i, s_{i+1}) / max(s_i, s_{i+1}); a pair of zero gaps
/// counts as 1. Throws UsageError for fewer than 2 spacings.
double r_statistic(const std::vector<double>& spacings);

/// Density histogram on [0, s_max] normalized by the total sample count, so
/// it integrates to the fraction of spacings inside the range. A spacing
/// equal to s_max lands in the last bin.
SpacingHistogram spacing_histogram(const std::vector<double>& spacings, int n_bins = kDefaultBins,
                                   double s_max = kDefaultSpacingMax);

SpectrumStats spectrum_stats(const QuasiEnergySpectrum& spectrum, int n_bins = kDefaultBins,
                             double s_max = kDefaultSpacingMax);

/// CSV "s,density,poisson_ref,gue_ref".
std::string histogram_csv(const SpacingHistogram& hist);

}  // namespace floqrylov
