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

#include "floqrylov/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "floqrylov/io.hpp"

namespace floqrylov {

double poisson_density(double s) { return s < 0.0 ? 0.0 : std::exp(-s); }

double gue_surmise_density(double s) {
  if (s < 0.0) return 0.0;
  return 32.0 / (kPi * kPi) * s * s * std::exp(-4.0 * s * s / kPi);
}

namespace {

double l1(const SpacingHistogram& h, const std::vector<double>& ref) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.density.size(); ++i) acc += std::abs(h.density[i] - ref[i]);
  return acc * h.bin_width;
}

}  // namespace

double SpacingHistogram::l1_to_poisson() const { return l1(*this, poisson_ref); }
double SpacingHistogram::l1_to_gue() const { return l1(*this, gue_ref); }

std::vector<double> level_spacings(std::vector<double> phases) {
  const std::size_t n = phases.size();
  if (n < 2) throw UsageError("level spacings need at least 2 phases");
  for (double& p : phases) p = fold_phase(p);
  std::sort(phases.begin(), phases.end());
  std::vector<double> gaps(n);
  for (std::size_t i = 0; i + 1 < n; ++i) gaps[i] = phases[i + 1] - phases[i];
  gaps[n - 1] = phases[0] + kTwoPi - phases[n - 1];
  const double mean_gap = kTwoPi / static_cast<double>(n);
  for (double& g : gaps) g = std::max(0.0, g / mean_gap);
  return gaps;
}

std::vector<double> level_spacings(const QuasiEnergySpectrum& spectrum) { return level_spacings(spectrum.phases); }

double r_statistic(const std::vector<double>& spacings) {
  const std::size_t n = spacings.size();
  if (n < 2) throw UsageError("r statistic needs at least 2 spacings");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s1 = spacings[i];
    const double s2 = spacings[(i + 1) % n];
    const double hi = std::max(s1, s2);
    acc += hi == 0.0 ? 1.0 : std::min(s1, s2) / hi;
  }
  return acc / static_cast<double>(n);
}

SpacingHistogram spacing_histogram(const std::vector<double>& spacings, int n_bins, double s_max) {
  if (n_bins < 1) throw UsageError("n_bins must be >= 1");
  if (!(s_max > 0.0)) throw UsageError("s_max must be > 0");
  SpacingHistogram h;
  h.bin_width = s_max / n_bins;
  std::vector<long long> counts(static_cast<std::size_t>(n_bins), 0);
  for (double s : spacings) {
    if (s < 0.0 || s > s_max) continue;
    auto bin = static_cast<long long>(s / h.bin_width);
    bin = std::min<long long>(bin, n_bins - 1);
    ++counts[static_cast<std::size_t>(bin)];
  }
  const double norm = spacings.empty() ? 0.0 : 1.0 / (static_cast<double>(spacings.size()) * h.bin_width);
  for (int i = 0; i < n_bins; ++i) {
    const double center = (i + 0.5) * h.bin_width;
    h.bin_centers.push_back(center);
    h.density.push_back(static_cast<double>(counts[static_cast<std::size_t>(i)]) * norm);
    h.poisson_ref.push_back(poisson_density(center));
    h.gue_ref.push_back(gue_surmise_density(center));
  }
  return h;
}

SpectrumStats spectrum_stats(const QuasiEnergySpectrum& spectrum, int n_bins, double s_max) {
  SpectrumStats stats;
  stats.spacings = level_spacings(spectrum);
  stats.r_mean = r_statistic(stats.spacings);
  stats.histogram = spacing_histogram(stats.spacings, n_bins, s_max);
  return stats;
}

std::string histogram_csv(const SpacingHistogram& hist) {
  std::string out = "s,density,poisson_ref,gue_ref\n";
  for (std::size_t i = 0; i < hist.bin_centers.size(); ++i) {
    out += format_double(hist.bin_centers[i]) + "," + format_double(hist.density[i]) + "," +
           format_double(hist.poisson_ref[i]) + "," + format_double(hist.gue_ref[i]) + "\n";
  }
  return out;
}

}  // namespace floqrylov
