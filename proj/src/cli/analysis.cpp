#include "fringescan/cli/analysis.hpp"

#include <cmath>
#include <complex>

namespace fringescan {

ErrorStats error_stats(const PhaseMap& map, const PhaseMap& truth) {
  if (!map.values.same_size(truth.values))
    fail(errc::dimension_mismatch, "error statistics need equal map dimensions");
  ErrorStats stats;
  double sum_sq = 0;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x) {
      if (!map.is_valid(x, y) || !truth.is_valid(x, y)) continue;
      double e = map.values.at(x, y) - truth.values.at(x, y);
      sum_sq += e * e;
      stats.count++;
      double a = std::abs(e);
      std::size_t bin = 0;
      for (double edge = 1e-6; bin + 1 < stats.histogram.size() && a >= edge; edge *= 10) bin++;
      stats.histogram[bin]++;
    }
  if (stats.count) stats.rms = std::sqrt(sum_sq / static_cast<double>(stats.count));
  return stats;
}

ErrorSpectrum error_spectrum(const PhaseMap& map, const PhaseMap& truth) {
  if (!map.values.same_size(truth.values))
    fail(errc::dimension_mismatch, "error spectrum needs equal map dimensions");
  const int w = map.width(), h = map.height();
  ErrorSpectrum spec;
  spec.width = w;
  spec.amplitude.assign(static_cast<std::size_t>(w) / 2 + 1, 0.0);

  std::vector<double> err(static_cast<std::size_t>(w));
  std::vector<std::complex<double>> acc(spec.amplitude.size(), {0.0, 0.0});
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool ok = map.is_valid(x, y) && truth.is_valid(x, y);
      err[static_cast<std::size_t>(x)] =
          ok ? map.values.at(x, y) - truth.values.at(x, y) : 0.0;
    }
    for (std::size_t k = 0; k < spec.amplitude.size(); ++k) {
      const std::complex<double> rot = std::polar(1.0, -kTwoPi * static_cast<double>(k) / w);
      std::complex<double> twiddle{1.0, 0.0};
      std::complex<double> s{0.0, 0.0};
      for (int x = 0; x < w; ++x) {
        s += err[static_cast<std::size_t>(x)] * twiddle;
        twiddle *= rot;
      }
      acc[k] += s / static_cast<double>(w);
    }
  }
  for (std::size_t k = 0; k < spec.amplitude.size(); ++k)
    spec.amplitude[k] = std::abs(acc[k]) / h;
  return spec;
}

SpectralPeak find_peak(const ErrorSpectrum& spectrum, double min_frequency) {
  SpectralPeak peak;
  for (std::size_t k = 1; k < spectrum.amplitude.size(); ++k) {
    if (spectrum.frequency_of(k) < min_frequency) continue;
    if (spectrum.amplitude[k] > peak.amplitude) {
      peak.amplitude = spectrum.amplitude[k];
      peak.frequency = spectrum.frequency_of(k);
    }
  }
  return peak;
}

double amplitude_near(const ErrorSpectrum& spectrum, double frequency) {
  auto k = static_cast<std::size_t>(std::lround(frequency * spectrum.width));
  if (k >= spectrum.amplitude.size()) k = spectrum.amplitude.size() - 1;
  return spectrum.amplitude[k];
}

}  // namespace fringescan
