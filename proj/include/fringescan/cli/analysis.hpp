#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fringescan/core/phase_map.hpp"

namespace fringescan {

// Error statistics over pixels valid in both maps. Histogram bins hold
// |error| in decades: [0, 1e-6), [1e-6, 1e-5), ... [1e-1, 1), [1, inf).
struct ErrorStats {
  double rms = 0;
  std::size_t count = 0;
  std::array<long long, 8> histogram{};
};
ErrorStats error_stats(const PhaseMap& map, const PhaseMap& truth);

// Row-coherent horizontal spectrum of the error image: the complex DFT of
// each row (invalid pixels contribute zero) averaged across rows before
// taking magnitudes. Deterministic structure that repeats with the fringes
// survives the averaging; zero-mean noise cancels as 1/sqrt(rows).
struct ErrorSpectrum {
  std::vector<double> amplitude;  // k = 0 .. width/2, cycles/px = k/width
  int width = 0;

  double frequency_of(std::size_t k) const { return static_cast<double>(k) / width; }
};
ErrorSpectrum error_spectrum(const PhaseMap& map, const PhaseMap& truth);

struct SpectralPeak {
  double frequency = 0;  // cycles/px
  double amplitude = 0;
};

// Largest spectral line at or above min_frequency; used to find fringe-rate
// ripple past the low-frequency envelope of the error footprint.
SpectralPeak find_peak(const ErrorSpectrum& spectrum, double min_frequency);

// Amplitude of the bin nearest the given frequency.
double amplitude_near(const ErrorSpectrum& spectrum, double frequency);

}  // namespace fringescan
