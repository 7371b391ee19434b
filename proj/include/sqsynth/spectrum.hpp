#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sqsynth {

// One period of a real signal, sampled at L equispaced points
// x_i = 2*pi*i/L. L must be even and >= 4.
struct SampledFrame {
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
};

// One harmonic in module/phase form: module * cos(k*x + phase).
struct SpectrumBin {
    double module = 0.0;
    double phase = 0.0;
};

// Polar spectrum of one period:
//   f(x) = c0 + sum_k bins[k-1].module * cos(k*x + bins[k-1].phase)
// Bins run k = 1..harmonics(); the Nyquist bin is never represented.
// Canonical form: module >= 0, phase in (-pi, pi], phase == 0 when module == 0.
struct PolarSpectrum {
    double c0 = 0.0;
    std::vector<SpectrumBin> bins;

    std::size_t harmonics() const { return bins.size(); }
};

// Rectangular coefficients of one bin: a*sin(k*x) + b*cos(k*x).
struct RectCoeff {
    double a = 0.0;
    double b = 0.0;
};

// Wrap an angle to (-pi, pi].
double wrap_phase(double theta);

// Canonical polar form of a complex harmonic coefficient b - j*a.
SpectrumBin canonical_bin(std::complex<double> c);

// Complex coefficient of a bin: module * exp(j*phase).
std::complex<double> bin_complex(const SpectrumBin& b);

// Discrete mean-power norm: sqrt((1/L) * sum f_i^2).
double rms(std::span<const double> samples);
double norm(const SampledFrame& frame);

// Same norm computed in the frequency domain:
// sqrt(c0^2 + (1/2) * sum m_k^2).
double spectrum_norm(const PolarSpectrum& spec);

// DFT of one period into polar harmonics. Rejects frames with
// relative Nyquist-bin energy above 1e-9, odd lengths, and non-finite
// samples. Round-trips with synthesize_frame to ~1e-9 max abs error.
PolarSpectrum analyze_frame(const SampledFrame& frame);

// Evaluate a polar spectrum on an L-point grid. Requires
// harmonics() <= L/2 - 1.
SampledFrame synthesize_frame(const PolarSpectrum& spec, std::size_t length);

// Per-bin conversion between polar and rectangular coefficients.
std::vector<RectCoeff> polar_to_rect(const PolarSpectrum& spec);
PolarSpectrum rect_to_polar(const std::vector<RectCoeff>& coeffs, double c0 = 0.0);

} // namespace sqsynth
