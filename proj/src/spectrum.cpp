#include "sqsynth/spectrum.hpp"

#include "sqsynth/errors.hpp"
#include "kernels.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace sqsynth {

namespace {

constexpr double nyquist_energy_tol = 1e-9;

void check_frame(const SampledFrame& frame) {
    if (frame.size() < 4) throw TooFewSamples("frame needs at least 4 samples");
    if (frame.size() % 2 != 0) throw OddLength("frame length must be even");
    for (double s : frame.samples)
        if (!std::isfinite(s)) throw NonFiniteInput("frame contains a non-finite sample");
}

} // namespace

double wrap_phase(double theta) {
    double t = std::remainder(theta, 2.0 * std::numbers::pi);
    if (t <= -std::numbers::pi) t += 2.0 * std::numbers::pi;
    return t;
}

SpectrumBin canonical_bin(std::complex<double> c) {
    const double module = std::abs(c);
    if (module == 0.0) return {0.0, 0.0};
    return {module, wrap_phase(std::arg(c))};
}

std::complex<double> bin_complex(const SpectrumBin& b) {
    return std::polar(b.module, b.phase);
}

double rms(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    double acc = 0.0;
    for (double s : samples) acc += s * s;
    return std::sqrt(acc / static_cast<double>(samples.size()));
}

double norm(const SampledFrame& frame) {
    return rms(frame.samples);
}

double spectrum_norm(const PolarSpectrum& spec) {
    double acc = spec.c0 * spec.c0;
    for (const auto& b : spec.bins) acc += 0.5 * b.module * b.module;
    return std::sqrt(acc);
}

PolarSpectrum analyze_frame(const SampledFrame& frame) {
    check_frame(frame);
    const std::size_t length = frame.size();
    const std::size_t harmonics = length / 2 - 1;

    double mean = 0.0, power = 0.0, nyq = 0.0;
    for (std::size_t i = 0; i < length; ++i) {
        const double s = frame.samples[i];
        mean += s;
        power += s * s;
        nyq += (i % 2 == 0) ? s : -s;
    }
    mean /= static_cast<double>(length);
    power /= static_cast<double>(length);
    nyq /= static_cast<double>(length);
    if (power > 0.0 && nyq * nyq > nyquist_energy_tol * power)
        throw NyquistEnergy("significant energy at the Nyquist bin");

    const auto w = kernels::twiddle_table(length);
    PolarSpectrum spec;
    spec.c0 = mean;
    spec.bins.resize(harmonics);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(harmonics); ++k)
        spec.bins[k - 1] = canonical_bin(
            kernels::analyze_bin(frame.samples, w, static_cast<std::size_t>(k)));
    return spec;
}

SampledFrame synthesize_frame(const PolarSpectrum& spec, std::size_t length) {
    if (length < 4) throw TooFewSamples("grid needs at least 4 samples");
    if (length % 2 != 0) throw OddLength("grid length must be even");
    if (spec.harmonics() > length / 2 - 1)
        throw TooFewSamples("grid too short for the spectrum's harmonics");

    const std::size_t harmonics = spec.harmonics();
    std::vector<double> cb(harmonics), sb(harmonics);
    for (std::size_t k = 0; k < harmonics; ++k) {
        cb[k] = spec.bins[k].module * std::cos(spec.bins[k].phase);
        sb[k] = spec.bins[k].module * std::sin(spec.bins[k].phase);
    }

    const auto w = kernels::twiddle_table(length);
    SampledFrame out;
    out.samples.resize(length);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(length); ++i)
        out.samples[i] = kernels::synth_sample(spec.c0, cb, sb, w,
                                               static_cast<std::size_t>(i));
    return out;
}

std::vector<RectCoeff> polar_to_rect(const PolarSpectrum& spec) {
    std::vector<RectCoeff> coeffs(spec.harmonics());
    for (std::size_t k = 0; k < spec.harmonics(); ++k) {
        const auto& b = spec.bins[k];
        coeffs[k].b = b.module * std::cos(b.phase);
        coeffs[k].a = -b.module * std::sin(b.phase);
    }
    return coeffs;
}

PolarSpectrum rect_to_polar(const std::vector<RectCoeff>& coeffs, double c0) {
    PolarSpectrum spec;
    spec.c0 = c0;
    spec.bins.resize(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        spec.bins[k] = canonical_bin({coeffs[k].b, -coeffs[k].a});
    return spec;
}

} // namespace sqsynth
