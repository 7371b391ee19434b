#pragma once

// Internal per-element kernels shared by the OpenMP loops in spectrum.cpp /
// engines.cpp and the serial loops in reference.cpp. Each output element is
// computed by exactly one of these functions, with a fixed accumulation
// order, which is what makes serial and parallel results bit-identical.

#include "sqsynth/deconstruct.hpp"
#include "sqsynth/engines.hpp"
#include "sqsynth/errors.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace sqsynth::kernels {

// w[m] = exp(-j * 2*pi*m / L) for m in [0, L).
inline std::vector<std::complex<double>> twiddle_table(std::size_t length) {
    std::vector<std::complex<double>> w(length);
    for (std::size_t m = 0; m < length; ++m) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(m)
                         / static_cast<double>(length);
        w[m] = {std::cos(ang), -std::sin(ang)};
    }
    return w;
}

// (2/L) * sum_i f_i * exp(-j*k*x_i), accumulated in sample order.
inline std::complex<double> analyze_bin(std::span<const double> f,
                                        std::span<const std::complex<double>> w,
                                        std::size_t k) {
    const std::size_t length = f.size();
    std::complex<double> acc{0.0, 0.0};
    std::size_t m = 0;
    for (std::size_t i = 0; i < length; ++i) {
        acc += f[i] * w[m];
        m += k;
        if (m >= length) m -= length;
    }
    return 2.0 / static_cast<double>(length) * acc;
}

// c0 + sum_k cb_k*cos(k*x_i) - sb_k*sin(k*x_i), with cb = m*cos(theta),
// sb = m*sin(theta), accumulated in bin order.
inline double synth_sample(double c0, std::span<const double> cb,
                           std::span<const double> sb,
                           std::span<const std::complex<double>> w,
                           std::size_t i) {
    const std::size_t length = w.size();
    const std::size_t step = i % length;
    double acc = c0;
    std::size_t m = 0;
    for (std::size_t k = 0; k < cb.size(); ++k) {
        m += step;
        if (m >= length) m -= length;
        acc += cb[k] * w[m].real() + sb[k] * w[m].imag();
    }
    return acc;
}

// One oscillator of the square bank: harmonic n with phase offset
// theta/(2*pi) normalized to [0, 1).
struct SquareVoice {
    std::size_t harmonic = 0;
    double module = 0.0;
    double offset = 0.0;
};

// Sign of the square at grid position pos of a period-samples grid. The
// phase index is kept on the integer grid so the boundary comparison is
// exact for grid-aligned offsets.
inline bool square_high(std::size_t harmonic, std::size_t pos,
                        std::size_t period, double offset) {
    const std::size_t r = (harmonic * pos) % period;
    double u = static_cast<double>(r) / static_cast<double>(period) + offset;
    if (u >= 1.0) u -= 1.0;
    return u < 0.5;
}

inline double square_bank_sample(double c0, std::span<const SquareVoice> voices,
                                 std::size_t pos, std::size_t period) {
    double acc = c0;
    for (const auto& v : voices)
        acc += square_high(v.harmonic, pos, period, v.offset) ? v.module : -v.module;
    return acc;
}

struct LutVoice {
    std::size_t harmonic = 0;
    double module = 0.0;
    double offset = 0.0; // phase / (2*pi), in [0, 1)
};

// One additive-synthesis sample read from a power-of-two cosine table.
inline double fourier_sample(double c0, std::span<const LutVoice> voices,
                             std::span<const double> lut, std::size_t pos,
                             std::size_t period, bool linear) {
    const std::size_t mask = lut.size() - 1;
    const double n = static_cast<double>(lut.size());
    double acc = c0;
    for (const auto& v : voices) {
        const std::size_t r = (v.harmonic * pos) % period;
        double u = static_cast<double>(r) / static_cast<double>(period) + v.offset;
        if (u >= 1.0) u -= 1.0;
        const double t = u * n;
        if (linear) {
            const double fl = std::floor(t);
            const std::size_t i0 = static_cast<std::size_t>(fl) & mask;
            const std::size_t i1 = (i0 + 1) & mask;
            acc += v.module * (lut[i0] + (t - fl) * (lut[i1] - lut[i0]));
        } else {
            acc += v.module * lut[static_cast<std::size_t>(t + 0.5) & mask];
        }
    }
    return acc;
}

// Shared argument validation and voice preparation for the render engines.

inline void check_render_config(const RenderConfig& cfg) {
    if (cfg.samples_per_period < 4) throw TooFewSamples("render grid too short");
    if (cfg.samples_per_period % 2 != 0) throw OddLength("render grid length must be even");
    if (cfg.periods == 0 || cfg.oversample == 0) throw BadParams("periods and oversample must be >= 1");
    if (cfg.filter_cutoff && !(*cfg.filter_cutoff > 0.0))
        throw BadParams("filter cutoff must be positive");
}

// theta -> theta/(2*pi) wrapped into [0, 1). Exact for theta = 0 and pi.
inline double phase_offset(double theta) {
    double off = theta / (2.0 * std::numbers::pi);
    off -= std::floor(off);
    if (off >= 1.0) off = 0.0;
    return off;
}

inline std::vector<SquareVoice> square_voices(const Decomposition& decomp) {
    if (decomp.basis_name != "square")
        throw WrongBasisKind("square engines need a decomposition over the square basis");
    std::vector<SquareVoice> voices;
    voices.reserve(decomp.terms.size());
    for (const auto& t : decomp.terms)
        voices.push_back({t.harmonic, t.module, phase_offset(t.phase)});
    return voices;
}

inline std::vector<LutVoice> lut_voices(const PolarSpectrum& spec) {
    std::vector<LutVoice> voices;
    voices.reserve(spec.bins.size());
    for (std::size_t k = 1; k <= spec.bins.size(); ++k)
        voices.push_back({k, spec.bins[k - 1].module, phase_offset(spec.bins[k - 1].phase)});
    return voices;
}

inline std::vector<double> cosine_lut(std::size_t size) {
    if (size < 4 || (size & (size - 1)) != 0)
        throw BadLutSize("lookup table size must be a power of two >= 4");
    std::vector<double> lut(size);
    for (std::size_t m = 0; m < size; ++m)
        lut[m] = std::cos(2.0 * std::numbers::pi * static_cast<double>(m)
                          / static_cast<double>(size));
    return lut;
}

} // namespace sqsynth::kernels
