#pragma once

#include "sqsynth/deconstruct.hpp"
#include "sqsynth/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sqsynth {

struct RenderConfig {
    std::size_t samples_per_period = 0;  // L, even
    std::size_t periods = 1;
    std::size_t oversample = 1;          // render grid is L * oversample
    std::optional<double> filter_cutoff; // harmonics; applied after rendering
};

// Architectural operation counts. adds/multiplies/table_reads/sign_flips
// model the oscillator hardware, so post-filtering is not included.
struct EngineStats {
    std::uint64_t adds = 0;
    std::uint64_t multiplies = 0;
    std::uint64_t table_reads = 0;
    std::uint64_t sign_flips = 0;   // differential engine only
    std::uint64_t samples_rendered = 0;
};

struct RenderResult {
    std::vector<double> samples;
    EngineStats stats;
};

enum class LutInterp { Nearest, Linear };

// Square-oscillator bank: every term contributes +-M_n at every sample.
// Amplitudes enter by sign selection, so the engine needs no multiplies.
RenderResult render_naive(const Decomposition& decomp, const RenderConfig& cfg);

// Event-driven square bank: the accumulator is initialized once, then each
// sample only adds the +-2*M_n steps of terms that flip there. Output
// matches render_naive within 1e-12 per sample.
RenderResult render_differential(const Decomposition& decomp, const RenderConfig& cfg);

// Classic additive renderer from a polar spectrum via a cosine lookup
// table (power-of-two size, nearest or linear interpolation).
RenderResult render_fourier(const PolarSpectrum& spec, const RenderConfig& cfg,
                            std::size_t lut_size, LutInterp interp = LutInterp::Linear);

// One-pole RC low-pass, cutoff in harmonics (cycles per period). Initialized
// at periodic steady state, so there is no warm-up transient. Signal length
// must be a multiple of samples_per_period.
std::vector<double> rc_lowpass(std::span<const double> signal, double cutoff,
                               std::size_t samples_per_period);

} // namespace sqsynth
