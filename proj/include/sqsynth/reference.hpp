#pragma once

#include "sqsynth/deconstruct.hpp"
#include "sqsynth/engines.hpp"
#include "sqsynth/spectrum.hpp"

// Serial reference implementations of the OpenMP-parallel kernels. They run
// the same per-element arithmetic in the same order, so results must match
// the parallel versions bit for bit; tests assert that and tools/bench
// compares running times.

namespace sqsynth::reference {

PolarSpectrum analyze_frame(const SampledFrame& frame);
SampledFrame synthesize_frame(const PolarSpectrum& spec, std::size_t length);
RenderResult render_naive(const Decomposition& decomp, const RenderConfig& cfg);
RenderResult render_fourier(const PolarSpectrum& spec, const RenderConfig& cfg,
                            std::size_t lut_size, LutInterp interp = LutInterp::Linear);

} // namespace sqsynth::reference
