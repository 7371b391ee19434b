#pragma once

#include "sqsynth/spectrum.hpp"

#include <cstdint>

namespace sqsynth {

// One period of sin(x) on an L-point grid.
SampledFrame make_sine_frame(std::size_t length);

// One period of the two-level square (+1 on the first half).
SampledFrame make_square_frame(std::size_t length);

// Demo signal class used throughout: seven harmonics up to the 11th
// (k = 1, 2, 3, 5, 7, 9, 11) with seeded amplitudes and phases.
PolarSpectrum make_multiharmonic_spectrum(std::uint64_t seed);

} // namespace sqsynth
