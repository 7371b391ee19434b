#include "sqsynth/signals.hpp"

#include "sqsynth/errors.hpp"
#include "sqsynth/rng.hpp"

#include <cmath>
#include <numbers>

namespace sqsynth {

SampledFrame make_sine_frame(std::size_t length) {
    if (length < 4) throw TooFewSamples("frame needs at least 4 samples");
    if (length % 2 != 0) throw OddLength("frame length must be even");
    SampledFrame f;
    f.samples.resize(length);
    for (std::size_t i = 0; i < length; ++i)
        f.samples[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i)
                                / static_cast<double>(length));
    return f;
}

SampledFrame make_square_frame(std::size_t length) {
    if (length < 4) throw TooFewSamples("frame needs at least 4 samples");
    if (length % 2 != 0) throw OddLength("frame length must be even");
    SampledFrame f;
    f.samples.assign(length, -1.0);
    for (std::size_t i = 0; i < length / 2; ++i) f.samples[i] = 1.0;
    return f;
}

PolarSpectrum make_multiharmonic_spectrum(std::uint64_t seed) {
    static constexpr std::size_t harmonics[] = {1, 2, 3, 5, 7, 9, 11};
    SplitMix64 rng(seed);
    PolarSpectrum spec;
    spec.bins.resize(11);
    for (std::size_t k : harmonics) {
        const double module = rng.uniform(0.2, 1.0);
        const double phase = rng.uniform(-std::numbers::pi, std::numbers::pi);
        spec.bins[k - 1] = {module, phase};
    }
    return spec;
}

} // namespace sqsynth
