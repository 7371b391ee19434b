#include "sqsynth/haar.hpp"

#include "sqsynth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace sqsynth {

namespace {

bool power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

} // namespace

void haar_forward(std::span<double> data) {
    if (!power_of_two(data.size()))
        throw NotPowerOfTwo("Haar transform needs a power-of-two length");
    std::vector<double> tmp(data.size());
    for (std::size_t len = data.size(); len >= 2; len /= 2) {
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < half; ++i) {
            tmp[i] = (data[2 * i] + data[2 * i + 1]) * inv_sqrt2;
            tmp[half + i] = (data[2 * i] - data[2 * i + 1]) * inv_sqrt2;
        }
        std::copy(tmp.begin(), tmp.begin() + len, data.begin());
    }
}

void haar_inverse(std::span<double> data) {
    if (!power_of_two(data.size()))
        throw NotPowerOfTwo("Haar transform needs a power-of-two length");
    std::vector<double> tmp(data.size());
    for (std::size_t len = 2; len <= data.size(); len *= 2) {
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < half; ++i) {
            tmp[2 * i] = (data[i] + data[half + i]) * inv_sqrt2;
            tmp[2 * i + 1] = (data[i] - data[half + i]) * inv_sqrt2;
        }
        std::copy(tmp.begin(), tmp.begin() + len, data.begin());
    }
}

HaarApproximation haar_approx(const SampledFrame& target, std::size_t num_functions) {
    if (!power_of_two(target.size()))
        throw NotPowerOfTwo("Haar approximation needs a power-of-two frame");
    const std::size_t kept = std::min(num_functions, target.size());

    std::vector<double> coeffs = target.samples;
    haar_forward(coeffs);
    std::fill(coeffs.begin() + kept, coeffs.end(), 0.0);
    haar_inverse(coeffs);

    HaarApproximation out;
    out.reconstruction.samples = std::move(coeffs);
    double acc = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        const double d = out.reconstruction.samples[i] - target.samples[i];
        acc += d * d;
    }
    out.rms_error = std::sqrt(acc / static_cast<double>(target.size()));
    return out;
}

} // namespace sqsynth
