#pragma once

#include "sqsynth/spectrum.hpp"

#include <span>

namespace sqsynth {

struct HaarApproximation {
    SampledFrame reconstruction;
    double rms_error = 0.0;
};

// In-place orthonormal Haar transform over a power-of-two length.
// Coefficients come out coarse to fine: [average, coarsest detail, ...,
// finest details]; haar_inverse undoes it exactly.
void haar_forward(std::span<double> data);
void haar_inverse(std::span<double> data);

// Least-squares projection of target onto the first num_functions Haar
// basis functions (num_functions = 1 keeps just the mean; = L reproduces
// the target). num_functions beyond L is clamped to L.
HaarApproximation haar_approx(const SampledFrame& target, std::size_t num_functions);

} // namespace sqsynth
