#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqsynth/errors.hpp"
#include "sqsynth/haar.hpp"
#include "sqsynth/signals.hpp"
#include "helpers.hpp"

#include <cmath>
#include <vector>

using namespace sqsynth;

namespace {

// Independent construction of the idx-th orthonormal Haar basis vector on a
// length-L grid, in the transform's coarse-to-fine order: idx 0 is the
// constant, idx = 2^j + t is the wavelet with support L/2^j starting at
// t * L/2^j, positive on its first half.
std::vector<double> haar_vector(std::size_t length, std::size_t idx) {
    std::vector<double> h(length, 0.0);
    if (idx == 0) {
        const double v = 1.0 / std::sqrt(static_cast<double>(length));
        for (auto& s : h) s = v;
        return h;
    }
    std::size_t j = 0;
    while ((std::size_t{2} << j) <= idx) ++j; // 2^j <= idx < 2^(j+1)
    const std::size_t t = idx - (std::size_t{1} << j);
    const std::size_t support = length >> j;
    const std::size_t start = t * support;
    const double v = std::sqrt(static_cast<double>(std::size_t{1} << j)
                               / static_cast<double>(length));
    for (std::size_t i = 0; i < support / 2; ++i) {
        h[start + i] = v;
        h[start + support / 2 + i] = -v;
    }
    return h;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

} // namespace

TEST_CASE("inverse transform of unit coefficients yields the Haar vectors") {
    const std::size_t length = 16;
    for (std::size_t idx = 0; idx < length; ++idx) {
        std::vector<double> coef(length, 0.0);
        coef[idx] = 1.0;
        haar_inverse(coef);
        const auto expected = haar_vector(length, idx);
        CHECK(testutil::max_abs_diff(coef, expected) <= 1e-12);
    }
}

TEST_CASE("forward transform computes inner products against the Haar vectors") {
    SplitMix64 rng(71);
    const std::size_t length = 64;
    std::vector<double> x(length);
    for (auto& s : x) s = rng.uniform(-1.0, 1.0);

    auto coef = x;
    haar_forward(coef);
    for (std::size_t idx = 0; idx < length; ++idx)
        CHECK(std::abs(coef[idx] - dot(x, haar_vector(length, idx))) <= 1e-12);
}

TEST_CASE("transform is orthonormal") {
    SplitMix64 rng(72);
    const std::size_t length = 256;
    std::vector<double> x(length);
    for (auto& s : x) s = rng.uniform(-2.0, 2.0);

    auto coef = x;
    haar_forward(coef);
    CHECK(std::abs(dot(coef, coef) - dot(x, x)) <= 1e-10); // Parseval

    auto back = coef;
    haar_inverse(back);
    CHECK(testutil::max_abs_diff(back, x) <= 1e-12);
}

TEST_CASE("num_functions = 1 keeps exactly the mean") {
    SampledFrame frame;
    frame.samples.assign(32, 0.0);
    double mean = 0.0;
    SplitMix64 rng(73);
    for (auto& s : frame.samples) {
        s = rng.uniform(-1.0, 1.0);
        mean += s;
    }
    mean /= 32.0;
    const auto approx = haar_approx(frame, 1);
    for (double s : approx.reconstruction.samples)
        CHECK(std::abs(s - mean) <= 1e-12);
}

TEST_CASE("a signal that is one Haar function is reproduced exactly") {
    SampledFrame frame;
    frame.samples = haar_vector(64, 5); // support 16, within the first 8 functions
    for (auto& s : frame.samples) s *= 3.25;
    const auto approx = haar_approx(frame, 8);
    CHECK(testutil::max_abs_diff(approx.reconstruction.samples, frame.samples) <= 1e-12);
    CHECK(approx.rms_error <= 1e-12);
}

TEST_CASE("num_functions = L reproduces the input; larger values clamp") {
    SplitMix64 rng(74);
    SampledFrame frame;
    frame.samples.assign(128, 0.0);
    for (auto& s : frame.samples) s = rng.uniform(-1.0, 1.0);

    const auto full = haar_approx(frame, 128);
    CHECK(testutil::max_abs_diff(full.reconstruction.samples, frame.samples) <= 1e-12);
    CHECK(full.rms_error <= 1e-12);

    const auto clamped = haar_approx(frame, 100000);
    CHECK(clamped.reconstruction.samples == full.reconstruction.samples);
}

TEST_CASE("truncation keeps power-of-two prefixes as block averages") {
    // The first 32 Haar functions span exactly the piecewise-constant
    // signals over 32 equal blocks, so the projection is the block mean.
    const auto frame = make_sine_frame(1024);
    const auto approx = haar_approx(frame, 32);
    for (std::size_t block = 0; block < 32; ++block) {
        double mean = 0.0;
        for (std::size_t i = 0; i < 32; ++i) mean += frame.samples[block * 32 + i];
        mean /= 32.0;
        for (std::size_t i = 0; i < 32; ++i)
            CHECK(std::abs(approx.reconstruction.samples[block * 32 + i] - mean) <= 1e-12);
    }
}

TEST_CASE("32-function approximation of a sine: frozen error") {
    const auto frame = make_sine_frame(1024);
    const auto approx = haar_approx(frame, 32);
    CHECK(approx.rms_error == doctest::Approx(0.0400344).epsilon(1e-4));

    // rms_error matches the pointwise error of the reconstruction.
    double acc = 0.0;
    for (std::size_t i = 0; i < 1024; ++i) {
        const double d = approx.reconstruction.samples[i] - frame.samples[i];
        acc += d * d;
    }
    CHECK(std::abs(approx.rms_error - std::sqrt(acc / 1024.0)) <= 1e-12);
}

TEST_CASE("approximation error is orthogonal to every kept function") {
    SplitMix64 rng(75);
    SampledFrame frame;
    frame.samples.assign(256, 0.0);
    for (auto& s : frame.samples) s = rng.uniform(-1.0, 1.0);

    for (std::size_t num : {1u, 3u, 7u, 32u, 100u}) {
        const auto approx = haar_approx(frame, num);
        std::vector<double> residual(256);
        for (std::size_t i = 0; i < 256; ++i)
            residual[i] = frame.samples[i] - approx.reconstruction.samples[i];
        haar_forward(residual);
        for (std::size_t idx = 0; idx < num; ++idx)
            CHECK(std::abs(residual[idx]) <= 1e-12);
    }
}

TEST_CASE("error decreases as functions are added") {
    const auto frame = make_sine_frame(512);
    double prev = haar_approx(frame, 1).rms_error;
    for (std::size_t num : {2u, 4u, 8u, 16u, 32u, 64u, 128u, 256u, 512u}) {
        const double cur = haar_approx(frame, num).rms_error;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("non-power-of-two lengths are rejected") {
    std::vector<double> x(12, 0.0);
    CHECK_THROWS_AS(haar_forward(x), NotPowerOfTwo);
    CHECK_THROWS_AS(haar_inverse(x), NotPowerOfTwo);
    SampledFrame frame;
    frame.samples.assign(24, 0.0);
    CHECK_THROWS_AS(haar_approx(frame, 4), NotPowerOfTwo);
    frame.samples.clear();
    CHECK_THROWS_AS(haar_approx(frame, 1), NotPowerOfTwo);
}
