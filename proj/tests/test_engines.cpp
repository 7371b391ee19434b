#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqsynth/basis.hpp"
#include "sqsynth/deconstruct.hpp"
#include "sqsynth/engines.hpp"
#include "sqsynth/errors.hpp"
#include "sqsynth/reference.hpp"
#include "sqsynth/wav.hpp"
#include "helpers.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace sqsynth;

namespace {

const double pi = std::numbers::pi;

Decomposition square_decomp(std::vector<Term> terms, double c0 = 0.0) {
    Decomposition d;
    d.basis_name = "square";
    d.c0 = c0;
    d.terms = std::move(terms);
    d.residual_trace.assign(d.terms.size() + 1, 0.0);
    return d;
}

// Random square-basis decompositions, the engine-equivalence suite.
Decomposition random_decomp(SplitMix64& rng, std::size_t max_harmonic) {
    std::vector<Term> terms;
    for (std::size_t n = 1; n <= max_harmonic; ++n) {
        if (rng.uniform() < 0.3) {
            terms.push_back({n, 0.0, 0.0});
        } else {
            terms.push_back({n, rng.uniform(0.0, 1.0) / static_cast<double>(n),
                             wrap_phase(rng.uniform(-pi, pi))});
        }
    }
    return square_decomp(std::move(terms), rng.uniform(-0.5, 0.5));
}

std::string file_bytes(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("naive engine: unit fundamental renders the 8-sample square") {
    const auto res = render_naive(square_decomp({{1, 1.0, 0.0}}), {.samples_per_period = 8});
    CHECK(res.samples == std::vector<double>{1, 1, 1, 1, -1, -1, -1, -1});
    CHECK(res.stats.adds == 8);
    CHECK(res.stats.multiplies == 0);
    CHECK(res.stats.sign_flips == 0);
    CHECK(res.stats.samples_rendered == 8);
}

TEST_CASE("naive engine: empty decomposition renders the DC level") {
    const auto res = render_naive(square_decomp({}, 0.5), {.samples_per_period = 16});
    for (double s : res.samples) CHECK(s == 0.5);
    CHECK(res.stats.adds == 0);
}

TEST_CASE("engines reject non-square decompositions") {
    Decomposition d;
    d.basis_name = "sine";
    d.terms = {{1, 1.0, 0.0}};
    d.residual_trace = {1.0, 0.0};
    CHECK_THROWS_AS(render_naive(d, {.samples_per_period = 8}), WrongBasisKind);
    CHECK_THROWS_AS(render_differential(d, {.samples_per_period = 8}), WrongBasisKind);
}

TEST_CASE("render config validation") {
    const auto d = square_decomp({{1, 1.0, 0.0}});
    CHECK_THROWS_AS(render_naive(d, {.samples_per_period = 7}), OddLength);
    CHECK_THROWS_AS(render_naive(d, {.samples_per_period = 2}), TooFewSamples);
    CHECK_THROWS_AS(render_naive(d, {.samples_per_period = 8, .periods = 0}), BadParams);
    CHECK_THROWS_AS(render_naive(d, {.samples_per_period = 8, .oversample = 0}), BadParams);
    RenderConfig bad{.samples_per_period = 8};
    bad.filter_cutoff = -1.0;
    CHECK_THROWS_AS(render_naive(d, bad), BadParams);
}

TEST_CASE("differential engine equals naive on random decompositions") {
    SplitMix64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = random_decomp(rng, 1 + static_cast<std::size_t>(rng.uniform() * 20));
        RenderConfig cfg{.samples_per_period = 64,
                         .periods = 8,
                         .oversample = 1 + static_cast<std::size_t>(rng.uniform() * 3)};
        const auto naive = render_naive(d, cfg);
        const auto diff = render_differential(d, cfg);
        REQUIRE(naive.samples.size() == diff.samples.size());
        CHECK(testutil::max_abs_diff(naive.samples, diff.samples) <= 1e-12);
        CHECK(naive.stats.multiplies == 0);
        CHECK(diff.stats.multiplies == 0);
    }
}

TEST_CASE("differential engine: flip bookkeeping") {
    // One square: two flips per period, regardless of grid size.
    const auto one = render_differential(square_decomp({{1, 0.7, 0.0}}),
                                         {.samples_per_period = 1024, .periods = 5});
    CHECK(one.stats.sign_flips == 2 * 5);
    CHECK(one.stats.adds == 1 + 2 * 5);

    // Harmonic n flips 2n times per period; zero terms never flip.
    std::vector<Term> terms;
    for (std::size_t n = 1; n <= 100; ++n) terms.push_back({n, 0.01, 0.0});
    const auto many = render_differential(square_decomp(terms),
                                          {.samples_per_period = 1024, .periods = 2});
    CHECK(many.stats.sign_flips == 10100 * 2); // sum of 2n, n = 1..100, per period
    CHECK(many.stats.adds == 100 + 10100 * 2);
    const double adds_per_sample = static_cast<double>(many.stats.adds)
                                 / static_cast<double>(many.stats.samples_rendered);
    CHECK(adds_per_sample < 10.0); // vs. 100 for the naive bank
    CHECK(adds_per_sample > 9.0);

    auto with_zero = terms;
    with_zero[4].module = 0.0; // n = 5 goes silent: 10 flips per period vanish
    const auto dropped = render_differential(square_decomp(with_zero),
                                             {.samples_per_period = 1024, .periods = 2});
    CHECK(dropped.stats.sign_flips == (10100 - 10) * 2);
}

TEST_CASE("differential beats naive on adds whenever there are 2+ terms") {
    SplitMix64 rng(62);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_decomp(rng, 2 + static_cast<std::size_t>(rng.uniform() * 14));
        RenderConfig cfg{.samples_per_period = 64, .periods = 8};
        const auto naive = render_naive(d, cfg);
        const auto diff = render_differential(d, cfg);
        if (d.terms.size() >= 2)
            CHECK(diff.stats.adds < naive.stats.adds);
    }
}

TEST_CASE("engine outputs quantize to byte-identical WAV files") {
    SplitMix64 rng(63);
    const auto dir = testutil::temp_dir("wav_engines");
    const auto d = random_decomp(rng, 12);
    RenderConfig cfg{.samples_per_period = 128, .periods = 8};
    const auto naive = render_naive(d, cfg);
    const auto diff = render_differential(d, cfg);
    write_wav_pcm16(dir / "naive.wav", naive.samples, 44100);
    write_wav_pcm16(dir / "diff.wav", diff.samples, 44100);
    CHECK(file_bytes(dir / "naive.wav") == file_bytes(dir / "diff.wav"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("naive renders of a 21-term sine decomposition stay near the sine post-filter") {
    const auto basis = make_square(511);
    PolarSpectrum sine;
    sine.bins.resize(511);
    sine.bins[0] = {1.0, -pi / 2.0};
    const auto decomp = deconstruct(sine, basis, 21);

    RenderConfig cfg{.samples_per_period = 1024, .periods = 1, .oversample = 4};
    cfg.filter_cutoff = 12.0;
    const auto render = render_naive(decomp, cfg);

    auto ref = synthesize_frame(sine, 4096); // band-limited reference on the render grid
    const auto ref_filtered = rc_lowpass(ref.samples, 12.0, 4096);
    const double err = [&] {
        double acc = 0.0;
        for (std::size_t i = 0; i < render.samples.size(); ++i) {
            const double di = render.samples[i] - ref_filtered[i];
            acc += di * di;
        }
        return std::sqrt(acc / static_cast<double>(render.samples.size()));
    }();
    CHECK(err / norm(ref) < 0.05);
}

TEST_CASE("fourier engine: aligned unit cosine reads the table exactly") {
    PolarSpectrum spec;
    spec.bins = {{1.0, 0.0}};
    const auto res = render_fourier(spec, {.samples_per_period = 4096}, 4096);
    for (std::size_t i = 0; i < 4096; ++i) {
        const double exact = std::cos(2.0 * pi * static_cast<double>(i) / 4096.0);
        CHECK(std::abs(res.samples[i] - exact) < 1e-5);
    }
}

TEST_CASE("fourier engine: misaligned grid stays within the interpolation bound") {
    PolarSpectrum spec;
    spec.bins = {{1.0, 0.0}};
    const std::size_t lut = 4096;
    const auto res = render_fourier(spec, {.samples_per_period = 1000}, lut);
    double worst = 0.0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const double exact = std::cos(2.0 * pi * static_cast<double>(i) / 1000.0);
        worst = std::max(worst, std::abs(res.samples[i] - exact));
    }
    const double bound = pi * pi / 2.0 * (1.0 / static_cast<double>(lut))
                       * (1.0 / static_cast<double>(lut));
    CHECK(worst <= 2.0 * bound);
}

TEST_CASE("fourier engine fidelity vs. exact synthesis, multi-harmonic") {
    SplitMix64 rng(64);
    const std::size_t harmonics = 24, lut = 4096;
    auto spec = testutil::random_spectrum(rng, harmonics);
    const auto res = render_fourier(spec, {.samples_per_period = 750}, lut);
    const auto exact = synthesize_frame(spec, 750);
    double amp = 0.0;
    for (const auto& b : spec.bins) amp += b.module;
    const double bound = pi * pi / 2.0
                       * (static_cast<double>(harmonics) / static_cast<double>(lut))
                       * (static_cast<double>(harmonics) / static_cast<double>(lut)) * amp;
    CHECK(testutil::max_abs_diff(res.samples, exact.samples) <= 2.0 * bound);
}

TEST_CASE("fourier engine: stats and lut guards") {
    SplitMix64 rng(65);
    const auto spec = testutil::random_spectrum(rng, 64);
    const auto res = render_fourier(spec, {.samples_per_period = 512}, 4096);
    CHECK(res.stats.multiplies == 64 * 512);
    CHECK(res.stats.adds == 64 * 512);
    CHECK(res.stats.table_reads == 2 * 64 * 512); // linear reads two entries
    CHECK(res.stats.samples_rendered == 512);

    const auto nearest = render_fourier(spec, {.samples_per_period = 512}, 4096,
                                        LutInterp::Nearest);
    CHECK(nearest.stats.table_reads == 64 * 512);

    CHECK_THROWS_AS(render_fourier(spec, {.samples_per_period = 512}, 3), BadLutSize);
    CHECK_THROWS_AS(render_fourier(spec, {.samples_per_period = 512}, 100), BadLutSize);
}

TEST_CASE("fourier engine: 4-entry nearest table is the 4-level staircase") {
    PolarSpectrum spec;
    spec.bins = {{1.0, 0.0}};
    const auto res = render_fourier(spec, {.samples_per_period = 16}, 4, LutInterp::Nearest);
    // Table holds cos of 0, pi/2, pi, 3pi/2; nearest sampling only ever
    // emits those four values, switching at the rounding midpoints.
    for (std::size_t i = 0; i < 16; ++i) {
        const double pos = 4.0 * static_cast<double>(i) / 16.0;
        const std::size_t idx = static_cast<std::size_t>(std::lround(pos)) % 4;
        CHECK(res.samples[i] == std::cos(2.0 * pi * static_cast<double>(idx) / 4.0));
    }
}

TEST_CASE("rc_lowpass: DC passes exactly") {
    std::vector<double> constant(256, 0.73);
    const auto out = rc_lowpass(constant, 5.0, 64);
    for (double s : out) CHECK(s == 0.73);
}

TEST_CASE("rc_lowpass: amplitude at the cutoff is about -3 dB") {
    const std::size_t length = 512;
    const double cutoff = 8.0;
    std::vector<double> wave(length);
    for (std::size_t i = 0; i < length; ++i)
        wave[i] = std::cos(cutoff * 2.0 * pi * static_cast<double>(i)
                           / static_cast<double>(length));
    const auto out = rc_lowpass(wave, cutoff, length);
    double peak = 0.0;
    for (double s : out) peak = std::max(peak, std::abs(s));
    CHECK(std::abs(peak - 1.0 / std::numbers::sqrt2) / (1.0 / std::numbers::sqrt2) < 0.05);
}

TEST_CASE("rc_lowpass: strong attenuation two decades up") {
    const std::size_t length = 512;
    std::vector<double> wave(length);
    for (std::size_t i = 0; i < length; ++i)
        wave[i] = std::cos(200.0 * 2.0 * pi * static_cast<double>(i)
                           / static_cast<double>(length));
    const auto out = rc_lowpass(wave, 2.0, length);
    double peak = 0.0;
    for (double s : out) peak = std::max(peak, std::abs(s));
    CHECK(peak < 0.02);
}

TEST_CASE("rc_lowpass: periodic steady state has no transient") {
    // Filtering two tiled periods must equal the same period twice.
    SplitMix64 rng(66);
    const auto frame = synthesize_frame(testutil::random_spectrum(rng, 20), 128);
    std::vector<double> two;
    two.insert(two.end(), frame.samples.begin(), frame.samples.end());
    two.insert(two.end(), frame.samples.begin(), frame.samples.end());
    const auto out = rc_lowpass(two, 6.0, 128);
    for (std::size_t i = 0; i < 128; ++i)
        CHECK(std::abs(out[i] - out[i + 128]) < 1e-9);
}

TEST_CASE("rc_lowpass guards") {
    std::vector<double> x(100, 0.0);
    CHECK_THROWS_AS(rc_lowpass(x, 0.0, 50), BadParams);
    CHECK_THROWS_AS(rc_lowpass(x, 4.0, 64), BadParams); // length not a multiple
}

TEST_CASE("filtered render configs run the filter at the oversampled rate") {
    const auto d = square_decomp({{1, 1.0, 0.0}});
    RenderConfig cfg{.samples_per_period = 64, .periods = 2, .oversample = 4};
    cfg.filter_cutoff = 6.0;
    const auto res = render_naive(d, cfg);
    RenderConfig raw_cfg = cfg;
    raw_cfg.filter_cutoff.reset();
    const auto raw = render_naive(d, raw_cfg);
    const auto expected = rc_lowpass(raw.samples, 6.0, 256);
    CHECK(res.samples == expected);
}

TEST_CASE("serial reference renders match the parallel engines bit for bit") {
    SplitMix64 rng(67);
    const auto d = random_decomp(rng, 16);
    RenderConfig cfg{.samples_per_period = 256, .periods = 3, .oversample = 2};
    const auto par_naive = render_naive(d, cfg);
    const auto ser_naive = reference::render_naive(d, cfg);
    CHECK(par_naive.samples == ser_naive.samples);
    CHECK(par_naive.stats.adds == ser_naive.stats.adds);

    const auto spec = testutil::random_spectrum(rng, 40);
    const auto par_f = render_fourier(spec, cfg, 1024);
    const auto ser_f = reference::render_fourier(spec, cfg, 1024);
    CHECK(par_f.samples == ser_f.samples);
    CHECK(par_f.stats.table_reads == ser_f.stats.table_reads);
}
