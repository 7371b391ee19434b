// Timing harness for the OpenMP kernels against the serial reference
// implementations. Both paths share the same per-element kernels, so the
// outputs must match bit for bit; any difference is reported and fails the
// run.

#include "sqsynth/basis.hpp"
#include "sqsynth/deconstruct.hpp"
#include "sqsynth/engines.hpp"
#include "sqsynth/reference.hpp"
#include "sqsynth/rng.hpp"
#include "sqsynth/spectrum.hpp"

#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include <omp.h>

namespace {

using namespace sqsynth;

// Best-of-repeats wall time for one call.
template <typename F>
double time_best(std::size_t repeats, F&& fn) {
    double best = 1e300;
    for (std::size_t r = 0; r < repeats; ++r) {
        const double t0 = omp_get_wtime();
        fn();
        const double t1 = omp_get_wtime();
        best = std::min(best, t1 - t0);
    }
    return best;
}

bool report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-22s %12.3f %12.3f %9.2fx %10s\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel, identical ? "identical" : "DIFFERS");
    return identical;
}

PolarSpectrum random_spectrum(SplitMix64& rng, std::size_t harmonics) {
    PolarSpectrum spec;
    spec.bins.resize(harmonics);
    for (auto& b : spec.bins) {
        b.module = rng.uniform();
        b.phase = wrap_phase(rng.uniform(-std::numbers::pi, std::numbers::pi));
    }
    return spec;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t length = 4096;
    std::size_t repeats = 5;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--length" && i + 1 < argc) length = std::strtoull(argv[++i], nullptr, 10);
        else if (arg == "--repeats" && i + 1 < argc) repeats = std::strtoull(argv[++i], nullptr, 10);
        else {
            std::fprintf(stderr, "usage: %s [--length L] [--repeats R]\n", argv[0]);
            return 1;
        }
    }

    SplitMix64 rng(9001);
    std::printf("threads = %d, length = %zu\n\n", omp_get_max_threads(), length);
    std::printf("%-22s %12s %12s %10s %10s\n", "kernel", "serial_ms", "parallel_ms",
                "speedup", "check");

    bool ok = true;

    // Frame analysis: K = L/2 - 1 bins over L samples.
    const auto frame = synthesize_frame(random_spectrum(rng, length / 2 - 1), length);
    PolarSpectrum spec_par, spec_ser;
    const double t_an_par = time_best(repeats, [&] { spec_par = analyze_frame(frame); });
    const double t_an_ser = time_best(repeats, [&] { spec_ser = reference::analyze_frame(frame); });
    bool same = spec_par.c0 == spec_ser.c0;
    for (std::size_t k = 0; same && k < spec_par.bins.size(); ++k)
        same = spec_par.bins[k].module == spec_ser.bins[k].module
            && spec_par.bins[k].phase == spec_ser.bins[k].phase;
    ok &= report("analyze_frame", t_an_ser, t_an_par, same);

    // Frame synthesis over the same spectrum.
    SampledFrame syn_par, syn_ser;
    const double t_sy_par = time_best(repeats, [&] { syn_par = synthesize_frame(spec_par, length); });
    const double t_sy_ser = time_best(repeats, [&] { syn_ser = reference::synthesize_frame(spec_par, length); });
    ok &= report("synthesize_frame", t_sy_ser, t_sy_par, syn_par.samples == syn_ser.samples);

    // Square bank: 64 voices, 64 periods of the render grid.
    Decomposition decomp;
    decomp.basis_name = "square";
    for (std::size_t n = 1; n <= 64; ++n)
        decomp.terms.push_back({n, rng.uniform() / static_cast<double>(n),
                                wrap_phase(rng.uniform(-std::numbers::pi, std::numbers::pi))});
    decomp.residual_trace.assign(decomp.terms.size() + 1, 0.0);
    const RenderConfig cfg{.samples_per_period = 1024, .periods = 64};
    RenderResult nav_par, nav_ser;
    const double t_na_par = time_best(repeats, [&] { nav_par = render_naive(decomp, cfg); });
    const double t_na_ser = time_best(repeats, [&] { nav_ser = reference::render_naive(decomp, cfg); });
    ok &= report("render_naive", t_na_ser, t_na_par, nav_par.samples == nav_ser.samples);

    // Table synthesis: 64 partials on the same grid.
    const auto fspec = random_spectrum(rng, 64);
    RenderResult f_par, f_ser;
    const double t_fo_par = time_best(repeats, [&] { f_par = render_fourier(fspec, cfg, 4096); });
    const double t_fo_ser = time_best(repeats, [&] { f_ser = reference::render_fourier(fspec, cfg, 4096); });
    ok &= report("render_fourier", t_fo_ser, t_fo_par, f_par.samples == f_ser.samples);

    if (!ok) {
        std::fprintf(stderr, "\nserial and parallel outputs differ\n");
        return 1;
    }
    return 0;
}
