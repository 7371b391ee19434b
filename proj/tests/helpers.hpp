#pragma once

// Shared test utilities: seeded random signals/bases and comparison helpers.

#include "sqsynth/basis.hpp"
#include "sqsynth/rng.hpp"
#include "sqsynth/spectrum.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>

namespace testutil {

using namespace sqsynth;

// Random canonical spectrum; decay > 0 weights energy toward the fundamental.
inline PolarSpectrum random_spectrum(SplitMix64& rng, std::size_t harmonics,
                                     double decay = 0.0) {
    PolarSpectrum spec;
    spec.bins.resize(harmonics);
    for (std::size_t k = 1; k <= harmonics; ++k) {
        double module = rng.uniform(0.0, 1.0);
        if (decay > 0.0) module /= 1.0 + decay * static_cast<double>(k - 1);
        spec.bins[k - 1] = {module, rng.uniform(-std::numbers::pi, std::numbers::pi)};
    }
    return spec;
}

/// Admissible-by-construction basis spectrum: the overtones share a fixed
// fraction of the fundamental's energy, so margin > 0 always.
inline BasisFunction random_admissible_basis(SplitMix64& rng, std::size_t budget,
                                             double overtone_energy = 0.6) {
    PolarSpectrum spec;
    spec.bins.resize(budget);
    const double s1 = rng.uniform(0.5, 1.5);
    spec.bins[0] = {s1, rng.uniform(-std::numbers::pi, std::numbers::pi)};
    double raw = 0.0;
    std::vector<double> weights(budget, 0.0);
    for (std::size_t p = 2; p <= budget; ++p) {
        weights[p - 1] = rng.uniform(0.0, 1.0) / static_cast<double>(p);
        raw += weights[p - 1] * weights[p - 1];
    }
    const double scale = raw > 0.0 ? std::sqrt(overtone_energy * s1 * s1 / raw) : 0.0;
    for (std::size_t p = 2; p <= budget; ++p)
        spec.bins[p - 1] = {weights[p - 1] * scale,
                            rng.uniform(-std::numbers::pi, std::numbers::pi)};

    BasisFunction basis;
    basis.name = "random";
    basis.kind = BasisKind::Tabulated;
    basis.spectrum = spec;
    basis.harmonic_budget = budget;
    basis.margin = admissibility(basis);
    return basis;
}

inline double max_bin_error(const PolarSpectrum& a, const PolarSpectrum& b) {
    double worst = std::abs(a.c0 - b.c0);
    const std::size_t n = std::max(a.harmonics(), b.harmonics());
    for (std::size_t k = 1; k <= n; ++k) {
        const std::complex<double> ca = k <= a.harmonics() ? bin_complex(a.bins[k - 1])
                                                           : std::complex<double>{};
        const std::complex<double> cb = k <= b.harmonics() ? bin_complex(b.bins[k - 1])
                                                           : std::complex<double>{};
        worst = std::max(worst, std::abs(ca - cb));
    }
    return worst;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double va = i < a.size() ? a[i] : 0.0;
        const double vb = i < b.size() ? b[i] : 0.0;
        worst = std::max(worst, std::abs(va - vb));
    }
    return worst;
}

// Fresh per-process temp dir for file tests.
inline std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path()
             / ("sqsynth_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace testutil
