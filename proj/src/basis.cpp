#include "sqsynth/basis.hpp"

#include "sqsynth/errors.hpp"
#include "kernels.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace sqsynth {

namespace {

double margin_of(const PolarSpectrum& spectrum) {
    if (spectrum.bins.empty()) return 0.0;
    const double s1 = spectrum.bins[0].module;
    double overtones = 0.0;
    for (std::size_t p = 2; p <= spectrum.bins.size(); ++p) {
        const double sp = spectrum.bins[p - 1].module;
        overtones += sp * sp;
    }
    return s1 * s1 - overtones;
}

} // namespace

BasisFunction make_square(std::size_t harmonic_budget) {
    if (harmonic_budget == 0) throw BadParams("harmonic budget must be >= 1");
    BasisFunction basis;
    basis.name = "square";
    basis.kind = BasisKind::AnalyticSquare;
    basis.harmonic_budget = harmonic_budget;
    basis.spectrum.bins.resize(harmonic_budget);
    for (std::size_t p = 1; p <= harmonic_budget; p += 2)
        basis.spectrum.bins[p - 1] = {4.0 / (std::numbers::pi * static_cast<double>(p)),
                                      -std::numbers::pi / 2.0};
    basis.margin = margin_of(basis.spectrum);
    return basis;
}

BasisFunction make_sine() {
    BasisFunction basis;
    basis.name = "sine";
    basis.kind = BasisKind::AnalyticSine;
    basis.harmonic_budget = 1;
    basis.spectrum.bins = {{1.0, -std::numbers::pi / 2.0}};
    basis.margin = 1.0;
    return basis;
}

BasisFunction make_from_samples(const SampledFrame& frame, std::string name) {
    if (frame.size() < 4) throw TooFewSamples("basis frame needs at least 4 samples");
    SampledFrame centered = frame;
    double mean = 0.0;
    for (double s : centered.samples) mean += s;
    mean /= static_cast<double>(centered.size() ? centered.size() : 1);
    for (double& s : centered.samples) s -= mean;
    if (rms(centered.samples) <= 1e-12)
        throw ZeroFunction("basis candidate is zero after mean removal");

    BasisFunction basis;
    basis.name = std::move(name);
    basis.kind = BasisKind::Tabulated;
    basis.spectrum = analyze_frame(centered);
    basis.spectrum.c0 = 0.0;
    basis.harmonic_budget = basis.spectrum.harmonics();
    basis.margin = margin_of(basis.spectrum);
    basis.table = std::move(centered);
    return basis;
}

double admissibility(const BasisFunction& basis) {
    return margin_of(basis.spectrum);
}

SampledFrame eval_basis(const BasisFunction& basis, std::size_t harmonic,
                        double theta, std::size_t length, EvalMode mode) {
    if (harmonic == 0) throw BadParams("harmonic must be >= 1");
    if (length < 4) throw TooFewSamples("grid needs at least 4 samples");
    if (length % 2 != 0) throw OddLength("grid length must be even");

    SampledFrame out;
    out.samples.resize(length);

    if (mode == EvalMode::Series) {
        // Sum the stored spectrum of S(k*x + theta), truncated at the
        // grid's own harmonic limit.
        PolarSpectrum shifted;
        const std::size_t limit = length / 2 - 1;
        for (std::size_t p = 1; p <= basis.spectrum.harmonics(); ++p) {
            const auto& b = basis.spectrum.bins[p - 1];
            if (b.module == 0.0) continue;
            const std::size_t target = p * harmonic;
            if (target > limit) break;
            if (shifted.bins.size() < target) shifted.bins.resize(target);
            shifted.bins[target - 1] = {b.module,
                                        wrap_phase(static_cast<double>(p) * theta + b.phase)};
        }
        return synthesize_frame(shifted, length);
    }

    switch (basis.kind) {
    case BasisKind::AnalyticSquare: {
        const double off = kernels::phase_offset(theta);
        for (std::size_t i = 0; i < length; ++i)
            out.samples[i] = kernels::square_high(harmonic, i, length, off) ? 1.0 : -1.0;
        return out;
    }
    case BasisKind::AnalyticSine: {
        for (std::size_t i = 0; i < length; ++i) {
            const double x = 2.0 * std::numbers::pi * static_cast<double>(i)
                           / static_cast<double>(length);
            out.samples[i] = std::sin(static_cast<double>(harmonic) * x + theta);
        }
        return out;
    }
    case BasisKind::Tabulated: {
        if (!basis.table)
            throw UnsupportedMode("tabulated basis has no sample table");
        const auto& table = basis.table->samples;
        const double tlen = static_cast<double>(table.size());
        const double off = kernels::phase_offset(theta);
        for (std::size_t i = 0; i < length; ++i) {
            // Position in periods, then linear interpolation with wraparound.
            const std::size_t r = (harmonic * i) % length;
            double u = static_cast<double>(r) / static_cast<double>(length) + off;
            if (u >= 1.0) u -= 1.0;
            const double pos = u * tlen;
            const std::size_t i0 = static_cast<std::size_t>(pos) % table.size();
            const std::size_t i1 = (i0 + 1) % table.size();
            const double frac = pos - std::floor(pos);
            out.samples[i] = table[i0] + frac * (table[i1] - table[i0]);
        }
        return out;
    }
    }
    throw UnsupportedMode("unknown basis kind");
}

} // namespace sqsynth
