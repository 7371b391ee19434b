#include "sqsynth/deconstruct.hpp"

#include "sqsynth/errors.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace sqsynth {

namespace {

// Nonzero basis overtones as complex coefficients s_p * exp(j*phi_p), p >= 2.
struct Overtone {
    std::size_t p;
    double module;
    double phase;
};

std::vector<Overtone> overtones_of(const BasisFunction& basis) {
    std::vector<Overtone> list;
    for (std::size_t p = 2; p <= basis.spectrum.harmonics(); ++p) {
        const auto& b = basis.spectrum.bins[p - 1];
        if (b.module != 0.0) list.push_back({p, b.module, b.phase});
    }
    return list;
}

double residual_norm(double c0, const std::vector<std::complex<double>>& bins) {
    double acc = c0 * c0;
    for (const auto& c : bins) acc += 0.5 * std::norm(c);
    return std::sqrt(acc);
}

} // namespace

Decomposition deconstruct(const PolarSpectrum& spec, const BasisFunction& basis,
                          std::size_t max_terms, double rms_eps, bool strict) {
    if (basis.spectrum.harmonics() == 0 || basis.spectrum.bins[0].module <= zero_tolerance)
        throw NonadmissibleFundamental("basis has no energy at its fundamental");
    if (strict && !(basis.margin > 0.0))
        throw NonadmissibleBasis("basis margin is not positive");
    if (rms_eps < 0.0) throw BadParams("rms_eps must be >= 0");

    const double s1 = basis.spectrum.bins[0].module;
    const double phi1 = basis.spectrum.bins[0].phase;
    const auto overtones = overtones_of(basis);

    const std::size_t harmonics = spec.harmonics();
    std::vector<std::complex<double>> residual(harmonics);
    for (std::size_t k = 0; k < harmonics; ++k)
        residual[k] = bin_complex(spec.bins[k]);

    Decomposition out;
    out.c0 = spec.c0;
    out.basis_name = basis.name;
    out.rms_eps = rms_eps;

    const std::size_t steps = std::min(max_terms, harmonics);
    out.terms.reserve(steps);
    out.residual_trace.reserve(steps + 1);
    out.residual_trace.push_back(residual_norm(0.0, residual));

    for (std::size_t n = 1; n <= steps; ++n) {
        const std::complex<double> bin = residual[n - 1];
        const double m = std::abs(bin);
        if (m <= zero_tolerance) {
            out.terms.push_back({n, 0.0, 0.0});
        } else {
            const double module = m / s1;
            const double phase = wrap_phase(std::arg(bin) - phi1);
            out.terms.push_back({n, module, phase});
            // The extracted term cancels bin n exactly; only the overtone
            // comb p*n for p >= 2 is subtracted in floating point.
            residual[n - 1] = {0.0, 0.0};
            for (const auto& ot : overtones) {
                const std::size_t target = ot.p * n;
                if (target > harmonics) break;
                residual[target - 1] -= std::polar(
                    module * ot.module,
                    wrap_phase(static_cast<double>(ot.p) * phase + ot.phase));
            }
        }
        out.residual_trace.push_back(residual_norm(0.0, residual));
        if (out.residual_trace.back() < rms_eps) break;
    }

    out.converged = out.residual_trace.back() <= rms_eps;
    return out;
}

PolarSpectrum reconstruct_spectrum(const Decomposition& decomp,
                                   const BasisFunction& basis,
                                   std::size_t harmonics) {
    std::vector<std::complex<double>> bins(harmonics, {0.0, 0.0});
    for (const auto& term : decomp.terms) {
        if (term.module == 0.0) continue;
        for (std::size_t p = 1; p <= basis.spectrum.harmonics(); ++p) {
            const auto& b = basis.spectrum.bins[p - 1];
            if (b.module == 0.0) continue;
            const std::size_t target = p * term.harmonic;
            if (target > harmonics) break;
            bins[target - 1] += std::polar(
                term.module * b.module,
                wrap_phase(static_cast<double>(p) * term.phase + b.phase));
        }
    }

    PolarSpectrum out;
    out.c0 = decomp.c0;
    out.bins.resize(harmonics);
    for (std::size_t k = 0; k < harmonics; ++k)
        out.bins[k] = canonical_bin(bins[k]);
    return out;
}

PolarSpectrum residual_of(const PolarSpectrum& spec, const Decomposition& decomp,
                          const BasisFunction& basis) {
    const PolarSpectrum recon = reconstruct_spectrum(decomp, basis, spec.harmonics());
    PolarSpectrum out;
    out.c0 = spec.c0 - recon.c0;
    out.bins.resize(spec.harmonics());
    for (std::size_t k = 0; k < spec.harmonics(); ++k)
        out.bins[k] = canonical_bin(bin_complex(spec.bins[k]) - bin_complex(recon.bins[k]));
    return out;
}

} // namespace sqsynth
