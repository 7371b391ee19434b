#pragma once

#include "sqsynth/basis.hpp"
#include "sqsynth/spectrum.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace sqsynth {

// Residual bins with modules at or below this are recorded as zero terms.
inline constexpr double zero_tolerance = 1e-12;

// One extracted component: module * S(harmonic * x + phase).
struct Term {
    std::size_t harmonic = 0; // n
    double module = 0.0;      // M_n >= 0
    double phase = 0.0;       // Theta_n in (-pi, pi], 0 when module is 0
};

struct Decomposition {
    double c0 = 0.0;
    std::string basis_name;
    std::vector<Term> terms;            // harmonics 1..terms.size(), in order
    std::vector<double> residual_trace; // norm before each step, plus final
    bool converged = false;             // final trace entry <= rms_eps
    double rms_eps = 0.0;
};

// Greedy frequency-by-frequency extraction: for n = 1, 2, ... read the
// residual bin at n, emit the term that cancels it exactly, and subtract
// the term's full overtone comb from the residual. Runs min(max_terms, K)
// steps, stopping early once the residual norm drops below rms_eps.
// strict = true refuses bases with margin <= 0.
Decomposition deconstruct(const PolarSpectrum& spec, const BasisFunction& basis,
                          std::size_t max_terms, double rms_eps = 0.0,
                          bool strict = false);

// Spectrum of sum_n M_n * S(n*x + Theta_n) + c0, truncated at `harmonics`.
PolarSpectrum reconstruct_spectrum(const Decomposition& decomp,
                                   const BasisFunction& basis,
                                   std::size_t harmonics);

// spec minus the decomposition's reconstruction, bin by bin.
PolarSpectrum residual_of(const PolarSpectrum& spec, const Decomposition& decomp,
                          const BasisFunction& basis);

} // namespace sqsynth
