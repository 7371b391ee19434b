#pragma once

#include "sqsynth/spectrum.hpp"

#include <optional>
#include <string>

namespace sqsynth {

enum class BasisKind { AnalyticSquare, AnalyticSine, Tabulated };

enum class EvalMode { ClosedForm, Series };

// Periodic basis waveform S, represented by its zero-mean polar spectrum
//   S(x) = sum_p s_p cos(p*x + phi_p),  p = 1..harmonic_budget.
// S is admissible for deconstruction when margin > 0, i.e. the fundamental
// carries more energy than all overtones combined.
struct BasisFunction {
    std::string name;
    BasisKind kind = BasisKind::Tabulated;
    PolarSpectrum spectrum;            // c0 == 0 always
    std::size_t harmonic_budget = 0;   // highest p retained in the spectrum
    double margin = 0.0;               // s_1^2 - sum_{p>=2} s_p^2
    std::optional<SampledFrame> table; // Tabulated kind only
};

// Square wave (+1 on the first half period): s_p = 4/(pi*p) for odd p,
// phases -pi/2, truncated at harmonic_budget.
BasisFunction make_square(std::size_t harmonic_budget);

// Pure sine: single harmonic, margin exactly 1.
BasisFunction make_sine();

// Arbitrary one-period waveform. The mean is removed; the spectrum comes
// from analyze_frame. Throws ZeroFunction when nothing remains.
BasisFunction make_from_samples(const SampledFrame& frame,
                                std::string name = "tabulated");

// Recompute s_1^2 - sum_{p>=2} s_p^2 from the stored spectrum.
double admissibility(const BasisFunction& basis);

// Samples of S(harmonic * x + theta) on a length-point grid. ClosedForm
// uses the exact waveform (or the stored table); Series sums the stored
// spectrum truncated at the grid's Nyquist limit.
SampledFrame eval_basis(const BasisFunction& basis, std::size_t harmonic,
                        double theta, std::size_t length, EvalMode mode);

} // namespace sqsynth
