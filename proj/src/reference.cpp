#include "sqsynth/reference.hpp"

#include "sqsynth/errors.hpp"
#include "kernels.hpp"

#include <cmath>

namespace sqsynth::reference {

PolarSpectrum analyze_frame(const SampledFrame& frame) {
    const std::size_t length = frame.size();
    if (length < 4) throw TooFewSamples("frame needs at least 4 samples");
    if (length % 2 != 0) throw OddLength("frame length must be even");
    for (double s : frame.samples)
        if (!std::isfinite(s)) throw NonFiniteInput("frame contains a non-finite sample");

    const std::size_t harmonics = length / 2 - 1;
    double mean = 0.0;
    for (double s : frame.samples) mean += s;
    mean /= static_cast<double>(length);

    const auto w = kernels::twiddle_table(length);
    PolarSpectrum spec;
    spec.c0 = mean;
    spec.bins.resize(harmonics);
    for (std::size_t k = 1; k <= harmonics; ++k)
        spec.bins[k - 1] = canonical_bin(kernels::analyze_bin(frame.samples, w, k));
    return spec;
}

SampledFrame synthesize_frame(const PolarSpectrum& spec, std::size_t length) {
    if (length < 4) throw TooFewSamples("grid needs at least 4 samples");
    if (length % 2 != 0) throw OddLength("grid length must be even");
    if (spec.harmonics() > length / 2 - 1)
        throw TooFewSamples("grid too short for the spectrum's harmonics");

    const std::size_t harmonics = spec.harmonics();
    std::vector<double> cb(harmonics), sb(harmonics);
    for (std::size_t k = 0; k < harmonics; ++k) {
        cb[k] = spec.bins[k].module * std::cos(spec.bins[k].phase);
        sb[k] = spec.bins[k].module * std::sin(spec.bins[k].phase);
    }

    const auto w = kernels::twiddle_table(length);
    SampledFrame out;
    out.samples.resize(length);
    for (std::size_t i = 0; i < length; ++i)
        out.samples[i] = kernels::synth_sample(spec.c0, cb, sb, w, i);
    return out;
}

RenderResult render_naive(const Decomposition& decomp, const RenderConfig& cfg) {
    kernels::check_render_config(cfg);
    const auto voices = kernels::square_voices(decomp);
    const std::size_t period = cfg.samples_per_period * cfg.oversample;
    const std::size_t total = period * cfg.periods;

    RenderResult res;
    res.samples.resize(total);
    for (std::size_t i = 0; i < total; ++i)
        res.samples[i] = kernels::square_bank_sample(decomp.c0, voices, i % period, period);

    res.stats.adds = static_cast<std::uint64_t>(voices.size()) * total;
    res.stats.samples_rendered = total;
    if (cfg.filter_cutoff)
        res.samples = rc_lowpass(res.samples, *cfg.filter_cutoff, period);
    return res;
}

RenderResult render_fourier(const PolarSpectrum& spec, const RenderConfig& cfg,
                            std::size_t lut_size, LutInterp interp) {
    kernels::check_render_config(cfg);
    const auto lut = kernels::cosine_lut(lut_size);
    const auto voices = kernels::lut_voices(spec);
    const bool linear = interp == LutInterp::Linear;
    const std::size_t period = cfg.samples_per_period * cfg.oversample;
    const std::size_t total = period * cfg.periods;

    RenderResult res;
    res.samples.resize(total);
    for (std::size_t i = 0; i < total; ++i)
        res.samples[i] = kernels::fourier_sample(spec.c0, voices, lut, i % period,
                                                 period, linear);

    const auto partials = static_cast<std::uint64_t>(voices.size());
    res.stats.adds = partials * total;
    res.stats.multiplies = partials * total;
    res.stats.table_reads = partials * total * (linear ? 2 : 1);
    res.stats.samples_rendered = total;
    if (cfg.filter_cutoff)
        res.samples = rc_lowpass(res.samples, *cfg.filter_cutoff, period);
    return res;
}

} // namespace sqsynth::reference
