#include "sqsynth/engines.hpp"

#include "sqsynth/errors.hpp"
#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace sqsynth {

RenderResult render_naive(const Decomposition& decomp, const RenderConfig& cfg) {
    kernels::check_render_config(cfg);
    const auto voices = kernels::square_voices(decomp);
    const std::size_t period = cfg.samples_per_period * cfg.oversample;
    const std::size_t total = period * cfg.periods;

    RenderResult res;
    res.samples.resize(total);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i)
        res.samples[i] = kernels::square_bank_sample(decomp.c0, voices,
                                                     static_cast<std::size_t>(i) % period,
                                                     period);

    res.stats.adds = static_cast<std::uint64_t>(voices.size()) * total;
    res.stats.samples_rendered = total;
    if (cfg.filter_cutoff)
        res.samples = rc_lowpass(res.samples, *cfg.filter_cutoff, period);
    return res;
}

namespace {

// One scheduled level change: the square of one voice crosses a half-period
// boundary at `sample` (within the period), stepping the bank by +-2*M.
struct FlipEvent {
    std::size_t sample;
    std::size_t voice; // keeps same-sample application order deterministic
    double delta;
};

// All level changes of one voice within a period: harmonic n crosses 2n
// half-cycle boundaries. The level at each grid position comes from the
// same predicate the naive bank evaluates, so both engines flip on exactly
// the same samples.
void schedule_voice(const kernels::SquareVoice& v, std::size_t voice_index,
                    std::size_t period, std::vector<FlipEvent>& events) {
    bool prev = kernels::square_high(v.harmonic, period - 1, period, v.offset);
    for (std::size_t pos = 0; pos < period; ++pos) {
        const bool cur = kernels::square_high(v.harmonic, pos, period, v.offset);
        if (cur != prev)
            events.push_back({pos, voice_index,
                              cur ? 2.0 * v.module : -2.0 * v.module});
        prev = cur;
    }
}

} // namespace

RenderResult render_differential(const Decomposition& decomp, const RenderConfig& cfg) {
    kernels::check_render_config(cfg);
    const auto voices = kernels::square_voices(decomp);
    const std::size_t period = cfg.samples_per_period * cfg.oversample;
    const std::size_t total = period * cfg.periods;

    std::vector<FlipEvent> events;
    for (std::size_t v = 0; v < voices.size(); ++v)
        if (voices[v].module != 0.0)
            schedule_voice(voices[v], v, period, events);
    std::sort(events.begin(), events.end(), [](const FlipEvent& a, const FlipEvent& b) {
        return a.sample != b.sample ? a.sample < b.sample : a.voice < b.voice;
    });

    RenderResult res;
    res.samples.resize(total);

    // The accumulator starts at the bank level of the period's last sample,
    // so flips scheduled on sample 0 apply there like anywhere else and
    // every period sees the full set of updates.
    double acc = decomp.c0;
    for (const auto& v : voices) {
        const bool high = kernels::square_high(v.harmonic, period - 1, period, v.offset);
        acc += high ? v.module : -v.module;
    }
    double comp = 0.0; // Kahan compensation for the event updates
    std::uint64_t adds = voices.size();

    std::size_t next = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t pos = i % period;
        if (pos == 0) next = 0;
        while (next < events.size() && events[next].sample == pos) {
            const double y = events[next].delta - comp;
            const double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            ++next;
        }
        res.samples[i] = acc;
    }

    res.stats.sign_flips = static_cast<std::uint64_t>(events.size()) * cfg.periods;
    res.stats.adds = adds + res.stats.sign_flips;
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
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i)
        res.samples[i] = kernels::fourier_sample(spec.c0, voices, lut,
                                                 static_cast<std::size_t>(i) % period,
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

std::vector<double> rc_lowpass(std::span<const double> signal, double cutoff,
                               std::size_t samples_per_period) {
    if (!(cutoff > 0.0)) throw BadParams("cutoff must be positive");
    if (samples_per_period == 0 || signal.empty() || signal.size() % samples_per_period != 0)
        throw BadParams("signal length must be a positive multiple of the period");

    const std::size_t period = samples_per_period;
    const double alpha = 1.0 - std::exp(-2.0 * std::numbers::pi * cutoff
                                        / static_cast<double>(period));

    // Filtering the mean-removed signal keeps DC exact (unity gain at 0).
    double mean = 0.0;
    for (std::size_t i = 0; i < period; ++i) mean += signal[i];
    mean /= static_cast<double>(period);

    // Periodic steady state: one pass from zero yields p = y_L with y_0 = 0;
    // the periodic fixed point is p / (1 - beta^L), beta^L = exp(-2*pi*c).
    double y = 0.0;
    for (std::size_t i = 0; i < period; ++i)
        y += alpha * ((signal[i] - mean) - y);
    const double beta_period = std::exp(-2.0 * std::numbers::pi * cutoff);
    if (beta_period < 1.0) y /= 1.0 - beta_period;

    std::vector<double> out(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) {
        y += alpha * ((signal[i] - mean) - y);
        out[i] = mean + y;
    }
    return out;
}

} // namespace sqsynth
