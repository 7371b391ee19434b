// Command-line front end: signal generation, analysis over a chosen basis,
// rendering with the three engines, round-trip reports, and the Haar
// comparison. Exit codes: 0 success, 1 usage/format error, 2 claim-check
// failure, 3 nonadmissible basis in strict mode.

#include "sqsynth/basis.hpp"
#include "sqsynth/deconstruct.hpp"
#include "sqsynth/engines.hpp"
#include "sqsynth/errors.hpp"
#include "sqsynth/files.hpp"
#include "sqsynth/haar.hpp"
#include "sqsynth/signals.hpp"
#include "sqsynth/spectrum.hpp"
#include "sqsynth/wav.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

using namespace sqsynth;

bool has_extension(const std::filesystem::path& p, const char* ext) {
    return p.extension() == ext;
}

std::vector<double> load_signal(const std::filesystem::path& path) {
    if (has_extension(path, ".wav")) return read_wav_pcm16(path).samples;
    return read_signal_csv(path);
}

void save_signal(const std::filesystem::path& path, const std::vector<double>& samples,
                 std::uint32_t rate) {
    if (has_extension(path, ".wav")) {
        const auto info = write_wav_pcm16(path, samples, rate);
        std::printf("wav_peak = %.12g\n", info.peak);
        std::printf("wav_scale = %.12g\n", info.scale);
    } else {
        write_signal_csv(path, samples);
    }
    std::printf("wrote %s: %zu samples\n", path.string().c_str(), samples.size());
}

SampledFrame first_period(const std::vector<double>& samples, std::size_t period) {
    if (samples.size() < period)
        throw BadParams("input holds fewer samples than one period");
    SampledFrame frame;
    frame.samples.assign(samples.begin(),
                         samples.begin() + static_cast<std::ptrdiff_t>(period));
    return frame;
}

// "k:m:theta,k:m:theta,..." -> spectrum bins.
PolarSpectrum parse_components(const std::string& text) {
    PolarSpectrum spec;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(start, end - start);
        const auto c1 = item.find(':');
        const auto c2 = c1 == std::string::npos ? c1 : item.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw BadParams("components must be k:m:theta triples: " + item);
        std::size_t k = 0;
        const auto kres = std::from_chars(item.data(), item.data() + c1, k);
        if (kres.ec != std::errc{} || kres.ptr != item.data() + c1 || k == 0)
            throw BadParams("bad harmonic index in component: " + item);
        double m = 0.0, theta = 0.0;
        try {
            m = std::stod(item.substr(c1 + 1, c2 - c1 - 1));
            theta = std::stod(item.substr(c2 + 1));
        } catch (const std::exception&) {
            throw BadParams("bad number in component: " + item);
        }
        if (!(m >= 0.0) || !std::isfinite(m) || !std::isfinite(theta))
            throw BadParams("component modules must be finite and >= 0");
        if (k > spec.bins.size()) spec.bins.resize(k);
        spec.bins[k - 1] = canonical_bin(std::polar(m, theta));
        start = end + 1;
        if (end == text.size()) break;
    }
    return spec;
}

BasisFunction resolve_basis(const std::string& name, const std::string& basis_file,
                            std::size_t budget) {
    if (name == "square") return make_square(budget);
    if (name == "sine") return make_sine();
    if (name == "file") {
        if (basis_file.empty())
            throw BadParams("--basis file needs --basis-file");
        SampledFrame frame;
        frame.samples = load_signal(basis_file);
        return make_from_samples(frame, std::filesystem::path(basis_file).stem().string());
    }
    throw BadParams("unknown basis: " + name);
}

// Basis for re-expanding a stored decomposition, from the name in the file.
BasisFunction basis_for_decomposition(const Decomposition& decomp,
                                      const std::string& basis_file, std::size_t budget) {
    if (decomp.basis_name == "square") return make_square(budget);
    if (decomp.basis_name == "sine") return make_sine();
    if (basis_file.empty())
        throw BadParams("decomposition uses basis '" + decomp.basis_name
                        + "'; pass --basis-file");
    SampledFrame frame;
    frame.samples = load_signal(basis_file);
    return make_from_samples(frame, decomp.basis_name);
}

void print_stats(const char* engine, const EngineStats& s) {
    std::printf("engine = %s\n", engine);
    std::printf("samples_rendered = %llu\n",
                static_cast<unsigned long long>(s.samples_rendered));
    std::printf("adds = %llu\n", static_cast<unsigned long long>(s.adds));
    std::printf("multiplies = %llu\n", static_cast<unsigned long long>(s.multiplies));
    std::printf("table_reads = %llu\n", static_cast<unsigned long long>(s.table_reads));
    std::printf("sign_flips = %llu\n", static_cast<unsigned long long>(s.sign_flips));
    std::printf("adds_per_sample = %.12g\n",
                static_cast<double>(s.adds) / static_cast<double>(s.samples_rendered));
}

double rms_between(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& trace) {
    std::string out = "step,residual\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        char buf[48];
        const int len = std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, trace[i]);
        out.append(buf, static_cast<std::size_t>(len));
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open for writing: " + path.string());
    f << out;
    if (!f) throw IoFailure("write failed: " + path.string());
}

struct GenOpts {
    std::string shape;
    std::string output;
    std::string input;
    std::string components;
    std::size_t period_samples = 1024;
    std::size_t periods = 1;
    std::uint32_t rate = 44100;
    std::uint64_t seed = 1;
};

int run_gen(const GenOpts& o) {
    std::vector<double> samples;
    if (o.shape == "file") {
        if (o.input.empty()) throw BadParams("gen file needs --input");
        samples = load_signal(o.input);
    } else {
        SampledFrame frame;
        if (o.shape == "sine") {
            frame = make_sine_frame(o.period_samples);
        } else if (o.shape == "square") {
            frame = make_square_frame(o.period_samples);
        } else if (o.shape == "multiharmonic") {
            const PolarSpectrum spec = o.components.empty()
                ? make_multiharmonic_spectrum(o.seed)
                : parse_components(o.components);
            frame = synthesize_frame(spec, o.period_samples);
        } else {
            throw BadParams("unknown shape: " + o.shape);
        }
        samples.reserve(frame.size() * o.periods);
        for (std::size_t p = 0; p < o.periods; ++p)
            samples.insert(samples.end(), frame.samples.begin(), frame.samples.end());
    }
    save_signal(o.output, samples, o.rate);
    return 0;
}

struct AnalyzeOpts {
    std::string input;
    std::string basis = "square";
    std::string basis_file;
    std::string out_decomp = "decomp.json";
    std::string out_spectrum = "spectrum.csv";
    std::size_t period_samples = 1024;
    std::size_t terms = 0; // 0 = every representable harmonic
    double eps = 0.0;
    bool strict = false;
};

int run_analyze(const AnalyzeOpts& o) {
    const auto frame = first_period(load_signal(o.input), o.period_samples);
    const auto spec = analyze_frame(frame);
    const std::size_t max_k = spec.harmonics();
    const auto basis = resolve_basis(o.basis, o.basis_file, max_k);
    std::printf("margin = %.12g\n", basis.margin);

    const std::size_t terms = o.terms == 0 ? max_k : o.terms;
    const auto decomp = deconstruct(spec, basis, terms, o.eps, o.strict);
    std::printf("terms = %zu\n", decomp.terms.size());
    std::printf("converged = %s\n", decomp.converged ? "true" : "false");
    std::printf("final_residual = %.12g\n", decomp.residual_trace.back());

    write_decomposition(o.out_decomp, decomp);
    std::printf("wrote %s\n", o.out_decomp.c_str());
    std::vector<Term> rows(decomp.terms.begin(), decomp.terms.end());
    write_spectrum_csv(o.out_spectrum, rows);
    std::printf("wrote %s\n", o.out_spectrum.c_str());
    return 0;
}

struct SynthOpts {
    std::string input;
    std::string output;
    std::string engine = "naive";
    std::string basis_file;
    std::string lut_interp = "linear";
    std::size_t period_samples = 1024;
    std::size_t periods = 1;
    std::size_t oversample = 1;
    std::size_t lut_size = 4096;
    std::size_t bins = 0; // 0 = up to the render grid's limit
    std::optional<double> cutoff;
    std::uint32_t rate = 44100;
};

RenderResult run_engine(const Decomposition& decomp, const SynthOpts& o) {
    RenderConfig cfg{.samples_per_period = o.period_samples,
                     .periods = o.periods,
                     .oversample = o.oversample,
                     .filter_cutoff = o.cutoff};
    if (o.engine == "naive") return render_naive(decomp, cfg);
    if (o.engine == "diff") return render_differential(decomp, cfg);
    if (o.engine == "fourier") {
        if (o.period_samples < 4 || o.period_samples % 2 != 0 || o.oversample == 0)
            throw BadParams("render grid needs an even period of at least 4 samples");
        const std::size_t grid_limit = o.period_samples * o.oversample / 2 - 1;
        const std::size_t bins = o.bins == 0 ? grid_limit : o.bins;
        const auto basis = basis_for_decomposition(decomp, o.basis_file,
                                                   std::max(bins, std::size_t{1}));
        const auto spec = reconstruct_spectrum(decomp, basis, bins);
        const auto interp = o.lut_interp == "nearest" ? LutInterp::Nearest
                                                      : LutInterp::Linear;
        return render_fourier(spec, cfg, o.lut_size, interp);
    }
    throw BadParams("unknown engine: " + o.engine);
}

int run_synth(const SynthOpts& o) {
    const auto decomp = read_decomposition(o.input);
    const auto res = run_engine(decomp, o);
    print_stats(o.engine.c_str(), res.stats);
    save_signal(o.output, res.samples, o.rate);
    return 0;
}

struct RoundtripOpts {
    std::string input;
    std::string basis = "square";
    std::string basis_file;
    std::string engine = "naive";
    std::string out_trace = "trace.csv";
    std::size_t period_samples = 1024;
    std::size_t terms = 0;
    std::size_t oversample = 1;
    double eps = 0.0;
    std::optional<double> cutoff;
    bool strict = false;
};

int run_roundtrip(const RoundtripOpts& o) {
    const auto frame = first_period(load_signal(o.input), o.period_samples);
    const auto spec = analyze_frame(frame);
    const std::size_t max_k = spec.harmonics();
    const auto basis = resolve_basis(o.basis, o.basis_file, max_k);
    std::printf("margin = %.12g\n", basis.margin);

    const std::size_t terms = o.terms == 0 ? max_k : o.terms;
    const auto decomp = deconstruct(spec, basis, terms, o.eps, o.strict);
    std::printf("terms = %zu\n", decomp.terms.size());
    std::printf("converged = %s\n", decomp.converged ? "true" : "false");
    for (std::size_t i = 0; i < decomp.residual_trace.size(); ++i)
        std::printf("trace[%zu] = %.12g\n", i, decomp.residual_trace[i]);

    SynthOpts synth;
    synth.engine = o.engine;
    synth.basis_file = o.basis_file;
    synth.period_samples = o.period_samples;
    synth.oversample = o.oversample;
    synth.cutoff = o.cutoff;
    const auto res = run_engine(decomp, synth);

    // Reference: the analyzed spectrum evaluated on the render grid, passed
    // through the same filter when one is active.
    const std::size_t grid = o.period_samples * o.oversample;
    auto reference = synthesize_frame(spec, grid).samples;
    if (o.cutoff) reference = rc_lowpass(reference, *o.cutoff, grid);

    const double denom = spectrum_norm(spec);
    const double rel = rms_between(res.samples, reference) / denom;
    std::printf("final_rms_rel = %.12g\n", rel);

    write_trace_csv(o.out_trace, decomp.residual_trace);
    std::printf("wrote %s\n", o.out_trace.c_str());
    return 0;
}

struct CompareHaarOpts {
    std::string signal = "sine";
    std::size_t period_samples = 1024;
    std::size_t haar_n = 32;
    std::size_t square_n = 21;
    std::size_t oversample = 4;
    double cutoff = 12.0;
};

int run_compare_haar(const CompareHaarOpts& o) {
    if (o.signal != "sine") throw BadParams("only --signal sine is defined");
    const auto frame = make_sine_frame(o.period_samples);

    const auto haar = haar_approx(frame, o.haar_n);
    std::printf("haar_n = %zu\n", o.haar_n);
    std::printf("haar_rms = %.12g\n", haar.rms_error);

    const auto spec = analyze_frame(frame);
    const auto basis = make_square(spec.harmonics());
    const auto decomp = deconstruct(spec, basis, o.square_n);
    RenderConfig cfg{.samples_per_period = o.period_samples,
                     .periods = 1,
                     .oversample = o.oversample,
                     .filter_cutoff = o.cutoff};
    const auto res = render_naive(decomp, cfg);

    const std::size_t grid = o.period_samples * o.oversample;
    auto reference = synthesize_frame(spec, grid).samples;
    reference = rc_lowpass(reference, o.cutoff, grid);
    const double square_rms = rms_between(res.samples, reference);
    std::printf("square_n = %zu\n", o.square_n);
    std::printf("square_rms = %.12g\n", square_rms);

    const bool square_wins = square_rms < haar.rms_error;
    std::printf("winner = %s\n", square_wins ? "square" : "haar");
    return square_wins ? 0 : 2;
}

struct StatsOpts {
    std::string input;
    std::string basis_file;
    std::size_t period_samples = 1024;
    std::size_t periods = 1;
    std::size_t oversample = 1;
    std::size_t lut_size = 4096;
    std::size_t bins = 0;
};

int run_stats(const StatsOpts& o) {
    const auto decomp = read_decomposition(o.input);
    SynthOpts base;
    base.basis_file = o.basis_file;
    base.period_samples = o.period_samples;
    base.periods = o.periods;
    base.oversample = o.oversample;
    base.lut_size = o.lut_size;
    base.bins = o.bins;

    std::printf("%-10s %14s %14s %14s %14s %18s\n", "engine", "adds", "multiplies",
                "table_reads", "sign_flips", "adds_per_sample");
    for (const char* engine : {"naive", "diff", "fourier"}) {
        SynthOpts opts = base;
        opts.engine = engine;
        const auto res = run_engine(decomp, opts);
        std::printf("%-10s %14llu %14llu %14llu %14llu %18.6f\n", engine,
                    static_cast<unsigned long long>(res.stats.adds),
                    static_cast<unsigned long long>(res.stats.multiplies),
                    static_cast<unsigned long long>(res.stats.table_reads),
                    static_cast<unsigned long long>(res.stats.sign_flips),
                    static_cast<double>(res.stats.adds)
                        / static_cast<double>(res.stats.samples_rendered));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"square-wave synthesizer toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    GenOpts gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate a test signal");
    cmd_gen->add_option("shape", gen.shape, "sine|square|multiharmonic|file")->required();
    cmd_gen->add_option("-o,--output", gen.output, "output .wav or .csv")->required();
    cmd_gen->add_option("--input", gen.input, "source file for shape=file");
    cmd_gen->add_option("--components", gen.components,
                        "explicit k:m:theta triples for multiharmonic");
    cmd_gen->add_option("--period-samples", gen.period_samples, "samples per period");
    cmd_gen->add_option("--periods", gen.periods, "periods to emit");
    cmd_gen->add_option("--rate", gen.rate, "WAV sample rate");
    cmd_gen->add_option("--seed", gen.seed, "seed for multiharmonic");
    cmd_gen->callback([&] { rc = run_gen(gen); });

    AnalyzeOpts an;
    auto* cmd_an = app.add_subcommand("analyze", "deconstruct one period of a signal");
    cmd_an->add_option("input", an.input, "signal file (.wav or .csv)")->required();
    cmd_an->add_option("--period-samples", an.period_samples, "samples per period");
    cmd_an->add_option("--basis", an.basis, "square|sine|file");
    cmd_an->add_option("--basis-file", an.basis_file, "one-period waveform for --basis file");
    cmd_an->add_option("--terms", an.terms, "terms to extract (0 = all)");
    cmd_an->add_option("--eps", an.eps, "residual norm stop threshold");
    cmd_an->add_flag("--strict", an.strict, "reject bases with margin <= 0");
    cmd_an->add_option("--out-decomp", an.out_decomp, "decomposition output path");
    cmd_an->add_option("--out-spectrum", an.out_spectrum, "term table output path");
    cmd_an->callback([&] { rc = run_analyze(an); });

    SynthOpts sy;
    auto* cmd_sy = app.add_subcommand("synth", "render a stored decomposition");
    cmd_sy->add_option("input", sy.input, "decomposition file")->required();
    cmd_sy->add_option("-o,--output", sy.output, "output .wav or .csv")->required();
    cmd_sy->add_option("--engine", sy.engine, "naive|diff|fourier");
    cmd_sy->add_option("--period-samples", sy.period_samples, "samples per period");
    cmd_sy->add_option("--periods", sy.periods, "periods to render");
    cmd_sy->add_option("--oversample", sy.oversample, "oversampling factor");
    cmd_sy->add_option("--cutoff", sy.cutoff, "RC low-pass cutoff in harmonics");
    cmd_sy->add_option("--rate", sy.rate, "WAV sample rate");
    cmd_sy->add_option("--lut-size", sy.lut_size, "fourier table size (power of two)");
    cmd_sy->add_option("--lut-interp", sy.lut_interp, "linear|nearest");
    cmd_sy->add_option("--bins", sy.bins, "fourier harmonics (0 = grid limit)");
    cmd_sy->add_option("--basis-file", sy.basis_file, "waveform for tabulated bases");
    cmd_sy->callback([&] { rc = run_synth(sy); });

    RoundtripOpts rt;
    auto* cmd_rt = app.add_subcommand("roundtrip", "analyze, render, and compare");
    cmd_rt->add_option("input", rt.input, "signal file (.wav or .csv)")->required();
    cmd_rt->add_option("--period-samples", rt.period_samples, "samples per period");
    cmd_rt->add_option("--basis", rt.basis, "square|sine|file");
    cmd_rt->add_option("--basis-file", rt.basis_file, "one-period waveform for --basis file");
    cmd_rt->add_option("--terms", rt.terms, "terms to extract (0 = all)");
    cmd_rt->add_option("--eps", rt.eps, "residual norm stop threshold");
    cmd_rt->add_flag("--strict", rt.strict, "reject bases with margin <= 0");
    cmd_rt->add_option("--engine", rt.engine, "naive|diff|fourier");
    cmd_rt->add_option("--oversample", rt.oversample, "oversampling factor");
    cmd_rt->add_option("--cutoff", rt.cutoff, "RC low-pass cutoff in harmonics");
    cmd_rt->add_option("--out-trace", rt.out_trace, "residual trace CSV path");
    cmd_rt->callback([&] { rc = run_roundtrip(rt); });

    CompareHaarOpts ch;
    auto* cmd_ch = app.add_subcommand("compare-haar",
                                      "Haar truncation vs square-wave reconstruction");
    cmd_ch->add_option("--signal", ch.signal, "test signal (sine)");
    cmd_ch->add_option("--period-samples", ch.period_samples, "power-of-two period");
    cmd_ch->add_option("--haar-n", ch.haar_n, "Haar functions to keep");
    cmd_ch->add_option("--square-n", ch.square_n, "square terms to extract");
    cmd_ch->add_option("--oversample", ch.oversample, "square render oversampling");
    cmd_ch->add_option("--cutoff", ch.cutoff, "square render low-pass cutoff");
    cmd_ch->callback([&] { rc = run_compare_haar(ch); });

    StatsOpts st;
    auto* cmd_st = app.add_subcommand("stats", "operation counts for all engines");
    cmd_st->add_option("input", st.input, "decomposition file")->required();
    cmd_st->add_option("--period-samples", st.period_samples, "samples per period");
    cmd_st->add_option("--periods", st.periods, "periods to render");
    cmd_st->add_option("--oversample", st.oversample, "oversampling factor");
    cmd_st->add_option("--lut-size", st.lut_size, "fourier table size");
    cmd_st->add_option("--bins", st.bins, "fourier harmonics (0 = grid limit)");
    cmd_st->add_option("--basis-file", st.basis_file, "waveform for tabulated bases");
    cmd_st->callback([&] { rc = run_stats(st); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NonadmissibleBasis& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return rc;
}
