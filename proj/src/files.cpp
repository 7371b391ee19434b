#include "sqsynth/files.hpp"

#include "sqsynth/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

namespace sqsynth {

namespace {

constexpr int decomposition_format_version = 1;

std::string read_text(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open for reading: " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open for writing: " + path.string());
    f << text;
    if (!f) throw IoFailure("write failed: " + path.string());
}

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw FileFormat("bad number: " + std::string(s));
    return v;
}

void check_phase(double phase, double module) {
    if (!std::isfinite(phase) || phase > std::numbers::pi || phase <= -std::numbers::pi)
        throw FileFormat("phase out of (-pi, pi]");
    if (module == 0.0 && phase != 0.0)
        throw FileFormat("zero-module entry must have zero phase");
}

// Strip one trailing '\r' so CRLF files parse too.
std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

} // namespace

void write_decomposition(const std::filesystem::path& path, const Decomposition& decomp) {
    nlohmann::json j;
    j["format_version"] = decomposition_format_version;
    j["basis"] = decomp.basis_name;
    j["c0"] = decomp.c0;
    j["eps"] = decomp.rms_eps;
    auto& terms = j["terms"] = nlohmann::json::array();
    for (const auto& t : decomp.terms)
        terms.push_back({t.harmonic, t.module, t.phase});
    j["trace"] = decomp.residual_trace;
    write_text(path, j.dump(2) + "\n");
}

Decomposition read_decomposition(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FileFormat(std::string("bad decomposition JSON: ") + e.what());
    }

    try {
        if (!j.is_object() || j.at("format_version").get<int>() != decomposition_format_version)
            throw FileFormat("unsupported decomposition format version");

        Decomposition d;
        d.basis_name = j.at("basis").get<std::string>();
        d.c0 = j.at("c0").get<double>();
        d.rms_eps = j.at("eps").get<double>();
        if (!std::isfinite(d.c0) || !(d.rms_eps >= 0.0))
            throw FileFormat("bad c0 or eps");

        for (const auto& row : j.at("terms")) {
            if (!row.is_array() || row.size() != 3)
                throw FileFormat("term rows must be [n, M, Theta]");
            Term t;
            t.harmonic = row[0].get<std::size_t>();
            t.module = row[1].get<double>();
            t.phase = row[2].get<double>();
            if (t.harmonic != d.terms.size() + 1)
                throw FileFormat("terms must cover n = 1, 2, ... in order");
            if (!std::isfinite(t.module) || t.module < 0.0)
                throw FileFormat("bad term module");
            check_phase(t.phase, t.module);
            d.terms.push_back(t);
        }

        for (const auto& v : j.at("trace")) {
            const double e = v.get<double>();
            if (!std::isfinite(e) || e < 0.0) throw FileFormat("bad trace entry");
            d.residual_trace.push_back(e);
        }
        if (d.residual_trace.size() != d.terms.size() + 1)
            throw FileFormat("trace must hold one entry per term plus the final norm");

        d.converged = d.residual_trace.back() <= d.rms_eps;
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw FileFormat(std::string("bad decomposition JSON: ") + e.what());
    }
}

void write_spectrum_csv(const std::filesystem::path& path, const std::vector<Term>& rows) {
    std::string out = "k,M,Theta\n";
    for (const auto& r : rows) {
        if (r.module == 0.0) continue;
        out += std::to_string(r.harmonic);
        out += ',';
        out += fmt_double(r.module);
        out += ',';
        out += fmt_double(r.phase);
        out += '\n';
    }
    write_text(path, out);
}

std::vector<Term> read_spectrum_csv(const std::filesystem::path& path) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line) || trim_cr(line) != "k,M,Theta")
        throw FileFormat("spectrum file must start with the k,M,Theta header");

    std::vector<Term> rows;
    std::size_t last_k = 0;
    while (std::getline(in, line)) {
        const std::string_view sv = trim_cr(line);
        if (sv.empty()) continue;
        const auto c1 = sv.find(',');
        const auto c2 = sv.find(',', c1 == std::string_view::npos ? c1 : c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw FileFormat("spectrum rows must be k,M,Theta");
        Term t;
        const auto kres = std::from_chars(sv.data(), sv.data() + c1, t.harmonic);
        if (kres.ec != std::errc{} || kres.ptr != sv.data() + c1 || t.harmonic == 0)
            throw FileFormat("bad harmonic index: " + std::string(sv));
        t.module = parse_double(sv.substr(c1 + 1, c2 - c1 - 1));
        t.phase = parse_double(sv.substr(c2 + 1));
        if (!std::isfinite(t.module) || t.module < 0.0)
            throw FileFormat("bad module: " + std::string(sv));
        check_phase(t.phase, t.module);
        if (t.harmonic <= last_k) throw FileFormat("rows must be sorted by k");
        last_k = t.harmonic;
        rows.push_back(t);
    }
    return rows;
}

void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples) {
    std::string out;
    out.reserve(samples.size() * 20);
    for (double s : samples) {
        out += fmt_double(s);
        out += '\n';
    }
    write_text(path, out);
}

std::vector<double> read_signal_csv(const std::filesystem::path& path) {
    std::istringstream in(read_text(path));
    std::vector<double> samples;
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view sv = trim_cr(line);
        if (sv.empty()) continue;
        const double v = parse_double(sv);
        if (!std::isfinite(v)) throw FileFormat("signal samples must be finite");
        samples.push_back(v);
    }
    return samples;
}

} // namespace sqsynth
