#include "sqsynth/wav.hpp"

#include "sqsynth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace sqsynth {

namespace {

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8)
         | (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

WavWriteInfo write_wav_pcm16(const std::filesystem::path& path,
                             std::span<const double> samples,
                             std::uint32_t sample_rate) {
    WavWriteInfo info;
    for (double s : samples) {
        if (!std::isfinite(s)) throw NonFiniteInput("signal contains a non-finite sample");
        info.peak = std::max(info.peak, std::fabs(s));
    }
    info.scale = info.peak > 0.0 ? 0.9 * 32767.0 / info.peak : 0.0;

    const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put_u32(out, 36 + data_bytes);
    out += "WAVE";
    out += "fmt ";
    put_u32(out, 16);
    put_u16(out, 1); // PCM
    put_u16(out, 1); // mono
    put_u32(out, sample_rate);
    put_u32(out, sample_rate * 2);
    put_u16(out, 2);  // block align
    put_u16(out, 16); // bits per sample
    out += "data";
    put_u32(out, data_bytes);
    for (double s : samples) {
        const long q = std::lrint(s * info.scale);
        const auto v = static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
        put_u16(out, static_cast<std::uint16_t>(v));
    }

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open for writing: " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoFailure("write failed: " + path.string());
    return info;
}

WavAudio read_wav_pcm16(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open for reading: " + path.string());
    std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
    const std::size_t size = buf.size();

    if (size < 12 || buf.compare(0, 4, "RIFF") != 0 || buf.compare(8, 4, "WAVE") != 0)
        throw FileFormat("not a RIFF/WAVE file");

    bool have_fmt = false;
    WavAudio audio;
    std::size_t pos = 12;
    while (pos + 8 <= size) {
        const std::string id = buf.substr(pos, 4);
        const std::uint32_t chunk = get_u32(p + pos + 4);
        pos += 8;
        if (pos + chunk > size) throw FileFormat("truncated chunk: " + id);
        if (id == "fmt ") {
            if (chunk < 16) throw FileFormat("fmt chunk too short");
            if (get_u16(p + pos) != 1) throw FileFormat("only PCM is supported");
            if (get_u16(p + pos + 2) != 1) throw FileFormat("only mono is supported");
            if (get_u16(p + pos + 14) != 16) throw FileFormat("only 16-bit samples are supported");
            audio.sample_rate = get_u32(p + pos + 4);
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) throw FileFormat("data chunk before fmt");
            audio.samples.reserve(chunk / 2);
            for (std::size_t i = 0; i + 1 < chunk; i += 2) {
                const auto v = static_cast<std::int16_t>(get_u16(p + pos + i));
                audio.samples.push_back(static_cast<double>(v) / 32768.0);
            }
            return audio;
        }
        pos += chunk + (chunk % 2); // chunks are word-aligned
    }
    throw FileFormat("no data chunk");
}

} // namespace sqsynth
