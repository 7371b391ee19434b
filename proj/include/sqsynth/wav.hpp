#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace sqsynth {

struct WavAudio {
    std::uint32_t sample_rate = 44100;
    std::vector<double> samples; // mono, in [-1, 1)
};

struct WavWriteInfo {
    double peak = 0.0;  // max |sample| of the input
    double scale = 0.0; // factor applied before quantization
};

// Mono 16-bit PCM writer. The signal is scaled so its peak maps to 0.9 of
// full scale; the factor used is returned. Quantization is round-to-nearest,
// so equal inputs always produce byte-identical files.
WavWriteInfo write_wav_pcm16(const std::filesystem::path& path,
                             std::span<const double> samples,
                             std::uint32_t sample_rate);

// Reads mono 16-bit PCM. Unknown RIFF chunks are skipped; anything that is
// not mono PCM16 raises FileFormat.
WavAudio read_wav_pcm16(const std::filesystem::path& path);

} // namespace sqsynth
