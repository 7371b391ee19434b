#pragma once

#include "sqsynth/deconstruct.hpp"

#include <filesystem>
#include <span>
#include <vector>

namespace sqsynth {

// Decomposition file: JSON with format_version, basis, c0, eps, terms as
// [n, M, Theta] triples, and the residual trace. Writing the result of
// read_decomposition reproduces the file byte for byte.
void write_decomposition(const std::filesystem::path& path, const Decomposition& decomp);
Decomposition read_decomposition(const std::filesystem::path& path);

// Spectrum/term table: CSV with header "k,M,Theta", one row per nonzero
// entry, sorted by k. Holds either analyzed spectrum bins or extracted
// decomposition terms.
void write_spectrum_csv(const std::filesystem::path& path, const std::vector<Term>& rows);
std::vector<Term> read_spectrum_csv(const std::filesystem::path& path);

// Plain signal file: one sample per line.
void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples);
std::vector<double> read_signal_csv(const std::filesystem::path& path);

} // namespace sqsynth
