#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pwinterp/control.hpp"
#include "pwinterp/sequence.hpp"

namespace pwinterp {

// Shortest decimal form that round-trips a double (%.17g).
std::string format_float(double value);
// "re im" pair in the same format.
std::string format_complex(Complex value);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial artifact. Throws OutputError.
void atomic_write_text(const std::filesystem::path& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view bytes);
// 16 hex digits of the FNV-1a hash of the file's bytes. Throws IoError.
std::string file_hash_hex(const std::filesystem::path& path);

// Comma-separated table with one header row; every cell is written verbatim.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Node list, one "re im" pair per line. # lines are comments; the directives
//   # strip_bound <value>
//   # generator <tag>
// restore the sequence's metadata.
ComplexSequence read_sequence(const std::filesystem::path& path);
void write_sequence(const std::filesystem::path& path, const ComplexSequence&);

// Diagonal system, one "re(rate) im(rate) re(coupling) im(coupling)" per line.
DiagonalSystem read_system(const std::filesystem::path& path);
void write_system(const std::filesystem::path& path, const DiagonalSystem&);

// Control samples as CSV (t, re, im). Reading restores a sampled-only signal:
// horizon = final time, no exponential form; the stored norm is not part of
// the file and is left at zero.
ControlSignal read_signal(const std::filesystem::path& path);
void write_signal(const std::filesystem::path& path, const ControlSignal&);

// One "re im" pair per line.
std::vector<Complex> read_complex_values(const std::filesystem::path& path);
// One positive float per line.
std::vector<double> read_positive_values(const std::filesystem::path& path);

}  // namespace pwinterp
