#include "pwinterp/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pwinterp {

namespace {

std::string read_entire_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path.string());
  return std::move(buffer).str();
}

double parse_double(const std::string& token, const std::filesystem::path& path, int line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + token + "'");
  }
}

std::vector<std::string> split_plain(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::string spaced = line;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  return split_plain(spaced);
}

// Walks a numeric table file line by line, handing comment directives and
// token rows to the callbacks. Rows treat commas as separators; directives
// split on whitespace only (generator tags carry commas of their own).
template <typename OnDirective, typename OnRow>
void scan_table(const std::filesystem::path& path, OnDirective&& on_directive, OnRow&& on_row) {
  std::istringstream in(read_entire_file(path));
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') {
      on_directive(split_plain(line.substr(start + 1)), number);
      continue;
    }
    on_row(split_ws(line.substr(start)), number);
  }
}

}  // namespace

std::string format_float(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string format_complex(Complex value) {
  return format_float(value.real()) + " " + format_float(value.imag());
}

void atomic_write_text(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot create " + temp.string());
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) throw OutputError("write failed on " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw OutputError("cannot move " + temp.string() + " into place: " + ec.message());
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string file_hash_hex(const std::filesystem::path& path) {
  const std::uint64_t hash = fnv1a64(read_entire_file(path));
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string text;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text += ',';
    text += header[i];
  }
  text += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw OutputError("csv row width does not match the header: " + path.string());
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += row[i];
    }
    text += '\n';
  }
  atomic_write_text(path, text);
}

ComplexSequence read_sequence(const std::filesystem::path& path) {
  std::vector<Complex> points;
  std::optional<double> strip_bound;
  std::optional<GeneratorTag> tag;
  scan_table(
      path,
      [&](const std::vector<std::string>& words, int line) {
        if (words.size() == 2 && words[0] == "strip_bound")
          strip_bound = parse_double(words[1], path, line);
        else if (words.size() == 2 && words[0] == "generator")
          tag = parse_generator_tag(words[1]);
      },
      [&](const std::vector<std::string>& tokens, int line) {
        if (tokens.size() != 2)
          throw IoError(path.string() + ":" + std::to_string(line) +
                        ": expected 're im' per line");
        points.emplace_back(parse_double(tokens[0], path, line),
                            parse_double(tokens[1], path, line));
      });
  if (points.empty()) throw IoError("no nodes in " + path.string());
  try {
    return ComplexSequence(std::move(points), strip_bound, std::move(tag));
  } catch (const Error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_sequence(const std::filesystem::path& path, const ComplexSequence& sequence) {
  std::string text;
  if (sequence.strip_bound())
    text += "# strip_bound " + format_float(*sequence.strip_bound()) + "\n";
  if (sequence.tag()) text += "# generator " + sequence.tag()->to_string() + "\n";
  for (const Complex& z : sequence.points()) text += format_complex(z) + "\n";
  atomic_write_text(path, text);
}

DiagonalSystem read_system(const std::filesystem::path& path) {
  std::vector<Complex> rates;
  std::vector<Complex> couplings;
  bool first_row = true;
  scan_table(
      path, [](const std::vector<std::string>&, int) {},
      [&](const std::vector<std::string>& tokens, int line) {
        if (first_row) {
          first_row = false;
          // a textual header row is allowed and skipped
          char* end = nullptr;
          std::strtod(tokens[0].c_str(), &end);
          if (end == tokens[0].c_str()) return;
        }
        if (tokens.size() != 5)
          throw IoError(path.string() + ":" + std::to_string(line) +
                        ": expected 'n, rate_re, rate_im, coupling_re, coupling_im'");
        rates.emplace_back(parse_double(tokens[1], path, line),
                           parse_double(tokens[2], path, line));
        couplings.emplace_back(parse_double(tokens[3], path, line),
                               parse_double(tokens[4], path, line));
      });
  try {
    return make_diagonal_system(std::move(rates), std::move(couplings));
  } catch (const Error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_system(const std::filesystem::path& path, const DiagonalSystem& system) {
  std::string text = "n,rate_re,rate_im,coupling_re,coupling_im\n";
  for (std::size_t n = 0; n < system.rates.size(); ++n) {
    text += std::to_string(n) + "," + format_float(system.rates[n].real()) + "," +
            format_float(system.rates[n].imag()) + "," + format_float(system.couplings[n].real()) +
            "," + format_float(system.couplings[n].imag()) + "\n";
  }
  atomic_write_text(path, text);
}

ControlSignal read_signal(const std::filesystem::path& path) {
  const std::string text = read_entire_file(path);
  std::istringstream in(text);
  std::string line;
  ControlSignal signal;
  int number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;  // first row is the column header
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::string> tokens;
    while (std::getline(cells, cell, ',')) tokens.push_back(cell);
    if (tokens.size() != 3)
      throw IoError(path.string() + ":" + std::to_string(number) + ": expected 't,re,im'");
    signal.times.push_back(parse_double(tokens[0], path, number));
    signal.values.emplace_back(parse_double(tokens[1], path, number),
                               parse_double(tokens[2], path, number));
  }
  if (signal.times.size() < 2) throw IoError("signal needs at least 2 samples: " + path.string());
  for (std::size_t i = 1; i < signal.times.size(); ++i)
    if (!(signal.times[i] > signal.times[i - 1]))
      throw IoError("signal times must increase: " + path.string());
  signal.horizon = signal.times.back();
  return signal;
}

void write_signal(const std::filesystem::path& path, const ControlSignal& signal) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(signal.times.size());
  for (std::size_t i = 0; i < signal.times.size(); ++i)
    rows.push_back({format_float(signal.times[i]), format_float(signal.values[i].real()),
                    format_float(signal.values[i].imag())});
  write_csv(path, {"t", "re", "im"}, rows);
}

std::vector<Complex> read_complex_values(const std::filesystem::path& path) {
  std::vector<Complex> values;
  scan_table(
      path, [](const std::vector<std::string>&, int) {},
      [&](const std::vector<std::string>& tokens, int line) {
        if (tokens.size() != 2)
          throw IoError(path.string() + ":" + std::to_string(line) + ": expected 're im'");
        values.emplace_back(parse_double(tokens[0], path, line),
                            parse_double(tokens[1], path, line));
      });
  if (values.empty()) throw IoError("no values in " + path.string());
  return values;
}

std::vector<double> read_positive_values(const std::filesystem::path& path) {
  std::vector<double> values;
  scan_table(
      path, [](const std::vector<std::string>&, int) {},
      [&](const std::vector<std::string>& tokens, int line) {
        if (tokens.size() != 1)
          throw IoError(path.string() + ":" + std::to_string(line) + ": expected one value");
        const double value = parse_double(tokens[0], path, line);
        if (!(value > 0.0))
          throw IoError(path.string() + ":" + std::to_string(line) + ": value must be positive");
        values.push_back(value);
      });
  if (values.empty()) throw IoError("no values in " + path.string());
  return values;
}

}  // namespace pwinterp
