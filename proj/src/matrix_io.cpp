// SPDX-License-Identifier: Apache-2.0
#include "nsinv/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nsinv/error.hpp"

namespace nsinv {

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw InvalidArgument("cannot format value");
  return std::string(buf, end);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last)
    throw InvalidArgument("not a number: '" + std::string(token) + "'");
  return v;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

std::string to_text(const Matrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

Matrix read_matrix(std::istream& in) {
  long long rows = 0;
  long long cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
    throw IoError("matrix text: bad or missing 'rows cols' header");
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  std::string token;
  for (long long k = 0; k < rows * cols; ++k) {
    if (!(in >> token))
      throw IoError("matrix text: expected " + std::to_string(rows * cols) +
                    " values, got " + std::to_string(k));
    double v = 0.0;
    try {
      v = parse_double(token);
    } catch (const InvalidArgument& e) {
      throw IoError(std::string("matrix text: ") + e.what());
    }
    if (!std::isfinite(v)) throw IoError("matrix text: non-finite value '" + token + "'");
    entries.push_back(v);
  }
  if (in >> token) throw IoError("matrix text: trailing data '" + token + "'");
  return Matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                std::move(entries));
}

Matrix from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_matrix(is);
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_matrix(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_matrix(out, m);
  if (!out.flush()) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace nsinv
