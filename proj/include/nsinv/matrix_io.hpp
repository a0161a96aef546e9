// SPDX-License-Identifier: Apache-2.0
#pragma once

// Plain-text matrix format:
//
//   rows cols
//   v00 v01 ... v0(cols-1)
//   ...
//
// Values use the shortest representation that round-trips exactly; fields are
// separated by one space and lines end with '\n'.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "nsinv/matrix.hpp"

namespace nsinv {

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

/// Strict parse of a whole token. Throws InvalidArgument on junk.
double parse_double(std::string_view token);

void write_matrix(std::ostream& out, const Matrix& m);
std::string to_text(const Matrix& m);

/// Throws IoError on malformed input (bad header, wrong value count,
/// unparsable or non-finite values).
Matrix read_matrix(std::istream& in);
Matrix from_text(std::string_view text);

Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m);

}  // namespace nsinv
