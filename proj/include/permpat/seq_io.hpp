#pragma once

#include <iosfwd>
#include <string>

#include "permpat/pattern.hpp"

namespace permpat {

// seq-v1: UTF-8 text, one decimal value per line, '#' starts a comment line,
// blank lines are skipped. NaN and infinities are rejected.
Sequence read_seq_v1(std::istream& in);
void write_seq_v1(std::ostream& out, const Sequence& f);

Sequence load_seq_v1(const std::string& path);
void save_seq_v1(const std::string& path, const Sequence& f);

// Shortest-round-trip-safe decimal rendering of a double.
std::string format_value(double v);

}  // namespace permpat
