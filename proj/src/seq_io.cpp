#include "permpat/seq_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace permpat {

Sequence read_seq_v1(std::istream& in) {
    Sequence out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(start, end - start + 1);
        double v = 0.0;
        const auto [ptr, ec] =
            std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw std::runtime_error("seq-v1: bad value at line " +
                                     std::to_string(lineno) + ": " + token);
        if (!std::isfinite(v))
            throw std::runtime_error("seq-v1: non-finite value at line " +
                                     std::to_string(lineno));
        out.push_back(v);
    }
    return out;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_seq_v1(std::ostream& out, const Sequence& f) {
    for (double v : f) out << format_value(v) << '\n';
}

Sequence load_seq_v1(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_seq_v1(in);
}

void save_seq_v1(const std::string& path, const Sequence& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_seq_v1(out, f);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace permpat
