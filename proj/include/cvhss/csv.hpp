// cvhss: complex vector CSV exchange. Two columns re,im per row, printed
// with 17 significant digits so a write/read round trip reproduces every
// double bit for bit.

#ifndef CVHSS_CSV_HPP
#define CVHSS_CSV_HPP

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cvhss/core.hpp"

namespace cvhss {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_complex_csv(std::ostream& os, const cvec& v, bool header = false) {
    if (header) os << "re,im\n";
    for (const cplx& z : v)
        os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
}

inline void write_complex_csv(const std::string& path, const cvec& v,
                              bool header = false) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_complex_csv(os, v, header);
}

// Accepts an optional re,im header, blank lines, and a lone re column
// (imaginary part zero). Anything else is a format error.
inline cvec read_complex_csv(std::istream& is) {
    cvec v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (lineno == 1 && !std::isdigit(line[start]) && line[start] != '+' &&
            line[start] != '-' && line[start] != '.')
            continue;   // header
        std::istringstream ss(line);
        std::string field;
        double re = 0.0, im = 0.0;
        if (!std::getline(ss, field, ','))
            throw std::runtime_error("csv: bad row " + std::to_string(lineno));
        try {
            re = std::stod(field);
            if (std::getline(ss, field, ',')) im = std::stod(field);
        } catch (const std::exception&) {
            throw std::runtime_error("csv: bad number at row " + std::to_string(lineno));
        }
        v.emplace_back(re, im);
    }
    return v;
}

inline cvec read_complex_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_complex_csv(is);
}

} // namespace cvhss

#endif
