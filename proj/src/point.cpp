#include "bergman/point.hpp"

#include <charconv>
#include <cstdlib>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// shortest round-trip formatting
std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

// One component: "a+bi", "a-bi", "a", "bi". Whitespace already stripped.
Complex parse_component(const std::string& s, std::size_t base_pos) {
    if (s.empty()) throw ParseError("empty coordinate", base_pos, "number");
    const char* begin = s.c_str();
    char* end = nullptr;
    double first = std::strtod(begin, &end);
    if (end == begin) throw ParseError("bad coordinate '" + s + "'", base_pos, "number");
    std::size_t used = static_cast<std::size_t>(end - begin);
    if (used == s.size()) return Complex(first, 0.0);
    if (s[used] == 'i' && used + 1 == s.size()) return Complex(0.0, first);
    if (s[used] != '+' && s[used] != '-')
        throw ParseError("bad coordinate '" + s + "'", base_pos + used, "'+', '-' or 'i'");
    const char* ibegin = begin + used;
    double second = std::strtod(ibegin, &end);
    if (end == ibegin)
        throw ParseError("bad coordinate '" + s + "'", base_pos + used, "imaginary part");
    used = static_cast<std::size_t>(end - begin);
    if (used + 1 != s.size() || s[used] != 'i')
        throw ParseError("bad coordinate '" + s + "'", base_pos + used, "trailing 'i'");
    return Complex(first, second);
}

}  // namespace

CPoint CPoint::parse(const std::string& text) {
    CPoint p;
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text)
        if (c != ' ' && c != '\t') cleaned.push_back(c);
    std::size_t start = 0;
    while (true) {
        std::size_t comma = cleaned.find(',', start);
        std::string part = cleaned.substr(start, comma == std::string::npos ? comma : comma - start);
        p.coords.push_back(parse_component(part, start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return p;
}

std::string CPoint::str() const {
    std::string out;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ',';
        out += format_complex(coords[i]);
    }
    return out;
}

std::string format_complex(Complex c) {
    std::string out = format_double(c.real());
    if (c.imag() >= 0.0 || c.imag() != c.imag()) out += '+';
    out += format_double(c.imag());
    out += 'i';
    return out;
}

}  // namespace bergman
