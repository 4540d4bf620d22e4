#include "clab/rational.hpp"

#include <charconv>

#include "clab/errors.hpp"

namespace clab {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end || s.empty()) {
        fail(Errc::ParseError, "bad rational '" + std::string(whole) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s, text));
    const auto num = parse_int(trim(s.substr(0, slash)), text);
    const auto den = parse_int(trim(s.substr(slash + 1)), text);
    if (den == 0) fail(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

}  // namespace clab
