#include "mmentropy/numeric.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace mme {

double ln_big(const big_int& n) {
    if (n <= 0) throw std::domain_error("ln_big: argument must be positive");
    big_float f(n);
    return static_cast<double>(log(f));
}

namespace {

big_rat parse_decimal(std::string_view s) {
    // sign, integer part, optional fraction, optional exponent
    std::size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = (s[pos] == '-');
        ++pos;
    }
    big_int mantissa = 0;
    long scale = 0;  // implied power of ten from fractional digits
    bool any_digit = false;
    for (; pos < s.size() && s[pos] >= '0' && s[pos] <= '9'; ++pos) {
        mantissa = mantissa * 10 + (s[pos] - '0');
        any_digit = true;
    }
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        for (; pos < s.size() && s[pos] >= '0' && s[pos] <= '9'; ++pos) {
            mantissa = mantissa * 10 + (s[pos] - '0');
            ++scale;
            any_digit = true;
        }
    }
    if (!any_digit) throw std::invalid_argument("not a number: " + std::string(s));
    long exp10 = 0;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        auto res = std::from_chars(s.data() + pos, s.data() + s.size(), exp10);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw std::invalid_argument("bad exponent: " + std::string(s));
        pos = s.size();
    }
    if (pos != s.size()) throw std::invalid_argument("trailing junk: " + std::string(s));

    big_rat q(mantissa);
    long net = exp10 - scale;
    big_int ten(10);
    if (net > 0) q *= big_rat(pow(ten, static_cast<unsigned>(net)));
    if (net < 0) q /= big_rat(pow(ten, static_cast<unsigned>(-net)));
    if (neg) q = -q;
    return q;
}

}  // namespace

big_rat rat_from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s);
    big_rat num = parse_decimal(s.substr(0, slash));
    big_rat den = parse_decimal(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    return num / den;
}

big_rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    return big_rat(x);
}

std::string rat_to_string(const big_rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

std::string double_to_string(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace mme
