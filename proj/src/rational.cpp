#include "itlab/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "itlab/error.hpp"

namespace itlab {
namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer pow10(long e) {
    Integer r = 1;
    for (long i = 0; i < e; ++i) r *= 10;
    return r;
}

Rational parse_decimal(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        auto exp_text = s.substr(epos + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 4) throw ParseError(0, "bad exponent in number");
        exponent = std::strtol(std::string(exp_text).c_str(), nullptr, 10);
        if (exp_negative) exponent = -exponent;
        s = s.substr(0, epos);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto int_part = s.substr(0, dot);
        auto frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)))
            throw ParseError(0, "malformed number");
        digits = std::string(int_part) + std::string(frac_part);
        frac_digits = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw ParseError(0, "malformed number");
        digits = std::string(s);
    }
    // a leading zero would make cpp_int read octal
    auto nonzero = digits.find_first_not_of('0');
    digits = nonzero == std::string::npos ? "0" : digits.substr(nonzero);
    Rational value{Integer(digits)};
    exponent -= frac_digits;
    if (exponent > 0) value *= Rational(pow10(exponent));
    if (exponent < 0) value /= Rational(pow10(-exponent));
    return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError(0, "empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash));
        Rational den = parse_decimal(text.substr(slash + 1));
        if (den == 0) throw ParseError(0, "zero denominator in '" + std::string(text) + "'");
        return num / den;
    }
    return parse_decimal(text);
}

Integer floor_of(const Rational& x) {
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    Integer q = num / den;
    if (num % den != 0 && num < 0) q -= 1;
    return q;
}

Integer ceil_of(const Rational& x) {
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    Integer q = num / den;
    if (num % den != 0 && num > 0) q += 1;
    return q;
}

std::string to_string(const Rational& x) {
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& x, int digits) {
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    bool negative = num < 0;
    if (negative) num = -num;
    Integer scaled = num * pow10(digits) / den;
    std::string s = scaled.str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (negative && scaled != 0) s.insert(0, "-");
    return s;
}

} // namespace itlab
