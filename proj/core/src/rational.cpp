#include "rci/rational.hpp"

#include <cctype>
#include <cstdio>

#include "rci/errors.hpp"

namespace rci {

namespace {

bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_text(text)) {
            throw InputError("malformed rational '" + text + "': expected \"p/q\" or an integer");
        }
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) {
        throw InputError("malformed rational '" + text + "': expected \"p/q\" with decimal integers");
    }
    BigInt q(den);
    if (q <= 0) {
        throw InputError("malformed rational '" + text + "': denominator must be positive");
    }
    return Rational(BigInt(num), q);
}

std::string fraction_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

std::string decimal_string(const Rational& value, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value.convert_to<double>());
    return buf;
}

} // namespace rci
