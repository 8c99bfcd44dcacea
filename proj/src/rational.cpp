#include "treechain/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace treechain {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational: '" + s + "'"); };
    if (s.empty()) return fail();

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits;
        bool negative = false;
        std::size_t i = 0;
        if (s[0] == '-' || s[0] == '+') {
            negative = s[0] == '-';
            i = 1;
        }
        std::size_t frac_len = 0;
        bool seen_digit = false;
        for (; i < s.size(); ++i) {
            if (i == dot) continue;
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return fail();
            digits.push_back(s[i]);
            seen_digit = true;
            if (i > dot) ++frac_len;
        }
        if (!seen_digit) return fail();
        mpz_class num(digits, 10);
        mpz_class den = 1;
        for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
        Rational r(negative ? mpz_class(-num) : num, den);
        r.canonicalize();
        return r;
    }

    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || ((c == '-' || c == '+') && i == 0);
        if (!ok) return fail();
    }
    Rational r;
    if (r.set_str(s, 10) != 0) return fail();
    if (r.get_den() == 0) return fail();
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value)
{
    return value.get_str(10);
}

double to_double(const Rational& value)
{
    return value.get_d();
}

} // namespace treechain
