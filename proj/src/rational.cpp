#include "shufflecap/rational.hpp"

#include <cctype>

namespace shufflecap {

Rational parse_rational(const std::string& s)
{
    auto bad = [&]() { throw ParseError("malformed rational: '" + s + "'"); };

    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t num_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_begin) bad();
    std::string num = s.substr(0, i);

    std::string den = "1";
    if (i < s.size()) {
        if (s[i] != '/') bad();
        ++i;
        size_t den_begin = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_begin || i != s.size()) bad();
        den = s.substr(den_begin);
    }

    BigInt p(num), q(den);
    if (q == 0) bad();
    return Rational(p) / Rational(q);
}

} // namespace shufflecap
