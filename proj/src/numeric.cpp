#include "aao/numeric.hpp"

namespace aao {

std::string to_decimal_string(const Rational& r, int places) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    bool negative = num < 0;
    if (negative) num = -num;

    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;

    BigInt scaled_num = num * scale;
    BigInt q = scaled_num / den;
    BigInt rem = scaled_num % den;

    // Round half to even.
    BigInt twice = rem * 2;
    if (twice > den || (twice == den && (q % 2) != 0)) q += 1;

    BigInt whole = q / scale;
    BigInt frac = q % scale;
    std::string frac_str = frac.str();
    frac_str.insert(0, static_cast<size_t>(places) - frac_str.size(), '0');
    return (negative && q != 0 ? "-" : "") + whole.str() + "." + frac_str;
}

}  // namespace aao
