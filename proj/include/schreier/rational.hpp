#ifndef SCHREIER_RATIONAL_HPP
#define SCHREIER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "schreier/errors.hpp"

namespace schreier {

// All measure weights and exact norm values are rationals with
// arbitrary-precision integer parts; doubles appear only on the explicitly
// tagged approximate paths.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Int rat_ceil(const Rat& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    Int q = num / den;
    if (num > 0 && num % den != 0) ++q;
    return q;
}

// Integer power; exponent must be >= 0.
inline Rat rat_pow(const Rat& base, long e) {
    if (e < 0) throw InvalidArgument("rat_pow: negative exponent");
    Rat acc = 1, b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

// Serialized form used throughout the CLI: "p" or "p/q" in lowest terms.
inline std::string rat_str(const Rat& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Accepts "p", "p/q", optional leading minus on p; q > 0.
inline Rat parse_rat(const std::string& text) {
    const auto bad = [&] { throw ParseError("malformed rational: '" + text + "'"); };
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den <= 0) bad();
        return Rat(num, den);
    } catch (const std::exception&) {
        bad();
    }
    return Rat(); // unreachable
}

} // namespace schreier

#endif
