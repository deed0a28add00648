#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <stdexcept>
#include <string>

namespace cinfty {

// Exact rational scalar. All arithmetic in the engine goes through this
// type; there is no floating-point fallback anywhere.
using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string scalar_to_string(const Scalar& s) {
    std::string out = numerator(s).str();
    if (denominator(s) != 1) {
        out += "/" + denominator(s).str();
    }
    return out;
}

// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
inline Scalar scalar_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Scalar(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Scalar(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + text + "': " + e.what());
    }
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

}  // namespace cinfty
