#pragma once

#include <gmpxx.h>
#include <string>

#include "arbortile/errors.hpp"

namespace arbortile {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Certificates carry rationals as "p/q" strings ("p" when q == 1); never floats.
inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    try {
        Rat q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational '" + s + "'");
    }
}

} // namespace arbortile
