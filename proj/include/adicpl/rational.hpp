#pragma once

#include <gmpxx.h>

#include <string>

#include "adicpl/errors.hpp"

namespace adicpl {

inline mpz_class pow10z(int k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return r;
}

/// floor(q + 1/2), i.e. round-to-nearest with ties toward +infinity.
inline mpz_class round_nearest(const mpq_class& q) {
    mpq_class s = q + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return r;
}

/// Renders q with exactly `digits` digits after the decimal point.
inline std::string decimal_string(const mpq_class& q, int digits) {
    if (digits < 1) throw error(errc::bad_size, "digits must be >= 1");
    mpz_class scale = pow10z(digits);
    mpz_class n = round_nearest(mpq_class(q * scale));
    bool neg = n < 0;
    mpz_class a = abs(n);
    mpz_class ip = a / scale;
    mpz_class fp = a % scale;
    std::string frac = fp.get_str();
    frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
    return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

/// Parses "a", "-a" or "a/b" into an exact rational.
inline mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw error(errc::bad_format, "empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw error(errc::bad_format, "not a rational literal: " + s);
    if (q.get_den() == 0)
        throw error(errc::bad_format, "zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline std::string rational_string(const mpq_class& q) {
    return q.get_str();
}

} // namespace adicpl
