#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace lpsym {

// Exact rational scalar. GMP keeps values canonical (gcd(|num|, den) = 1,
// den > 0, zero stored as 0/1), which the term maps rely on for equality.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double rat_double(const Rat& q) { return q.get_d(); }

inline Rat rat_pow(const Rat& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("0 raised to a negative power");
        return rat_pow(Rat(1) / base, -e);
    }
    Rat r(1), b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Accepts "a/b", plain integers, and base-10 decimals ("-1.25" -> -5/4).
inline Rat parse_rat(std::string text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
    text = text.substr(first, last - first + 1);

    if (auto slash = text.find('/'); slash != std::string::npos) {
        mpz_class num, den;
        if (mpz_set_str(num.get_mpz_t(), text.substr(0, slash).c_str(), 10) != 0 ||
            mpz_set_str(den.get_mpz_t(), text.substr(slash + 1).c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + text);
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || frac_len == 0) throw std::invalid_argument("bad decimal literal: " + text);
        mpz_class num;
        if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
            throw std::invalid_argument("bad decimal literal: " + text);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    mpz_class num;
    if (mpz_set_str(num.get_mpz_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("bad integer literal: " + text);
    return Rat(num);
}

}  // namespace lpsym
