#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quiverforge {

// Exact scalars. mpq_class keeps denominators positive and fractions reduced
// as long as every value goes through canonicalize() once on construction;
// all arithmetic afterwards preserves canonical form.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p" or "p/q" with optional sign; q must be nonzero.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Integer num(text);
            return Rational(num);
        }
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational literal: \"" + text + "\"");
    }
}

/// Canonical file form: always "p/q" with q > 0 and gcd(|p|, q) = 1.
inline std::string rational_canonical(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Human form: "p" when integral, "p/q" otherwise.
inline std::string rational_str(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// splitmix64: deterministic across platforms, unlike the std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish integer in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("Rng::range: empty interval");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    /// Small rational with numerator in [-max_num, max_num], denominator in [1, max_den].
    Rational small_rational(std::int64_t max_num = 3, std::int64_t max_den = 2) {
        return make_rational(range(-max_num, max_num), range(1, max_den));
    }

private:
    std::uint64_t state_;
};

}  // namespace quiverforge
