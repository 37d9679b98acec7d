#pragma once

// Exact, possibly-unreduced fractions and the scalar functionals used
// throughout the tree analysis: cross-determinant, 2-adic valuation,
// modulus against an interval, parity class.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wmsb {

using Integer = mpz_class;

/// A pair num/den of arbitrary-precision integers, kept exactly as given.
///
/// den >= 0, and den == 0 is allowed only with num > 0 (the value +inf).
/// 2/4 and 1/2 are different representations of the same number:
/// operator== compares representations, compare() compares numbers.
class Fraction {
public:
    Fraction() : num_(0), den_(1) {}
    Fraction(Integer num, Integer den);
    Fraction(long num, long den) : Fraction(Integer(num), Integer(den)) {}

    /// Parses "p/q" where p is a signed decimal integer and q is unsigned.
    static Fraction parse(std::string_view text);

    const Integer& num() const noexcept { return num_; }
    const Integer& den() const noexcept { return den_; }
    bool is_infinite() const noexcept { return sgn(den_) == 0; }

    /// "num/den", the inverse of parse().
    std::string str() const;

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    struct Unchecked {};
    Fraction(Integer num, Integer den, Unchecked) : num_(std::move(num)), den_(std::move(den)) {}
    friend Fraction make_unchecked(Integer num, Integer den);

    Integer num_;
    Integer den_;
};

/// Builds a fraction whose invariants the caller already guarantees.
/// Used on hot paths where both components are sums of valid entries.
inline Fraction make_unchecked(Integer num, Integer den) {
    return Fraction(std::move(num), std::move(den), Fraction::Unchecked{});
}

/// C(f, g) = f.den * g.num - f.num * g.den. Positive iff f < g, zero iff
/// f and g are the same number.
Integer cross_determinant(const Fraction& f, const Fraction& g);

/// Numeric order. Throws std::domain_error("incomparable infinities") when
/// both arguments are +inf.
std::strong_ordering compare(const Fraction& f, const Fraction& g);

inline bool same_number(const Fraction& f, const Fraction& g) {
    return sgn(cross_determinant(f, g)) == 0;
}

/// Exponent of 2 in an integer; nu2(0) is the top element INFINITE.
class Valuation {
public:
    static Valuation infinite() noexcept { return Valuation(); }
    static Valuation finite(std::uint64_t v) noexcept { return Valuation(v); }

    bool is_infinite() const noexcept { return infinite_; }
    /// Precondition: !is_infinite().
    std::uint64_t value() const noexcept { return value_; }

    std::string str() const;

    friend bool operator==(const Valuation&, const Valuation&) = default;
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) {
            return a.infinite_ <=> b.infinite_;
        }
        return a.value_ <=> b.value_;
    }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) {
            return infinite();
        }
        return finite(a.value_ + b.value_);
    }

private:
    Valuation() noexcept : infinite_(true), value_(0) {}
    explicit Valuation(std::uint64_t v) noexcept : infinite_(false), value_(v) {}

    bool infinite_;
    std::uint64_t value_;
};

Valuation nu2(const Integer& n);

/// m_I(x) = C(lo, x) + C(x, hi), against the given representations.
/// Defined for any x; it is positive when lo <= x <= hi.
Integer modulus(const Fraction& lo, const Fraction& hi, const Fraction& x);

struct ParityClass {
    int num_parity = 0;
    int den_parity = 0;

    /// Both components even; such a representation can be halved.
    bool degenerate() const noexcept { return num_parity == 0 && den_parity == 0; }
    std::string str() const;

    friend bool operator==(const ParityClass&, const ParityClass&) = default;
};

ParityClass parity_class(const Fraction& f);

/// Divides out gcd(|num|, den), with gcd(n, 0) = n, so p/0 becomes 1/0.
Fraction reduce_fully(const Fraction& f);

inline bool is_reduced(const Fraction& f) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), f.num().get_mpz_t(), f.den().get_mpz_t());
    return g == 1;
}

}  // namespace wmsb
