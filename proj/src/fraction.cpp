#include "wmsb/fraction.hpp"

#include <cctype>
#include <stdexcept>

namespace wmsb {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

}  // namespace

Fraction::Fraction(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (sgn(den_) < 0) {
        throw std::invalid_argument("fraction denominator must be non-negative");
    }
    if (sgn(den_) == 0 && sgn(num_) <= 0) {
        throw std::invalid_argument("a zero denominator requires a positive numerator");
    }
}

Fraction Fraction::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw std::invalid_argument("expected a fraction of the form p/q, got '" + std::string(text) + "'");
    }
    std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    const bool negative = !num.empty() && num.front() == '-';
    const std::string_view num_digits = negative ? num.substr(1) : num;
    if (!all_digits(num_digits) || !all_digits(den)) {
        throw std::invalid_argument("expected a fraction of the form p/q, got '" + std::string(text) + "'");
    }
    return Fraction(Integer(std::string(num)), Integer(std::string(den)));
}

std::string Fraction::str() const {
    return num_.get_str() + "/" + den_.get_str();
}

Integer cross_determinant(const Fraction& f, const Fraction& g) {
    return f.den() * g.num() - f.num() * g.den();
}

std::strong_ordering compare(const Fraction& f, const Fraction& g) {
    if (f.is_infinite() && g.is_infinite()) {
        throw std::domain_error("incomparable infinities");
    }
    const int s = sgn(cross_determinant(f, g));
    if (s > 0) {
        return std::strong_ordering::less;
    }
    if (s < 0) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string Valuation::str() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
}

Valuation nu2(const Integer& n) {
    if (sgn(n) == 0) {
        return Valuation::infinite();
    }
    // Two's-complement view of a negative mpz has the same lowest set bit.
    return Valuation::finite(mpz_scan1(n.get_mpz_t(), 0));
}

Integer modulus(const Fraction& lo, const Fraction& hi, const Fraction& x) {
    return cross_determinant(lo, x) + cross_determinant(x, hi);
}

std::string ParityClass::str() const {
    return "(" + std::to_string(num_parity) + "," + std::to_string(den_parity) + ")";
}

ParityClass parity_class(const Fraction& f) {
    return {mpz_odd_p(f.num().get_mpz_t()) ? 1 : 0, mpz_odd_p(f.den().get_mpz_t()) ? 1 : 0};
}

Fraction reduce_fully(const Fraction& f) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), f.num().get_mpz_t(), f.den().get_mpz_t());
    if (g == 1) {
        return f;
    }
    Integer num, den;
    mpz_divexact(num.get_mpz_t(), f.num().get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), f.den().get_mpz_t(), g.get_mpz_t());
    return make_unchecked(std::move(num), std::move(den));
}

}  // namespace wmsb
