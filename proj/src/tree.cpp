#include "wmsb/tree.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wmsb {

namespace {

// (wf f.num + wg g.num) / (wf f.den + wg g.den)
Fraction combine(const Fraction& f, unsigned long wf, const Fraction& g, unsigned long wg) {
    Integer num, den;
    mpz_mul_ui(num.get_mpz_t(), f.num().get_mpz_t(), wf);
    mpz_addmul_ui(num.get_mpz_t(), g.num().get_mpz_t(), wg);
    mpz_mul_ui(den.get_mpz_t(), f.den().get_mpz_t(), wf);
    mpz_addmul_ui(den.get_mpz_t(), g.den().get_mpz_t(), wg);
    return make_unchecked(std::move(num), std::move(den));
}

void require_weight(int k) {
    if (k < 2) {
        throw std::invalid_argument("mediant weight k must be at least 2");
    }
}

// Fills the k-1 slots after out[first] with the scheme-reduced mediants of
// the parent pair (f, g).
void insert_mediants(const Fraction& f, const Fraction& g, const TreeSpec& spec, std::size_t depth,
                     std::size_t first, std::vector<Fraction>& out) {
    const auto k = static_cast<unsigned long>(spec.k());
    const Integer cdet = cross_determinant(f, g);
    for (unsigned long j = 1; j < k; ++j) {
        out[first + j] = apply_scheme(spec.scheme(), depth, static_cast<RowIndex>(first + j), combine(f, k - j, g, j), cdet);
    }
}

Row allocate_next(const Row& r, const TreeSpec& spec) {
    if (r.entries.size() < 2) {
        throw std::invalid_argument("a tree row needs at least two entries");
    }
    const std::size_t pairs = r.entries.size() - 1;
    Row next;
    next.depth = r.depth + 1;
    next.entries.resize(pairs * static_cast<std::size_t>(spec.k()) + 1);
    next.entries.back() = r.entries.back();
    return next;
}

}  // namespace

TreeSpec::TreeSpec(Fraction lo, Fraction hi, ReductionScheme scheme, int k)
    : lo_(std::move(lo)), hi_(std::move(hi)), scheme_(std::move(scheme)), k_(k) {
    require_weight(k_);
    if (lo_.is_infinite() && hi_.is_infinite()) {
        throw std::invalid_argument("starting terms cannot both be infinite");
    }
    if (compare(lo_, hi_) != std::strong_ordering::less) {
        throw std::invalid_argument("starting terms must satisfy lo < hi, got " + lo_.str() + " and " + hi_.str());
    }
}

std::string TreeSpec::str() const {
    std::string s = "SB(" + lo_.str() + ", " + hi_.str() + ", " + scheme_.name();
    if (k_ != 3) {
        s += ", k=" + std::to_string(k_);
    }
    return s + ")";
}

std::vector<Fraction> weighted_mediants(const Fraction& f, const Fraction& g, int k) {
    require_weight(k);
    std::vector<Fraction> out;
    out.reserve(static_cast<std::size_t>(k - 1));
    const auto w = static_cast<unsigned long>(k);
    for (unsigned long j = 1; j < w; ++j) {
        out.push_back(combine(f, w - j, g, j));
    }
    return out;
}

Fraction left_mediant(const Fraction& f, const Fraction& g) { return combine(f, 2, g, 1); }

Fraction right_mediant(const Fraction& f, const Fraction& g) { return combine(f, 1, g, 2); }

Fraction ordinary_mediant(const Fraction& f, const Fraction& g) { return combine(f, 1, g, 1); }

Fraction apply_scheme(const ReductionScheme& scheme, std::size_t depth, RowIndex position, Fraction unreduced,
                      const Integer& parent_cdet) {
    const Integer d = scheme.divisor(depth, position, unreduced);
    if (d == 1) {
        return unreduced;
    }
    if (sgn(d) <= 0 || !mpz_divisible_p(unreduced.num().get_mpz_t(), d.get_mpz_t()) ||
        !mpz_divisible_p(unreduced.den().get_mpz_t(), d.get_mpz_t())) {
        throw std::runtime_error("invalid reduction divisor");
    }
    if (!mpz_divisible_p(parent_cdet.get_mpz_t(), d.get_mpz_t())) {
        throw std::logic_error("reduction divisor " + d.get_str() + " does not divide the parents' cross-determinant " +
                               parent_cdet.get_str());
    }
    Integer num, den;
    mpz_divexact(num.get_mpz_t(), unreduced.num().get_mpz_t(), d.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), unreduced.den().get_mpz_t(), d.get_mpz_t());
    return make_unchecked(std::move(num), std::move(den));
}

Row next_row(const Row& r, const TreeSpec& spec) {
    Row next = allocate_next(r, spec);
    const auto pairs = static_cast<std::int64_t>(r.entries.size() - 1);
    const auto k = static_cast<std::size_t>(spec.k());
    std::exception_ptr error;

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < pairs; ++i) {
        const auto first = static_cast<std::size_t>(i) * k;
        try {
            next.entries[first] = r.entries[static_cast<std::size_t>(i)];
            insert_mediants(r.entries[static_cast<std::size_t>(i)], r.entries[static_cast<std::size_t>(i) + 1], spec,
                            next.depth, first, next.entries);
        } catch (...) {
#pragma omp critical(wmsb_next_row_error)
            if (!error) {
                error = std::current_exception();
            }
        }
    }

    if (error) {
        std::rethrow_exception(error);
    }
    return next;
}

namespace reference {

Row next_row(const Row& r, const TreeSpec& spec) {
    Row next = allocate_next(r, spec);
    const auto k = static_cast<std::size_t>(spec.k());
    for (std::size_t i = 0; i + 1 < r.entries.size(); ++i) {
        next.entries[i * k] = r.entries[i];
        insert_mediants(r.entries[i], r.entries[i + 1], spec, next.depth, i * k, next.entries);
    }
    return next;
}

}  // namespace reference

RowGenerator::RowGenerator(TreeSpec spec, std::size_t max_depth)
    : spec_(std::move(spec)), max_depth_(max_depth), current_(spec_.root()), peak_resident_(current_.entries.size()) {}

bool RowGenerator::advance() {
    if (done()) {
        return false;
    }
    Row next = next_row(current_, spec_);
    peak_resident_ = std::max(peak_resident_, current_.entries.size() + next.entries.size());
    current_ = std::move(next);
    return true;
}

Integer row_size(int k, std::size_t depth) {
    require_weight(k);
    Integer size;
    mpz_ui_pow_ui(size.get_mpz_t(), static_cast<unsigned long>(k), depth);
    return size + 1;
}

}  // namespace wmsb
