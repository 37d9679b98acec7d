#include "wmsb/analysis.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wmsb {

namespace {

void require_classifiable(const Fraction& lo, const Fraction& hi) {
    if (lo.is_infinite() && hi.is_infinite()) {
        throw std::invalid_argument("starting terms cannot both be infinite");
    }
    if (compare(lo, hi) != std::strong_ordering::less) {
        throw std::invalid_argument("starting terms must satisfy lo < hi");
    }
    if (parity_class(lo).degenerate() || parity_class(hi).degenerate()) {
        throw std::invalid_argument("classification undefined for even/even starts");
    }
}

bool in_closed_interval(const Fraction& lo, const Fraction& hi, const Fraction& x) {
    if (x.is_infinite()) {
        return hi.is_infinite();
    }
    return compare(lo, x) != std::strong_ordering::greater && compare(x, hi) != std::strong_ordering::greater;
}

Fraction require_target(const Fraction& lo, const Fraction& hi, const Fraction& x) {
    Fraction reduced = reduce_fully(x);
    if (!in_closed_interval(lo, hi, reduced)) {
        throw std::invalid_argument("target " + x.str() + " lies outside [" + lo.str() + ", " + hi.str() + "]");
    }
    return reduced;
}

// One row of the descent: x is strictly inside (left, right), which are
// consecutive at positions index and index + 1 of row depth.
struct Bracket {
    Fraction left;
    Fraction right;
    Integer index = 0;
    RowIndex position = 0;  // index mod 2^128, as handed to the scheme
    std::size_t depth = 0;
};

enum class StepKind { found_left, found_right, descended };

struct Step {
    StepKind kind;
    Fraction left_mediant;
    Fraction right_mediant;
};

// Builds the two mediants the scheme inserts between bracket.left and
// bracket.right, then moves the bracket into the sub-interval containing x
// unless x is one of the new entries.
Step descend(const TreeSpec& spec, const Fraction& x, Bracket& b, std::vector<std::uint8_t>& path) {
    const Integer cdet = cross_determinant(b.left, b.right);
    const std::size_t next_depth = b.depth + 1;
    const Integer base = b.index * 3;
    const RowIndex base_position = b.position * 3;
    Fraction m1 = apply_scheme(spec.scheme(), next_depth, base_position + 1, left_mediant(b.left, b.right), cdet);
    Fraction m2 = apply_scheme(spec.scheme(), next_depth, base_position + 2, right_mediant(b.left, b.right), cdet);

    const auto vs_left = compare(x, m1);
    if (vs_left == std::strong_ordering::equal) {
        path.push_back(1);
        return {StepKind::found_left, std::move(m1), std::move(m2)};
    }
    if (vs_left == std::strong_ordering::less) {
        path.push_back(0);
        b.right = m1;
        b.index = base;
        b.position = base_position;
    } else {
        const auto vs_right = compare(x, m2);
        if (vs_right == std::strong_ordering::equal) {
            path.push_back(2);
            return {StepKind::found_right, std::move(m1), std::move(m2)};
        }
        if (vs_right == std::strong_ordering::less) {
            path.push_back(1);
            b.left = m1;
            b.right = m2;
            b.index = base + 1;
            b.position = base_position + 1;
        } else {
            path.push_back(2);
            b.left = m2;
            b.index = base + 2;
            b.position = base_position + 2;
        }
    }
    b.depth = next_depth;
    return {StepKind::descended, std::move(m1), std::move(m2)};
}

void require_locatable(const TreeSpec& spec, std::size_t max_depth) {
    if (spec.k() != 3) {
        throw std::invalid_argument("locate supports k = 3 trees only");
    }
    if (max_depth > kMaxLocateDepth) {
        throw std::invalid_argument("max_depth may not exceed " + std::to_string(kMaxLocateDepth));
    }
    require_classifiable(spec.lo(), spec.hi());
}

std::string linear_form(const Integer& cx, const char* x, const Integer& cy, const char* y) {
    std::string out;
    auto term = [&out](const Integer& c, const char* var) {
        if (sgn(c) == 0) {
            return;
        }
        const Integer mag = abs(c);
        if (out.empty()) {
            out += sgn(c) < 0 ? "-" : "";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        if (mag != 1) {
            out += mag.get_str();
        }
        out += var;
    };
    term(cx, x);
    term(cy, y);
    return out.empty() ? "0" : out;
}

std::string parity_phrase(const std::vector<ParityClass>& classes) {
    auto has = [&classes](int n, int d) {
        return std::find(classes.begin(), classes.end(), ParityClass{n, d}) != classes.end();
    };
    if (classes.size() == 1) {
        const ParityClass c = classes.front();
        if (c.num_parity == 1 && c.den_parity == 1) {
            return "x, y odd";
        }
        return c.num_parity == 0 ? "x even, y odd" : "x odd, y even";
    }
    if (has(1, 1) && has(0, 1)) {
        return "y odd";
    }
    if (has(1, 1) && has(1, 0)) {
        return "x odd";
    }
    return "exactly one of x, y even";
}

}  // namespace

MembershipVerdict is_member(const Fraction& lo, const Fraction& hi, const Fraction& x) {
    require_classifiable(lo, hi);
    MembershipVerdict v;
    v.x = require_target(lo, hi, x);

    v.x_class = parity_class(v.x);
    v.matches_lo_class = v.x_class == parity_class(lo);
    v.matches_hi_class = v.x_class == parity_class(hi);
    v.parity_ok = v.matches_lo_class || v.matches_hi_class;

    v.nu_lo_x = nu2(cross_determinant(lo, v.x));
    v.nu_x_hi = nu2(cross_determinant(v.x, hi));
    v.nu_lo_hi = nu2(cross_determinant(lo, hi));
    const auto [low, high] = std::minmax(v.nu_lo_x, v.nu_x_hi);
    v.valuation_ok = low == v.nu_lo_hi && v.nu_lo_hi < high;

    v.is_member = v.parity_ok && v.valuation_ok;
    return v;
}

Integer index_from_path(const std::vector<std::uint8_t>& path) {
    Integer index = 0;
    for (std::uint8_t branch : path) {
        index = index * 3 + branch;
    }
    return index;
}

LocateResult locate(const TreeSpec& spec, const Fraction& x, std::size_t max_depth) {
    require_locatable(spec, max_depth);
    const Fraction target = require_target(spec.lo(), spec.hi(), x);

    if (same_number(target, spec.lo())) {
        return Found{{}, 0, Integer(0)};
    }
    if (target.is_infinite() || same_number(target, spec.hi())) {
        return Found{{}, 0, Integer(1)};
    }

    Bracket b{spec.lo(), spec.hi(), 0, 0, 0};
    std::vector<std::uint8_t> path;
    for (;;) {
        if (same_number(ordinary_mediant(b.left, b.right), target)) {
            return Excluded{b.depth, b.left, b.right};
        }
        if (b.depth >= max_depth) {
            return DepthExceeded{b.depth};
        }
        const Integer base = b.index * 3;
        const Step step = descend(spec, target, b, path);
        if (step.kind == StepKind::found_left) {
            return Found{std::move(path), b.depth + 1, Integer(base + 1)};
        }
        if (step.kind == StepKind::found_right) {
            return Found{std::move(path), b.depth + 1, Integer(base + 2)};
        }
    }
}

std::vector<Integer> modulus_trace(const TreeSpec& spec, const Fraction& x, std::size_t max_depth) {
    require_locatable(spec, max_depth);
    const Fraction target = require_target(spec.lo(), spec.hi(), x);

    std::vector<Integer> trace{modulus(spec.lo(), spec.hi(), target)};
    if (target.is_infinite() || same_number(target, spec.lo()) || same_number(target, spec.hi())) {
        return trace;
    }

    Bracket b{spec.lo(), spec.hi(), 0, 0, 0};
    std::vector<std::uint8_t> path;
    while (b.depth < max_depth) {
        const Fraction left = b.left;
        const Fraction right = b.right;
        const Step step = descend(spec, target, b, path);
        if (step.kind == StepKind::found_left) {
            trace.push_back(modulus(left, step.left_mediant, target));
            break;
        }
        if (step.kind == StepKind::found_right) {
            trace.push_back(modulus(step.right_mediant, right, target));
            break;
        }
        trace.push_back(modulus(b.left, b.right, target));
    }
    return trace;
}

bool TreeDescription::admits(const Fraction& x) const {
    const Fraction r = reduce_fully(x);
    if (!in_closed_interval(lo, hi, r)) {
        return false;
    }
    if (std::find(classes.begin(), classes.end(), parity_class(r)) == classes.end()) {
        return false;
    }
    const Integer a = cross_determinant(lo, r);
    const Integer b = cross_determinant(r, hi);
    Integer step;
    mpz_ui_pow_ui(step.get_mpz_t(), 2, v.value());
    if (!mpz_divisible_p(a.get_mpz_t(), step.get_mpz_t()) || !mpz_divisible_p(b.get_mpz_t(), step.get_mpz_t())) {
        return false;
    }
    const Integer twice = step * 2;
    return mpz_divisible_p(a.get_mpz_t(), twice.get_mpz_t()) != mpz_divisible_p(b.get_mpz_t(), twice.get_mpz_t());
}

std::string TreeDescription::text() const {
    const std::string a_form = linear_form(lo.den(), "x", Integer(-lo.num()), "y");
    const std::string b_form = linear_form(hi.num(), "y", Integer(-hi.den()), "x");

    std::ostringstream out;
    out << "SB(" << lo.str() << ", " << hi.str() << "): C(lo, hi) = " << cdet.get_str() << ", nu2 = " << v.str()
        << "\n";
    out << "admitted parity classes:";
    for (const ParityClass& c : classes) {
        out << " " << c.str();
    }
    out << "\n";
    out << "A = C(lo, x/y) = " << a_form << ", B = C(x/y, hi) = " << b_form << "\n";

    std::vector<std::string> clauses{parity_phrase(classes)};
    if (!divisibility_trivial) {
        const std::string power = Integer(Integer(1) << static_cast<mp_bitcnt_t>(v.value())).get_str();
        clauses.push_back(power + " | " + a_form);
        clauses.push_back(power + " | " + b_form);
    }
    if (!exactly_one_implied) {
        const std::string power = Integer(Integer(1) << static_cast<mp_bitcnt_t>(v.value() + 1)).get_str();
        clauses.push_back("exactly one of " + a_form + ", " + b_form + " divisible by " + power);
    }
    out << "members: reduced x/y in [" << lo.str() << ", " << hi.str() << "] with ";
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        out << (i ? "; " : "") << clauses[i];
    }
    out << "\n";
    out << "valuation condition: min(nu2(A), nu2(B)) = " << v.str() << " < max(nu2(A), nu2(B))";
    if (divisibility_trivial && exactly_one_implied) {
        out << " (automatic for the admitted classes)";
    }
    out << "\n";
    if (same_class) {
        out << "note: both endpoints are in parity class " << classes.front().str()
            << "; the two conditions are applied verbatim, review before relying on them\n";
    }
    return out.str();
}

TreeDescription describe_tree(const Fraction& lo, const Fraction& hi) {
    require_classifiable(lo, hi);
    TreeDescription d;
    d.lo = lo;
    d.hi = hi;
    d.cdet = cross_determinant(lo, hi);
    d.v = nu2(d.cdet);
    const ParityClass lc = parity_class(lo);
    const ParityClass hc = parity_class(hi);
    d.classes.push_back(lc);
    d.same_class = lc == hc;
    if (!d.same_class) {
        d.classes.push_back(hc);
    }
    d.divisibility_trivial = d.v.value() == 0;
    const bool dens_odd = mpz_odd_p(lo.den().get_mpz_t()) && mpz_odd_p(hi.den().get_mpz_t());
    const bool nums_odd = mpz_odd_p(lo.num().get_mpz_t()) && mpz_odd_p(hi.num().get_mpz_t());
    d.exactly_one_implied = dens_odd || nums_odd;
    return d;
}

}  // namespace wmsb
