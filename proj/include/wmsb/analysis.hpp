#pragma once

// Membership of rationals in k = 3 trees.
//
// A reduced x/y in [lo, hi] appears in SB(lo, hi, R) exactly when
//   (1) (x, y) is congruent mod 2 to lo or to hi, and
//   (2) min(nu2(C(lo, x)), nu2(C(x, hi))) = nu2(C(lo, hi)) < max(...),
// provided neither endpoint has both components even. Every other number in
// the interval is the ordinary mediant of two consecutive entries of some row,
// which is what locate() finds.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wmsb/fraction.hpp"
#include "wmsb/tree.hpp"

namespace wmsb {

struct MembershipVerdict {
    bool is_member = false;
    bool parity_ok = false;
    bool valuation_ok = false;

    Fraction x;  // normalized target
    ParityClass x_class;
    bool matches_lo_class = false;
    bool matches_hi_class = false;

    Valuation nu_lo_x = Valuation::infinite();
    Valuation nu_x_hi = Valuation::infinite();
    Valuation nu_lo_hi = Valuation::infinite();
};

/// Throws std::invalid_argument when lo >= hi, when an endpoint has both
/// components even ("classification undefined for even/even starts"), or
/// when x lies outside [lo, hi]. Endpoints that are not in lowest terms are
/// used as given; x is reduced first.
MembershipVerdict is_member(const Fraction& lo, const Fraction& hi, const Fraction& x);

struct Found {
    std::vector<std::uint8_t> path;  // branch per row, each in {0, 1, 2}
    std::size_t depth = 0;           // first row containing the target
    Integer index = 0;               // position in that row
};

/// The target equals ordinary_mediant(left, right) as a number, where left
/// and right are consecutive in row `depth`.
struct Excluded {
    std::size_t depth = 0;
    Fraction left;
    Fraction right;
};

struct DepthExceeded {
    std::size_t depth = 0;
};

using LocateResult = std::variant<Found, Excluded, DepthExceeded>;

inline constexpr std::size_t kDefaultMaxDepth = 64;
/// Upper bound accepted for max_depth. Scheme rules see positions modulo
/// 2^128 below row 80, which no generated row reaches.
inline constexpr std::size_t kMaxLocateDepth = 1 << 20;

/// Index of the entry a Found path points at: the path read as a base-3
/// number. Depth-0 hits carry no path; their index is 0 (lo) or 1 (hi).
Integer index_from_path(const std::vector<std::uint8_t>& path);

/// Interval descent towards x through successive rows of a k = 3 tree.
LocateResult locate(const TreeSpec& spec, const Fraction& x, std::size_t max_depth = kDefaultMaxDepth);

/// Modulus of x against each bracketing interval of the descent. Unlike
/// locate(), the descent does not stop at an exclusion: it continues through
/// middle intervals until x is found or max_depth is reached.
std::vector<Integer> modulus_trace(const TreeSpec& spec, const Fraction& x,
                                   std::size_t max_depth = kDefaultMaxDepth);

/// Explicit form of the membership conditions for SB(lo, hi).
///
/// With A = C(lo, x) = bx - ay, B = C(x, hi) = cy - dx and v = nu2(C(lo, hi)),
/// condition (2) says 2^v divides A and B and exactly one of them is divisible
/// by 2^(v+1). The identities y C(lo, hi) = dA + bB and x C(lo, hi) = cA + aB
/// make the "exactly one" clause automatic when b, d or a, c are both odd.
struct TreeDescription {
    Fraction lo;
    Fraction hi;
    Integer cdet;
    Valuation v = Valuation::infinite();
    std::vector<ParityClass> classes;  // admitted, deduplicated
    bool same_class = false;           // (a, b) = (c, d) mod 2; flagged for review
    bool divisibility_trivial = false; // v == 0
    bool exactly_one_implied = false;

    /// The description evaluated on a target, independently of is_member().
    bool admits(const Fraction& x) const;

    /// Multi-line human-readable characterization.
    std::string text() const;
};

/// Throws like is_member() for even/even endpoints or lo >= hi.
TreeDescription describe_tree(const Fraction& lo, const Fraction& hi);

}  // namespace wmsb
