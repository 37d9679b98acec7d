#pragma once

// Brute-force checks of the tree lemmas on enumerated rows. Each check
// regenerates the rows it needs and reports every counterexample found.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wmsb/fraction.hpp"
#include "wmsb/tree.hpp"

namespace wmsb {

struct CheckFailure {
    std::string tree;
    std::size_t depth = 0;
    RowIndex position = 0;
    std::string expected;
    std::string actual;
};

struct CheckReport {
    std::string check_name;
    std::string subject;  // tree (or sample set) the check ran on
    std::uint64_t instances_checked = 0;
    std::vector<CheckFailure> failures;
    /// Observations that do not count against the check, e.g. parity classes
    /// seen in trees whose starting terms fall outside a lemma's hypotheses.
    std::vector<std::string> findings;

    bool passed() const noexcept { return failures.empty(); }
};

/// Every entry is congruent mod 2 to lo or hi; when lo and hi differ in
/// class, consecutive entries alternate. Both-even starts produce findings.
CheckReport check_parity_lemma(const TreeSpec& spec, std::size_t depth);

/// For every non-endpoint entry p at index i:
/// min(nu2 C(lo,p), nu2 C(p,hi)) = nu2 C(lo,hi) < max(...), and
/// nu2 C(lo,p) > nu2 C(p,hi) for even i, < for odd i.
CheckReport check_2adic_lemma(const TreeSpec& spec, std::size_t depth);

/// gcd of every unreduced mediant, and the divisor actually applied, divide
/// the parents' cross-determinant.
CheckReport check_reduction_divisor(const TreeSpec& spec, std::size_t depth);

/// right mediant - left mediant <= (g - f) / 3 for every parent pair.
CheckReport check_one_third(const TreeSpec& spec, std::size_t depth);

/// Cross-validates is_member, appearance in rows 0..depth and locate() over
/// all reduced x/y in [lo, hi] with y <= denominator_bound (and, for an
/// infinite hi, |x| <= denominator_bound). Also reports duplicate numbers.
/// Both-even starts skip the predicate and check duplicates, plus the
/// right-neighbor law for SB(0/2, 1/1).
CheckReport check_membership_theorem(const TreeSpec& spec, std::size_t depth, std::uint64_t denominator_bound);

/// No number appears as two distinct entries through row `depth`.
CheckReport check_uniqueness(const TreeSpec& spec, std::size_t depth);

/// In SB(0/2, 1/1, uniform) the entry right of 0/2 in row r is 1/(4r + 1).
CheckReport check_neighbor_law(std::size_t depth);

/// Under scheme none, for seeded random starts: (2a+c)/(2b+d) and
/// (5a+4c)/(5b+4d) are consecutive in row 2 and both their mediants have a
/// gcd divisible by 3.
CheckReport check_unavoidable_reduction(std::size_t sample_count, std::uint64_t seed);

/// Random starting pair with components in [0, 20]: lo < hi, not both
/// infinite, neither endpoint even/even.
struct StartPair {
    Fraction lo;
    Fraction hi;
};
std::vector<StartPair> random_valid_starts(std::size_t count, std::uint64_t seed);

/// The reference trees: SB(0/1, 1/1), SB(1/3, 3/1) and SB(0/2, 1/1) under
/// both from-row:2 and uniform.
std::vector<TreeSpec> reference_trees();

/// reference_trees() followed by `random_count` random starts, cycling through
/// the uniform, none, from-row:2 and coin schemes.
std::vector<TreeSpec> default_trees(std::size_t random_count, std::uint64_t seed);

struct SuiteOptions {
    std::string suite = "all";  // all|lemmas|parity|2adic|divisor|one-third|membership|uniqueness|neighbor|unavoidable
    std::size_t depth = 6;
    std::uint64_t denominator_bound = 19;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
};

/// Runs the selected checks on each tree. Tree-independent checks
/// (neighbor, unavoidable) run once.
std::vector<CheckReport> run_suite(const std::vector<TreeSpec>& trees, const SuiteOptions& options);

bool suite_names_valid(const std::string& suite);

}  // namespace wmsb
