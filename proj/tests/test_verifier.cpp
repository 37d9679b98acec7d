#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "wmsb/analysis.hpp"
#include "wmsb/verifier.hpp"

using namespace wmsb;

namespace {

Fraction F(const char* s) { return Fraction::parse(s); }

bool any_finding_contains(const CheckReport& r, const std::string& needle) {
    return std::any_of(r.findings.begin(), r.findings.end(),
                       [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

std::vector<Row> rows_of(const TreeSpec& spec, std::size_t depth) {
    std::vector<Row> out;
    for_each_row(spec, depth, [&](const Row& row) { out.push_back(row); });
    return out;
}

const TreeSpec kUnit(Fraction(0, 1), Fraction(1, 1));
const TreeSpec kWide(Fraction(1, 3), Fraction(3, 1));

}  // namespace

TEST_CASE("parity lemma") {
    const CheckReport unit = check_parity_lemma(kUnit, 3);
    CHECK(unit.passed());
    CHECK(unit.instances_checked == 2 + 4 + 10 + 28);
    // numerators alternate even/odd along every unit-tree row
    for (const auto& row : oracle::unit_rows(3)) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            CHECK(row[i].num % 2 == static_cast<std::int64_t>(i % 2));
        }
    }

    const CheckReport wide = check_parity_lemma(kWide, 3);
    CHECK(wide.passed());
    CHECK(wide.findings.empty());

    const CheckReport even = check_parity_lemma(TreeSpec(F("0/2"), F("1/1"), ReductionScheme::from_row(2)), 2);
    CHECK(even.passed());
    CHECK(any_finding_contains(even, "2/3"));
    CHECK(any_finding_contains(even, "(0,1)"));
}

TEST_CASE("lemma checks refuse other weights") {
    const TreeSpec k5(F("0/1"), F("1/1"), ReductionScheme::uniform(), 5);
    CHECK_THROWS_AS(check_parity_lemma(k5, 2), std::invalid_argument);
    CHECK_THROWS_AS(check_2adic_lemma(k5, 2), std::invalid_argument);
    CHECK_THROWS_AS(check_one_third(k5, 2), std::invalid_argument);
    CHECK_THROWS_AS(check_membership_theorem(k5, 2, 5), std::invalid_argument);
}

TEST_CASE("2-adic lemma") {
    CHECK(check_2adic_lemma(kUnit, 4).passed());
    CHECK(check_2adic_lemma(kWide, 3).passed());

    // entry 1/3 at row 1 index 1
    CHECK(nu2(cross_determinant(F("0/1"), F("1/3"))) == Valuation::finite(0));
    CHECK(nu2(cross_determinant(F("1/3"), F("1/1"))) == Valuation::finite(1));
    CHECK(nu2(cross_determinant(F("1/3"), F("3/1"))) == Valuation::finite(3));

    const CheckReport even = check_2adic_lemma(TreeSpec(F("0/2"), F("1/1")), 3);
    CHECK(even.passed());
    CHECK_FALSE(even.findings.empty());
}

TEST_CASE("reduction divisor lemma") {
    CHECK(check_reduction_divisor(kUnit, 3).passed());
    // parents 1/3, 4/9 in row 2 of the unit tree
    CHECK(cross_determinant(F("1/3"), F("4/9")) == 3);
    CHECK(left_mediant(F("1/3"), F("4/9")) == F("6/15"));

    const TreeSpec classical(F("0/1"), F("1/0"), ReductionScheme::none(), 2);
    const CheckReport k2 = check_reduction_divisor(classical, 8);
    CHECK(k2.passed());
    for (const Row& row : rows_of(classical, 8)) {
        for (const Fraction& f : row.entries) {
            CHECK(is_reduced(f));
        }
    }

    CHECK(check_reduction_divisor(TreeSpec(F("1/3"), F("3/1"), ReductionScheme::none()), 5).passed());
    CHECK(check_reduction_divisor(TreeSpec(F("-2/7"), F("5/3"), ReductionScheme::coin(3)), 5).passed());
    CHECK(check_reduction_divisor(TreeSpec(F("0/1"), F("1/1"), ReductionScheme::uniform(), 5), 4).passed());
}

TEST_CASE("one-third lemma") {
    const auto [m1, m2] = std::pair{left_mediant(F("0/1"), F("1/1")), right_mediant(F("0/1"), F("1/1"))};
    CHECK(m1 == F("1/3"));
    CHECK(m2 == F("2/3"));
    // equality case: 2/3 - 1/3 = C(1/3, 2/3) / 9 = 1/3
    CHECK(cross_determinant(m1, m2) * 3 == cross_determinant(F("0/1"), F("1/1")) * m1.den() * m2.den());

    // (1/5, 2/4): 4/14 and 5/13, difference 18/182 < (1/2 - 1/5)/3 = 1/10
    const Fraction a = left_mediant(F("1/5"), F("2/4"));
    const Fraction b = right_mediant(F("1/5"), F("2/4"));
    CHECK(a == F("4/14"));
    CHECK(b == F("5/13"));
    CHECK(3 * cross_determinant(a, b) * 5 * 4 < cross_determinant(F("1/5"), F("2/4")) * 14 * 13);

    CHECK(check_one_third(kUnit, 4).passed());
    CHECK(check_one_third(kWide, 3).passed());
    CHECK(check_one_third(TreeSpec(F("0/1"), F("1/0")), 5).passed());
}

TEST_CASE("membership theorem, unit tree") {
    const CheckReport r = check_membership_theorem(kUnit, 8, 27);
    CHECK(r.passed());
    for (const CheckFailure& f : r.failures) {
        MESSAGE(f.expected << " / " << f.actual);
    }
    CHECK(r.instances_checked > 0);
}

TEST_CASE("membership theorem, SB(1/3, 3/1)") {
    const CheckReport r = check_membership_theorem(kWide, 8, 19);
    CHECK(r.passed());
    const TreeDescription d = describe_tree(F("1/3"), F("3/1"));
    const auto rows = oracle::rows({1, 3}, {3, 1}, 8, oracle::reduce_all);
    for (long y = 1; y <= 19; ++y) {
        for (long x = (y + 2) / 3; x <= 3 * y; ++x) {
            if (std::gcd(x, y) != 1) {
                continue;
            }
            const bool explicit_rule = x % 2 == 1 && y % 2 == 1 && (3 * x - y) % 8 == 0 && (3 * y - x) % 8 == 0;
            CHECK(d.admits(Fraction(x, y)) == explicit_rule);
            // anything present through row 8 satisfies the rule
            if (oracle::appears(rows, {x, y})) {
                CHECK(explicit_rule);
            }
        }
    }
}

TEST_CASE("membership theorem, SB(0/2, 1/1) runs the neighbor law") {
    const CheckReport r = check_membership_theorem(TreeSpec(F("0/2"), F("1/1")), 6, 19);
    CHECK(r.passed());
    CHECK_FALSE(r.findings.empty());
}

TEST_CASE("uniqueness on valid trees") {
    for (const TreeSpec& spec : default_trees(12, 4)) {
        if (parity_class(spec.lo()).degenerate()) {
            continue;
        }
        INFO(spec.str());
        CHECK(check_uniqueness(spec, 6).passed());
    }
}

TEST_CASE("neighbor law") {
    const CheckReport r = check_neighbor_law(8);
    CHECK(r.passed());
    CHECK(r.instances_checked == 8);
    const auto rows = oracle::rows({0, 2}, {1, 1}, 8, oracle::reduce_all);
    for (int depth = 1; depth <= 8; ++depth) {
        CHECK(rows[depth][1] == oracle::Frac{1, 4 * depth + 1});
    }
}

TEST_CASE("unavoidable reduction") {
    const auto unit = rows_of(TreeSpec(F("0/1"), F("1/1"), ReductionScheme::none()), 3);
    CHECK(unit[2].entries[3] == F("1/3"));
    CHECK(unit[2].entries[4] == F("4/9"));
    CHECK(unit[3].entries[10] == F("6/15"));
    CHECK(unit[3].entries[11] == F("9/21"));

    const auto wide = rows_of(TreeSpec(F("1/3"), F("3/1"), ReductionScheme::none()), 3);
    for (std::size_t i : {10, 11}) {
        const Fraction& m = wide[3].entries[i];
        CHECK(m.num() % 3 == 0);
        CHECK(m.den() % 3 == 0);
    }

    const CheckReport r = check_unavoidable_reduction(100, 7);
    CHECK(r.passed());
    CHECK(r.instances_checked == 100);
}

TEST_CASE("random starts respect the validity rules") {
    const auto starts = random_valid_starts(300, 11);
    CHECK(starts.size() == 300);
    for (const StartPair& s : starts) {
        CHECK(compare(s.lo, s.hi) == std::strong_ordering::less);
        CHECK_FALSE(parity_class(s.lo).degenerate());
        CHECK_FALSE(parity_class(s.hi).degenerate());
        CHECK_FALSE((s.lo.is_infinite() && s.hi.is_infinite()));
    }
    const auto again = random_valid_starts(300, 11);
    for (std::size_t i = 0; i < starts.size(); ++i) {
        CHECK(starts[i].lo == again[i].lo);
        CHECK(starts[i].hi == again[i].hi);
    }
}

TEST_CASE("run_suite selects checks by name") {
    SuiteOptions o;
    o.depth = 3;
    o.suite = "lemmas";
    const auto lemmas = run_suite({kUnit}, o);
    CHECK(lemmas.size() == 4);
    o.suite = "neighbor";
    CHECK(run_suite({kUnit, kWide}, o).size() == 1);
    o.suite = "bogus";
    CHECK_THROWS_AS(run_suite({kUnit}, o), std::invalid_argument);
    CHECK(suite_names_valid("2adic"));
    CHECK_FALSE(suite_names_valid("2-adic"));
}
