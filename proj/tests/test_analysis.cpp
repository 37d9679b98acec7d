#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "oracle.hpp"
#include "wmsb/analysis.hpp"

using namespace wmsb;

namespace {

Fraction F(const char* s) { return Fraction::parse(s); }

const TreeSpec& unit_tree() {
    static const TreeSpec spec(F("0/1"), F("1/1"));
    return spec;
}

const TreeSpec& wide_tree() {
    static const TreeSpec spec(F("1/3"), F("3/1"));
    return spec;
}

}  // namespace

TEST_CASE("is_member on the worked examples") {
    const MembershipVerdict a = is_member(F("0/1"), F("1/1"), F("3/7"));
    CHECK(a.is_member);
    CHECK(a.parity_ok);
    CHECK(a.valuation_ok);

    const MembershipVerdict b = is_member(F("0/1"), F("1/1"), F("1/2"));
    CHECK_FALSE(b.is_member);
    CHECK_FALSE(b.parity_ok);

    // C(1/3, 1/1) = 3 - 1 = 2 and C(1/1, 3/1) = 3 - 1 = 2, both with nu2 = 1,
    // against nu2(8) = 3.
    const MembershipVerdict c = is_member(F("1/3"), F("3/1"), F("1/1"));
    CHECK_FALSE(c.is_member);
    CHECK(c.parity_ok);
    CHECK_FALSE(c.valuation_ok);
    CHECK(c.nu_lo_x == Valuation::finite(1));
    CHECK(c.nu_x_hi == Valuation::finite(1));
    CHECK(c.nu_lo_hi == Valuation::finite(3));

    CHECK(is_member(F("1/3"), F("3/1"), F("5/7")).is_member);
}

TEST_CASE("is_member normalizes the target and accepts the endpoints") {
    const MembershipVerdict v = is_member(F("0/1"), F("1/1"), F("2/4"));
    CHECK(v.x == F("1/2"));
    CHECK_FALSE(v.is_member);
    CHECK(is_member(F("0/1"), F("1/1"), F("0/1")).is_member);
    CHECK(is_member(F("0/1"), F("1/1"), F("1/1")).is_member);
    CHECK(is_member(F("0/1"), F("1/0"), F("1/0")).is_member);
    const MembershipVerdict inf = is_member(F("0/1"), F("1/0"), F("1/0"));
    CHECK(inf.nu_x_hi.is_infinite());
}

TEST_CASE("is_member rejects unclassifiable input") {
    CHECK_THROWS_WITH_AS(is_member(F("0/2"), F("1/1"), F("1/3")), "classification undefined for even/even starts",
                         std::invalid_argument);
    CHECK_THROWS_AS(is_member(F("0/1"), F("1/1"), F("3/2")), std::invalid_argument);
    CHECK_THROWS_AS(is_member(F("0/1"), F("1/1"), F("-1/2")), std::invalid_argument);
    CHECK_THROWS_AS(is_member(F("0/1"), F("1/1"), F("1/0")), std::invalid_argument);
    CHECK_THROWS_AS(is_member(F("1/1"), F("0/1"), F("1/2")), std::invalid_argument);
}

TEST_CASE("unreduced endpoints are used as given when not even/even") {
    // 3/9 is 1/3 carried with an odd factor; classes and valuations are unchanged.
    for (long x = 1; x < 9; ++x) {
        for (long y = x + 1; y <= 9; ++y) {
            if (std::gcd(x, y) != 1 || 3 * x < y) {
                continue;
            }
            const Fraction t(x, y);
            CHECK(is_member(F("3/9"), F("1/1"), t).is_member == is_member(F("1/3"), F("1/1"), t).is_member);
        }
    }
}

TEST_CASE("locate: found, excluded and depth-limited") {
    const LocateResult third = locate(unit_tree(), F("1/3"), 10);
    REQUIRE(std::holds_alternative<Found>(third));
    const Found& f = std::get<Found>(third);
    CHECK(f.depth == 1);
    CHECK(f.index == 1);
    CHECK(f.path == std::vector<std::uint8_t>{1});
    // Oracle: row 1 index 1 of the brute-force unit tree.
    CHECK(oracle::unit_rows(1)[1][1] == oracle::Frac{1, 3});

    const LocateResult half = locate(unit_tree(), F("1/2"), 10);
    REQUIRE(std::holds_alternative<Excluded>(half));
    const Excluded& e = std::get<Excluded>(half);
    CHECK(e.depth == 0);
    CHECK(e.left == F("0/1"));
    CHECK(e.right == F("1/1"));
    // (1/3, 2/3) in row 1 is a later certificate for the same number.
    CHECK(same_number(ordinary_mediant(F("1/3"), F("2/3")), F("1/2")));
    CHECK_FALSE(oracle::appears(oracle::unit_rows(6), {1, 2}));

    const LocateResult one = locate(wide_tree(), F("1/1"), 10);
    REQUIRE(std::holds_alternative<Excluded>(one));
    CHECK(std::get<Excluded>(one).depth == 0);
    CHECK(std::get<Excluded>(one).left == F("1/3"));
    CHECK(std::get<Excluded>(one).right == F("3/1"));

    const LocateResult capped = locate(unit_tree(), F("1/3"), 0);
    REQUIRE(std::holds_alternative<DepthExceeded>(capped));
    CHECK(std::get<DepthExceeded>(capped).depth == 0);

    const LocateResult lo = locate(unit_tree(), F("0/1"));
    REQUIRE(std::holds_alternative<Found>(lo));
    CHECK(std::get<Found>(lo).index == 0);
    const LocateResult hi = locate(TreeSpec(F("0/1"), F("1/0")), F("1/0"));
    REQUIRE(std::holds_alternative<Found>(hi));
    CHECK(std::get<Found>(hi).index == 1);
    CHECK(std::get<Found>(hi).depth == 0);
}

TEST_CASE("locate rejects what it cannot decide") {
    CHECK_THROWS_AS(locate(TreeSpec(F("0/2"), F("1/1")), F("1/3")), std::invalid_argument);
    CHECK_THROWS_AS(locate(TreeSpec(F("0/1"), F("1/1"), ReductionScheme::uniform(), 2), F("1/3")),
                    std::invalid_argument);
    CHECK_THROWS_AS(locate(unit_tree(), F("1/3"), kMaxLocateDepth + 1), std::invalid_argument);
    CHECK_THROWS_AS(locate(unit_tree(), F("2/1")), std::invalid_argument);
}

TEST_CASE("locate paths match brute-force rows of the unit tree") {
    const auto rows = oracle::unit_rows(8);
    for (long y = 1; y <= 27; y += 2) {
        for (long x = 0; x <= y; ++x) {
            if (std::gcd(x, y) != 1) {
                continue;
            }
            const LocateResult r = locate(unit_tree(), Fraction(x, y));
            REQUIRE(std::holds_alternative<Found>(r));
            const Found& f = std::get<Found>(r);
            CHECK(f.path.size() == f.depth);
            if (f.depth > 0) {
                CHECK(index_from_path(f.path) == f.index);
            }
            if (f.depth <= 8) {
                const auto idx = static_cast<std::size_t>(f.index.get_ui());
                CHECK(rows[f.depth][idx] == oracle::Frac{x, y});
                if (f.depth > 0) {
                    CHECK_FALSE(oracle::appears({rows[f.depth - 1]}, {x, y}));
                }
            }
        }
    }
}

TEST_CASE("modulus trace") {
    // m = C(0/1, 1/3) + C(1/3, 1/1) = 1 + 2, then 1 against [0/1, 1/3].
    CHECK(modulus_trace(unit_tree(), F("1/3"), 3) == std::vector<Integer>{3, 1});
    CHECK(modulus_trace(unit_tree(), F("1/2"), 5) == std::vector<Integer>(6, Integer(2)));
    CHECK(modulus_trace(unit_tree(), F("0/1"), 5) == std::vector<Integer>{1});
    CHECK(modulus_trace(wide_tree(), F("1/3"), 5) == std::vector<Integer>{8});
}

TEST_CASE("property: modulus trace never increases and drops on side steps") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> den(1, 60);
    const std::vector<TreeSpec> trees{
        unit_tree(), wide_tree(), TreeSpec(F("1/3"), F("3/1"), ReductionScheme::none()),
        TreeSpec(F("0/1"), F("1/1"), ReductionScheme::coin(5)), TreeSpec(F("1/2"), F("7/3"), ReductionScheme::from_row(2))};
    for (const TreeSpec& spec : trees) {
        for (int i = 0; i < 150; ++i) {
            const long y = den(rng);
            std::uniform_int_distribution<long> num(0, 3 * y);
            const Fraction x = reduce_fully(Fraction(num(rng), y));
            if (compare(x, spec.lo()) == std::strong_ordering::less ||
                compare(x, spec.hi()) == std::strong_ordering::greater) {
                continue;
            }
            const std::vector<Integer> trace = modulus_trace(spec, x, 40);
            for (std::size_t j = 0; j + 1 < trace.size(); ++j) {
                CHECK(trace[j + 1] <= trace[j]);
                CHECK(sgn(trace[j + 1]) > 0);
            }
            const LocateResult r = locate(spec, x, 40);
            if (const Found* f = std::get_if<Found>(&r)) {
                REQUIRE(trace.size() == f->path.size() + 1);
                for (std::size_t j = 0; j < f->path.size(); ++j) {
                    const bool side = f->path[j] != 1 || j + 1 == f->path.size();
                    if (side) {
                        CHECK(trace[j + 1] < trace[j]);
                    }
                }
            }
        }
    }
}

TEST_CASE("describe_tree") {
    const TreeDescription unit = describe_tree(F("0/1"), F("1/1"));
    CHECK(unit.text().find("with y odd") != std::string::npos);
    CHECK(unit.text().find("automatic") != std::string::npos);

    const TreeDescription wide = describe_tree(F("1/3"), F("3/1"));
    CHECK(wide.cdet == 8);
    CHECK(wide.text().find("x, y odd; 8 | 3x - y; 8 | 3y - x") != std::string::npos);
    CHECK(wide.same_class);
    CHECK(wide.text().find("note:") != std::string::npos);

    const TreeDescription half_line = describe_tree(F("0/1"), F("1/0"));
    CHECK(half_line.cdet == 1);
    CHECK(half_line.v == Valuation::finite(0));
    CHECK(half_line.text().find("exactly one of x, y even") != std::string::npos);

    CHECK_THROWS_AS(describe_tree(F("0/2"), F("1/1")), std::invalid_argument);
}

TEST_CASE("property: the explicit description agrees with is_member") {
    const std::vector<std::pair<Fraction, Fraction>> starts{
        {F("0/1"), F("1/1")}, {F("1/3"), F("3/1")}, {F("0/1"), F("1/0")}, {F("1/2"), F("5/3")},
        {F("-3/5"), F("7/4")}, {F("1/7"), F("9/1")}, {F("3/9"), F("1/1")}, {F("2/5"), F("4/3")}};
    for (const auto& [lo, hi] : starts) {
        const TreeDescription d = describe_tree(lo, hi);
        for (long y = 1; y <= 40; ++y) {
            for (long x = -40; x <= 400; ++x) {
                if (std::gcd(x, y) != 1) {
                    continue;
                }
                const Fraction t(x, y);
                if (compare(t, lo) == std::strong_ordering::less || compare(t, hi) == std::strong_ordering::greater) {
                    continue;
                }
                CHECK(d.admits(t) == is_member(lo, hi, t).is_member);
            }
        }
    }
}

TEST_CASE("SB(0/1, 1/0): description matches a depth-6 enumeration") {
    const auto rows = oracle::rows({0, 1}, {1, 0}, 6, oracle::reduce_all);
    const TreeDescription d = describe_tree(F("0/1"), F("1/0"));
    const TreeSpec spec(F("0/1"), F("1/0"));
    for (long y = 1; y <= 12; ++y) {
        for (long x = 0; x <= 12; ++x) {
            if (std::gcd(x, y) != 1) {
                continue;
            }
            const Fraction t(x, y);
            if (oracle::appears(rows, {x, y})) {
                CHECK(d.admits(t));
            }
            const LocateResult r = locate(spec, t);
            CHECK(std::holds_alternative<Found>(r) == d.admits(t));
            CHECK(std::holds_alternative<Excluded>(r) == !d.admits(t));
        }
    }
}
