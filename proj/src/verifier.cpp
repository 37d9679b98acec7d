#include "wmsb/verifier.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <variant>

#include "wmsb/analysis.hpp"

namespace wmsb {

namespace {

// Non-members far from both endpoints may need more rows than the interactive
// default before their excluding pair shows up.
constexpr std::size_t kCheckLocateDepth = 4096;

bool is_degenerate_start(const TreeSpec& spec) {
    return parity_class(spec.lo()).degenerate() || parity_class(spec.hi()).degenerate();
}

void require_k3(const TreeSpec& spec, const char* check) {
    if (spec.k() != 3) {
        throw std::invalid_argument(std::string(check) + " applies to k = 3 trees only");
    }
}

void fail(CheckReport& report, const TreeSpec& spec, std::size_t depth, RowIndex position, std::string expected,
          std::string actual) {
    report.failures.push_back({spec.str(), depth, position, std::move(expected), std::move(actual)});
}

std::string at(std::size_t depth, RowIndex position) {
    return "row " + std::to_string(depth) + " index " + to_string(position);
}

// Calls fn(previous, current) for every pair of consecutive rows up to depth.
template <typename Fn>
void for_each_row_pair(const TreeSpec& spec, std::size_t depth, Fn&& fn) {
    RowGenerator gen(spec, depth);
    while (!gen.done()) {
        Row previous = gen.current();
        gen.advance();
        fn(previous, gen.current());
    }
}

struct Appearance {
    std::size_t depth;
    RowIndex position;
};

// Number (in lowest terms) -> first appearance. Reports entries that repeat
// an earlier number and copies that differ from their source.
class AppearanceIndex {
public:
    void add_row(const Row& row, const Row* previous, int k, const TreeSpec& spec, CheckReport& report) {
        for (std::size_t i = 0; i < row.entries.size(); ++i) {
            const Fraction& entry = row.entries[i];
            ++report.instances_checked;
            if (previous != nullptr && i % static_cast<std::size_t>(k) == 0) {
                const Fraction& source = previous->entries[i / static_cast<std::size_t>(k)];
                if (!(source == entry)) {
                    fail(report, spec, row.depth, i, "copy of " + source.str(), entry.str());
                }
                continue;
            }
            const std::string key = reduce_fully(entry).str();
            const auto [it, inserted] = seen_.emplace(key, Appearance{row.depth, i});
            if (!inserted) {
                fail(report, spec, row.depth, i, "number not seen before (" + entry.str() + ")",
                     "already at " + at(it->second.depth, it->second.position));
            }
        }
    }

    const Appearance* find(const Fraction& reduced) const {
        const auto it = seen_.find(reduced.str());
        return it == seen_.end() ? nullptr : &it->second;
    }

private:
    std::unordered_map<std::string, Appearance> seen_;
};

AppearanceIndex index_tree(const TreeSpec& spec, std::size_t depth, CheckReport& report) {
    AppearanceIndex index;
    RowGenerator gen(spec, depth);
    index.add_row(gen.current(), nullptr, spec.k(), spec, report);
    while (!gen.done()) {
        Row previous = gen.current();
        gen.advance();
        index.add_row(gen.current(), &previous, spec.k(), spec, report);
    }
    return index;
}

void neighbor_law_into(CheckReport& report, const TreeSpec& spec, std::size_t depth) {
    for_each_row(spec, depth, [&](const Row& row) {
        if (row.depth == 0) {
            return;
        }
        ++report.instances_checked;
        const Fraction expected(Integer(1), Integer(4 * row.depth + 1));
        if (!(row.entries[1] == expected)) {
            fail(report, spec, row.depth, 1, expected.str(), row.entries[1].str());
        }
    });
}

bool is_zero_half_start(const TreeSpec& spec) {
    return spec.k() == 3 && spec.lo() == Fraction(0, 2) && spec.hi() == Fraction(1, 1);
}

std::string verdict_name(const LocateResult& r) {
    if (std::holds_alternative<Found>(r)) {
        return "found at depth " + std::to_string(std::get<Found>(r).depth);
    }
    if (std::holds_alternative<Excluded>(r)) {
        return "excluded at depth " + std::to_string(std::get<Excluded>(r).depth);
    }
    return "depth exceeded";
}

}  // namespace

CheckReport check_parity_lemma(const TreeSpec& spec, std::size_t depth) {
    require_k3(spec, "parity lemma");
    CheckReport report{"parity", spec.str(), 0, {}, {}};
    const ParityClass lc = parity_class(spec.lo());
    const ParityClass hc = parity_class(spec.hi());
    const bool degenerate = is_degenerate_start(spec);
    if (degenerate) {
        report.findings.push_back(spec.str() + ": an endpoint is even/even, parity classes are scheme-dependent");
    }

    // foreign class -> (count, first few entries), for the degenerate case
    struct Foreign {
        ParityClass cls;
        std::uint64_t count = 0;
        std::vector<std::string> examples;
    };
    std::vector<Foreign> foreign;

    for_each_row(spec, depth, [&](const Row& row) {
        for (std::size_t i = 0; i < row.entries.size(); ++i) {
            ++report.instances_checked;
            const ParityClass c = parity_class(row.entries[i]);
            const bool in_classes = c == lc || c == hc;
            if (degenerate) {
                if (in_classes) {
                    continue;
                }
                auto it = std::find_if(foreign.begin(), foreign.end(), [&](const Foreign& f) { return f.cls == c; });
                if (it == foreign.end()) {
                    it = foreign.insert(foreign.end(), Foreign{c, 0, {}});
                }
                ++it->count;
                if (it->examples.size() < 6) {
                    it->examples.push_back(row.entries[i].str() + " (" + at(row.depth, i) + ")");
                }
                continue;
            }
            if (!in_classes) {
                fail(report, spec, row.depth, i, lc.str() + " or " + hc.str(), c.str());
            } else if (!(lc == hc) && i > 0 && c == parity_class(row.entries[i - 1])) {
                fail(report, spec, row.depth, i, "class alternating with previous entry", c.str());
            }
        }
    });
    for (const Foreign& f : foreign) {
        std::string line = spec.str() + ": " + std::to_string(f.count) + " entries of class " + f.cls.str() +
                           ", matching neither " + lc.str() + " nor " + hc.str() + ", e.g.";
        for (const std::string& e : f.examples) {
            line += " " + e;
        }
        report.findings.push_back(std::move(line));
    }
    return report;
}

CheckReport check_2adic_lemma(const TreeSpec& spec, std::size_t depth) {
    require_k3(spec, "2-adic lemma");
    CheckReport report{"2adic", spec.str(), 0, {}, {}};
    const bool degenerate = is_degenerate_start(spec);
    const Valuation base = nu2(cross_determinant(spec.lo(), spec.hi()));
    std::uint64_t outside_hypothesis = 0;

    for_each_row(spec, depth, [&](const Row& row) {
        for (std::size_t i = 1; i + 1 < row.entries.size(); ++i) {
            ++report.instances_checked;
            const Fraction& p = row.entries[i];
            const Valuation left = nu2(cross_determinant(spec.lo(), p));
            const Valuation right = nu2(cross_determinant(p, spec.hi()));
            const auto [low, high] = std::minmax(left, right);
            const bool balanced = low == base && base < high;
            const bool oriented = (i % 2 == 0) ? left > right : left < right;
            if (balanced && oriented) {
                continue;
            }
            if (degenerate) {
                ++outside_hypothesis;
                continue;
            }
            const std::string actual = "nu2(C(lo,p))=" + left.str() + " nu2(C(p,hi))=" + right.str() + " for " + p.str();
            if (!balanced) {
                fail(report, spec, row.depth, i, "min = " + base.str() + " < max", actual);
            } else {
                fail(report, spec, row.depth, i, i % 2 == 0 ? "left > right (even index)" : "left < right (odd index)",
                     actual);
            }
        }
    });
    if (degenerate) {
        report.findings.push_back(spec.str() + ": even/even endpoint, " + std::to_string(outside_hypothesis) +
                                  " entries violate the valuation pattern");
    }
    return report;
}

CheckReport check_reduction_divisor(const TreeSpec& spec, std::size_t depth) {
    CheckReport report{"divisor", spec.str(), 0, {}, {}};
    const auto k = static_cast<std::size_t>(spec.k());
    for_each_row_pair(spec, depth, [&](const Row& previous, const Row& row) {
        for (std::size_t i = 0; i + 1 < previous.entries.size(); ++i) {
            const Fraction& f = previous.entries[i];
            const Fraction& g = previous.entries[i + 1];
            const Integer cdet = cross_determinant(f, g);
            const std::vector<Fraction> mediants = weighted_mediants(f, g, spec.k());
            for (std::size_t j = 1; j < k; ++j) {
                ++report.instances_checked;
                const std::size_t position = i * k + j;
                const Fraction& unreduced = mediants[j - 1];
                const Fraction& entry = row.entries[position];

                Integer gcd;
                mpz_gcd(gcd.get_mpz_t(), unreduced.num().get_mpz_t(), unreduced.den().get_mpz_t());
                if (!mpz_divisible_p(cdet.get_mpz_t(), gcd.get_mpz_t())) {
                    fail(report, spec, row.depth, position, "gcd(" + unreduced.str() + ") | " + cdet.get_str(),
                         "gcd = " + gcd.get_str());
                    continue;
                }
                const Integer applied = entry.is_infinite() ? Integer(unreduced.num() / entry.num())
                                                            : Integer(unreduced.den() / entry.den());
                if (sgn(applied) <= 0 || entry.num() * applied != unreduced.num() ||
                    entry.den() * applied != unreduced.den()) {
                    fail(report, spec, row.depth, position, unreduced.str() + " divided by a common factor",
                         entry.str());
                } else if (!mpz_divisible_p(cdet.get_mpz_t(), applied.get_mpz_t())) {
                    fail(report, spec, row.depth, position, "applied divisor divides " + cdet.get_str(),
                         applied.get_str());
                }
            }
        }
    });
    return report;
}

CheckReport check_one_third(const TreeSpec& spec, std::size_t depth) {
    require_k3(spec, "one-third lemma");
    CheckReport report{"one-third", spec.str(), 0, {}, {}};
    for_each_row_pair(spec, depth, [&](const Row& previous, const Row& row) {
        for (std::size_t i = 0; i + 1 < previous.entries.size(); ++i) {
            ++report.instances_checked;
            const Fraction& f = previous.entries[i];
            const Fraction& g = previous.entries[i + 1];
            const Fraction& m1 = row.entries[3 * i + 1];
            const Fraction& m2 = row.entries[3 * i + 2];
            if (g.is_infinite()) {
                continue;  // g - f is infinite
            }
            // (m2 - m1) <= (g - f) / 3, cleared of the positive denominators
            const Integer lhs = 3 * cross_determinant(m1, m2) * f.den() * g.den();
            const Integer rhs = cross_determinant(f, g) * m1.den() * m2.den();
            if (lhs > rhs || sgn(cross_determinant(m1, m2)) <= 0) {
                fail(report, spec, row.depth, 3 * i + 1, "0 < " + m2.str() + " - " + m1.str() + " <= (" + g.str() +
                                                              " - " + f.str() + ")/3",
                     "violated");
            }
        }
    });
    return report;
}

CheckReport check_uniqueness(const TreeSpec& spec, std::size_t depth) {
    CheckReport report{"uniqueness", spec.str(), 0, {}, {}};
    index_tree(spec, depth, report);
    return report;
}

CheckReport check_neighbor_law(std::size_t depth) {
    const TreeSpec spec(Fraction(0, 2), Fraction(1, 1), ReductionScheme::uniform());
    CheckReport report{"neighbor", spec.str(), 0, {}, {}};
    neighbor_law_into(report, spec, depth);
    return report;
}

CheckReport check_membership_theorem(const TreeSpec& spec, std::size_t depth, std::uint64_t denominator_bound) {
    require_k3(spec, "membership theorem");
    CheckReport report{"membership", spec.str(), 0, {}, {}};
    const AppearanceIndex appearances = index_tree(spec, depth, report);

    if (is_degenerate_start(spec)) {
        report.findings.push_back(spec.str() + ": even/even endpoint, membership predicate not applicable");
        if (is_zero_half_start(spec)) {
            neighbor_law_into(report, spec, depth);
        }
        return report;
    }

    const Fraction& lo = spec.lo();
    const Fraction& hi = spec.hi();
    const auto bound = static_cast<unsigned long>(denominator_bound);
    for (unsigned long y = 1; y <= bound; ++y) {
        Integer x_min, x_max;
        mpz_cdiv_q(x_min.get_mpz_t(), Integer(lo.num() * y).get_mpz_t(), lo.den().get_mpz_t());
        if (hi.is_infinite()) {
            x_max = Integer(bound);
        } else {
            mpz_fdiv_q(x_max.get_mpz_t(), Integer(hi.num() * y).get_mpz_t(), hi.den().get_mpz_t());
        }
        for (Integer x = x_min; x <= x_max; ++x) {
            Integer g;
            mpz_gcd_ui(g.get_mpz_t(), x.get_mpz_t(), y);
            if (g != 1) {
                continue;
            }
            ++report.instances_checked;
            const Fraction target(x, Integer(y));
            const MembershipVerdict verdict = is_member(lo, hi, target);
            const Appearance* seen = appearances.find(target);
            const LocateResult located = locate(spec, target, kCheckLocateDepth);

            if (verdict.is_member) {
                const Found* found = std::get_if<Found>(&located);
                if (found == nullptr) {
                    fail(report, spec, depth, 0, target.str() + " member and found", verdict_name(located));
                } else if (seen != nullptr &&
                           (found->depth != seen->depth || found->index.get_str() != to_string(seen->position))) {
                    fail(report, spec, found->depth, 0,
                         target.str() + " found at " + at(seen->depth, seen->position),
                         "found at row " + std::to_string(found->depth) + " index " + found->index.get_str());
                } else if (seen == nullptr && found->depth <= depth) {
                    fail(report, spec, found->depth, 0,
                         target.str() + " absent through row " + std::to_string(depth),
                         "locate reports it at row " + std::to_string(found->depth) + " index " +
                             found->index.get_str());
                }
                continue;
            }
            if (seen != nullptr) {
                fail(report, spec, seen->depth, seen->position, target.str() + " never appears (non-member)",
                     "present");
            }
            const Excluded* excluded = std::get_if<Excluded>(&located);
            if (excluded == nullptr) {
                fail(report, spec, depth, 0, target.str() + " excluded", verdict_name(located));
            } else if (!same_number(ordinary_mediant(excluded->left, excluded->right), target)) {
                fail(report, spec, excluded->depth, 0,
                     "mediant of " + excluded->left.str() + ", " + excluded->right.str() + " equals " + target.str(),
                     ordinary_mediant(excluded->left, excluded->right).str());
            }
        }
    }
    return report;
}

CheckReport check_unavoidable_reduction(std::size_t sample_count, std::uint64_t seed) {
    CheckReport report{"unavoidable",
                       std::to_string(sample_count) + " random starts, seed " + std::to_string(seed), 0, {}, {}};
    for (const StartPair& start : random_valid_starts(sample_count, seed)) {
        ++report.instances_checked;
        const TreeSpec spec(start.lo, start.hi, ReductionScheme::none());
        const Integer &a = start.lo.num(), &b = start.lo.den(), &c = start.hi.num(), &d = start.hi.den();
        auto form = [&](long wa, long wc) { return make_unchecked(wa * a + wc * c, wa * b + wc * d); };

        RowGenerator gen(spec, 3);
        gen.advance();
        gen.advance();
        const Row row2 = gen.current();
        gen.advance();
        const Row& row3 = gen.current();

        if (!(row2.entries[3] == form(2, 1)) || !(row2.entries[4] == form(5, 4))) {
            fail(report, spec, 2, 3, form(2, 1).str() + ", " + form(5, 4).str(),
                 row2.entries[3].str() + ", " + row2.entries[4].str());
            continue;
        }
        const Fraction expected[2] = {form(9, 6), form(12, 9)};
        for (std::size_t j = 0; j < 2; ++j) {
            const Fraction& m = row3.entries[10 + j];
            Integer g;
            mpz_gcd(g.get_mpz_t(), m.num().get_mpz_t(), m.den().get_mpz_t());
            if (!(m == expected[j]) || !mpz_divisible_ui_p(g.get_mpz_t(), 3)) {
                fail(report, spec, 3, 10 + j, expected[j].str() + " with 3 | gcd", m.str() + " gcd " + g.get_str());
            }
        }
    }
    return report;
}

std::vector<StartPair> random_valid_starts(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> component(0, 20);
    std::vector<StartPair> out;
    while (out.size() < count) {
        const long a = component(rng), b = component(rng), c = component(rng), d = component(rng);
        if ((b == 0 && a == 0) || (d == 0 && c == 0) || (b == 0 && d == 0)) {
            continue;
        }
        const Fraction lo(a, b), hi(c, d);
        if (parity_class(lo).degenerate() || parity_class(hi).degenerate()) {
            continue;
        }
        if (compare(lo, hi) != std::strong_ordering::less) {
            continue;
        }
        out.push_back({lo, hi});
    }
    return out;
}

std::vector<TreeSpec> reference_trees() {
    return {
        TreeSpec(Fraction(0, 1), Fraction(1, 1), ReductionScheme::uniform()),
        TreeSpec(Fraction(1, 3), Fraction(3, 1), ReductionScheme::uniform()),
        TreeSpec(Fraction(0, 2), Fraction(1, 1), ReductionScheme::from_row(2)),
        TreeSpec(Fraction(0, 2), Fraction(1, 1), ReductionScheme::uniform()),
    };
}

std::vector<TreeSpec> default_trees(std::size_t random_count, std::uint64_t seed) {
    std::vector<TreeSpec> trees = reference_trees();
    const std::vector<StartPair> starts = random_valid_starts(random_count, seed);
    for (std::size_t i = 0; i < starts.size(); ++i) {
        ReductionScheme scheme = ReductionScheme::uniform();
        switch (i % 4) {
            case 1: scheme = ReductionScheme::none(); break;
            case 2: scheme = ReductionScheme::from_row(2); break;
            case 3: scheme = ReductionScheme::coin(seed + i); break;
            default: break;
        }
        trees.emplace_back(starts[i].lo, starts[i].hi, std::move(scheme));
    }
    return trees;
}

bool suite_names_valid(const std::string& suite) {
    static const std::vector<std::string> names{"all",        "lemmas",     "parity",   "2adic",
                                                "divisor",    "one-third",  "membership", "uniqueness",
                                                "neighbor",   "unavoidable"};
    return std::find(names.begin(), names.end(), suite) != names.end();
}

std::vector<CheckReport> run_suite(const std::vector<TreeSpec>& trees, const SuiteOptions& options) {
    if (!suite_names_valid(options.suite)) {
        throw std::invalid_argument("unknown suite '" + options.suite + "'");
    }
    const std::string& s = options.suite;
    auto wants = [&s](const char* name, bool in_lemmas) {
        return s == name || s == "all" || (in_lemmas && s == "lemmas");
    };

    std::vector<CheckReport> reports;
    for (const TreeSpec& spec : trees) {
        const bool k3 = spec.k() == 3;
        if (k3 && wants("parity", true)) {
            reports.push_back(check_parity_lemma(spec, options.depth));
        }
        if (k3 && wants("2adic", true)) {
            reports.push_back(check_2adic_lemma(spec, options.depth));
        }
        if (wants("divisor", true)) {
            reports.push_back(check_reduction_divisor(spec, options.depth));
        }
        if (k3 && wants("one-third", true)) {
            reports.push_back(check_one_third(spec, options.depth));
        }
        if (k3 && wants("membership", false)) {
            reports.push_back(check_membership_theorem(spec, options.depth, options.denominator_bound));
        }
        if (wants("uniqueness", false)) {
            reports.push_back(check_uniqueness(spec, options.depth));
        }
    }
    if (wants("neighbor", false)) {
        reports.push_back(check_neighbor_law(std::max<std::size_t>(options.depth, 1)));
    }
    if (wants("unavoidable", false)) {
        reports.push_back(check_unavoidable_reduction(options.samples, options.seed));
    }
    return reports;
}

}  // namespace wmsb
