#pragma once

// Row-by-row generation of weighted-mediant Stern-Brocot trees.
//
// Row i+1 copies every entry of row i and inserts, between each consecutive
// pair, the k-1 weighted mediants of that pair. Only the inserted entries go
// through the reduction scheme; copied entries keep their representation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wmsb/fraction.hpp"

namespace wmsb {

/// Index of an entry within a row. Row i has k^i + 1 entries, so 64 bits run
/// out near depth 40 for k = 3; descent-style queries go deeper than that.
using RowIndex = unsigned __int128;

std::string to_string(RowIndex index);

/// Rule choosing the divisor applied to a freshly inserted mediant, given
/// the depth of the row being built, its position in that row, and its
/// unreduced form. The rule must be a pure function of its inputs and its
/// own configuration: rows are built in parallel.
class ReductionScheme {
public:
    using Rule = std::function<Integer(std::size_t depth, RowIndex position, const Fraction& unreduced)>;

    ReductionScheme(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}

    /// R_u: always reduce to lowest terms.
    static ReductionScheme uniform();
    /// R_0: never reduce.
    static ReductionScheme none();
    /// Reduce to lowest terms from row `first_depth` on; from_row(2) is the
    /// R' tree of SB(0/2, 1/1).
    static ReductionScheme from_row(std::size_t first_depth);
    /// Reduce fully or not at all, by a fair bit hashed from (seed, depth,
    /// position). Same seed, same tree.
    static ReductionScheme coin(std::uint64_t seed);

    /// Accepts "uniform", "none", "from-row:<n>" and "coin:<seed>".
    static ReductionScheme parse(std::string_view text);

    const std::string& name() const noexcept { return name_; }

    Integer divisor(std::size_t depth, RowIndex position, const Fraction& unreduced) const {
        return rule_(depth, position, unreduced);
    }

private:
    std::string name_;
    Rule rule_;
};

struct Row {
    std::size_t depth = 0;
    std::vector<Fraction> entries;
};

/// Starting terms, weight and reduction scheme of a tree.
class TreeSpec {
public:
    /// Throws std::invalid_argument unless lo < hi and k >= 2.
    TreeSpec(Fraction lo, Fraction hi, ReductionScheme scheme = ReductionScheme::uniform(), int k = 3);

    const Fraction& lo() const noexcept { return lo_; }
    const Fraction& hi() const noexcept { return hi_; }
    int k() const noexcept { return k_; }
    const ReductionScheme& scheme() const noexcept { return scheme_; }

    /// "SB(lo, hi, scheme)" with ", k=..." appended when k != 3.
    std::string str() const;

    Row root() const { return Row{0, {lo_, hi_}}; }

private:
    Fraction lo_;
    Fraction hi_;
    ReductionScheme scheme_;
    int k_;
};

/// The k-1 unreduced weighted mediants of f and g; the j-th (1-based) is
/// ((k-j)f.num + j g.num) / ((k-j)f.den + j g.den).
std::vector<Fraction> weighted_mediants(const Fraction& f, const Fraction& g, int k);

/// (2p + r)/(2q + s), unreduced.
Fraction left_mediant(const Fraction& f, const Fraction& g);
/// (p + 2r)/(q + 2s), unreduced.
Fraction right_mediant(const Fraction& f, const Fraction& g);
/// (p + r)/(q + s), unreduced.
Fraction ordinary_mediant(const Fraction& f, const Fraction& g);

/// Divides `unreduced` by the scheme's divisor for (depth, position).
/// Throws std::runtime_error("invalid reduction divisor") when the divisor is
/// not a positive common divisor of numerator and denominator, and
/// std::logic_error when it fails to divide `parent_cdet` (which would
/// contradict the reduction-divisor law).
Fraction apply_scheme(const ReductionScheme& scheme, std::size_t depth, RowIndex position,
                      Fraction unreduced, const Integer& parent_cdet);

/// Builds row r.depth + 1. Parent pairs are processed in parallel with
/// OpenMP when it is available.
Row next_row(const Row& r, const TreeSpec& spec);

namespace reference {

/// Single-threaded next_row, kept as the baseline the parallel kernel is
/// tested and benchmarked against.
Row next_row(const Row& r, const TreeSpec& spec);

}  // namespace reference

/// Streams rows 0..max_depth of a tree. Holds the current row only; the
/// next row exists alongside it just while advance() runs.
class RowGenerator {
public:
    RowGenerator(TreeSpec spec, std::size_t max_depth);

    const Row& current() const noexcept { return current_; }
    /// False once current() is row max_depth.
    bool advance();
    bool done() const noexcept { return current_.depth >= max_depth_; }

    const TreeSpec& spec() const noexcept { return spec_; }

    /// Largest number of entries held at once (current plus next row).
    std::size_t peak_resident_entries() const noexcept { return peak_resident_; }

private:
    TreeSpec spec_;
    std::size_t max_depth_;
    Row current_;
    std::size_t peak_resident_;
};

inline RowGenerator generate(TreeSpec spec, std::size_t depth) {
    return RowGenerator(std::move(spec), depth);
}

/// Calls fn(row) for rows 0..depth in order.
template <typename Fn>
void for_each_row(const TreeSpec& spec, std::size_t depth, Fn&& fn) {
    RowGenerator gen(spec, depth);
    fn(gen.current());
    while (gen.advance()) {
        fn(gen.current());
    }
}

/// Number of entries in row `depth` of a weight-k tree: k^depth + 1.
Integer row_size(int k, std::size_t depth);

}  // namespace wmsb
