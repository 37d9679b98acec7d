#include <charconv>
#include <stdexcept>
#include <string>

#include "wmsb/tree.hpp"

namespace wmsb {

namespace {

Integer full_gcd(const Fraction& f) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), f.num().get_mpz_t(), f.den().get_mpz_t());
    return g;
}

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw std::invalid_argument("bad " + std::string(what) + " in reduction scheme: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::string to_string(RowIndex index) {
    if (index == 0) {
        return "0";
    }
    std::string out;
    while (index != 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(index % 10)));
        index /= 10;
    }
    return out;
}

ReductionScheme ReductionScheme::uniform() {
    return {"uniform", [](std::size_t, RowIndex, const Fraction& f) { return full_gcd(f); }};
}

ReductionScheme ReductionScheme::none() {
    return {"none", [](std::size_t, RowIndex, const Fraction&) { return Integer(1); }};
}

ReductionScheme ReductionScheme::from_row(std::size_t first_depth) {
    return {"from-row:" + std::to_string(first_depth), [first_depth](std::size_t depth, RowIndex, const Fraction& f) {
                return depth >= first_depth ? full_gcd(f) : Integer(1);
            }};
}

ReductionScheme ReductionScheme::coin(std::uint64_t seed) {
    return {"coin:" + std::to_string(seed), [seed](std::size_t depth, RowIndex position, const Fraction& f) {
                const auto lo = static_cast<std::uint64_t>(position);
                const auto hi = static_cast<std::uint64_t>(position >> 64);
                std::uint64_t h = mix(seed);
                h = mix(h ^ depth);
                h = mix(h ^ lo);
                h = mix(h ^ hi);
                return (h & 1U) ? full_gcd(f) : Integer(1);
            }};
}

ReductionScheme ReductionScheme::parse(std::string_view text) {
    if (text == "uniform") {
        return uniform();
    }
    if (text == "none") {
        return none();
    }
    constexpr std::string_view from_row_prefix = "from-row:";
    constexpr std::string_view coin_prefix = "coin:";
    if (text.starts_with(from_row_prefix)) {
        return from_row(parse_u64(text.substr(from_row_prefix.size()), "row"));
    }
    if (text.starts_with(coin_prefix)) {
        return coin(parse_u64(text.substr(coin_prefix.size()), "seed"));
    }
    throw std::invalid_argument("unknown reduction scheme '" + std::string(text) +
                                "' (expected uniform, none, from-row:<n> or coin:<seed>)");
}

}  // namespace wmsb
