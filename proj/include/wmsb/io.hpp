#pragma once

// Text and JSON renderings. Integers are always written as decimal strings in
// JSON so arbitrarily large values survive the round trip.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wmsb/analysis.hpp"
#include "wmsb/fraction.hpp"
#include "wmsb/tree.hpp"
#include "wmsb/verifier.hpp"

namespace wmsb {

using json = nlohmann::json;

json to_json(const Fraction& f);
/// Accepts {"num": "<int>", "den": "<uint>"}; throws on anything else.
Fraction fraction_from_json(const json& j);

json to_json(const Row& row);
Row row_from_json(const json& j);

json to_json(const MembershipVerdict& v);
json to_json(const LocateResult& r);
json to_json(const CheckReport& r);

/// "0/1 1/3 2/3 1/1"
std::string render_plain(const Row& row);
/// Inverse of render_plain for a row of the given depth.
Row parse_plain(std::string_view line, std::size_t depth);

/// \[\frac{0}{1} \; \; \; \frac{1}{1}\]
std::string render_latex(const Row& row);

std::string render_verdict(const MembershipVerdict& v);
std::string render_locate(const LocateResult& r);

/// Fixed-width table, one line per report, followed by failure details.
std::string render_reports(const std::vector<CheckReport>& reports);

}  // namespace wmsb
