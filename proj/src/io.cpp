#include "wmsb/io.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace wmsb {

namespace {

json valuation_json(const Valuation& v) {
    if (v.is_infinite()) {
        return "inf";
    }
    return v.value();
}

std::string path_string(const std::vector<std::uint8_t>& path) {
    std::string s = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        s += (i ? "," : "") + std::to_string(path[i]);
    }
    return s + "]";
}

}  // namespace

json to_json(const Fraction& f) {
    return {{"num", f.num().get_str()}, {"den", f.den().get_str()}};
}

Fraction fraction_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["num"].is_string() ||
        !j["den"].is_string()) {
        throw std::invalid_argument("fraction JSON must be {\"num\": \"<int>\", \"den\": \"<uint>\"}");
    }
    return Fraction::parse(j["num"].get<std::string>() + "/" + j["den"].get<std::string>());
}

json to_json(const Row& row) {
    json entries = json::array();
    for (const Fraction& f : row.entries) {
        entries.push_back(to_json(f));
    }
    return {{"depth", row.depth}, {"entries", std::move(entries)}};
}

Row row_from_json(const json& j) {
    Row row;
    row.depth = j.at("depth").get<std::size_t>();
    for (const json& e : j.at("entries")) {
        row.entries.push_back(fraction_from_json(e));
    }
    return row;
}

json to_json(const MembershipVerdict& v) {
    json matches = json::array();
    if (v.matches_lo_class) {
        matches.push_back("lo");
    }
    if (v.matches_hi_class) {
        matches.push_back("hi");
    }
    return {
        {"x", to_json(v.x)},
        {"is_member", v.is_member},
        {"parity_ok", v.parity_ok},
        {"valuation_ok", v.valuation_ok},
        {"parity_class", {v.x_class.num_parity, v.x_class.den_parity}},
        {"matches", std::move(matches)},
        {"nu2", {{"lo_x", valuation_json(v.nu_lo_x)}, {"x_hi", valuation_json(v.nu_x_hi)},
                 {"lo_hi", valuation_json(v.nu_lo_hi)}}},
    };
}

json to_json(const LocateResult& r) {
    if (const auto* f = std::get_if<Found>(&r)) {
        json path = json::array();
        for (std::uint8_t b : f->path) {
            path.push_back(b);
        }
        return {{"result", "found"}, {"depth", f->depth}, {"index", f->index.get_str()}, {"path", std::move(path)}};
    }
    if (const auto* e = std::get_if<Excluded>(&r)) {
        return {{"result", "excluded"}, {"depth", e->depth}, {"left", to_json(e->left)}, {"right", to_json(e->right)}};
    }
    return {{"result", "depth_exceeded"}, {"depth", std::get<DepthExceeded>(r).depth}};
}

json to_json(const CheckReport& r) {
    json failures = json::array();
    for (const CheckFailure& f : r.failures) {
        failures.push_back({{"tree", f.tree},
                            {"depth", f.depth},
                            {"position", to_string(f.position)},
                            {"expected", f.expected},
                            {"actual", f.actual}});
    }
    return {{"check", r.check_name},
            {"subject", r.subject},
            {"instances", r.instances_checked},
            {"passed", r.passed()},
            {"failures", std::move(failures)},
            {"findings", r.findings}};
}

std::string render_plain(const Row& row) {
    std::string out;
    for (std::size_t i = 0; i < row.entries.size(); ++i) {
        if (i) {
            out += ' ';
        }
        out += row.entries[i].str();
    }
    return out;
}

Row parse_plain(std::string_view line, std::size_t depth) {
    Row row;
    row.depth = depth;
    std::size_t start = 0;
    while (start < line.size()) {
        if (line[start] == ' ') {
            ++start;
            continue;
        }
        std::size_t end = line.find(' ', start);
        if (end == std::string_view::npos) {
            end = line.size();
        }
        row.entries.push_back(Fraction::parse(line.substr(start, end - start)));
        start = end;
    }
    return row;
}

std::string render_latex(const Row& row) {
    std::string out = "\\[";
    for (std::size_t i = 0; i < row.entries.size(); ++i) {
        if (i) {
            out += " \\; \\; \\; ";
        }
        out += "\\frac{" + row.entries[i].num().get_str() + "}{" + row.entries[i].den().get_str() + "}";
    }
    return out + "\\]";
}

std::string render_verdict(const MembershipVerdict& v) {
    std::ostringstream out;
    out << v.x.str() << ": " << (v.is_member ? "member" : "non-member") << "\n";
    out << "  parity class " << v.x_class.str() << (v.parity_ok ? " matches " : " matches neither endpoint");
    if (v.matches_lo_class) {
        out << "lo";
    }
    if (v.matches_lo_class && v.matches_hi_class) {
        out << " and ";
    }
    if (v.matches_hi_class) {
        out << "hi";
    }
    out << (v.parity_ok ? "" : " (fails)") << "\n";
    out << "  nu2: C(lo,x) " << v.nu_lo_x.str() << ", C(x,hi) " << v.nu_x_hi.str() << ", C(lo,hi) "
        << v.nu_lo_hi.str() << (v.valuation_ok ? "" : " (fails)") << "\n";
    return out.str();
}

std::string render_locate(const LocateResult& r) {
    std::ostringstream out;
    if (const auto* f = std::get_if<Found>(&r)) {
        out << "found at depth " << f->depth << ", index " << f->index.get_str() << ", path " << path_string(f->path)
            << "\n";
    } else if (const auto* e = std::get_if<Excluded>(&r)) {
        out << "excluded at depth " << e->depth << ": ordinary mediant of consecutive " << e->left.str() << ", "
            << e->right.str() << "\n";
    } else {
        out << "undecided: depth limit " << std::get<DepthExceeded>(r).depth << " reached\n";
    }
    return out.str();
}

std::string render_reports(const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    out << std::left << std::setw(13) << "check" << std::setw(40) << "subject" << std::setw(11) << "instances"
        << std::setw(10) << "failures" << "result\n";
    std::uint64_t failed = 0;
    for (const CheckReport& r : reports) {
        out << std::left << std::setw(13) << r.check_name << std::setw(40) << r.subject << std::setw(11)
            << r.instances_checked << std::setw(10) << r.failures.size() << (r.passed() ? "pass" : "FAIL") << "\n";
        failed += r.passed() ? 0 : 1;
    }
    for (const CheckReport& r : reports) {
        for (const CheckFailure& f : r.failures) {
            out << "  " << r.check_name << " " << f.tree << " row " << f.depth << " index " << to_string(f.position)
                << ": expected " << f.expected << ", got " << f.actual << "\n";
        }
        for (const std::string& note : r.findings) {
            out << "  note (" << r.check_name << "): " << note << "\n";
        }
    }
    out << reports.size() - failed << "/" << reports.size() << " checks passed\n";
    return out.str();
}

}  // namespace wmsb
