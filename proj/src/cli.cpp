#include "wmsb/cli.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wmsb/analysis.hpp"
#include "wmsb/io.hpp"
#include "wmsb/tree.hpp"
#include "wmsb/verifier.hpp"

namespace wmsb {

namespace {

constexpr std::size_t kDepthCap = 20;
constexpr std::size_t kBufferedDepthCap = 12;

struct CliConfig {
    std::string lo;
    std::string hi;
    int k = 3;
    std::string scheme = "uniform";
    std::size_t depth = 2;
    std::size_t verify_depth = 6;
    std::string format = "plain";
    bool stream = false;
    int threads = 0;
    std::size_t max_depth = kDefaultMaxDepth;
    std::uint64_t denominator_bound = 19;
    std::string target;
    std::string suite = "all";
    std::size_t samples = 100;
    std::size_t random_starts = 25;
    std::uint64_t seed = 1;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

TreeSpec tree_from(const CliConfig& c) {
    if (c.lo.empty() || c.hi.empty()) {
        throw UsageError("--lo and --hi are required");
    }
    return TreeSpec(Fraction::parse(c.lo), Fraction::parse(c.hi), ReductionScheme::parse(c.scheme), c.k);
}

void add_tree_options(CLI::App* cmd, CliConfig& c, bool required) {
    auto* lo = cmd->add_option("--lo", c.lo, "left starting term p/q");
    auto* hi = cmd->add_option("--hi", c.hi, "right starting term p/q");
    if (required) {
        lo->required();
        hi->required();
    }
}

void add_scheme_option(CLI::App* cmd, CliConfig& c) {
    cmd->add_option("--scheme", c.scheme, "uniform | none | from-row:<n> | coin:<seed>")->capture_default_str();
}

int cmd_generate(const CliConfig& c, std::ostream& out) {
    if (c.depth > kBufferedDepthCap && !c.stream) {
        throw UsageError("depth above " + std::to_string(kBufferedDepthCap) + " requires --stream");
    }
    RowGenerator gen(tree_from(c), c.depth);
    std::ostringstream buffer;
    std::ostream& sink = c.stream ? out : buffer;
    auto emit = [&](const Row& row) {
        if (c.format == "json") {
            sink << to_json(row).dump() << '\n';
        } else if (c.format == "latex") {
            sink << render_latex(row) << '\n';
        } else {
            sink << render_plain(row) << '\n';
        }
        if (c.stream) {
            sink.flush();
        }
    };
    emit(gen.current());
    while (gen.advance()) {
        emit(gen.current());
    }
    if (!c.stream) {
        out << buffer.str();
    }
    return kExitOk;
}

int cmd_member(const CliConfig& c, std::ostream& out) {
    const MembershipVerdict v = is_member(Fraction::parse(c.lo), Fraction::parse(c.hi), Fraction::parse(c.target));
    if (c.format == "json") {
        out << to_json(v).dump(2) << '\n';
    } else {
        out << render_verdict(v);
    }
    return v.is_member ? kExitOk : kExitNegative;
}

int cmd_locate(const CliConfig& c, std::ostream& out) {
    const TreeSpec spec = tree_from(c);
    const LocateResult r = locate(spec, Fraction::parse(c.target), c.max_depth);
    if (c.format == "json") {
        out << to_json(r).dump(2) << '\n';
    } else {
        out << render_locate(r);
    }
    return std::holds_alternative<DepthExceeded>(r) ? kExitNegative : kExitOk;
}

int cmd_describe(const CliConfig& c, std::ostream& out) {
    const TreeDescription d = describe_tree(Fraction::parse(c.lo), Fraction::parse(c.hi));
    if (c.format == "json") {
        json classes = json::array();
        for (const ParityClass& pc : d.classes) {
            classes.push_back({pc.num_parity, pc.den_parity});
        }
        const json j = {{"lo", to_json(d.lo)},
                        {"hi", to_json(d.hi)},
                        {"cross_determinant", d.cdet.get_str()},
                        {"nu2", d.v.value()},
                        {"parity_classes", std::move(classes)},
                        {"same_class", d.same_class},
                        {"text", d.text()}};
        out << j.dump(2) << '\n';
    } else {
        out << d.text();
    }
    return kExitOk;
}

int cmd_verify(const CliConfig& c, std::ostream& out) {
    if (!suite_names_valid(c.suite)) {
        throw UsageError("unknown suite '" + c.suite + "'");
    }
    std::vector<TreeSpec> trees;
    if (!c.lo.empty() || !c.hi.empty()) {
        trees.push_back(tree_from(c));
    } else {
        trees = default_trees(c.random_starts, c.seed);
    }
    SuiteOptions options;
    options.suite = c.suite;
    options.depth = c.verify_depth;
    options.denominator_bound = c.denominator_bound;
    options.samples = c.samples;
    options.seed = c.seed;
    const std::vector<CheckReport> reports = run_suite(trees, options);

    bool passed = true;
    for (const CheckReport& r : reports) {
        passed = passed && r.passed();
    }
    if (c.format == "json") {
        json j = json::array();
        for (const CheckReport& r : reports) {
            j.push_back(to_json(r));
        }
        out << json{{"passed", passed}, {"reports", std::move(j)}}.dump(2) << '\n';
    } else {
        out << render_reports(reports);
    }
    return passed ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig c;
    CLI::App app{"Weighted-mediant Stern-Brocot trees: generation, membership, location, verification"};
    app.require_subcommand(1);
    app.add_option("--threads", c.threads, "OpenMP threads for row generation (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);

    const auto formats = CLI::IsMember({"plain", "json", "latex"});
    const auto text_formats = CLI::IsMember({"plain", "json"});

    auto* generate = app.add_subcommand("generate", "print rows 0..depth of a tree");
    add_tree_options(generate, c, true);
    add_scheme_option(generate, c);
    generate->add_option("--k", c.k, "mediant weight")->check(CLI::Range(2, 1000))->capture_default_str();
    generate->add_option("--depth", c.depth, "last row to print")->check(CLI::Range(std::size_t{0}, kDepthCap))
        ->capture_default_str();
    generate->add_option("--format", c.format)->check(formats)->capture_default_str();
    generate->add_flag("--stream", c.stream, "write each row as soon as it is built (required above depth 12)");

    auto* member = app.add_subcommand("member", "decide whether x/y appears in SB(lo, hi)");
    add_tree_options(member, c, true);
    member->add_option("x", c.target, "target fraction p/q")->required();
    member->add_option("--format", c.format)->check(text_formats)->capture_default_str();

    auto* loc = app.add_subcommand("locate", "find x/y in the tree or certify that it never appears");
    add_tree_options(loc, c, true);
    add_scheme_option(loc, c);
    loc->add_option("x", c.target, "target fraction p/q")->required();
    loc->add_option("--max-depth", c.max_depth)->check(CLI::Range(std::size_t{0}, kMaxLocateDepth))
        ->capture_default_str();
    loc->add_option("--format", c.format)->check(text_formats)->capture_default_str();

    auto* describe = app.add_subcommand("describe", "explicit characterization of the members of SB(lo, hi)");
    add_tree_options(describe, c, true);
    describe->add_option("--format", c.format)->check(text_formats)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the lemma checks on the reference trees and random starts");
    add_tree_options(verify, c, false);
    add_scheme_option(verify, c);
    verify->add_option("--k", c.k)->check(CLI::Range(2, 1000))->capture_default_str();
    verify->add_option("--suite", c.suite,
                       "all | lemmas | parity | 2adic | divisor | one-third | membership | uniqueness | neighbor | "
                       "unavoidable")
        ->capture_default_str();
    verify->add_option("--depth", c.verify_depth)->check(CLI::Range(std::size_t{0}, kBufferedDepthCap))
        ->capture_default_str();
    verify->add_option("--denominator-bound", c.denominator_bound)->capture_default_str();
    verify->add_option("--samples", c.samples, "random starts for the unavoidable-reduction check")
        ->capture_default_str();
    verify->add_option("--random-starts", c.random_starts, "random trees added to the reference ones")
        ->capture_default_str();
    verify->add_option("--seed", c.seed)->capture_default_str();
    verify->add_option("--format", c.format)->check(text_formats)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();  // program name
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

#ifdef _OPENMP
    if (c.threads > 0) {
        omp_set_num_threads(c.threads);
    }
#endif

    try {
        if (*generate) {
            return cmd_generate(c, out);
        }
        if (*member) {
            return cmd_member(c, out);
        }
        if (*loc) {
            return cmd_locate(c, out);
        }
        if (*describe) {
            return cmd_describe(c, out);
        }
        return cmd_verify(c, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace wmsb
