#ifndef HRA_TOOLS_HRA_CLI_HPP
#define HRA_TOOLS_HRA_CLI_HPP

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hra/csv.hpp"
#include "hra/fetch.hpp"
#include "hra/hierarchy.hpp"
#include "hra/raw_runs.hpp"
#include "hra/report.hpp"
#include "hra/reproduction.hpp"
#include "hra/rtopsis.hpp"
#include "hra/statistics.hpp"

#ifndef HRA_DEFAULT_FIXTURE_DIR
#define HRA_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace hra::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kValidation = 3, kIo = 4 };

inline int exit_code_for(ErrorCategory category) {
    switch (category) {
    case ErrorCategory::Parse: return kParse;
    case ErrorCategory::Validation: return kValidation;
    case ErrorCategory::Io: return kIo;
    }
    return kValidation;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// `equal` or comma-separated literals. Literal vectors are checked for
/// positivity and unit sum immediately; the length check needs `expected`.
inline Weights parse_weights(const std::string& text, std::optional<std::size_t> expected, const std::string& flag) {
    try {
        if (text == "equal") {
            return Weights::equal(expected.value_or(1));
        }
        std::vector<double> values;
        std::size_t column = 0;
        for (const auto& field : csv::split(text)) {
            values.push_back(csv::parse_number(field, flag, 1, ++column));
        }
        Weights w(std::move(values));
        if (expected && w.size() != *expected) {
            throw Error(ErrorKind::InvalidWeights,
                        "got " + std::to_string(w.size()) + " weights, expected " + std::to_string(*expected));
        }
        return w;
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidWeights, flag + " '" + text + "': " + e.what());
    }
}

inline Domain parse_domain(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError("--domain expects <lo:hi>, got '" + text + "'");
    }
    try {
        return {csv::parse_number(text.substr(0, colon), "--domain", 1, 1),
                csv::parse_number(text.substr(colon + 1), "--domain", 1, 2)};
    } catch (const Error&) {
        throw UsageError("--domain expects two numbers <lo:hi>, got '" + text + "'");
    }
}

inline void dump_trace(std::ostream& out, const std::string& node, const std::vector<std::string>& labels,
                       const TopsisResult& r) {
    out << "trace " << node << '\n';
    out << "  PIS:";
    for (double v : r.trace.ideals.positive) out << ' ' << format_number(v);
    out << "\n  NIS:";
    for (double v : r.trace.ideals.negative) out << ' ' << format_number(v);
    out << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << "  " << labels[i] << " n:";
        for (double v : r.trace.normalized.row(i)) out << ' ' << format_number(v);
        out << " r:";
        for (double v : r.trace.weighted.row(i)) out << ' ' << format_number(v);
        out << " S+=" << format_number(r.trace.separations.plus[i]) << " S-="
            << format_number(r.trace.separations.minus[i]) << " CC=" << format_number(r.closeness[i])
            << " rank=" << format_number(r.ranks[i]) << '\n';
    }
}

inline std::filesystem::path fixture_dir() {
    if (const char* env = std::getenv("HRA_FIXTURES"); env != nullptr && *env != '\0') {
        return env;
    }
    return HRA_DEFAULT_FIXTURE_DIR;
}

struct Options {
    std::string data;
    std::string matrix;
    std::string weights = "equal";
    std::string measure_weights = "equal";
    std::string dimension_weights = "equal";
    std::string direction = "cost";
    std::vector<std::string> measure_directions;
    std::string domain;
    std::string out;
    std::string format = "csv";
    std::string source;
    double tolerance = 5e-4;
    std::size_t workers = 4;
    bool std_population = false;
    bool verbose = false;
};

inline int cmd_run(const Options& o, std::ostream& out) {
    // literal vectors are checked before any file is touched
    for (const auto& [text, flag] : {std::pair{o.weights, "--weights"}, std::pair{o.measure_weights, "--measure-weights"},
                                     std::pair{o.dimension_weights, "--dimension-weights"}}) {
        if (text != "equal") parse_weights(text, std::nullopt, flag);
    }
    std::map<std::string, Objective> directions;
    for (const auto& entry : o.measure_directions) {
        const auto eq = entry.find('=');
        const auto value = eq == std::string::npos ? std::string() : entry.substr(eq + 1);
        if (eq == std::string::npos || (value != "minimize" && value != "maximize")) {
            throw UsageError("--direction for run expects <measure>=<minimize|maximize>, got '" + entry + "'");
        }
        directions[entry.substr(0, eq)] = value == "minimize" ? Objective::Minimize : Objective::Maximize;
    }

    const auto data = load_long_csv(o.data);
    HraConfig config = HraConfig::defaults_for(data);
    config.directions = directions;
    config.function_weights = parse_weights(o.weights, data.functions().size(), "--weights");
    config.measure_weights = parse_weights(o.measure_weights, config.measures.size(), "--measure-weights");
    config.dimension_weights = parse_weights(o.dimension_weights, config.dimensions.size(), "--dimension-weights");

    const auto report = run_hra(data, config);
    if (!o.out.empty()) {
        emit_report(report, o.format == "markdown" ? ReportFormat::Markdown : ReportFormat::Csv, o.out);
    }
    out << format_ranking(report.algorithms, report.final_scores, report.final_ranks);
    if (o.verbose) {
        for (const auto& e : report.evaluations) dump_trace(out, e.node, report.algorithms, e.result);
    }
    return kOk;
}

inline int cmd_rtopsis(const Options& o, std::ostream& out) {
    if (o.weights != "equal") parse_weights(o.weights, std::nullopt, "--weights");
    const auto matrix = load_rank_matrix_csv(o.matrix);
    const auto weights = parse_weights(o.weights, matrix.criteria_count(), "--weights");
    const Domain domain = o.domain.empty()
                              ? Domain{0.0, static_cast<double>(matrix.alternatives_count()) + 1.0}
                              : parse_domain(o.domain);
    const Direction direction = o.direction == "benefit" ? Direction::Benefit : Direction::Cost;
    const auto result = rtopsis(matrix, CriteriaSpec::uniform(direction, domain, weights));
    out << format_ranking(matrix.alternatives(), result.closeness, result.ranks, "rank");
    if (o.verbose) dump_trace(out, "rtopsis", matrix.alternatives(), result);
    return kOk;
}

inline int cmd_verify_paper(const Options& o, std::ostream& out) {
    if (!(o.tolerance >= 0.0)) {
        throw UsageError("--tolerance must be non-negative");
    }
    const auto checks = verify_published_tables(fixture_dir(), o.tolerance);
    std::size_t passed = 0;
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        passed += c.passed ? 1 : 0;
    }
    out << passed << "/" << checks.size() << " checks " << (passed == checks.size() ? "PASS" : "FAIL") << '\n';
    return passed == checks.size() ? kOk : kValidation;
}

inline int cmd_stats(const Options& o, std::ostream& out) {
    const auto runs = load_raw_runs(o.data);
    const auto data =
        summarize_runs(runs, o.std_population ? StdConvention::Population : StdConvention::Sample);
    if (o.out.empty()) {
        write_long_csv(out, data);
    } else {
        save_long_csv(data, o.out);
        out << "wrote " << data.size() << " rows to " << o.out << '\n';
    }
    return kOk;
}

inline int cmd_fetch(const Options& o, std::ostream& out) {
    FetchOptions options;
    options.workers = o.workers;
    const auto result = fetch_raw(o.source, o.out, options);
    out << "downloaded " << result.downloaded << ", already verified " << result.skipped << ", manifest "
        << (std::filesystem::path(o.out) / std::string(kManifestName)).string() << '\n';
    return kOk;
}

/// Full command line entry point. Exit codes: 0 ok, 1 usage, 2 parse,
/// 3 validation, 4 I/O. Failures print one line to `err`.
inline int main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchical rank aggregation of optimisation algorithms", "hra"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "Run the full aggregation tree over a long-format dataset");
    run->add_option("--data", o.data, "Long CSV: dimension,measure,function,algorithm,value")->required();
    run->add_option("--weights", o.weights, "Function weights: equal or w1,w2,...");
    run->add_option("--measure-weights", o.measure_weights, "Measure weights: equal or w1,w2,...");
    run->add_option("--dimension-weights", o.dimension_weights, "Dimension weights: equal or w1,w2,...");
    run->add_option("--direction", o.measure_directions, "Per-measure ranking direction, <measure>=<minimize|maximize>");
    run->add_option("--out", o.out, "Report directory");
    run->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "markdown"}));
    run->add_flag("--verbose", o.verbose, "Dump every R-TOPSIS trace");

    auto* rt = app.add_subcommand("rtopsis", "Score a single decision matrix");
    rt->add_option("--matrix", o.matrix, "CSV: algorithm,<criterion>,...")->required();
    rt->add_option("--weights", o.weights, "Criterion weights: equal or w1,w2,...");
    rt->add_option("--direction", o.direction, "Criterion direction")->check(CLI::IsMember({"cost", "benefit"}));
    rt->add_option("--domain", o.domain, "Domain lo:hi for every criterion (default 0:m+1)");
    rt->add_flag("--verbose", o.verbose, "Dump the R-TOPSIS trace");

    auto* verify = app.add_subcommand("verify-paper", "Recompute the published CEC 2017 tables from the bundled fixtures");
    verify->add_option("--tolerance", o.tolerance, "Allowed absolute score deviation (published scores have 4 decimals)");

    auto* stats = app.add_subcommand("stats", "Summarise raw run files into a long CSV");
    stats->add_option("--data", o.data, "Directory of <algorithm>_<function>_<dimension>.txt files")->required();
    stats->add_option("--out", o.out, "Output CSV (default: stdout)");
    stats->add_flag("--std-population", o.std_population, "Use the population standard deviation (divide by R)");

    auto* fetch = app.add_subcommand("fetch", "Download result files listed in an inventory and record checksums");
    fetch->add_option("--source", o.source, "URL of the inventory file")->required();
    fetch->add_option("--out", o.out, "Destination directory")->required();
    fetch->add_option("--workers", o.workers, "Parallel downloads")->check(CLI::Range(1, 64));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "hra: usage: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (run->parsed()) return cmd_run(o, out);
        if (rt->parsed()) return cmd_rtopsis(o, out);
        if (verify->parsed()) return cmd_verify_paper(o, out);
        if (stats->parsed()) return cmd_stats(o, out);
        if (fetch->parsed()) return cmd_fetch(o, out);
    } catch (const UsageError& e) {
        err << "hra: usage: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "hra: " << e.what() << '\n';
        return exit_code_for(e.category());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "hra: IoError: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}

}  // namespace hra::cli

#endif  // HRA_TOOLS_HRA_CLI_HPP
