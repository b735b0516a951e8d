#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hra/hra.hpp"

using namespace hra;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("hra_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write_file(const fs::path& p, const std::string& body) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << body;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no hra::Error thrown");
    return ErrorKind::IoError;
}

std::string fixture(const char* name) { return std::string(HRA_DEFAULT_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("statistics of small run lists", "[statistics]") {
    const auto s = compute_statistics(std::vector<double>{1, 2, 3});
    CHECK(s == RunSummary{1, 3, 2, 2, 1});
    CHECK(compute_statistics(std::vector<double>{5}) == RunSummary{5, 5, 5, 5, 0});
    CHECK(compute_statistics(std::vector<double>{5}, StdConvention::Population).std_dev == 0.0);
    CHECK(compute_statistics(std::vector<double>{4, 1, 3, 2}).median == 2.5);
    CHECK(compute_statistics(std::vector<double>{1, 3}, StdConvention::Population).std_dev == 1.0);
    CHECK(compute_statistics(std::vector<double>{1, 3}).std_dev == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(kind_of([] { compute_statistics(std::vector<double>{}); }) == ErrorKind::EmptyRuns);
    CHECK(kind_of([] { compute_statistics(std::vector<double>{1, NAN}); }) == ErrorKind::NonFiniteValue);
}

TEST_CASE("statistics agree with a direct computation", "[statistics][property]") {
    std::mt19937_64 rng(51);
    std::lognormal_distribution<double> dist(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> runs(51);
        for (auto& x : runs) x = dist(rng);
        auto sorted = runs;
        std::sort(sorted.begin(), sorted.end());
        long double sum = 0;
        for (double x : runs) sum += x;
        const double mean = static_cast<double>(sum / runs.size());
        long double sq = 0;
        for (double x : runs) sq += (x - mean) * (x - mean);
        const auto s = compute_statistics(runs);
        CHECK(s.best == sorted.front());
        CHECK(s.worst == sorted.back());
        CHECK(s.median == sorted[25]);
        CHECK(s.mean == Catch::Approx(mean).epsilon(1e-13));
        CHECK(s.std_dev == Catch::Approx(std::sqrt(static_cast<double>(sq / 50))).epsilon(1e-12));
        CHECK(s.best <= s.median);
        CHECK(s.median <= s.worst);
        CHECK(s.best <= s.mean);
        CHECK(s.mean <= s.worst);
        CHECK(s.std_dev >= 0.0);
        // order of runs does not matter for order statistics
        std::shuffle(runs.begin(), runs.end(), rng);
        const auto t = compute_statistics(runs);
        CHECK(t.best == s.best);
        CHECK(t.median == s.median);
        CHECK(t.worst == s.worst);
        CHECK(t.mean == Catch::Approx(s.mean).epsilon(1e-14));
    }
}

TEST_CASE("summarize_runs builds a complete dataset", "[statistics]") {
    RawRuns runs;
    runs[{30, "b", "f10"}] = {1, 2, 3};
    runs[{30, "b", "f2"}] = {4};
    runs[{10, "a", "f2"}] = {0, 0};
    const auto data = summarize_runs(runs);
    CHECK(data.dimensions() == std::vector<int>{10, 30});
    CHECK(data.functions() == std::vector<std::string>{"f2", "f10"});
    CHECK(data.at({30, "mean", "b", "f10"}) == 2.0);
    CHECK(data.at({30, "std", "b", "f2"}) == 0.0);
    CHECK(data.size() == 15);
    CHECK(statistic_ordering_violations(data).empty());
}

TEST_CASE("natural ordering of labels", "[statistics]") {
    CHECK(natural_less("f2", "f10"));
    CHECK_FALSE(natural_less("f10", "f2"));
    CHECK(natural_less("alpha", "beta"));
}

TEST_CASE("long CSV round-trips bit for bit", "[csv]") {
    const auto data = load_long_csv(std::string(HRA_TEST_DATA) + "/synthetic_long.csv");
    CHECK(data.size() == 300);
    CHECK(data.is_complete());
    std::ostringstream first;
    write_long_csv(first, data);
    std::istringstream back(first.str());
    const auto again = parse_long_csv(back);
    CHECK(again == data);
    std::ostringstream second;
    write_long_csv(second, again);
    CHECK(second.str() == first.str());

    // awkward values survive the text form exactly
    PerformanceDataset tricky;
    const std::vector<double> values{0.1, 1e-300, 5e-324, 1.7976931348623157e308, 123456789.123456789, 0.0};
    for (std::size_t i = 0; i < values.size(); ++i) tricky.set({10, "mean", "a" + std::to_string(i), "f1"}, values[i]);
    std::ostringstream out;
    write_long_csv(out, tricky);
    std::istringstream in(out.str());
    const auto parsed = parse_long_csv(in);
    for (std::size_t i = 0; i < values.size(); ++i) CHECK(parsed.at({10, "mean", "a" + std::to_string(i), "f1"}) == values[i]);
}

TEST_CASE("long CSV reports malformed input with its location", "[csv][errors]") {
    auto parse = [](const std::string& body) {
        std::istringstream in(body);
        return parse_long_csv(in, "input.csv");
    };
    const std::string header = "dimension,measure,function,algorithm,value\n";
    CHECK(kind_of([&] { parse(""); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { parse("dim,measure\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { parse(header + "10,mean,f1,a,1\n10,mean,f1,a,2\n"); }) == ErrorKind::DuplicateTuple);
    CHECK(kind_of([&] { parse(header + "10,mean,f1,a,nan\n"); }) == ErrorKind::NonFiniteValue);
    CHECK(kind_of([&] { parse(header + "10,mean,f1,a,inf\n"); }) == ErrorKind::NonFiniteValue);
    CHECK(kind_of([&] { parse(header + "10,mean,f1,a,1e999\n"); }) == ErrorKind::NonFiniteValue);
    CHECK(kind_of([&] { parse(header + "10,mean,f1,a,abc\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { parse(header + "10,mode,f1,a,1\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { parse(header + "ten,mean,f1,a,1\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { parse(header + "10,mean,f1,1\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { parse(header + "10,mean,,a,1\n"); }) == ErrorKind::ParseError);
    try {
        parse(header + "# note\n10,mean,f1,a,1\n10,mean,f1,b,x\n");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("input.csv:4") != std::string::npos);
    }
    // comments, blank lines, a BOM and CRLF are all tolerated
    const auto ok = parse("\xEF\xBB\xBF# provenance\r\n" + header + "\r\n10,mean,f1,a,1.5\r\n");
    CHECK(ok.at({10, "mean", "a", "f1"}) == 1.5);
}

TEST_CASE("rank matrix CSV loads the published tables", "[csv]") {
    const auto final_table = load_rank_matrix_csv(fixture("table5_final.csv"));
    CHECK(final_table.alternatives_count() == 13);
    CHECK(final_table.criteria() == std::vector<std::string>{"Dim10", "Dim30", "Dim50", "Dim100"});
    CHECK(final_table.alternatives().front() == "jSO");
    const auto jso = final_table.values().row(0);
    CHECK(std::vector<double>(jso.begin(), jso.end()) == std::vector<double>{3, 2, 2, 5});

    const auto dim30 = load_rank_matrix_csv(fixture("table2_dim30.csv"));
    const auto ebo = dim30.values().row(12);
    CHECK(dim30.alternatives()[12] == "EBOwithCMAR");
    CHECK(std::vector<double>(ebo.begin(), ebo.end()) == std::vector<double>{1, 1, 1, 1, 3});

    std::ostringstream out;
    write_rank_matrix_csv(out, final_table);
    std::istringstream in(out.str());
    CHECK(parse_rank_matrix_csv(in).values() == final_table.values());

    std::istringstream one("algorithm,c\nonly,1\n");
    const auto single = parse_rank_matrix_csv(one);
    CHECK(single.values() == Matrix(1, 1, 1.0));
}

TEST_CASE("rank matrix CSV errors", "[csv][errors]") {
    auto parse = [](const std::string& body) {
        std::istringstream in(body);
        return parse_rank_matrix_csv(in);
    };
    CHECK(kind_of([&] { parse(""); }) == ErrorKind::EmptyMatrix);
    CHECK(kind_of([&] { parse("algorithm\n"); }) == ErrorKind::EmptyMatrix);
    CHECK(kind_of([&] { parse("algorithm,c\n"); }) == ErrorKind::EmptyMatrix);
    CHECK(kind_of([&] { parse("algorithm,c\na,1,2\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { parse("algorithm,c\na,1\na,2\n"); }) == ErrorKind::DuplicateLabel);
    CHECK(kind_of([] { load_rank_matrix_csv("/nonexistent/table.csv"); }) == ErrorKind::IoError);
}

TEST_CASE("result file names", "[raw]") {
    const auto a = parse_run_file_name("LSHADE_SPACMA_12_30.txt");
    REQUIRE(a);
    CHECK(a->algorithm == "LSHADE_SPACMA");
    CHECK(a->function == "f12");
    CHECK(a->dimension == 30);
    const auto b = parse_run_file_name("jSO_F3_10.txt");
    REQUIRE(b);
    CHECK(b->algorithm == "jSO");
    CHECK(b->function == "f3");
    CHECK_FALSE(parse_run_file_name("jSO_10.txt"));
    CHECK_FALSE(parse_run_file_name("jSO_F3_10.dat"));
    CHECK_FALSE(parse_run_file_name("jSO_Fx_10.txt"));
    CHECK_FALSE(parse_run_file_name("_3_10.txt"));
}

TEST_CASE("result file layouts", "[raw]") {
    auto values = [](const std::string& body) {
        std::istringstream in(body);
        return parse_run_values(in, "runs.txt");
    };
    CHECK(values("1\n2\n3\n") == std::vector<double>{1, 2, 3});
    CHECK(values("1 2 3\n") == std::vector<double>{1, 2, 3});
    CHECK(values("1,2,3\n") == std::vector<double>{1, 2, 3});
    CHECK(values("9 9 9\n5 6 7\n1e-8 0 3\n") == std::vector<double>{1e-8, 0, 3});
    CHECK(kind_of([&] { values(""); }) == ErrorKind::EmptyRuns);
    CHECK(kind_of([&] { values("1 2\n3\n"); }) == ErrorKind::UnknownLayout);
    CHECK(kind_of([&] { values("1 two\n"); }) == ErrorKind::UnknownLayout);
    CHECK(kind_of([&] { values("1\n-2\n"); }) == ErrorKind::DomainViolation);
}

TEST_CASE("loading a directory of result files", "[raw]") {
    TempDir dir;
    write_file(dir.path / "toy_1_10.txt", "1\n2\n3\n");
    write_file(dir.path / "sub" / "toy_2_10.txt", "4 5 6\n");
    write_file(dir.path / "README.md", "ignored");
    const auto runs = load_raw_runs(dir.path);
    REQUIRE(runs.size() == 2);
    const auto data = summarize_runs(runs);
    CHECK(data.at({10, "best", "toy", "f1"}) == 1.0);
    CHECK(data.at({10, "worst", "toy", "f1"}) == 3.0);
    CHECK(data.at({10, "median", "toy", "f1"}) == 2.0);
    CHECK(data.at({10, "mean", "toy", "f1"}) == 2.0);
    CHECK(data.at({10, "std", "toy", "f1"}) == 1.0);

    write_file(dir.path / "toy_F1_10.txt", "1\n");
    CHECK(kind_of([&] { load_raw_runs(dir.path); }) == ErrorKind::DuplicateTuple);
    fs::remove(dir.path / "toy_F1_10.txt");
    write_file(dir.path / "notes.txt", "1\n");
    CHECK(kind_of([&] { load_raw_runs(dir.path); }) == ErrorKind::UnknownLayout);

    TempDir empty;
    CHECK(kind_of([&] { load_raw_runs(empty.path); }) == ErrorKind::EmptyRuns);
    CHECK(kind_of([&] { load_raw_runs(empty.path / "missing"); }) == ErrorKind::IoError);
}

TEST_CASE("report tables round-trip through markdown", "[report]") {
    const auto final_table = load_rank_matrix_csv(fixture("table5_final.csv"));
    PerformanceDataset data;
    // one function per dimension whose values are the published ranks
    for (std::size_t i = 0; i < final_table.alternatives_count(); ++i) {
        for (std::size_t j = 0; j < final_table.criteria_count(); ++j) {
            const int dim = std::stoi(final_table.criteria()[j].substr(3));
            data.set({dim, "mean", final_table.alternatives()[i], "f1"}, final_table.values()(i, j));
        }
    }
    // a single valid rank column passes through the lower levels unchanged
    const auto report = run_hra(data, HraConfig::defaults_for(data));
    const auto tables = report_tables(report);
    REQUIRE(tables.size() == 1 + 4 + 2);
    CHECK(tables.back().name == "final_ranking");
    for (const auto& t : tables) {
        std::istringstream md(render(t, ReportFormat::Markdown));
        CHECK(parse_markdown_table(md, t.name) == t);
    }
    const auto& ranking = tables.back();
    const auto ebo = std::find_if(ranking.rows.begin(), ranking.rows.end(),
                                  [](const auto& r) { return r.front() == "EBOwithCMAR"; });
    REQUIRE(ebo != ranking.rows.end());
    CHECK(std::abs(std::stod((*ebo)[1]) - 0.8497) <= 5e-5);
    CHECK((*ebo)[2] == "1");

    const auto text = format_ranking(report.algorithms, report.final_scores, report.final_ranks);
    CHECK(text.find("EBOwithCMAR     0.8497  1") != std::string::npos);

    TempDir dir;
    const auto written = emit_report(report, ReportFormat::Csv, dir.path / "out");
    CHECK(written.size() == tables.size());
    for (const auto& p : written) CHECK(fs::is_regular_file(p));
}
