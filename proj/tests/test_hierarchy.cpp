#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hra/csv.hpp"
#include "hra/hierarchy.hpp"
#include "hra/report.hpp"

using namespace hra;

namespace {

std::string fixture(const char* name) { return std::string(HRA_DEFAULT_FIXTURE_DIR) + "/" + name; }

std::vector<std::vector<double>> columns_of(const DecisionMatrix& m) {
    std::vector<std::vector<double>> out;
    for (std::size_t j = 0; j < m.criteria_count(); ++j) out.push_back(m.values().column(j));
    return out;
}

std::vector<double> column_named(const DecisionMatrix& m, const std::string& name) {
    const auto& c = m.criteria();
    return m.values().column(static_cast<std::size_t>(std::find(c.begin(), c.end(), name) - c.begin()));
}

PerformanceDataset random_dataset(std::mt19937_64& rng, std::size_t m, std::size_t n, const std::vector<int>& dims) {
    std::uniform_real_distribution<double> u(0.0, 1e4);
    PerformanceDataset data;
    for (int d : dims) {
        for (auto p : kStandardMeasures) {
            for (std::size_t a = 0; a < m; ++a) {
                for (std::size_t f = 0; f < n; ++f) {
                    data.set({d, std::string(p), "alg" + std::to_string(a), "f" + std::to_string(f + 1)}, u(rng));
                }
            }
        }
    }
    return data;
}

}  // namespace

TEST_CASE("a row ranked first everywhere wins every level", "[hierarchy]") {
    PerformanceDataset data;
    const std::vector<std::string> algs{"a", "b", "c", "d"};
    for (int d : {10, 30}) {
        for (auto p : kStandardMeasures) {
            for (int f = 1; f <= 3; ++f) {
                for (std::size_t i = 0; i < algs.size(); ++i) {
                    // "a" is always smallest, the others rotate
                    const double v = i == 0 ? 0.0 : 1.0 + static_cast<double>((i + f + d) % 3);
                    data.set({d, std::string(p), algs[i], "f" + std::to_string(f)}, v);
                }
            }
        }
    }
    const auto report = run_hra(data, HraConfig::defaults_for(data));
    for (const auto& [key, ranks] : report.leaf_ranks) CHECK(ranks[0] == 1.0);
    for (const auto& [d, ranks] : report.dimension_ranks) CHECK(ranks[0] == 1.0);
    CHECK(report.final_ranks[0] == 1.0);
}

TEST_CASE("tied rows stay tied through the tree", "[hierarchy]") {
    PerformanceDataset data;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    for (auto p : kStandardMeasures) {
        for (int f = 1; f <= 4; ++f) {
            const double shared = u(rng);
            data.set({10, std::string(p), "twin1", "f" + std::to_string(f)}, shared);
            data.set({10, std::string(p), "twin2", "f" + std::to_string(f)}, shared);
            data.set({10, std::string(p), "other", "f" + std::to_string(f)}, u(rng));
        }
    }
    const auto report = run_hra(data, HraConfig::defaults_for(data));
    CHECK(report.final_scores[0] == report.final_scores[1]);
    CHECK(report.final_ranks[0] == report.final_ranks[1]);
}

TEST_CASE("per-dimension tables reproduce the published final matrix", "[hierarchy][published]") {
    const auto final_table = load_rank_matrix_csv(fixture("table5_final.csv"));
    for (const auto& [file, column] : {std::pair{"table2_dim30.csv", "Dim30"}, std::pair{"table3_dim50.csv", "Dim50"},
                                       std::pair{"table4_dim100.csv", "Dim100"}}) {
        INFO(file);
        const auto table = load_rank_matrix_csv(fixture(file));
        REQUIRE(table.alternatives() == final_table.alternatives());
        const auto cols = columns_of(table);
        const auto agg = aggregate_dimension(cols, Weights::equal(cols.size()));
        CHECK(agg.result.ranks == column_named(final_table, column));
        CHECK(agg.matrix == table.values());
    }
}

TEST_CASE("the dimension-10 table reproduces its column up to the known duplicate", "[hierarchy][published]") {
    const auto final_table = load_rank_matrix_csv(fixture("table5_final.csv"));
    const auto table = load_rank_matrix_csv(fixture("table1_dim10.csv"));
    const auto cols = columns_of(table);
    const auto ranks = aggregate_dimension(cols, Weights::equal(cols.size())).result.ranks;
    const auto expected = column_named(final_table, "Dim10");
    // its mean column lists rank 3 twice, so it is not a valid rank vector
    CHECK_THROWS_AS(RankMatrix(table), Error);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        const auto& label = table.alternatives()[i];
        if (label == "jSO" || label == "EBOwithCMAR") continue;
        INFO(label);
        CHECK(ranks[i] == expected[i]);
    }
}

TEST_CASE("degenerate tree shapes", "[hierarchy]") {
    std::mt19937_64 rng(99);
    SECTION("a single measure") {
        const auto data = random_dataset(rng, 5, 4, {10, 30});
        HraConfig config = HraConfig::defaults_for(data);
        config.measures = {"mean"};
        const auto report = run_hra(data, config);
        CHECK(report.invocation_count == 1 + 2 + 2);
        CHECK(report.dimension_matrices.at(10).cols() == 1);
    }
    SECTION("a single dimension") {
        const auto data = random_dataset(rng, 5, 4, {50});
        const auto report = run_hra(data, HraConfig::defaults_for(data));
        CHECK(report.invocation_count == 1 + 1 + 5);
        // one column on (0, m+1) is a monotone map of its ranks
        CHECK(report.final_ranks == report.dimension_ranks.at(50));
    }
    SECTION("two algorithms, two functions") {
        PerformanceDataset data;
        data.set({10, "mean", "x", "f1"}, 1.0);
        data.set({10, "mean", "x", "f2"}, 1.0);
        data.set({10, "mean", "y", "f1"}, 2.0);
        data.set({10, "mean", "y", "f2"}, 2.0);
        const auto report = run_hra(data, HraConfig::defaults_for(data));
        const auto& leaf = report.leaf_scores.at({10, "mean"});
        CHECK(leaf[0] == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(leaf[1] == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(report.final_ranks == std::vector<double>{1, 2});
    }
    SECTION("identical algorithms share the midpoint") {
        PerformanceDataset data;
        for (auto p : kStandardMeasures) {
            for (const char* a : {"p", "q", "r"}) {
                for (const char* f : {"f1", "f2"}) data.set({10, std::string(p), a, f}, 5.0);
            }
        }
        const auto report = run_hra(data, HraConfig::defaults_for(data));
        CHECK(report.final_ranks == std::vector<double>{2, 2, 2});
        for (double s : report.final_scores) CHECK(s == Catch::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("synthetic dataset matches the brute-force oracle", "[hierarchy][oracle]") {
    const auto data = load_long_csv(std::string(HRA_TEST_DATA) + "/synthetic_long.csv");
    const auto report = run_hra(data, HraConfig::defaults_for(data));
    auto in = csv::open_input(std::string(HRA_TEST_DATA) + "/synthetic_expected.csv");
    const auto rows = csv::read_rows(in);
    REQUIRE(rows.size() == 66);
    const auto& algs = report.algorithms;
    std::size_t checked = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r].fields;
        const auto i = static_cast<std::size_t>(std::find(algs.begin(), algs.end(), f[3]) - algs.begin());
        REQUIRE(i < algs.size());
        const double score = std::stod(f[4]);
        const double rank = std::stod(f[5]);
        double got_score = 0;
        double got_rank = 0;
        if (f[0] == "leaf") {
            const LeafKey key{std::stoi(f[1]), f[2]};
            got_score = report.leaf_scores.at(key)[i];
            got_rank = report.leaf_ranks.at(key)[i];
        } else if (f[0] == "dimension") {
            got_score = report.dimension_scores.at(std::stoi(f[1]))[i];
            got_rank = report.dimension_ranks.at(std::stoi(f[1]))[i];
        } else {
            got_score = report.final_scores[i];
            got_rank = report.final_ranks[i];
        }
        INFO("line " << rows[r].line);
        CHECK(std::abs(got_score - score) <= 1e-12);
        CHECK(got_rank == rank);
        ++checked;
    }
    CHECK(checked == 65);
}

TEST_CASE("the tree performs 1 + k + lk evaluations", "[hierarchy]") {
    std::mt19937_64 rng(2017);
    const auto data = random_dataset(rng, 13, 30, {10, 30, 50, 100});
    const auto report = run_hra(data, HraConfig::defaults_for(data));
    CHECK(report.invocation_count == 25);
    REQUIRE(report.evaluations.size() == 25);
    CHECK(report.evaluations.front().node == "leaf dimension=10 measure=best");
    CHECK(report.evaluations[20].node == "dimension=10");
    CHECK(report.evaluations.back().node == "overall");
    CHECK(report.final_matrix.rows() == 13);
    CHECK(report.final_matrix.cols() == 4);
}

TEST_CASE("parallel and sequential runs agree bit for bit", "[hierarchy]") {
    std::mt19937_64 rng(5);
    const auto data = random_dataset(rng, 9, 12, {10, 30, 50});
    auto config = HraConfig::defaults_for(data);
    const auto a = run_hra(data, config);
    config.parallel = false;
    const auto b = run_hra(data, config);
    CHECK(a.final_scores == b.final_scores);
    CHECK(a.leaf_scores == b.leaf_scores);
    CHECK(a.dimension_scores == b.dimension_scores);
    const auto ta = report_tables(a);
    const auto tb = report_tables(b);
    REQUIRE(ta.size() == tb.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
        CHECK(render(ta[i], ReportFormat::Csv) == render(tb[i], ReportFormat::Csv));
    }
}

TEST_CASE("relabelling algorithms permutes the result", "[hierarchy]") {
    std::mt19937_64 rng(8);
    const auto data = random_dataset(rng, 6, 5, {10, 30});
    // same values under reversed insertion order of algorithms
    PerformanceDataset reversed;
    const auto& algs = data.algorithms();
    for (auto it = algs.rbegin(); it != algs.rend(); ++it) {
        for (const auto& [key, value] : data.cells()) {
            if (key.algorithm == *it) reversed.set(key, value);
        }
    }
    const auto a = run_hra(data, HraConfig::defaults_for(data));
    const auto b = run_hra(reversed, HraConfig::defaults_for(reversed));
    REQUIRE(b.algorithms.size() == a.algorithms.size());
    const std::size_t m = a.algorithms.size();
    for (std::size_t i = 0; i < m; ++i) {
        CHECK(b.algorithms[m - 1 - i] == a.algorithms[i]);
        CHECK(b.final_scores[m - 1 - i] == a.final_scores[i]);
        CHECK(b.final_ranks[m - 1 - i] == a.final_ranks[i]);
    }
}

TEST_CASE("reordering functions only changes summation order", "[hierarchy]") {
    std::mt19937_64 rng(13);
    const auto data = random_dataset(rng, 7, 6, {10});
    PerformanceDataset shuffled;
    std::vector<std::string> functions = data.functions();
    std::shuffle(functions.begin(), functions.end(), rng);
    for (const auto& f : functions) {
        for (const auto& [key, value] : data.cells()) {
            if (key.function == f) shuffled.set(key, value);
        }
    }
    const auto a = run_hra(data, HraConfig::defaults_for(data));
    const auto b = run_hra(shuffled, HraConfig::defaults_for(shuffled));
    for (std::size_t i = 0; i < a.final_scores.size(); ++i) {
        const auto j = static_cast<std::size_t>(
            std::find(b.algorithms.begin(), b.algorithms.end(), a.algorithms[i]) - b.algorithms.begin());
        CHECK(std::abs(a.final_scores[i] - b.final_scores[j]) <= 1e-12);
    }
}

TEST_CASE("configuration errors", "[hierarchy][errors]") {
    std::mt19937_64 rng(21);
    const auto data = random_dataset(rng, 4, 3, {10});
    auto config = HraConfig::defaults_for(data);
    config.measure_weights = Weights::equal(2);
    CHECK_THROWS_AS(run_hra(data, config), Error);
    config = HraConfig::defaults_for(data);
    config.dimensions = {10, 30};
    CHECK_THROWS_MATCHES(run_hra(data, config), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::MissingCell;
                         }));
    HraConfig bare;
    bare.dimensions = {10};
    bare.measures = {"mean"};
    CHECK_THROWS_AS(run_hra(PerformanceDataset{}, bare), Error);
}
