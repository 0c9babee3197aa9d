#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qarch/errors.hpp"
#include "qarch/pipeline.hpp"
#include "qarch/rng.hpp"
#include "qarch/simulate.hpp"
#include "qarch/stats.hpp"

using namespace qarch;

namespace {

PriceSeries parse(const std::string& text, const std::string& name = "t") {
    std::istringstream in(text);
    return load_prices(in, name);
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("qarch_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("minimal well-formed input") {
    const auto s = parse("2015-01-14,1.0203\n2015-01-15,0.8821\n");
    REQUIRE(s.size() == 2);
    CHECK(s.prices[0] == 1.0203);
    CHECK(s.prices[1] == 0.8821);
    CHECK(s.dates[0].to_string() == "2015-01-14");
    CHECK_FALSE(s.sorted_on_load);
}

TEST_CASE("header row is optional") {
    const auto s = parse("date,price\n2015-01-14,1.0203\n2015-01-15,0.8821\n");
    CHECK(s.size() == 2);
    const auto t = parse("Date,Close\n2015-01-14,1.0203\n2015-01-15,0.8821\n");
    CHECK(t.size() == 2);
}

TEST_CASE("bad rows are rejected with context") {
    CHECK_THROWS_WITH_AS(parse("2015-01-14,1.0\n2015-01-15,0\n2015-01-16,1.1\n"),
                         doctest::Contains("2015-01-15"), DataError);
    CHECK_THROWS_WITH_AS(parse("2015-01-14,1.0\n2015-01-15,-3\n"),
                         doctest::Contains("non-positive"), DataError);
    CHECK_THROWS_WITH_AS(parse("2015-01-14,1.0\nnot-a-date,2.0\n"),
                         doctest::Contains("line 2"), CsvParseError);
    CHECK_THROWS_WITH_AS(parse("2015-01-14,1.0\n2015-01-15,abc\n"),
                         doctest::Contains("line 2"), CsvParseError);
    CHECK_THROWS_WITH_AS(parse("2015-01-14,1.0\n2015-01-15\n"),
                         doctest::Contains("line 2"), CsvParseError);
    CHECK_THROWS_AS(parse("2015-02-30,1.0\n2015-03-01,1.0\n"), CsvParseError);
    // duplicates are data defects, not ordering problems
    CHECK_THROWS_WITH_AS(parse("2015-01-14,1.0\n2015-01-14,1.1\n"),
                         doctest::Contains("duplicate"), DataError);
}

TEST_CASE("unsorted input is sorted and flagged") {
    const auto s = parse("2015-01-16,1.2\n2015-01-14,1.0\n2015-01-15,1.1\n");
    CHECK(s.sorted_on_load);
    CHECK(s.dates[0].to_string() == "2015-01-14");
    CHECK(s.prices[0] == 1.0);
    CHECK(s.prices[2] == 1.2);
}

TEST_CASE("save then load is bit-exact") {
    ProcessSpec spec;
    spec.kernel = rma_weights(10);
    const auto path = simulate_linear_arch(spec, 10000 - 11, 17);
    REQUIRE(path.prices.size() == 10000);

    std::stringstream buf;
    save_prices(path.prices, buf);
    const auto loaded = load_prices(buf, path.prices.name);
    REQUIRE(loaded.size() == path.prices.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded.prices[i] == path.prices.prices[i]);
        CHECK(loaded.dates[i] == path.prices.dates[i]);
    }
}

TEST_CASE("analyze on a null path recovers the unit innovation variance") {
    AnalysisOptions opts;
    opts.kernel_spec = "lmarch";
    std::size_t good = 0;
    const std::size_t reps = 20, steps = 50000;
    ProcessSpec spec;
    spec.kernel = parse_kernel_spec(opts.kernel_spec);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto path = simulate_linear_arch(spec, steps, replica_seed(1177, rep));
        const auto report = analyze_series(path.prices, opts);
        CHECK(report.length == steps);
        const bool var_ok =
            std::fabs(report.variance - 1.0) <= 3.0 * std::sqrt(2.0 / static_cast<double>(steps));
        const bool p_ok = report.p_var[0] > 0.01;  // St 6 assumption
        if (var_ok && p_ok) ++good;
    }
    CHECK(good >= reps * 19 / 20);
}

TEST_CASE("analyze flags an inflated process as significant") {
    ProcessSpec spec;
    spec.kernel = parse_kernel_spec("ema:0.94:150");
    spec.gamma = 0.03;
    const auto path = simulate_path(spec, 12000, 2501);

    AnalysisOptions opts;
    opts.kernel_spec = "ema:0.94:150";
    const auto report = analyze_series(path.prices, opts);
    CHECK(std::fabs(report.variance - 1.0609) <= 0.05);
    CHECK(report.p_var[0] < 0.01);   // St 6
    CHECK(report.kernel_spec == "ema:0.94:150");
    CHECK(report.convention == "log");
    CHECK(report.horizon == 1);
    CHECK(report.start_date == path.returns.dates[151]);
}

TEST_CASE("one extreme innovation lifts the sample variance by its square over n") {
    // one 44.5-sized point among ~12k: the outlier alone adds ~0.16
    Rng rng(20150115);
    const std::size_t n = 12164;
    std::vector<double> eps(n);
    const auto st6 = InnovationDistribution::student(6);
    for (auto& e : eps) e = draw_innovation(st6, rng);
    const double before = moments(eps).var_hat;

    eps[n / 2] = 44.5;
    const double after = moments(eps).var_hat;
    const double lift = after - before;
    CHECK(std::fabs(lift - 44.5 * 44.5 / static_cast<double>(n)) <= 0.005);
    CHECK(lift >= 0.15);
    CHECK(lift <= 0.175);
}

TEST_CASE("analyze rejects series that cannot cover the warm-up") {
    PriceSeries tiny;
    tiny.name = "tiny";
    tiny.dates = business_day_series(Date{2020, 1, 1}, 50);
    tiny.prices.assign(50, 0.0);
    Rng rng(5);
    double p = 100.0;
    for (auto& v : tiny.prices) {
        p *= std::exp(0.01 * rng.normal());
        v = p;
    }
    AnalysisOptions opts;
    opts.kernel_spec = "rma:100";
    CHECK_THROWS_WITH_AS(analyze_series(tiny, opts), doctest::Contains("need at least"),
                         InsufficientDataError);
}

TEST_CASE("published stats reproduce reported p-values") {
    const auto st65 = std::vector<InnovationDistribution>{InnovationDistribution::student(6),
                                                          InnovationDistribution::student(5)};
    const auto dj = report_from_published({"DJIA", "1962-09-07", 14546, 0.035, 1.060}, st65);
    CHECK(dj.p_mean < 5e-4);
    CHECK(std::fabs(dj.p_var[0] - 0.001) <= 0.003);
    CHECK(std::fabs(dj.p_var[1] - 0.005) <= 0.003);
    CHECK(dj.length == 14546);
    CHECK(dj.start_date.to_string() == "1962-09-07");

    const auto cac = report_from_published({"CAC 40", "1990-03-15", 7630, 0.013, 1.049}, st65);
    CHECK(std::fabs(cac.p_mean - 0.248) <= 0.02);
    CHECK(std::fabs(cac.p_var[0] - 0.029) <= 0.003);
    CHECK(std::fabs(cac.p_var[1] - 0.066) <= 0.003);
}

TEST_CASE("published csv parsing") {
    std::istringstream in(
        "name,startDate,length,mean,variance\n"
        "CAC 40,1990-03-15,7630,0.013,1.049\n"
        "DJIA,1962-09-07,14546,0.035,1.060\n");
    const auto rows = load_published(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].name == "CAC 40");
    CHECK(rows[1].n == 14546);
    CHECK(rows[1].variance == 1.060);

    std::istringstream bad("CAC 40,1990-03-15,notanumber,0.013,1.049\n");
    CHECK_THROWS_AS(load_published(bad), CsvParseError);
}

TEST_CASE("batch report isolates per-series failures") {
    TempDir dir;
    ProcessSpec spec;
    spec.kernel = rma_weights(50);
    for (int i = 0; i < 3; ++i) {
        const auto path = simulate_linear_arch(spec, 2000, 100 + static_cast<std::uint64_t>(i));
        std::ofstream out(dir.file("s" + std::to_string(i) + ".csv"));
        save_prices(path.prices, out);
    }

    AnalysisOptions opts;
    opts.kernel_spec = "rma:50";
    std::vector<ManifestEntry> manifest{
        {"alpha", dir.file("s0.csv"), {}},
        {"beta", dir.file("s1.csv"), {}},
        {"gamma", dir.file("s2.csv"), {}},
    };
    const auto rows = batch_report(manifest, opts);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.report.has_value());
        CHECK(row.error.empty());
    }
    CHECK(rows[0].name == "alpha");
    CHECK(rows[2].report->length == 2000 - 50);

    manifest[1].path = dir.file("missing.csv");
    const auto partial = batch_report(manifest, opts);
    CHECK(partial[0].report.has_value());
    CHECK_FALSE(partial[1].report.has_value());
    CHECK(partial[1].error.find("missing.csv") != std::string::npos);
    CHECK(partial[2].report.has_value());
    // the failure does not perturb the surviving rows
    CHECK(partial[2].report->variance == rows[2].report->variance);

    CHECK_THROWS_AS(batch_report({}, opts), InvalidParameterError);
}

TEST_CASE("manifest overrides") {
    TempDir dir;
    ProcessSpec spec;
    spec.kernel = rma_weights(50);
    const auto path = simulate_linear_arch(spec, 3000, 42);
    {
        std::ofstream out(dir.file("s.csv"));
        save_prices(path.prices, out);
    }
    std::istringstream manifest_csv("one," + dir.file("s.csv") + ",kernel=rma:25,horizon=5\n");
    const auto manifest = load_manifest(manifest_csv);
    REQUIRE(manifest.size() == 1);
    CHECK(manifest[0].overrides.at("kernel") == "rma:25");

    AnalysisOptions opts;
    opts.kernel_spec = "rma:50";
    const auto rows = batch_report(manifest, opts);
    REQUIRE(rows[0].report.has_value());
    CHECK(rows[0].report->kernel_spec == "rma:25");
    CHECK(rows[0].report->horizon == 5);
}

TEST_CASE("report rendering keeps the table column contract") {
    const auto st65 = std::vector<InnovationDistribution>{InnovationDistribution::student(6),
                                                          InnovationDistribution::student(5)};
    std::vector<BatchRow> rows;
    rows.push_back({"CAC 40", report_from_published({"CAC 40", "1990-03-15", 7630, 0.013, 1.049}, st65), ""});
    rows.push_back({"broken", std::nullopt, "cannot open 'x.csv'"});

    std::ostringstream text;
    render_report(rows, ReportFormat::Text, text);
    const std::string t = text.str();
    for (const char* token : {"name", "startDate", "length", "mean", "p-value", "variance",
                              "St 6", "St 5", "CAC 40", "ERROR", "0.248"})
        CHECK(t.find(token) != std::string::npos);

    std::ostringstream csv;
    render_report(rows, ReportFormat::Csv, csv);
    const std::string c = csv.str();
    for (const char* token : {"name,startDate,length,mean,p_mean,variance", "p_st6", "p_st5",
                              "status", "ERROR", "ok"})
        CHECK(c.find(token) != std::string::npos);

    // deterministic output
    std::ostringstream csv2;
    render_report(rows, ReportFormat::Csv, csv2);
    CHECK(csv.str() == csv2.str());
}
