#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qarch/series.hpp"
#include "qarch/stats.hpp"

namespace qarch {

/// Parse a two-column CSV stream (ISO-8601 date, positive decimal price).
/// A header row is skipped, unsorted rows are sorted (flagged on the result),
/// duplicate dates and non-positive prices are rejected.
PriceSeries load_prices(std::istream& in, const std::string& name = "");
PriceSeries load_prices_file(const std::string& path, const std::string& name = "");

/// Full-precision date,price CSV; load_prices(save_prices(s)) is bit-exact.
void save_prices(const PriceSeries& series, std::ostream& out);

struct AnalysisOptions {
    std::string kernel_spec = "lmarch";
    std::vector<InnovationDistribution> assumptions = {
        InnovationDistribution::student(6), InnovationDistribution::student(5)};
    int horizon = 1;
    ReturnConvention convention = ReturnConvention::Log;
    std::size_t min_innovations = 100;
};

/// One result row: moment statistics of the realized innovations with their
/// p-values, plus the configuration that produced them.
struct TestReport {
    std::string name;
    Date start_date;         // date of the first innovation used
    std::size_t length = 0;  // innovations used
    double mean = 0.0;
    double p_mean = 1.0;
    double variance = 0.0;
    std::vector<double> p_var;  // parallel to assumptions
    std::vector<InnovationDistribution> assumptions;
    std::string kernel_spec;
    std::string convention;  // "log", "simple", or "published"
    int horizon = 1;
};

/// Prices -> returns -> kernel forecast -> innovations -> moments -> tests.
TestReport analyze_series(const PriceSeries& prices, const AnalysisOptions& opts);

/// Published summary statistics in place of raw prices, for reproducing
/// reported p-values when the underlying data is not redistributable.
struct PublishedStats {
    std::string name;
    std::string start_date;
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
};

TestReport report_from_published(const PublishedStats& row,
                                 const std::vector<InnovationDistribution>& assumptions);

std::vector<PublishedStats> load_published(std::istream& in);

struct ManifestEntry {
    std::string name;
    std::string path;
    std::map<std::string, std::string> overrides;  // kernel, horizon, returns
};

std::vector<ManifestEntry> load_manifest(std::istream& in);

/// A report row or the error that prevented it; batch processing never lets
/// one series abort the others.
struct BatchRow {
    std::string name;
    std::optional<TestReport> report;
    std::string error;
};

std::vector<BatchRow> batch_report(const std::vector<ManifestEntry>& manifest,
                                   const AnalysisOptions& opts);

std::vector<BatchRow> published_report(const std::vector<PublishedStats>& rows,
                                       const std::vector<InnovationDistribution>& assumptions);

enum class ReportFormat { Text, Csv };

/// Text: aligned 3-decimal table. Csv: full-precision machine output with a
/// trailing status column. Byte-identical for identical input.
void render_report(const std::vector<BatchRow>& rows, ReportFormat format, std::ostream& out);

}  // namespace qarch
