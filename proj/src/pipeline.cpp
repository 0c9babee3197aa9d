#include "qarch/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "qarch/errors.hpp"
#include "qarch/innovations.hpp"
#include "qarch/kernels.hpp"
#include "qarch/volatility.hpp"

namespace qarch {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

bool parse_double_field(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_size_field(const std::string& s, std::size_t& out) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size() || v < 0) return false;
        out = static_cast<std::size_t>(v);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

std::string strip_bom(const std::string& line) {
    if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF')
        return line.substr(3);
    return line;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string file_stem(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    const std::size_t start = slash == std::string::npos ? 0 : slash + 1;
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || dot <= start) return path.substr(start);
    return path.substr(start, dot - start);
}

}  // namespace

PriceSeries load_prices(std::istream& in, const std::string& name) {
    PriceSeries series;
    series.name = name;

    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    std::vector<std::pair<Date, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (first) line = strip_bom(line);
        const std::string text = trim(line);
        if (text.empty()) {
            first = false;
            continue;
        }
        const auto fields = split_csv_line(text);
        if (first) {
            first = false;
            // optional header: first field is not a date
            bool looks_like_date = true;
            try {
                Date::parse(fields[0]);
            } catch (const DataError&) {
                looks_like_date = false;
            }
            if (!looks_like_date) continue;
        }
        if (fields.size() != 2)
            throw CsvParseError("expected 'date,price', got " + std::to_string(fields.size()) +
                                " fields", line_no);
        Date date;
        try {
            date = Date::parse(fields[0]);
        } catch (const DataError& e) {
            throw CsvParseError(e.what(), line_no);
        }
        double price = 0.0;
        if (!parse_double_field(fields[1], price))
            throw CsvParseError("cannot parse price '" + fields[1] + "'", line_no);
        if (!(price > 0.0))
            throw DataError("non-positive price " + fields[1] + " at " + date.to_string() +
                            " (line " + std::to_string(line_no) + ")");
        rows.emplace_back(date, price);
    }

    const bool sorted = std::is_sorted(rows.begin(), rows.end(),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!sorted) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        series.sorted_on_load = true;
    }
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw DataError("duplicate date " + rows[i].first.to_string());

    series.dates.reserve(rows.size());
    series.prices.reserve(rows.size());
    for (const auto& [date, price] : rows) {
        series.dates.push_back(date);
        series.prices.push_back(price);
    }
    series.validate();
    return series;
}

PriceSeries load_prices_file(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return load_prices(in, name.empty() ? file_stem(path) : name);
}

void save_prices(const PriceSeries& series, std::ostream& out) {
    out << "date,price\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << series.dates[i].to_string() << ',' << fmt_full(series.prices[i]) << '\n';
}

TestReport analyze_series(const PriceSeries& prices, const AnalysisOptions& opts) {
    prices.validate();
    const KernelWeights kernel = parse_kernel_spec(opts.kernel_spec);
    if (opts.horizon < 1) throw InvalidParameterError("horizon must be >= 1");

    const std::size_t l_max = static_cast<std::size_t>(kernel.l_max());
    const std::size_t need =
        l_max + opts.min_innovations * static_cast<std::size_t>(opts.horizon) + 2;
    if (prices.size() < need)
        throw InsufficientDataError(
            "series '" + prices.name + "': need at least " + std::to_string(need) +
            " prices for kernel " + kernel.spec() + " and " +
            std::to_string(opts.min_innovations) + " innovations at horizon " +
            std::to_string(opts.horizon) + ", got " + std::to_string(prices.size()));

    const InnovationSeries inn = horizon_innovations(prices, kernel, opts.horizon, opts.convention);
    const MomentSummary m = moments(inn);

    TestReport report;
    report.name = prices.name;
    report.start_date = inn.dates.front();
    report.length = m.n;
    report.mean = m.mu_hat;
    report.p_mean = mean_test(m.mu_hat, m.n).p;
    report.variance = m.var_hat;
    report.assumptions = opts.assumptions;
    report.p_var.reserve(opts.assumptions.size());
    for (const auto& dist : opts.assumptions)
        report.p_var.push_back(variance_test(m.var_hat, m.n, dist).p);
    report.kernel_spec = kernel.spec();
    report.convention = to_string(opts.convention);
    report.horizon = opts.horizon;
    return report;
}

TestReport report_from_published(const PublishedStats& row,
                                 const std::vector<InnovationDistribution>& assumptions) {
    if (row.n < 2) throw DataError("published row '" + row.name + "': n must be >= 2");
    TestReport report;
    report.name = row.name;
    report.start_date = row.start_date.empty() ? Date{} : Date::parse(row.start_date);
    report.length = row.n;
    report.mean = row.mean;
    report.p_mean = mean_test(row.mean, row.n).p;
    report.variance = row.variance;
    report.assumptions = assumptions;
    report.p_var.reserve(assumptions.size());
    for (const auto& dist : assumptions)
        report.p_var.push_back(variance_test(row.variance, row.n, dist).p);
    report.kernel_spec = "published";
    report.convention = "published";
    report.horizon = 1;
    return report;
}

std::vector<PublishedStats> load_published(std::istream& in) {
    std::vector<PublishedStats> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (first) line = strip_bom(line);
        const std::string text = trim(line);
        if (text.empty()) {
            first = false;
            continue;
        }
        const auto fields = split_csv_line(text);
        if (first) {
            first = false;
            std::size_t probe = 0;
            if (fields.size() >= 3 && !parse_size_field(fields[2], probe)) continue;  // header
        }
        if (fields.size() != 5)
            throw CsvParseError("expected 'name,startDate,n,mean,variance', got " +
                                std::to_string(fields.size()) + " fields", line_no);
        PublishedStats row;
        row.name = fields[0];
        row.start_date = fields[1];
        if (!parse_size_field(fields[2], row.n))
            throw CsvParseError("cannot parse sample size '" + fields[2] + "'", line_no);
        if (!parse_double_field(fields[3], row.mean))
            throw CsvParseError("cannot parse mean '" + fields[3] + "'", line_no);
        if (!parse_double_field(fields[4], row.variance))
            throw CsvParseError("cannot parse variance '" + fields[4] + "'", line_no);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ManifestEntry> load_manifest(std::istream& in) {
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto fields = split_csv_line(text);
        if (fields.size() < 2)
            throw CsvParseError("manifest rows are 'name,path[,key=value...]'", line_no);
        ManifestEntry entry;
        entry.name = fields[0];
        entry.path = fields[1];
        for (std::size_t i = 2; i < fields.size(); ++i) {
            const auto eq = fields[i].find('=');
            if (eq == std::string::npos)
                throw CsvParseError("manifest override '" + fields[i] + "' is not key=value",
                                    line_no);
            entry.overrides[fields[i].substr(0, eq)] = fields[i].substr(eq + 1);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<BatchRow> batch_report(const std::vector<ManifestEntry>& manifest,
                                   const AnalysisOptions& opts) {
    if (manifest.empty()) throw InvalidParameterError("empty manifest");
    std::vector<BatchRow> rows;
    rows.reserve(manifest.size());
    for (const auto& entry : manifest) {
        BatchRow row;
        row.name = entry.name;
        try {
            AnalysisOptions local = opts;
            if (auto it = entry.overrides.find("kernel"); it != entry.overrides.end())
                local.kernel_spec = it->second;
            if (auto it = entry.overrides.find("horizon"); it != entry.overrides.end())
                local.horizon = std::stoi(it->second);
            if (auto it = entry.overrides.find("returns"); it != entry.overrides.end())
                local.convention = parse_return_convention(it->second);
            row.report = analyze_series(load_prices_file(entry.path, entry.name), local);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BatchRow> published_report(const std::vector<PublishedStats>& rows,
                                       const std::vector<InnovationDistribution>& assumptions) {
    if (rows.empty()) throw InvalidParameterError("no published rows");
    std::vector<BatchRow> out;
    out.reserve(rows.size());
    for (const auto& ps : rows) {
        BatchRow row;
        row.name = ps.name;
        try {
            row.report = report_from_published(ps, assumptions);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

std::vector<InnovationDistribution> report_assumptions(const std::vector<BatchRow>& rows) {
    for (const auto& row : rows)
        if (row.report) return row.report->assumptions;
    return {};
}

void render_text(const std::vector<BatchRow>& rows, std::ostream& out) {
    const auto assumptions = report_assumptions(rows);

    std::size_t name_w = 4;
    for (const auto& row : rows) name_w = std::max(name_w, row.name.size());

    std::ostringstream header;
    header << std::left << std::setw(static_cast<int>(name_w)) << "name" << std::right
           << std::setw(12) << "startDate" << std::setw(8) << "length" << std::setw(8) << "mean"
           << std::setw(9) << "p-value" << std::setw(10) << "variance";
    for (const auto& dist : assumptions) header << std::setw(8) << dist.column_label();
    out << header.str() << '\n';
    out << std::string(header.str().size(), '-') << '\n';

    for (const auto& row : rows) {
        out << std::left << std::setw(static_cast<int>(name_w)) << row.name << std::right;
        if (!row.report) {
            out << "  ERROR: " << row.error << '\n';
            continue;
        }
        const TestReport& r = *row.report;
        out << std::setw(12) << r.start_date.to_string() << std::setw(8) << r.length
            << std::setw(8) << fmt3(r.mean) << std::setw(9) << fmt3(r.p_mean) << std::setw(10)
            << fmt3(r.variance);
        for (double p : r.p_var) out << std::setw(8) << fmt3(p);
        out << '\n';
    }
}

void render_csv(const std::vector<BatchRow>& rows, std::ostream& out) {
    const auto assumptions = report_assumptions(rows);

    out << "name,startDate,length,mean,p_mean,variance";
    for (const auto& dist : assumptions) out << ",p_" << dist.label();
    out << ",kernel,returns,horizon,status\n";

    const std::size_t value_cols = 5 + assumptions.size() + 3;
    for (const auto& row : rows) {
        out << row.name;
        if (!row.report) {
            for (std::size_t i = 0; i < value_cols; ++i) out << ',';
            std::string msg = row.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            out << "ERROR: " << msg << '\n';
            continue;
        }
        const TestReport& r = *row.report;
        out << ',' << r.start_date.to_string() << ',' << r.length << ',' << fmt_full(r.mean)
            << ',' << fmt_full(r.p_mean) << ',' << fmt_full(r.variance);
        for (double p : r.p_var) out << ',' << fmt_full(p);
        out << ',' << r.kernel_spec << ',' << r.convention << ',' << r.horizon << ",ok\n";
    }
}

}  // namespace

void render_report(const std::vector<BatchRow>& rows, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Text)
        render_text(rows, out);
    else
        render_csv(rows, out);
}

}  // namespace qarch
