#include "qarch/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qarch/errors.hpp"
#include "qarch/innovations.hpp"
#include "qarch/kernels.hpp"
#include "qarch/pipeline.hpp"
#include "qarch/simulate.hpp"
#include "qarch/stats.hpp"
#include "qarch/volatility.hpp"

namespace qarch::cli {

namespace {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<InnovationDistribution> parse_dist_list(const std::string& text) {
    std::vector<InnovationDistribution> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) out.push_back(parse_distribution(cur));
    if (out.empty()) throw InvalidParameterError("empty distribution list");
    return out;
}

// stdout by default, a file when --out is given
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw DataError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

struct CommonFlags {
    std::string kernel = "lmarch";
    std::string dists = "st6,st5";
    int horizon = 1;
    std::string returns = "log";
    std::string format = "text";
    std::string out_path;
};

AnalysisOptions to_options(const CommonFlags& flags) {
    AnalysisOptions opts;
    opts.kernel_spec = flags.kernel;
    opts.assumptions = parse_dist_list(flags.dists);
    opts.horizon = flags.horizon;
    opts.convention = parse_return_convention(flags.returns);
    return opts;
}

ReportFormat to_format(const std::string& text) {
    if (text == "text") return ReportFormat::Text;
    if (text == "csv") return ReportFormat::Csv;
    throw InvalidParameterError("unknown format '" + text + "', expected text|csv");
}

int run_weights(const std::string& kernel_spec, const std::string& out_path, std::ostream& out) {
    OutputTarget target(out_path, out);
    const KernelWeights kernel = parse_kernel_spec(kernel_spec);
    target.stream() << "lag,weight\n";
    for (int l = 0; l <= kernel.l_max(); ++l)
        target.stream() << l << ',' << fmt_full(kernel.weights()[static_cast<std::size_t>(l)])
                        << '\n';
    return kOk;
}

int run_innovations(const std::string& input, const CommonFlags& flags, std::ostream& out) {
    OutputTarget target(flags.out_path, out);
    const PriceSeries prices = load_prices_file(input);
    const KernelWeights kernel = parse_kernel_spec(flags.kernel);
    const InnovationSeries inn =
        horizon_innovations(prices, kernel, flags.horizon, parse_return_convention(flags.returns));
    target.stream() << "date,eps\n";
    for (std::size_t i = 0; i < inn.eps.size(); ++i)
        target.stream() << inn.dates[i].to_string() << ',' << fmt_full(inn.eps[i]) << '\n';
    return kOk;
}

int batch_exit_code(const std::vector<BatchRow>& rows) {
    std::size_t failed = 0;
    for (const auto& row : rows)
        if (!row.report) ++failed;
    if (failed == 0) return kOk;
    return failed == rows.size() ? kDataError : kPartialFailure;
}

struct SimulateFlags {
    std::string kernel = "lmarch";
    std::string dist = "normal";
    double gamma = 0.0;
    double w_inf = -1.0;
    double sigma_inf = -1.0;
    double ou_tau = 0.0;
    int ou_nlag = 0;
    double init_variance = 1e-4;
    double p0 = 100.0;
    std::size_t steps = 1000;
    std::uint64_t seed = 1;
    std::size_t replicas = 1;
    std::string emit = "path";
    std::string assume = "st6,st5";
    std::string name = "sim";
    std::string out_path;
};

ProcessSpec to_process_spec(const SimulateFlags& flags) {
    ProcessSpec spec;
    spec.kernel = parse_kernel_spec(flags.kernel);
    spec.dist = parse_distribution(flags.dist);
    spec.gamma = flags.gamma;
    if (flags.w_inf >= 0.0 || flags.sigma_inf >= 0.0) {
        if (flags.w_inf < 0.0 || flags.sigma_inf < 0.0)
            throw InvalidParameterError("--w-inf and --sigma-inf must be given together");
        spec.affine = AffineParams{flags.w_inf, flags.sigma_inf};
    }
    if (flags.ou_tau > 0.0 || flags.ou_nlag > 0) {
        if (flags.ou_tau <= 0.0 || flags.ou_nlag <= 0)
            throw InvalidParameterError("--ou-tau and --ou-nlag must be given together");
        spec.ou = OuParams{flags.ou_tau, flags.ou_nlag};
    }
    spec.init_variance = flags.init_variance;
    spec.p0 = flags.p0;
    spec.name = flags.name;
    return spec;
}

int run_simulate(const SimulateFlags& flags, std::ostream& out) {
    OutputTarget target(flags.out_path, out);
    const ProcessSpec spec = to_process_spec(flags);

    if (flags.emit == "path") {
        if (flags.replicas != 1)
            throw InvalidParameterError("--emit path requires --replicas 1");
        const SimulatedPath path = simulate_path(spec, flags.steps, flags.seed);
        target.stream() << "date,price,return,variance,eps\n";
        const std::size_t n = path.returns.size();
        const std::size_t first_step = n - path.drawn_eps.eps.size();
        for (std::size_t t = 0; t < n; ++t) {
            target.stream() << path.returns.dates[t].to_string() << ','
                            << fmt_full(path.prices.prices[t + 1]) << ','
                            << fmt_full(path.returns.returns[t]) << ',';
            if (t >= path.true_variance.warm_up)
                target.stream() << fmt_full(path.true_variance.variance[t]);
            target.stream() << ',';
            if (t >= first_step) target.stream() << fmt_full(path.drawn_eps.eps[t - first_step]);
            target.stream() << '\n';
        }
        return kOk;
    }
    if (flags.emit != "summary")
        throw InvalidParameterError("unknown --emit mode '" + flags.emit + "', expected path|summary");

    const auto assumptions = parse_dist_list(flags.assume);
    target.stream() << "replica,seed,n,mean,p_mean,variance";
    for (const auto& dist : assumptions) target.stream() << ",p_" << dist.label();
    target.stream() << '\n';
    for (std::size_t i = 0; i < flags.replicas; ++i) {
        const std::uint64_t seed = flags.replicas == 1 ? flags.seed : replica_seed(flags.seed, i);
        const SimulatedPath path = simulate_path(spec, flags.steps, seed);
        const InnovationSeries inn =
            extract_innovations(path.returns, linear_variance(path.returns, spec.kernel));
        const MomentSummary m = moments(inn);
        target.stream() << i << ',' << seed << ',' << m.n << ',' << fmt_full(m.mu_hat) << ','
                        << fmt_full(mean_test(m.mu_hat, m.n).p) << ',' << fmt_full(m.var_hat);
        for (const auto& dist : assumptions)
            target.stream() << ',' << fmt_full(variance_test(m.var_hat, m.n, dist).p);
        target.stream() << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quadratic ARCH volatility, realized innovations and stability tests"};
    app.require_subcommand(1);

    // weights
    auto* weights_cmd = app.add_subcommand("weights", "dump kernel lag weights as CSV");
    std::string weights_kernel = "lmarch";
    std::string weights_out;
    weights_cmd->add_option("--kernel", weights_kernel, "kernel spec (rma:<n>|ema:<mu>[:<lmax>]|lmarch[:...])");
    weights_cmd->add_option("--out", weights_out, "output file (default stdout)");

    // innovations
    auto* inn_cmd = app.add_subcommand("innovations", "extract realized innovations as CSV");
    std::string inn_input;
    CommonFlags inn_flags;
    inn_cmd->add_option("--input", inn_input, "date,price CSV file")->required();
    inn_cmd->add_option("--kernel", inn_flags.kernel, "kernel spec");
    inn_cmd->add_option("--horizon", inn_flags.horizon, "innovation horizon in business days");
    inn_cmd->add_option("--returns", inn_flags.returns, "return convention: log|simple");
    inn_cmd->add_option("--out", inn_flags.out_path, "output file (default stdout)");

    // analyze
    auto* an_cmd = app.add_subcommand("analyze", "one-series innovation report");
    std::string an_input, an_name;
    CommonFlags an_flags;
    an_cmd->add_option("--input", an_input, "date,price CSV file")->required();
    an_cmd->add_option("--name", an_name, "series name (default: file stem)");
    an_cmd->add_option("--kernel", an_flags.kernel, "kernel spec");
    an_cmd->add_option("--dist", an_flags.dists, "comma list of assumptions, e.g. st6,st5,normal");
    an_cmd->add_option("--horizon", an_flags.horizon, "innovation horizon in business days");
    an_cmd->add_option("--returns", an_flags.returns, "return convention: log|simple");
    an_cmd->add_option("--format", an_flags.format, "text|csv");
    an_cmd->add_option("--out", an_flags.out_path, "output file (default stdout)");

    // report
    auto* rep_cmd = app.add_subcommand("report", "multi-series or published-stats report");
    std::string rep_manifest, rep_published;
    CommonFlags rep_flags;
    rep_cmd->add_option("--manifest", rep_manifest, "CSV manifest: name,path[,key=value...]");
    rep_cmd->add_option("--published", rep_published,
                        "CSV of published stats: name,startDate,n,mean,variance");
    rep_cmd->add_option("--kernel", rep_flags.kernel, "kernel spec");
    rep_cmd->add_option("--dist", rep_flags.dists, "comma list of assumptions");
    rep_cmd->add_option("--horizon", rep_flags.horizon, "innovation horizon in business days");
    rep_cmd->add_option("--returns", rep_flags.returns, "return convention: log|simple");
    rep_cmd->add_option("--format", rep_flags.format, "text|csv");
    rep_cmd->add_option("--out", rep_flags.out_path, "output file (default stdout)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "generate synthetic process paths");
    SimulateFlags sim_flags;
    sim_cmd->add_option("--kernel", sim_flags.kernel, "kernel spec");
    sim_cmd->add_option("--dist", sim_flags.dist, "innovation distribution: normal|st<nu>");
    sim_cmd->add_option("--gamma", sim_flags.gamma, "short-term instability multiplier (>= 0)");
    sim_cmd->add_option("--w-inf", sim_flags.w_inf, "affine weight of the mean variance");
    sim_cmd->add_option("--sigma-inf", sim_flags.sigma_inf, "affine mean volatility (per day)");
    sim_cmd->add_option("--ou-tau", sim_flags.ou_tau, "OU pull-back intensity (days)");
    sim_cmd->add_option("--ou-nlag", sim_flags.ou_nlag, "OU price-reference lag (days)");
    sim_cmd->add_option("--init-variance", sim_flags.init_variance, "pre-sample return variance");
    sim_cmd->add_option("--p0", sim_flags.p0, "initial price");
    sim_cmd->add_option("--steps", sim_flags.steps, "generated steps");
    sim_cmd->add_option("--seed", sim_flags.seed, "master seed");
    sim_cmd->add_option("--replicas", sim_flags.replicas, "independent replicas (summary mode)");
    sim_cmd->add_option("--emit", sim_flags.emit, "path|summary");
    sim_cmd->add_option("--assume", sim_flags.assume, "assumptions for summary p-values");
    sim_cmd->add_option("--name", sim_flags.name, "series name");
    sim_cmd->add_option("--out", sim_flags.out_path, "output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (weights_cmd->parsed()) return run_weights(weights_kernel, weights_out, out);
        if (inn_cmd->parsed()) return run_innovations(inn_input, inn_flags, out);
        if (an_cmd->parsed()) {
            OutputTarget target(an_flags.out_path, out);
            const PriceSeries prices = load_prices_file(an_input, an_name);
            if (prices.sorted_on_load)
                err << "warning: input rows were not sorted by date; sorted\n";
            const TestReport report = analyze_series(prices, to_options(an_flags));
            render_report({BatchRow{report.name, report, ""}}, to_format(an_flags.format),
                          target.stream());
            return kOk;
        }
        if (rep_cmd->parsed()) {
            if (rep_manifest.empty() == rep_published.empty()) {
                err << "error: report needs exactly one of --manifest or --published\n";
                return kUsage;
            }
            OutputTarget target(rep_flags.out_path, out);
            std::vector<BatchRow> rows;
            if (!rep_manifest.empty()) {
                std::ifstream in(rep_manifest);
                if (!in) throw DataError("cannot open manifest '" + rep_manifest + "'");
                rows = batch_report(load_manifest(in), to_options(rep_flags));
            } else {
                std::ifstream in(rep_published);
                if (!in) throw DataError("cannot open published file '" + rep_published + "'");
                rows = published_report(load_published(in), parse_dist_list(rep_flags.dists));
            }
            render_report(rows, to_format(rep_flags.format), target.stream());
            for (const auto& row : rows)
                if (!row.report) err << "error in series '" << row.name << "': " << row.error << '\n';
            return batch_exit_code(rows);
        }
        if (sim_cmd->parsed()) return run_simulate(sim_flags, out);
    } catch (const InvalidParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

}  // namespace qarch::cli
