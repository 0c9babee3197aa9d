#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qarch/dates.hpp"
#include "qarch/errors.hpp"
#include "qarch/innovations.hpp"
#include "qarch/kernels.hpp"
#include "qarch/pipeline.hpp"
#include "qarch/simulate.hpp"
#include "qarch/stats.hpp"
#include "qarch/volatility.hpp"

namespace py = pybind11;
using namespace qarch;

namespace {

ReturnSeries wrap_returns(const std::vector<double>& values) {
    ReturnSeries rs;
    rs.returns = values;
    rs.dates = business_day_series(Date{2000, 1, 3}, values.size());
    return rs;
}

PriceSeries wrap_prices(const std::vector<std::string>& dates, const std::vector<double>& prices,
                        const std::string& name) {
    if (dates.size() != prices.size())
        throw InvalidParameterError("dates and prices must have equal length");
    PriceSeries ps;
    ps.name = name;
    ps.prices = prices;
    ps.dates.reserve(dates.size());
    for (const auto& d : dates) ps.dates.push_back(Date::parse(d));
    ps.validate();
    return ps;
}

std::vector<std::string> date_strings(const std::vector<Date>& dates) {
    std::vector<std::string> out;
    out.reserve(dates.size());
    for (const auto& d : dates) out.push_back(d.to_string());
    return out;
}

ProcessSpec make_spec(const KernelWeights& kernel, const std::string& dist, double gamma,
                      std::optional<double> w_inf, std::optional<double> sigma_inf,
                      std::optional<double> ou_tau, std::optional<int> ou_nlag,
                      double init_variance, double p0) {
    ProcessSpec spec;
    spec.kernel = kernel;
    spec.dist = parse_distribution(dist);
    spec.gamma = gamma;
    if (w_inf.has_value() != sigma_inf.has_value())
        throw InvalidParameterError("w_inf and sigma_inf must be given together");
    if (w_inf) spec.affine = AffineParams{*w_inf, *sigma_inf};
    if (ou_tau.has_value() != ou_nlag.has_value())
        throw InvalidParameterError("ou_tau and ou_nlag must be given together");
    if (ou_tau) spec.ou = OuParams{*ou_tau, *ou_nlag};
    spec.init_variance = init_variance;
    spec.p0 = p0;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quadratic ARCH volatility forecasts, realized innovations and stability tests";

    py::register_exception<InvalidParameterError>(m, "InvalidParameterError", PyExc_ValueError);
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<KernelWeights>(m, "KernelWeights")
        .def_property_readonly("weights", [](const KernelWeights& k) { return k.weights(); })
        .def_property_readonly("l_max", &KernelWeights::l_max)
        .def_property_readonly("kind", [](const KernelWeights& k) { return std::string(to_string(k.kind())); })
        .def_property_readonly("spec", [](const KernelWeights& k) { return k.spec(); })
        .def_property_readonly("weight_sum", &KernelWeights::weight_sum)
        .def("__repr__", [](const KernelWeights& k) { return "<KernelWeights " + k.spec() + ">"; });

    m.def("rma_weights", &rma_weights, py::arg("n"),
          "Equal weights 1/n over a window of n days.");
    m.def("ema_weights", [](double mu, int l_max) {
              return l_max < 0 ? ema_weights(mu) : ema_weights(mu, l_max);
          },
          py::arg("mu"), py::arg("l_max") = -1,
          "Exponential weights mu^l, renormalized on lags 0..l_max (cutoff chosen "
          "automatically when l_max is omitted).");
    m.def("lm_arch_weights",
          [](double tau1, double rho, int n_components, double tau0, int l_max) {
              return lm_arch_weights(LmArchParams{tau1, rho, n_components, tau0, l_max});
          },
          py::arg("tau1") = 4.0, py::arg("rho") = 1.4142135623730951,
          py::arg("n_components") = 15, py::arg("tau0") = 1560.0, py::arg("l_max") = 512,
          "Long-memory kernel from a cascade of EMAs.");
    m.def("parse_kernel_spec", &parse_kernel_spec, py::arg("spec"),
          "Parse 'rma:<n>', 'ema:<mu>[:<lmax>]' or 'lmarch[:<tau1>,<rho>,<K>,<tau0>,<lmax>]'.");

    m.def("linear_variance",
          [](const std::vector<double>& returns, const KernelWeights& kernel) {
              return linear_variance(wrap_returns(returns), kernel).variance;
          },
          py::arg("returns"), py::arg("kernel"),
          "One-step-ahead kernel variance of a return sequence; NaN during warm-up.");
    m.def("innovations",
          [](const std::vector<double>& returns, const KernelWeights& kernel) {
              const ReturnSeries rs = wrap_returns(returns);
              return extract_innovations(rs, linear_variance(rs, kernel)).eps;
          },
          py::arg("returns"), py::arg("kernel"),
          "Realized innovations eps(t+1) = r(t+1)/sigma(t) after the kernel warm-up.");
    m.def("horizon_innovations",
          [](const std::vector<std::string>& dates, const std::vector<double>& prices,
             const KernelWeights& kernel, int dt, const std::string& returns) {
              return horizon_innovations(wrap_prices(dates, prices, "series"), kernel, dt,
                                         parse_return_convention(returns)).eps;
          },
          py::arg("dates"), py::arg("prices"), py::arg("kernel"), py::arg("dt") = 1,
          py::arg("returns") = "log");

    py::class_<MomentSummary>(m, "MomentSummary")
        .def_readonly("n", &MomentSummary::n)
        .def_readonly("mu_hat", &MomentSummary::mu_hat)
        .def_readonly("var_hat", &MomentSummary::var_hat)
        .def_readonly("second_moment", &MomentSummary::second_moment);

    py::class_<TestResult>(m, "TestResult")
        .def_readonly("z", &TestResult::z)
        .def_readonly("p", &TestResult::p)
        .def_property_readonly("sided", [](const TestResult& r) {
            return r.sided == TestSided::OneSided ? "one" : "two";
        });

    m.def("moments",
          [](const std::vector<double>& values) {
              return moments(std::span<const double>(values.data(), values.size()));
          },
          py::arg("values"));
    m.def("var_eps_squared",
          [](const std::string& dist) { return var_eps_squared(parse_distribution(dist)); },
          py::arg("dist"), "2 for 'normal', 2(nu-1)/(nu-4) for 'st<nu>'.");
    m.def("mean_test", &mean_test, py::arg("mu_hat"), py::arg("n"));
    m.def("variance_test",
          [](double var_hat, std::size_t n, const std::string& dist) {
              return variance_test(var_hat, n, parse_distribution(dist));
          },
          py::arg("var_hat"), py::arg("n"), py::arg("dist") = "st6");
    m.def("normal_cdf", &normal_cdf, py::arg("x"));
    m.def("volatility_doubling_time", &volatility_doubling_time, py::arg("excess_var"));
    m.def("student_kurtosis", &student_kurtosis, py::arg("nu"));
    m.def("implied_sigma_inf_factor", &implied_sigma_inf_factor, py::arg("gamma"),
          py::arg("w_inf"));

    py::class_<SimulatedPath>(m, "SimulatedPath")
        .def_property_readonly("dates",
                               [](const SimulatedPath& p) { return date_strings(p.prices.dates); })
        .def_property_readonly("prices",
                               [](const SimulatedPath& p) { return p.prices.prices; })
        .def_property_readonly("returns",
                               [](const SimulatedPath& p) { return p.returns.returns; })
        .def_property_readonly("variance",
                               [](const SimulatedPath& p) { return p.true_variance.variance; })
        .def_property_readonly("warm_up",
                               [](const SimulatedPath& p) { return p.true_variance.warm_up; })
        .def_property_readonly("eps", [](const SimulatedPath& p) { return p.drawn_eps.eps; });

    m.def("simulate",
          [](const KernelWeights& kernel, std::size_t steps, std::uint64_t seed,
             const std::string& dist, double gamma, std::optional<double> w_inf,
             std::optional<double> sigma_inf, std::optional<double> ou_tau,
             std::optional<int> ou_nlag, double init_variance, double p0) {
              return simulate_path(make_spec(kernel, dist, gamma, w_inf, sigma_inf, ou_tau,
                                             ou_nlag, init_variance, p0),
                                   steps, seed);
          },
          py::arg("kernel"), py::arg("steps"), py::arg("seed"), py::arg("dist") = "normal",
          py::arg("gamma") = 0.0, py::arg("w_inf") = std::nullopt,
          py::arg("sigma_inf") = std::nullopt, py::arg("ou_tau") = std::nullopt,
          py::arg("ou_nlag") = std::nullopt, py::arg("init_variance") = 1e-4,
          py::arg("p0") = 100.0,
          "Generate a synthetic process path; seeds the kernel history, then applies "
          "r(t+1) = ou_drift + (1+gamma) sigma(t) eps(t+1).");
    m.def("replica_seed", &replica_seed, py::arg("master"), py::arg("index"));

    py::class_<TestReport>(m, "TestReport")
        .def_readonly("name", &TestReport::name)
        .def_property_readonly("start_date",
                               [](const TestReport& r) { return r.start_date.to_string(); })
        .def_readonly("length", &TestReport::length)
        .def_readonly("mean", &TestReport::mean)
        .def_readonly("p_mean", &TestReport::p_mean)
        .def_readonly("variance", &TestReport::variance)
        .def_property_readonly("p_var",
                               [](const TestReport& r) {
                                   py::dict out;
                                   for (std::size_t i = 0; i < r.p_var.size(); ++i)
                                       out[py::str(r.assumptions[i].label())] = r.p_var[i];
                                   return out;
                               })
        .def_readonly("kernel_spec", &TestReport::kernel_spec)
        .def_readonly("convention", &TestReport::convention)
        .def_readonly("horizon", &TestReport::horizon);

    m.def("analyze",
          [](const std::vector<std::string>& dates, const std::vector<double>& prices,
             const std::string& kernel, const std::vector<std::string>& dists, int horizon,
             const std::string& returns, const std::string& name,
             std::size_t min_innovations) {
              AnalysisOptions opts;
              opts.kernel_spec = kernel;
              opts.assumptions.clear();
              for (const auto& d : dists) opts.assumptions.push_back(parse_distribution(d));
              opts.horizon = horizon;
              opts.convention = parse_return_convention(returns);
              opts.min_innovations = min_innovations;
              return analyze_series(wrap_prices(dates, prices, name), opts);
          },
          py::arg("dates"), py::arg("prices"), py::arg("kernel") = "lmarch",
          py::arg("dists") = std::vector<std::string>{"st6", "st5"}, py::arg("horizon") = 1,
          py::arg("returns") = "log", py::arg("name") = "series",
          py::arg("min_innovations") = 100,
          "Full chain: prices -> returns -> kernel forecast -> innovations -> tests.");
    m.def("published_report",
          [](const std::string& name, std::size_t n, double mean, double variance,
             const std::vector<std::string>& dists) {
              std::vector<InnovationDistribution> assumptions;
              for (const auto& d : dists) assumptions.push_back(parse_distribution(d));
              PublishedStats row{name, "", n, mean, variance};
              return report_from_published(row, assumptions);
          },
          py::arg("name"), py::arg("n"), py::arg("mean"), py::arg("variance"),
          py::arg("dists") = std::vector<std::string>{"st6", "st5"},
          "Recompute p-values from a published (n, mean, variance) triple.");
}
