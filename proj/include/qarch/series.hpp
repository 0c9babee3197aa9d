#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qarch/dates.hpp"

namespace qarch {

enum class ReturnConvention { Log, Simple };

const char* to_string(ReturnConvention conv);
ReturnConvention parse_return_convention(const std::string& text);

/// Daily price observations, one per business day, strictly positive and in
/// strictly increasing date order.
struct PriceSeries {
    std::string name;
    std::vector<Date> dates;
    std::vector<double> prices;
    bool sorted_on_load = false;  // loader had to reorder the input

    std::size_t size() const { return prices.size(); }
    void validate() const;  // throws DataError on any invariant violation
};

/// One-day returns; dates[i] stamps the day on which returns[i] realizes.
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> returns;

    std::size_t size() const { return returns.size(); }
};

ReturnSeries returns_from_prices(const PriceSeries& prices,
                                 ReturnConvention conv = ReturnConvention::Log);

/// One-step-ahead variance aligned to a ReturnSeries: variance[t] predicts the
/// return at t+1. Entries before warm_up are NaN (kernel support incomplete).
struct VarianceForecast {
    std::vector<Date> dates;
    std::vector<double> variance;
    std::size_t warm_up = 0;

    std::size_t size() const { return variance.size(); }
};

/// Realized innovations at a given horizon (business days). n_effective is
/// the number of emitted points, eps.size().
struct InnovationSeries {
    std::vector<Date> dates;
    std::vector<double> eps;
    int horizon = 1;
    std::size_t n_effective = 0;
};

}  // namespace qarch
