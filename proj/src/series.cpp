#include "qarch/series.hpp"

#include <cmath>

#include "qarch/errors.hpp"

namespace qarch {

const char* to_string(ReturnConvention conv) {
    return conv == ReturnConvention::Log ? "log" : "simple";
}

ReturnConvention parse_return_convention(const std::string& text) {
    if (text == "log") return ReturnConvention::Log;
    if (text == "simple") return ReturnConvention::Simple;
    throw InvalidParameterError("unknown return convention '" + text + "', expected log|simple");
}

void PriceSeries::validate() const {
    if (dates.size() != prices.size())
        throw DataError("price series '" + name + "': dates/prices length mismatch");
    if (prices.size() < 2)
        throw DataError("price series '" + name + "': need at least 2 observations");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !std::isfinite(prices[i]))
            throw DataError("price series '" + name + "': non-positive price at " +
                            dates[i].to_string());
        if (i > 0 && !(dates[i - 1] < dates[i]))
            throw DataError("price series '" + name + "': dates not strictly increasing at " +
                            dates[i].to_string());
    }
}

ReturnSeries returns_from_prices(const PriceSeries& prices, ReturnConvention conv) {
    prices.validate();
    ReturnSeries rs;
    const std::size_t n = prices.size() - 1;
    rs.dates.reserve(n);
    rs.returns.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ratio = prices.prices[i + 1] / prices.prices[i];
        rs.dates.push_back(prices.dates[i + 1]);
        rs.returns.push_back(conv == ReturnConvention::Log ? std::log(ratio) : ratio - 1.0);
    }
    return rs;
}

}  // namespace qarch
