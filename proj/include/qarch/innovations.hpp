#pragma once

#include "qarch/kernels.hpp"
#include "qarch/series.hpp"

namespace qarch {

/// Invert the process equation: eps(t+1) = r(t+1) / sqrt(variance(t)) for
/// every t >= warm_up. A vanishing forecast with a zero return emits 0; a
/// vanishing forecast with a nonzero return is a data defect and throws.
InnovationSeries extract_innovations(const ReturnSeries& returns,
                                     const VarianceForecast& forecast);

/// Innovations over non-overlapping dt-day windows anchored at the end of the
/// warm-up: the realized dt-day return divided by sqrt(dt) * sigma(t), with
/// sigma from the one-day kernel forecast. dt = 1 reduces exactly to
/// extract_innovations.
InnovationSeries horizon_innovations(const PriceSeries& prices,
                                     const KernelWeights& kernel,
                                     int dt,
                                     ReturnConvention conv = ReturnConvention::Log);

}  // namespace qarch
