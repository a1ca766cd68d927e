#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "epicenter/error.hpp"

namespace epi {

/// Middle order statistic; even counts average the two middle values.
inline double median_inplace(std::vector<double>& v) {
    if (v.empty()) throw InputError("median of an empty sequence");
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

inline double median(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    return median_inplace(v);
}

inline double mean(std::span<const double> values) {
    if (values.empty()) throw InputError("mean of an empty sequence");
    double s = 0.0;
    for (double x : values) s += x;
    return s / static_cast<double>(values.size());
}

}  // namespace epi
