#include "epicenter/resample.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "epicenter/error.hpp"
#include "epicenter/parallel.hpp"

namespace epi {

void ResamplePlan::validate(std::size_t pattern_size) const {
    if (n < 1) throw InputError("resample plan: n must be >= 1");
    if (m < 1) throw InputError("resample plan: m must be >= 1");
    if (!with_replacement && n > pattern_size)
        throw InputError("resample plan: n = " + std::to_string(n) +
                         " exceeds pattern size N = " + std::to_string(pattern_size) +
                         " without replacement");
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n,
                                        bool with_replacement, Rng& rng) {
    std::vector<std::size_t> out;
    out.reserve(n);
    if (with_replacement) {
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(static_cast<std::size_t>(rng.below(population)));
    } else {
        if (n > population) throw InputError("sample_indices: n exceeds population");
        // sparse Fisher-Yates: only displaced slots are materialized
        std::unordered_map<std::size_t, std::size_t> displaced;
        displaced.reserve(2 * n);
        auto slot = [&](std::size_t k) {
            auto it = displaced.find(k);
            return it == displaced.end() ? k : it->second;
        };
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(population - i));
            const std::size_t vi = slot(i);
            const std::size_t vj = slot(j);
            out.push_back(vj);
            displaced[j] = vi;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CenterCloud resample_centers(const CasePattern& pattern, const ResamplePlan& plan,
                             CenterEstimator estimator, unsigned threads) {
    plan.validate(pattern.size());

    CenterCloud cloud;
    cloud.estimator = estimator;
    cloud.plan = plan;
    cloud.points.resize(plan.m);

    parallel_for(plan.m, threads, [&](std::size_t i) {
        Rng rng(plan.seed, i);
        const auto indices = sample_indices(pattern.size(), plan.n, plan.with_replacement, rng);
        cloud.points[i] = estimator == CenterEstimator::centroid
                              ? subset_centroid(pattern, indices)
                              : subset_center_point(pattern, indices);
    });

    // indices are sorted before accumulation, so n = N without replacement
    // reproduces the full-sample center bitwise in every replicate
    cloud.degenerate = std::all_of(cloud.points.begin(), cloud.points.end(), [&](const PlanePoint& p) {
        return p.easting == cloud.points.front().easting &&
               p.northing == cloud.points.front().northing;
    });
    return cloud;
}

double cloud_spread(const CenterCloud& cloud) {
    if (cloud.points.size() < 2) throw InputError("cloud_spread: need at least 2 points");
    double me = 0.0, mn = 0.0;
    for (const auto& p : cloud.points) {
        me += p.easting;
        mn += p.northing;
    }
    const double m = static_cast<double>(cloud.points.size());
    me /= m;
    mn /= m;
    double ss = 0.0;
    for (const auto& p : cloud.points) {
        const double de = p.easting - me;
        const double dn = p.northing - mn;
        ss += de * de + dn * dn;
    }
    return std::sqrt(ss / m);
}

double chi2_quantile_2df(double level) {
    if (!(level > 0.0 && level < 1.0)) throw InputError("ellipse level must be in (0,1)");
    return -2.0 * std::log(1.0 - level);
}

Ellipse concentration_ellipse(const CenterCloud& cloud, double level) {
    if (cloud.points.size() < 3) throw InputError("concentration_ellipse: need m >= 3");
    if (cloud.degenerate)
        throw DegenerateError("concentration_ellipse: degenerate cloud (all centers coincide)");

    double me = 0.0, mn = 0.0;
    for (const auto& p : cloud.points) {
        me += p.easting;
        mn += p.northing;
    }
    const double m = static_cast<double>(cloud.points.size());
    me /= m;
    mn /= m;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& p : cloud.points) {
        const double dx = p.easting - me;
        const double dy = p.northing - mn;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    sxx /= m - 1.0;
    syy /= m - 1.0;
    sxy /= m - 1.0;

    // closed-form eigen-decomposition of the 2x2 covariance
    const double trace_half = 0.5 * (sxx + syy);
    const double det = sxx * syy - sxy * sxy;
    const double disc = std::sqrt(std::max(0.0, trace_half * trace_half - det));
    const double l1 = trace_half + disc;
    const double l2 = std::max(0.0, trace_half - disc);

    double orientation;
    if (sxy == 0.0) {
        orientation = sxx >= syy ? 0.0 : kPi / 2.0;
    } else {
        orientation = std::atan2(l1 - sxx, sxy);
    }
    if (orientation < 0.0) orientation += kPi;
    if (orientation >= kPi) orientation -= kPi;

    const double q = chi2_quantile_2df(level);
    Ellipse ellipse;
    ellipse.center = {me, mn, cloud.points.front().zone};
    ellipse.semi_major = std::sqrt(l1 * q);
    ellipse.semi_minor = std::sqrt(l2 * q);
    ellipse.orientation = orientation;
    return ellipse;
}

std::uint64_t derive_plan_seed(std::uint64_t root_seed, bool with_replacement,
                               CenterEstimator estimator, std::size_t n) {
    std::uint64_t s = derive_seed(root_seed, with_replacement ? 1 : 0);
    s = derive_seed(s, estimator == CenterEstimator::centroid ? 0 : 1);
    return derive_seed(s, n);
}

}  // namespace epi
