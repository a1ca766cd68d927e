#pragma once

#include <cstdint>
#include <vector>

#include "epicenter/central.hpp"
#include "epicenter/pattern.hpp"
#include "epicenter/rng.hpp"

namespace epi {

/// Descriptor of one resampling experiment: m resamples of size n, with or
/// without replacement, under an explicit seed.
struct ResamplePlan {
    std::size_t n = 0;
    std::size_t m = 0;
    bool with_replacement = false;
    std::uint64_t seed = 0;

    void validate(std::size_t pattern_size) const;
};

/// The m center estimates of the plan's resamples.  `degenerate` is set when
/// every center coincides (n = N without replacement), which makes rank
/// tests on the cloud undefined.
struct CenterCloud {
    std::vector<PlanePoint> points;
    CenterEstimator estimator = CenterEstimator::centroid;
    ResamplePlan plan;
    bool degenerate = false;
};

/// Covariance ellipse of a cloud: axes scaled by the chi-square(2) quantile
/// of `level`, orientation of the major axis in [0, pi).
struct Ellipse {
    PlanePoint center;
    double semi_major = 0.0;
    double semi_minor = 0.0;
    double orientation = 0.0;
};

/// Draws one resample of indices into [0, population).  Without replacement
/// this is a partial Fisher-Yates draw (O(n) via a sparse swap map); with
/// replacement, n independent uniform picks.  Returned sorted ascending so
/// downstream accumulation is order-independent.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n,
                                        bool with_replacement, Rng& rng);

/// Replicate i is fully determined by (plan.seed, i); worker count never
/// changes the result.
CenterCloud resample_centers(const CasePattern& pattern, const ResamplePlan& plan,
                             CenterEstimator estimator, unsigned threads = 1);

/// RMS distance of the cloud points to their mean; the size of the clouds
/// seen in the resampling figures.
double cloud_spread(const CenterCloud& cloud);

/// chi-square quantile with 2 df: -2 ln(1-level).
double chi2_quantile_2df(double level);

Ellipse concentration_ellipse(const CenterCloud& cloud, double level = 0.95);

/// Deterministic per-(mode, estimator, n) seed used by the CLI so table and
/// figure runs refer to the same replicate streams.
std::uint64_t derive_plan_seed(std::uint64_t root_seed, bool with_replacement,
                               CenterEstimator estimator, std::size_t n);

}  // namespace epi
