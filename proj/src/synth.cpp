#include "epicenter/synth.hpp"

#include <cmath>
#include <cstdio>

#include "epicenter/error.hpp"
#include "epicenter/mctest.hpp"
#include "epicenter/parallel.hpp"

namespace epi {

ClusterModel ClusterModel::isotropic(PlanePoint origin, double sigma, std::size_t n) {
    ClusterModel model;
    model.origin = origin;
    model.kind = Kind::isotropic;
    model.sigma_major = sigma;
    model.sigma_minor = sigma;
    model.n = n;
    return model;
}

ClusterModel ClusterModel::anisotropic(PlanePoint origin, double sigma_major, double sigma_minor,
                                       double orientation, std::size_t n) {
    ClusterModel model;
    model.origin = origin;
    model.kind = Kind::anisotropic;
    model.sigma_major = sigma_major;
    model.sigma_minor = sigma_minor;
    model.orientation = orientation;
    model.n = n;
    return model;
}

void ClusterModel::validate() const {
    if (!(sigma_major > 0.0) || !(sigma_minor > 0.0))
        throw InputError("cluster model: sigmas must be > 0");
    if (sigma_minor > sigma_major)
        throw InputError("cluster model: sigma_minor exceeds sigma_major");
    if (n < 1) throw InputError("cluster model: n must be >= 1");
}

CasePattern synth_cluster(const ClusterModel& model, Rng& rng) {
    model.validate();
    const double c = std::cos(model.orientation);
    const double s = std::sin(model.orientation);

    CasePattern pattern;
    pattern.points.reserve(model.n);
    pattern.ids.reserve(model.n);
    char buf[32];
    for (std::size_t i = 0; i < model.n; ++i) {
        const auto [z1, z2] = rng.normal_pair();
        const double u = model.sigma_major * z1;
        const double v = model.sigma_minor * z2;
        PlanePoint p = model.origin;
        p.easting += c * u - s * v;
        p.northing += s * u + c * v;
        pattern.points.push_back(p);
        std::snprintf(buf, sizeof buf, "syn-%06zu", i + 1);
        pattern.ids.emplace_back(buf);
    }
    return pattern;
}

FlawDemoReport flaw_demo(const DensityGrid& grid, const FlawDemoConfig& config,
                         std::uint64_t seed, unsigned threads) {
    if (config.trials < 1) throw ConfigError("flaw_demo: trials must be >= 1");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw ConfigError("flaw_demo: alpha must be in (0,1)");
    if (config.R < 1) throw ConfigError("flaw_demo: R must be >= 1");
    if (!(config.sigma_major > 0.0)) throw ConfigError("flaw_demo: sigma must be > 0");
    if (!config.relax_scale_check && config.sigma_major > grid.extent() / 10.0)
        throw ConfigError("flaw_demo: cluster sigma " + std::to_string(config.sigma_major) +
                          " m exceeds a tenth of the city extent " +
                          std::to_string(grid.extent()) +
                          " m; such clusters are not small against the city");

    const double sigma_minor = config.sigma_minor > 0.0 ? config.sigma_minor : config.sigma_major;

    // weight center of the raster, the anchor of the displaced-landmark ray
    double center_e = 0.0, center_n = 0.0;
    if (config.landmark_displacement != 0.0) {
        for (std::size_t i = 0; i < grid.weights.size(); ++i) {
            const double x =
                grid.xmin + (static_cast<double>(i % grid.ncols) + 0.5) * grid.cell;
            const double y =
                grid.ymin + (static_cast<double>(i / grid.ncols) + 0.5) * grid.cell;
            center_e += grid.weights[i] * x;
            center_n += grid.weights[i] * y;
        }
        center_e /= grid.total;
        center_n /= grid.total;
    }

    FlawDemoReport report;
    report.alpha = config.alpha;
    report.trials.resize(config.trials);

    parallel_for(config.trials, threads, [&](std::size_t t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);

        Rng origin_rng(trial_seed, 0);
        const PlanePoint origin = sample_point(grid, origin_rng);

        ClusterModel model = sigma_minor == config.sigma_major
                                 ? ClusterModel::isotropic(origin, config.sigma_major,
                                                           config.cluster_size)
                                 : ClusterModel::anisotropic(origin, config.sigma_major,
                                                             sigma_minor, config.orientation,
                                                             config.cluster_size);
        Rng cluster_rng(trial_seed, 1);
        const CasePattern cluster = synth_cluster(model, cluster_rng);

        Landmark landmark;
        landmark.name = config.landmark_label;  // the label never enters the arithmetic
        landmark.location = origin;
        landmark.location.easting += config.landmark_offset_e;
        landmark.location.northing += config.landmark_offset_n;

        const auto sampler = [&grid, n = config.cluster_size](Rng& rng) {
            return sample_fixed_n(grid, n, rng);
        };
        const TestResult result =
            proximity_test(cluster, landmark, sampler, config.R, derive_seed(trial_seed, 2),
                           Metric::euclidean, 1);

        report.trials[t] = {origin, result.p_value, result.p_value <= config.alpha};
    });

    std::size_t rejected = 0;
    for (const auto& trial : report.trials) rejected += trial.reject ? 1 : 0;
    report.rejection_rate = static_cast<double>(rejected) / static_cast<double>(config.trials);
    return report;
}

std::string format_flaw_report(const FlawDemoReport& report) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "trials=%zu alpha=%.4f rejection_rate=%.4f (%zu rejected)\n",
                  report.trials.size(), report.alpha, report.rejection_rate,
                  static_cast<std::size_t>(std::lround(report.rejection_rate *
                                                       static_cast<double>(report.trials.size()))));
    return buf;
}

std::string flaw_report_csv(const FlawDemoReport& report) {
    std::string out = "trial,origin_e,origin_n,p_value,reject\n";
    char buf[160];
    for (std::size_t t = 0; t < report.trials.size(); ++t) {
        const auto& trial = report.trials[t];
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f,%d\n", t, trial.origin.easting,
                      trial.origin.northing, trial.p_value, trial.reject ? 1 : 0);
        out += buf;
    }
    out += format_flaw_report(report);
    return out;
}

}  // namespace epi
