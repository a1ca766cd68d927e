#include "epicenter/table1.hpp"

#include <cstdio>

#include "epicenter/error.hpp"

namespace epi {

const std::optional<double>& Table1::cell(bool with_replacement, CenterEstimator estimator,
                                          std::size_t n_index) const {
    return cells[with_replacement ? 1 : 0][estimator == CenterEstimator::center_point ? 1 : 0]
                [n_index];
}

Table1 compute_table1(const CasePattern& pattern, const Landmark& landmark, std::size_t m,
                      const std::vector<std::size_t>& n_values, std::uint64_t seed,
                      unsigned threads) {
    if (n_values.empty()) throw InputError("table1: n list must not be empty");

    Table1 table;
    table.landmark_name = landmark.name;
    table.m = m;
    table.n_values = n_values;

    for (int mode = 0; mode < 2; ++mode) {
        const bool with_replacement = mode == 1;
        for (int est = 0; est < 2; ++est) {
            const CenterEstimator estimator =
                est == 0 ? CenterEstimator::centroid : CenterEstimator::center_point;
            auto& row = table.cells[mode][est];
            row.reserve(n_values.size());
            for (std::size_t n : n_values) {
                ResamplePlan plan;
                plan.n = n;
                plan.m = m;
                plan.with_replacement = with_replacement;
                plan.seed = derive_plan_seed(seed, with_replacement, estimator, n);
                try {
                    const TestResult result =
                        landmark_center_test(pattern, landmark, plan, estimator,
                                             Metric::euclidean, threads);
                    row.emplace_back(result.p_value);
                } catch (const DegenerateError&) {
                    row.emplace_back(std::nullopt);
                }
            }
        }
    }
    return table;
}

namespace {

std::string cell_text(const std::optional<double>& p) {
    if (!p) return "--";
    char buf[24];
    std::snprintf(buf, sizeof buf, "%.3f", *p);
    return buf;
}

}  // namespace

std::string format_table1(const Table1& table) {
    std::string out = "Monte Carlo p-values: is '" + table.landmark_name +
                      "' the \"center\"?  (m = " + std::to_string(table.m) + ")\n";
    char buf[64];

    auto pad = [](std::string s, std::size_t width) {
        while (s.size() < width) s += ' ';
        return s;
    };

    std::string header = pad("Sampling", 13) + pad("\"center\"", 14);
    for (std::size_t n : table.n_values) {
        std::snprintf(buf, sizeof buf, "n=%zu", n);
        header += pad(buf, 9);
    }
    out += header + "\n";

    static const char* mode_label[2][2] = {{"without", "replacement"}, {"with", "replacement"}};
    static const char* est_label[2] = {"centroid", "center-point"};
    for (int mode = 0; mode < 2; ++mode) {
        for (int est = 0; est < 2; ++est) {
            std::string line = pad(mode_label[mode][est], 13) + pad(est_label[est], 14);
            for (std::size_t k = 0; k < table.n_values.size(); ++k)
                line += pad(cell_text(table.cells[mode][est][k]), 9);
            out += line + "\n";
        }
    }
    return out;
}

std::string table1_csv(const Table1& table) {
    std::string out = "sampling,center,";
    for (std::size_t k = 0; k < table.n_values.size(); ++k) {
        out += "n=" + std::to_string(table.n_values[k]);
        out += k + 1 < table.n_values.size() ? ',' : '\n';
    }
    char buf[24];
    for (int mode = 0; mode < 2; ++mode) {
        for (int est = 0; est < 2; ++est) {
            out += mode == 0 ? "without" : "with";
            out += est == 0 ? ",centroid" : ",center-point";
            for (std::size_t k = 0; k < table.n_values.size(); ++k) {
                const auto& p = table.cells[mode][est][k];
                if (p) {
                    std::snprintf(buf, sizeof buf, ",%.6f", *p);
                    out += buf;
                } else {
                    out += ",--";
                }
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace epi
