#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epicenter/mctest.hpp"

namespace epi {

/// The 2 sampling modes x 2 estimators x |n| grid of landmark-center
/// p-values.  Degenerate cells (n = N without replacement) carry nullopt
/// and print as "--".
struct Table1 {
    std::string landmark_name;
    std::size_t m = 0;
    std::vector<std::size_t> n_values;
    // indexed [with_replacement][estimator==center_point][n index]
    std::vector<std::optional<double>> cells[2][2];

    const std::optional<double>& cell(bool with_replacement, CenterEstimator estimator,
                                      std::size_t n_index) const;
};

Table1 compute_table1(const CasePattern& pattern, const Landmark& landmark, std::size_t m,
                      const std::vector<std::size_t>& n_values, std::uint64_t seed,
                      unsigned threads = 1);

/// Text layout mirroring the published table.
std::string format_table1(const Table1& table);

std::string table1_csv(const Table1& table);

}  // namespace epi
