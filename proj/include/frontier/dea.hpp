#pragma once

#include <string>
#include <utility>
#include <vector>

#include "frontier/dataset.hpp"

namespace frontier {

enum class ReturnsToScale { CRS, VRS };
enum class Orientation { Input, Output };

struct DeaModelSpec {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    ReturnsToScale rts = ReturnsToScale::CRS;
    Orientation orientation = Orientation::Input;
    std::vector<std::string> excluded_dmus;
};

struct EfficiencyScore {
    std::string dmu_id;
    double score = 0.0; // in (0, 1]
    std::vector<std::pair<std::string, double>> reference_set; // (peer, lambda)
};

struct DeaSolveOptions {
    bool parallel = true; // OpenMP over the per-DMU programs
};

// Envelopment-form DEA. Input orientation solves, for each DMU o,
//   min theta  s.t.  sum_j lambda_j x_ij <= theta x_io  (inputs)
//                    sum_j lambda_j y_rj >= y_ro        (outputs)
//                    lambda >= 0, and sum lambda = 1 under VRS;
// output orientation maximizes the radial expansion phi and reports 1/phi.
// Rows are normalized by the evaluated DMU's own values, which makes CRS
// scores invariant to rescaling any single column up to roundoff.
// Scores within 1e-9 of 1 are reported as exactly 1.
std::vector<EfficiencyScore> solve_envelopment(const DeaModelSpec& spec, const Dataset& ds,
                                               const DeaSolveOptions& options = {});

// Plain serial loop over the same per-DMU programs; the parallel path must
// reproduce it exactly.
std::vector<EfficiencyScore> solve_envelopment_reference(const DeaModelSpec& spec,
                                                         const Dataset& ds);

} // namespace frontier
