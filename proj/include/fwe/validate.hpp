#pragma once

#include <string>
#include <vector>

namespace fwe {

struct ValidationCase {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationOptions {
    double grid_mil = 0.125;      // validation cases resolve h with 32 cells
    unsigned threads = 0;         // 0 = hardware concurrency
    bool parallel_plate = true;
    bool microstrip = true;
    bool grid_convergence = true;
};

/// Built-in solver trust anchors: parallel-plate exactness, microstrip
/// comparison against the Hammerstad-Jensen closed form over
/// w/h in {0.5, 1, 2} x eps_r in {2.2, 4, 6}, and a grid-halving
/// self-convergence check.
std::vector<ValidationCase> run_validation_suite(const ValidationOptions& options = {});

}  // namespace fwe
