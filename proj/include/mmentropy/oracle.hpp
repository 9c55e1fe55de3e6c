#pragma once

#include "mmentropy/map_model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mme {

// Lap structure of the n-th iterate, measured independently of the
// crossing-count recursion.
//
// laps            number of maximal monotone pieces of f^n
// crossings[i]    sign changes of f^n - c_{i+1}, transversal only
// degenerate_hits[i]  sample or breakpoint values landing exactly on c_{i+1};
//                 these are excluded from crossings and reported here
struct LapProfile {
    int n = 0;
    long long laps = 0;
    std::vector<long long> crossings;
    std::vector<long long> degenerate_hits;
    std::string method;         // "exact" or "grid"
    long long grid = 0;         // samples used, grid method only
    bool plateau_warning = false;  // grid saw equal consecutive samples
};

// Exact lap profile of f^n for a piecewise linear map, obtained by
// propagating the breakpoint set of the iterates in rational arithmetic.
// Throws std::length_error when the breakpoint count exceeds cap and
// std::logic_error for maps without an exact table.
LapProfile lap_count_exact(const MapModel& map, int n,
                           std::size_t cap = 1'000'000);

// Profiles for every iterate 1..n_max in one propagation sweep.
std::vector<LapProfile> lap_profiles_exact(const MapModel& map, int n_max,
                                           std::size_t cap = 1'000'000);

// Lap profile from a uniform grid of grid+1 samples of f^n.  Plateaus and
// samples hitting a critical point set plateau_warning, signalling that the
// grid is too coarse to trust.
LapProfile lap_count_grid(const MapModel& map, int n, long long grid = 1 << 20);

}  // namespace mme
