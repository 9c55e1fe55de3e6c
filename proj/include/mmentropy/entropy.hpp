#pragma once

#include "mmentropy/symbols.hpp"

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mme {

enum class Unit { nats, bits };

// Halting rules, with h_nu = log(lap_nu) / nu:
//   consecutive  stop when |h_nu - h_{nu-1}| <= eps, checked from step
//                halt_warmup on.  The warm-up matters: while the symbol
//                stream still looks like the full (l+1)-shift the laps grow
//                exactly as (l+1)^nu, so consecutive estimates are equal and
//                an unguarded check would stop before any dynamics showed up.
//   scaled_gap   stop when log(lap_nu) * (1/(nu-1) - 1/nu) <= eps, checked
//                from step 2 on.  Fires roughly at nu = h/eps, much later
//                than consecutive's nu = O(1/sqrt(eps)).
enum class HaltVariant { consecutive, scaled_gap };

inline constexpr long halt_warmup = 5;

// Internal inconsistency of the crossing-count recursion, e.g. a negative
// count or a lap total not divisible by the modality.  Reachable only
// through symbol streams that no continuous multimodal map produces.
class consistency_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rolling state of the crossing-count recursion.
//
// s_line[i][mu] counts, for mu >= 1, the laps of f^mu whose image strictly
// spans the critical point c_{i+1} (s_line[i][0] = 1 seeds the recursion).
// Correction terms come from the bad symbol times: whenever the symbol of
// line k at level kappa lies in the bad set of line i, every later step nu
// subtracts 2*s_line[k][nu-kappa] from line i's count.
struct EntropyState {
    int modality = 0;
    long nu = 0;  // last completed step
    std::vector<std::vector<big_int>> s_line;
    std::vector<big_int> s_total;  // per step, summed over lines
    std::vector<big_int> S_total;  // per step, total correction
    std::vector<big_int> laps;     // laps[mu] = lap count of f^mu
    big_int cum;                   // 1 + sum of s_total so far = next lap count
    std::vector<std::vector<long>> bad_times;  // [i*modality + k], sorted
    std::vector<MinMaxSymbol> first_symbols;
};

// Seeds the state from the first min-max symbols (one per line, in line
// order).  Throws std::invalid_argument when the count disagrees with the
// modality or a symbol address is out of range.
EntropyState init_state(const std::vector<MinMaxSymbol>& omega1, int modality);
EntropyState init_state(const std::vector<CriticalOrbit>& orbits, int modality);

// Advances the recursion by one step using the level-(nu+1) symbols.  The
// first call must replay the symbols given to init_state.  Takes the state
// by value; move it in.  Throws consistency_error when the stream is
// infeasible.
EntropyState step(EntropyState st, const std::vector<MinMaxSymbol>& symbols);

// Entropy estimate log(laps[nu]) / nu in the requested unit; nu >= 1.
double estimate_at(const EntropyState& st, Unit unit);

// Lap counts of f^1..f^nu, leading with lap 1 of f^0.
std::vector<big_int> lap_sequence(const EntropyState& st);

// Registered bad-symbol times of one line as (source line, level) pairs.
std::vector<std::pair<int, long>> bad_pairs(const EntropyState& st, int line);

struct RunOptions {
    double eps = 1e-4;
    long n_max = 10000;
    Unit unit = Unit::nats;
    HaltVariant halt = HaltVariant::consecutive;
    bool anchor_first = false;   // extend the map to anchored boundaries
    bool exact_orbits = true;    // rational orbit iteration on piecewise linear maps
    double snap_tol = -1;        // <= 0 selects default_snap_tol(map)
    // Called once per appended symbol: (nu, line, symbol, orbit point).
    std::function<void(long, int, const MinMaxSymbol&, double)> trace;
};

struct EntropyEstimate {
    double value = 0;  // last estimate, in unit
    Unit unit = Unit::nats;
    long loops = 0;    // step at exit; n_max + 1 when not converged
    bool converged = false;
    double elapsed_ms = 0;
    std::vector<double> history;  // h_1..h_last
    EntropyState state;
};

// Full pipeline: orbits, symbols, recursion, halt test.  Runs until the
// halt rule fires or n_max steps are exhausted (converged = false then).
EntropyEstimate run(const MapModel& map, const RunOptions& opts);

}  // namespace mme
