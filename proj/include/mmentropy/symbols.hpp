#pragma once

#include "mmentropy/map_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mme {

// Position of a point relative to the critical points: one of the l+1 open
// laps I_1..I_{l+1} or one of the l critical points c_1..c_l.  Encoded so
// that left-to-right order across the interval is the numeric order of
// code: I_j -> 2(j-1), c_k -> 2k-1.
struct AddressSymbol {
    int code = 0;

    static AddressSymbol interval(int j) { return {2 * (j - 1)}; }
    static AddressSymbol critical(int k) { return {2 * k - 1}; }

    bool is_critical() const { return code % 2 != 0; }
    // Lap number j for intervals, critical index k for critical points.
    int index() const { return is_critical() ? (code + 1) / 2 : code / 2 + 1; }

    std::string str() const;
    bool operator==(const AddressSymbol&) const = default;
};

enum class MinMaxBase : unsigned char { minimum, maximum };

inline MinMaxBase flipped(MinMaxBase b) {
    return b == MinMaxBase::minimum ? MinMaxBase::maximum : MinMaxBase::minimum;
}

// Decorated kneading symbol: records whether the nu-th iterate restricted
// to a shrinking neighborhood of a critical point attains the symbol's
// address from below (minimum, "m") or above (maximum, "M").
struct MinMaxSymbol {
    MinMaxBase base = MinMaxBase::minimum;
    AddressSymbol address;

    std::string str() const;  // e.g. "M^I3", "m^c2"
    bool operator==(const MinMaxSymbol&) const = default;
};

// Snap tolerance used when classifying orbit points: 1e-9 * (b-a).
double default_snap_tol(const MapModel& map);

// Classifies y.  Points within tol of a critical point snap to it; points
// within tol outside [a,b] snap to the boundary lap.  Throws
// std::domain_error beyond that.
AddressSymbol address(const MapModel& map, double y, double tol);
inline AddressSymbol address(const MapModel& map, double y) {
    return address(map, y, default_snap_tol(map));
}

// Exact classification for rational points in [a,b] of a piecewise linear
// map; no snapping.
AddressSymbol address_exact(const MapModel& map, const big_rat& y);

// First min-max symbols omega_1^i for i = 1..l.  The base alternates with
// the parity of i, starting from maximum for positive shape, and the
// address is that of f(c_i).  Piecewise linear maps are classified exactly.
std::vector<MinMaxSymbol> initial_minmax(const MapModel& map, double tol);
std::vector<MinMaxSymbol> initial_minmax(const MapModel& map);

// Transition step: given the symbol at level nu and the address of the next
// orbit point, produces the symbol at level nu+1.
//
// Positive shape: from a critical address c_k the base becomes maximum for
// odd k, minimum for even k; from a lap address I_j the base is kept for
// odd j and flipped for even j.  Negative shape flips the result.
MinMaxSymbol advance_minmax(const MinMaxSymbol& prev, AddressSymbol next,
                            Shape shape);

// Whether a symbol belongs to the bad set of line i, i.e. contributes a
// correction term to the crossing counts of c_i.  The bad set of line i
// holds the maximum symbols at or left of c_i and the minimum symbols at or
// right of c_i; it always has exactly 2(l+1) members.
bool is_bad(const MinMaxSymbol& w, int line, int modality);

// Orbit of one critical point: points[k] = f^{k+1}(c_i) with its min-max
// symbol.  When exact_point is set the orbit is iterated in exact rational
// arithmetic and points holds rounded copies.
struct CriticalOrbit {
    int line = 0;  // i, 1-based
    std::vector<double> points;
    std::vector<MinMaxSymbol> symbols;
    std::optional<big_rat> exact_point;
};

// Builds the l orbits advanced to their first point.  exact selects
// rational iteration (piecewise linear maps only).
std::vector<CriticalOrbit> start_orbits(const MapModel& map, double tol,
                                        bool exact);
std::vector<CriticalOrbit> start_orbits(const MapModel& map);

// Advances the orbit by the given number of steps.  Takes the orbit by
// value; move it in to avoid copying the history.
CriticalOrbit extend_orbit(const MapModel& map, CriticalOrbit orbit,
                           int steps, double tol);
CriticalOrbit extend_orbit(const MapModel& map, CriticalOrbit orbit,
                           int steps);

}  // namespace mme
