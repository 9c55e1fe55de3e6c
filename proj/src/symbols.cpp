#include "mmentropy/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mme {

std::string AddressSymbol::str() const {
    return (is_critical() ? "c" : "I") + std::to_string(index());
}

std::string MinMaxSymbol::str() const {
    return (base == MinMaxBase::maximum ? "M^" : "m^") + address.str();
}

double default_snap_tol(const MapModel& map) {
    return 1e-9 * (map.b() - map.a());
}

AddressSymbol address(const MapModel& map, double y, double tol) {
    const auto& cs = map.critical_points();
    int best = -1;
    double best_d = tol;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        double d = std::abs(y - cs[k]);
        if (d <= best_d) {
            best_d = d;
            best = static_cast<int>(k) + 1;
        }
    }
    if (best > 0) return AddressSymbol::critical(best);
    if (y < map.a()) {
        if (y >= map.a() - tol) return AddressSymbol::interval(1);
        throw std::domain_error("address: point outside map interval");
    }
    if (y > map.b()) {
        if (y <= map.b() + tol)
            return AddressSymbol::interval(map.modality() + 1);
        throw std::domain_error("address: point outside map interval");
    }
    int j = 1;
    for (double c : cs)
        if (y > c) ++j;
    return AddressSymbol::interval(j);
}

AddressSymbol address_exact(const MapModel& map, const big_rat& y) {
    const auto* t = map.exact_table();
    if (!t) throw std::logic_error("address_exact: map has no exact table");
    if (y < t->breakpoints.front() || y > t->breakpoints.back())
        throw std::domain_error("address_exact: point outside map interval");
    const auto& cs = map.exact_critical_points();
    int j = 1;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (y == cs[k]) return AddressSymbol::critical(static_cast<int>(k) + 1);
        if (y > cs[k]) ++j;
    }
    return AddressSymbol::interval(j);
}

namespace {

MinMaxBase initial_base(Shape shape, int line) {
    bool odd = line % 2 != 0;
    MinMaxBase b = odd ? MinMaxBase::maximum : MinMaxBase::minimum;
    return shape == Shape::positive ? b : flipped(b);
}

}  // namespace

std::vector<MinMaxSymbol> initial_minmax(const MapModel& map, double tol) {
    std::vector<MinMaxSymbol> out;
    for (int i = 1; i <= map.modality(); ++i) {
        AddressSymbol addr;
        if (map.exact_table()) {
            big_rat y = map.eval_exact(map.exact_critical_points()[i - 1]);
            addr = address_exact(map, y);
        } else {
            double y = map.eval(map.critical_points()[i - 1]);
            addr = address(map, y, tol);
        }
        out.push_back({initial_base(map.shape(), i), addr});
    }
    return out;
}

std::vector<MinMaxSymbol> initial_minmax(const MapModel& map) {
    return initial_minmax(map, default_snap_tol(map));
}

MinMaxSymbol advance_minmax(const MinMaxSymbol& prev, AddressSymbol next,
                            Shape shape) {
    bool odd = prev.address.index() % 2 != 0;
    MinMaxBase out;
    if (prev.address.is_critical())
        out = odd ? MinMaxBase::maximum : MinMaxBase::minimum;
    else
        out = odd ? prev.base : flipped(prev.base);
    if (shape == Shape::negative) out = flipped(out);
    return {out, next};
}

bool is_bad(const MinMaxSymbol& w, int line, int modality) {
    if (line < 1 || line > modality)
        throw std::invalid_argument("is_bad: line out of range");
    int pivot = 2 * line - 1;  // code of c_line
    return w.base == MinMaxBase::maximum ? w.address.code <= pivot
                                         : w.address.code >= pivot;
}

std::vector<CriticalOrbit> start_orbits(const MapModel& map, double tol,
                                        bool exact) {
    if (exact && !map.exact_table())
        throw std::logic_error("start_orbits: exact iteration needs a piecewise linear map");
    std::vector<CriticalOrbit> out;
    auto omega1 = initial_minmax(map, tol);
    for (int i = 1; i <= map.modality(); ++i) {
        CriticalOrbit orb;
        orb.line = i;
        if (exact) {
            orb.exact_point = map.eval_exact(map.exact_critical_points()[i - 1]);
            orb.points.push_back(static_cast<double>(*orb.exact_point));
        } else {
            orb.points.push_back(map.eval(map.critical_points()[i - 1]));
        }
        orb.symbols.push_back(omega1[static_cast<std::size_t>(i) - 1]);
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<CriticalOrbit> start_orbits(const MapModel& map) {
    return start_orbits(map, default_snap_tol(map),
                        map.exact_table() != nullptr);
}

CriticalOrbit extend_orbit(const MapModel& map, CriticalOrbit orbit,
                           int steps, double tol) {
    if (orbit.points.empty() || orbit.symbols.size() != orbit.points.size())
        throw std::invalid_argument("extend_orbit: malformed orbit");
    for (int s = 0; s < steps; ++s) {
        AddressSymbol addr;
        double pt;
        if (orbit.exact_point) {
            big_rat y = map.eval_exact(*orbit.exact_point);
            addr = address_exact(map, y);
            orbit.exact_point = std::move(y);
            pt = static_cast<double>(*orbit.exact_point);
        } else {
            double x = std::clamp(orbit.points.back(), map.a(), map.b());
            double y = map.eval(x);
            addr = address(map, y, tol);
            pt = std::clamp(y, map.a(), map.b());
        }
        orbit.symbols.push_back(
            advance_minmax(orbit.symbols.back(), addr, map.shape()));
        orbit.points.push_back(pt);
    }
    return orbit;
}

CriticalOrbit extend_orbit(const MapModel& map, CriticalOrbit orbit,
                           int steps) {
    double tol = default_snap_tol(map);
    return extend_orbit(map, std::move(orbit), steps, tol);
}

}  // namespace mme
