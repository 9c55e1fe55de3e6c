#include "mmentropy/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace mme {

namespace {

// Breakpoints and values of an iterate, kept exactly.
struct Curve {
    std::vector<big_rat> x, y;
};

// Replaces the curve for f^n with the one for f^(n+1).  Each segment keeps
// its endpoints and gains one point per breakpoint of f that its value
// range crosses; values are mapped through f.
void propagate(const MapModel& f, Curve& cur, std::size_t cap) {
    const auto& fb = f.exact_table()->breakpoints;
    const auto& fv = f.exact_table()->values;
    Curve next;
    next.x.reserve(cur.x.size() * 2);
    next.y.reserve(cur.x.size() * 2);

    for (std::size_t j = 0; j + 1 < cur.x.size(); ++j) {
        next.x.push_back(cur.x[j]);
        next.y.push_back(f.eval_exact(cur.y[j]));
        const big_rat& y0 = cur.y[j];
        const big_rat& y1 = cur.y[j + 1];
        big_rat dx_dy = (cur.x[j + 1] - cur.x[j]) / (y1 - y0);
        if (y0 < y1) {
            for (std::size_t t = 1; t + 1 < fb.size(); ++t)
                if (y0 < fb[t] && fb[t] < y1) {
                    next.x.push_back(cur.x[j] + (fb[t] - y0) * dx_dy);
                    next.y.push_back(fv[t]);
                }
        } else {
            for (std::size_t t = fb.size() - 2; t >= 1; --t)
                if (y1 < fb[t] && fb[t] < y0) {
                    next.x.push_back(cur.x[j] + (fb[t] - y0) * dx_dy);
                    next.y.push_back(fv[t]);
                }
        }
        if (next.x.size() > cap)
            throw std::length_error("lap oracle breakpoint cap exceeded");
    }
    next.x.push_back(cur.x.back());
    next.y.push_back(f.eval_exact(cur.y.back()));
    cur = std::move(next);
}

LapProfile profile_from_curve(const MapModel& map, const Curve& cur, int n) {
    LapProfile p;
    p.n = n;
    p.method = "exact";
    int prev_dir = 0;
    p.laps = 1;
    for (std::size_t j = 0; j + 1 < cur.y.size(); ++j) {
        int dir = cur.y[j + 1] > cur.y[j] ? +1 : -1;
        if (prev_dir != 0 && dir != prev_dir) ++p.laps;
        prev_dir = dir;
    }
    const auto& cs = map.exact_critical_points();
    p.crossings.assign(cs.size(), 0);
    p.degenerate_hits.assign(cs.size(), 0);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const big_rat& c = cs[i];
        int prev_sign = 0;
        for (const big_rat& y : cur.y) {
            int sign = y > c ? +1 : (y < c ? -1 : 0);
            if (sign == 0) {
                ++p.degenerate_hits[i];
            } else {
                if (prev_sign != 0 && sign != prev_sign) ++p.crossings[i];
                prev_sign = sign;
            }
        }
    }
    return p;
}

}  // namespace

std::vector<LapProfile> lap_profiles_exact(const MapModel& map, int n_max,
                                           std::size_t cap) {
    const auto* t = map.exact_table();
    if (!t) throw std::logic_error("lap oracle needs a piecewise linear map");
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
    Curve cur{t->breakpoints, t->values};
    std::vector<LapProfile> out;
    out.push_back(profile_from_curve(map, cur, 1));
    for (int n = 2; n <= n_max; ++n) {
        propagate(map, cur, cap);
        out.push_back(profile_from_curve(map, cur, n));
    }
    return out;
}

LapProfile lap_count_exact(const MapModel& map, int n, std::size_t cap) {
    return lap_profiles_exact(map, n, cap).back();
}

LapProfile lap_count_grid(const MapModel& map, int n, long long grid) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (grid < 2) throw std::invalid_argument("grid must have at least 2 cells");
    const double a = map.a(), b = map.b();

    std::vector<double> y(static_cast<std::size_t>(grid) + 1);
    for (long long j = 0; j <= grid; ++j) {
        double x = a + (b - a) * static_cast<double>(j) / static_cast<double>(grid);
        if (j == grid) x = b;
        for (int k = 0; k < n; ++k) x = map.eval(std::clamp(x, a, b));
        y[static_cast<std::size_t>(j)] = x;
    }

    LapProfile p;
    p.n = n;
    p.method = "grid";
    p.grid = grid;
    p.laps = 1;
    int prev_dir = 0;
    for (std::size_t j = 0; j + 1 < y.size(); ++j) {
        double d = y[j + 1] - y[j];
        int dir = d > 0 ? +1 : (d < 0 ? -1 : 0);
        if (dir == 0) {
            p.plateau_warning = true;
            continue;
        }
        if (prev_dir != 0 && dir != prev_dir) ++p.laps;
        prev_dir = dir;
    }
    const auto& cs = map.critical_points();
    p.crossings.assign(cs.size(), 0);
    p.degenerate_hits.assign(cs.size(), 0);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        double c = cs[i];
        int prev_sign = 0;
        for (double v : y) {
            int sign = v > c ? +1 : (v < c ? -1 : 0);
            if (sign == 0) {
                ++p.degenerate_hits[i];
                p.plateau_warning = true;
            } else {
                if (prev_sign != 0 && sign != prev_sign) ++p.crossings[i];
                prev_sign = sign;
            }
        }
    }
    return p;
}

}  // namespace mme
