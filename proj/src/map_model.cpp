#include "mmentropy/map_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mme {

MapModel::MapModel(double a, double b, std::vector<double> critical_points,
                   Shape shape, std::function<double(double)> evaluator,
                   std::string name)
    : a_(a),
      b_(b),
      critical_(std::move(critical_points)),
      shape_(shape),
      kind_(MapKind::smooth),
      evaluator_(std::move(evaluator)),
      name_(std::move(name)) {
    if (!(a_ < b_)) throw std::invalid_argument("map interval is empty");
    if (critical_.empty())
        throw std::invalid_argument("map needs at least one critical point");
    if (!evaluator_) throw std::invalid_argument("map needs an evaluator");
    double prev = a_;
    for (double c : critical_) {
        if (!(prev < c))
            throw std::invalid_argument("critical points must be interior and increasing");
        prev = c;
    }
    if (!(prev < b_))
        throw std::invalid_argument("critical points must be interior and increasing");
    for (double c : critical_) exact_critical_.push_back(rat_from_double(c));
}

MapModel::MapModel(PiecewiseLinearData table, std::string name)
    : kind_(MapKind::piecewise_linear),
      name_(std::move(name)),
      table_(std::move(table)) {
    const auto& bp = table_.breakpoints;
    const auto& vv = table_.values;
    if (bp.size() != vv.size() || bp.size() < 3)
        throw std::invalid_argument("piecewise linear table needs >= 3 matching points");
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        if (!(bp[i] < bp[i + 1]))
            throw std::invalid_argument("breakpoints must be strictly increasing");
        if (vv[i] == vv[i + 1])
            throw std::invalid_argument("zero-slope piece between breakpoints");
    }
    const big_rat& lo = bp.front();
    const big_rat& hi = bp.back();
    for (const big_rat& v : vv)
        if (v < lo || v > hi)
            throw std::invalid_argument("map image leaves the interval");

    int first_dir = vv[1] > vv[0] ? +1 : -1;
    int dir = first_dir;
    for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
        int next = vv[i + 1] > vv[i] ? +1 : -1;
        if (next != dir) {
            exact_critical_.push_back(bp[i]);
            critical_.push_back(static_cast<double>(bp[i]));
            dir = next;
        }
    }
    if (critical_.empty())
        throw std::invalid_argument("map has no turning point");
    shape_ = first_dir > 0 ? Shape::positive : Shape::negative;
    a_ = static_cast<double>(lo);
    b_ = static_cast<double>(hi);
    for (const big_rat& x : bp) bp_dbl_.push_back(static_cast<double>(x));
    for (const big_rat& v : vv) val_dbl_.push_back(static_cast<double>(v));
}

double MapModel::eval(double x) const {
    if (kind_ == MapKind::smooth) return evaluator_(x);
    auto it = std::lower_bound(bp_dbl_.begin(), bp_dbl_.end(), x);
    if (it != bp_dbl_.end() && *it == x)
        return val_dbl_[static_cast<std::size_t>(it - bp_dbl_.begin())];
    std::size_t i = static_cast<std::size_t>(it - bp_dbl_.begin());
    if (i == 0) i = 1;
    if (i == bp_dbl_.size()) i = bp_dbl_.size() - 1;
    --i;
    double slope = (val_dbl_[i + 1] - val_dbl_[i]) / (bp_dbl_[i + 1] - bp_dbl_[i]);
    return val_dbl_[i] + (x - bp_dbl_[i]) * slope;
}

big_rat MapModel::eval_exact(const big_rat& x) const {
    if (kind_ != MapKind::piecewise_linear)
        throw std::logic_error("exact evaluation needs a piecewise linear map");
    const auto& bp = table_.breakpoints;
    const auto& vv = table_.values;
    std::size_t i = 0;
    while (i + 2 < bp.size() && x >= bp[i + 1]) ++i;
    big_rat slope = (vv[i + 1] - vv[i]) / (bp[i + 1] - bp[i]);
    return vv[i] + (x - bp[i]) * slope;
}

double evaluate(const MapModel& map, double x) {
    if (!(x >= map.a() && x <= map.b()))
        throw std::domain_error("evaluate: point outside map interval");
    return map.eval(x);
}

big_rat evaluate_exact(const MapModel& map, const big_rat& x) {
    const auto* t = map.exact_table();
    if (!t) throw std::logic_error("evaluate_exact: map has no exact table");
    if (x < t->breakpoints.front() || x > t->breakpoints.back())
        throw std::domain_error("evaluate_exact: point outside map interval");
    return map.eval_exact(x);
}

ValidationReport validate(const MapModel& map, int points_per_lap) {
    ValidationReport rep;
    rep.modality = map.modality();
    if (points_per_lap < 2) points_per_lap = 2;

    std::vector<double> edges;
    edges.push_back(map.a());
    for (double c : map.critical_points()) edges.push_back(c);
    edges.push_back(map.b());

    double slack = 1e-12 * std::max({1.0, std::abs(map.a()), std::abs(map.b())});
    int expected_dir = 0;
    for (std::size_t lap = 0; lap + 1 < edges.size(); ++lap) {
        double lo = edges[lap], hi = edges[lap + 1];
        double prev_y = map.eval(lo);
        int dir = 0;
        for (int k = 1; k <= points_per_lap; ++k) {
            double x = lo + (hi - lo) * k / points_per_lap;
            if (k == points_per_lap) x = hi;
            double y = map.eval(x);
            if (y < map.a() - slack || y > map.b() + slack) {
                rep.valid = false;
                rep.first_violation = {ValidationIssue::not_invariant, x,
                                       "f(x) leaves the interval"};
                return rep;
            }
            int step_dir = y > prev_y ? +1 : (y < prev_y ? -1 : 0);
            if (step_dir == 0 || (dir != 0 && step_dir != dir)) {
                rep.valid = false;
                rep.first_violation = {ValidationIssue::not_monotone, x,
                                       "lap is not strictly monotone"};
                return rep;
            }
            dir = step_dir;
            prev_y = y;
        }
        if (lap == 0) {
            rep.detected_shape = dir > 0 ? Shape::positive : Shape::negative;
            expected_dir = dir;
        } else if (dir != expected_dir) {
            rep.valid = false;
            rep.first_violation = {ValidationIssue::not_monotone, lo,
                                   "consecutive laps share a direction"};
            return rep;
        }
        expected_dir = -expected_dir;
    }
    if (rep.detected_shape != map.shape()) {
        rep.valid = false;
        rep.first_violation = {ValidationIssue::shape_mismatch, map.critical_points()[0],
                               "declared shape disagrees with sampled direction"};
    }
    return rep;
}

namespace {

// Required boundary values given the map's own endpoints.
void anchor_targets(Shape shape, int l, double a, double b,
                    double& target_a, double& target_b) {
    bool odd = l % 2 != 0;
    if (shape == Shape::positive) {
        target_a = a;
        target_b = odd ? a : b;
    } else {
        target_a = b;
        target_b = odd ? b : a;
    }
}

}  // namespace

bool is_anchored(const MapModel& map) {
    double ta, tb;
    anchor_targets(map.shape(), map.modality(), map.a(), map.b(), ta, tb);
    if (const auto* t = map.exact_table()) {
        big_rat ra = map.shape() == Shape::positive ? t->breakpoints.front()
                                                    : t->breakpoints.back();
        bool odd = map.modality() % 2 != 0;
        big_rat rb;
        if (map.shape() == Shape::positive)
            rb = odd ? t->breakpoints.front() : t->breakpoints.back();
        else
            rb = odd ? t->breakpoints.back() : t->breakpoints.front();
        return t->values.front() == ra && t->values.back() == rb;
    }
    return map.eval(map.a()) == ta && map.eval(map.b()) == tb;
}

MapModel anchor(const MapModel& map, double margin) {
    if (!(margin > 0)) throw std::invalid_argument("anchor margin must be positive");
    if (is_anchored(map)) return map;

    const double a = map.a(), b = map.b();
    const double fa = map.eval(a), fb = map.eval(b);
    const double arm = margin * (b - a);

    // Extending one side moves the other side's required boundary value, so
    // settle the pair of decisions by iterating them to a fixed point.
    bool left = false, right = false;
    for (int pass = 0; pass < 3; ++pass) {
        double a2 = left ? a - arm : a;
        double b2 = right ? b + arm : b;
        double ta, tb;
        anchor_targets(map.shape(), map.modality(), a2, b2, ta, tb);
        left = left || fa != ta;
        right = right || fb != tb;
    }
    const double a2 = left ? a - arm : a;
    const double b2 = right ? b + arm : b;
    double ta, tb;
    anchor_targets(map.shape(), map.modality(), a2, b2, ta, tb);

    std::string name = map.name() + " anchored";

    if (const auto* t = map.exact_table()) {
        PiecewiseLinearData ext = *t;
        big_rat ra = rat_from_double(a2);
        big_rat rb = rat_from_double(b2);
        bool odd = map.modality() % 2 != 0;
        big_rat rta = map.shape() == Shape::positive ? ra : rb;
        big_rat rtb;
        if (map.shape() == Shape::positive)
            rtb = odd ? ra : rb;
        else
            rtb = odd ? rb : ra;
        if (left) {
            ext.breakpoints.insert(ext.breakpoints.begin(), ra);
            ext.values.insert(ext.values.begin(), rta);
        }
        if (right) {
            ext.breakpoints.push_back(rb);
            ext.values.push_back(rtb);
        }
        return MapModel(std::move(ext), std::move(name));
    }

    auto inner = [m = map](double x) { return m.eval(x); };
    auto extended = [inner, a, b, a2, b2, fa, fb, ta, tb, left, right](double x) {
        if (left && x < a)
            return ta + (x - a2) * (fa - ta) / (a - a2);
        if (right && x > b)
            return fb + (x - b) * (tb - fb) / (b2 - b);
        return inner(x);
    };
    return MapModel(a2, b2, map.critical_points(), map.shape(),
                    std::move(extended), std::move(name));
}

}  // namespace mme
