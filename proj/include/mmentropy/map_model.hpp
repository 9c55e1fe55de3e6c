#pragma once

#include "mmentropy/numeric.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mme {

// Shape of a multimodal map: positive means the first lap increases
// (c_1 is a maximum), negative means it decreases.
enum class Shape { positive, negative };

enum class MapKind { smooth, piecewise_linear };

// Exact description of a continuous piecewise linear map.  Breakpoints are
// strictly increasing and include both interval endpoints; values[i] is the
// map value at breakpoints[i].
struct PiecewiseLinearData {
    std::vector<big_rat> breakpoints;
    std::vector<big_rat> values;
};

// A continuous l-modal interval map f: [a,b] -> [a,b] with critical points
// a < c_1 < ... < c_l < b and strictly monotone laps of alternating
// direction.  Immutable once constructed.
class MapModel {
  public:
    // Smooth map given by an evaluator.  Critical points must be strictly
    // increasing and interior; throws std::invalid_argument otherwise.
    MapModel(double a, double b, std::vector<double> critical_points,
             Shape shape, std::function<double(double)> evaluator,
             std::string name);

    // Piecewise linear map.  Critical points are the interior breakpoints
    // where the slope changes sign.  Throws std::invalid_argument if
    // breakpoints are not strictly increasing, two consecutive values are
    // equal (a zero-slope piece), the image leaves the interval, or there
    // is no turning point at all.
    MapModel(PiecewiseLinearData table, std::string name);

    double a() const { return a_; }
    double b() const { return b_; }
    int modality() const { return static_cast<int>(critical_.size()); }
    const std::vector<double>& critical_points() const { return critical_; }
    Shape shape() const { return shape_; }
    MapKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    // Exact critical points and endpoints; null for smooth maps.
    const PiecewiseLinearData* exact_table() const {
        return kind_ == MapKind::piecewise_linear ? &table_ : nullptr;
    }
    const std::vector<big_rat>& exact_critical_points() const {
        return exact_critical_;
    }

    double eval(double x) const;
    big_rat eval_exact(const big_rat& x) const;  // piecewise linear only

  private:
    double a_, b_;
    std::vector<double> critical_;
    Shape shape_;
    MapKind kind_;
    std::function<double(double)> evaluator_;
    std::string name_;
    PiecewiseLinearData table_;
    std::vector<big_rat> exact_critical_;
    std::vector<double> bp_dbl_, val_dbl_;  // rounded table for fast eval
};

// Evaluates f at x.  Throws std::domain_error if x lies outside [a,b].
double evaluate(const MapModel& map, double x);

// Exact evaluation for piecewise linear maps; throws std::logic_error for
// smooth maps and std::domain_error outside [a,b].
big_rat evaluate_exact(const MapModel& map, const big_rat& x);

struct ValidationIssue {
    enum Kind { not_monotone, not_invariant, shape_mismatch } kind;
    double location;
    std::string detail;
};

struct ValidationReport {
    bool valid = true;
    int modality = 0;
    Shape detected_shape = Shape::positive;
    std::optional<ValidationIssue> first_violation;
};

// Checks strict monotonicity on every lap, alternation of direction, and
// f([a,b]) within [a,b] on a grid of points_per_lap samples per lap.
ValidationReport validate(const MapModel& map, int points_per_lap = 1024);

// True when the boundary values already satisfy the anchoring condition:
// positive shape needs f(a)=a and f(b)=a (l odd) or f(b)=b (l even);
// negative shape needs f(a)=b and f(b)=b (l odd) or f(b)=a (l even).
bool is_anchored(const MapModel& map);

// Extends the map by linear outer arms onto a slightly larger interval so
// that the boundary values land as required above.  Modality and shape are
// unchanged; a side already anchored is left untouched.  margin is the arm
// width as a fraction of b-a.
MapModel anchor(const MapModel& map, double margin = 0.1);

}  // namespace mme
