#include "mmentropy/families.hpp"

#include <cmath>
#include <stdexcept>

namespace mme {

MapModel make_gaussian(double alpha, double beta) {
    if (alpha == 0) throw std::invalid_argument("gaussian: alpha must be nonzero");
    if (!(beta > -1)) throw std::invalid_argument("gaussian: beta must exceed -1");
    double b = 1 + beta;
    double a = -b;
    double a2 = alpha * alpha;
    if (std::exp(-a2 * b * b) + beta < a)
        throw std::invalid_argument("gaussian: image leaves the interval");
    auto f = [a2, beta](double x) { return std::exp(-a2 * x * x) + beta; };
    std::string name = "gaussian(" + double_to_string(alpha) + "," +
                       double_to_string(beta) + ")";
    return MapModel(a, b, {0.0}, Shape::positive, f, std::move(name));
}

MapModel make_bimodal_cubic(double v1, double v2) {
    if (!(0 <= v2 && v2 < v1 && v1 <= 1))
        throw std::invalid_argument("cubic2: need 0 <= v2 < v1 <= 1");
    auto f = [v1, v2](double x) {
        double p = x * (9 + x * (-24 + 16 * x));
        return (v1 - v2) * p + v2;
    };
    std::string name = "cubic2(" + double_to_string(v1) + "," +
                       double_to_string(v2) + ")";
    return MapModel(0, 1, {0.25, 0.75}, Shape::positive, f, std::move(name));
}

MapModel make_trimodal_quartic(double v2, double v3) {
    if (!(0 <= v2 && v2 < v3 && v3 <= 1))
        throw std::invalid_argument("quartic3: need 0 <= v2 < v3 <= 1");
    const double s2 = std::sqrt(2.0);
    double denom = -7 * v2 + (4 * s2 + 2) * v3;
    if (std::abs(denom) < 1e-9)
        throw std::invalid_argument("quartic3: degenerate parameters");
    double c1 = ((-s2 - 4) * v2 + (12 * s2 - 8) * v3) / (8 * denom);
    double c2 = 0.5;
    double c3 = (2 + s2) / 4;
    double pref = 4 * ((2 * s2 - 1) * v2 - 2 * v3) / (2 * (2 * s2 + 1) * v3 - 7 * v2);
    auto f = [pref, v2, v3, s2](double x) {
        double u = 1 - 2 * x;
        double pa = 4 * (1 + 2 * s2) * (x - 1) * u * u;
        double pb = 3 * s2 + 5 +
                    x * (-(37 + 18 * s2) + x * (20 * (4 + s2) - 56 * x));
        return pref * x * (pa * v3 + pb * v2);
    };
    std::string name = "quartic3(" + double_to_string(v2) + "," +
                       double_to_string(v3) + ")";
    return MapModel(0, 1, {c1, c2, c3}, Shape::positive, f, std::move(name));
}

MapModel make_piecewise_linear(std::vector<big_rat> breakpoints,
                               std::vector<big_rat> values,
                               std::string name) {
    PiecewiseLinearData pl{std::move(breakpoints), std::move(values)};
    return MapModel(std::move(pl), std::move(name));
}

MapModel make_tent() {
    return make_piecewise_linear({big_rat(0), big_rat(1, 2), big_rat(1)},
                                 {big_rat(0), big_rat(1), big_rat(0)}, "tent");
}

MapModel make_pl4() {
    return make_piecewise_linear(
        {big_rat(0), big_rat(3, 10), big_rat(23, 60), big_rat(7, 15),
         big_rat(11, 20), big_rat(1)},
        {big_rat(0), big_rat(9, 20), big_rat(13, 40), big_rat(9, 20),
         big_rat(13, 40), big_rat(1)},
        "pl4");
}

MapModel make_pl5() {
    return make_piecewise_linear(
        {big_rat(0), big_rat(3, 10), big_rat(2, 5), big_rat(1, 2),
         big_rat(3, 5), big_rat(7, 10), big_rat(1)},
        {big_rat(0), big_rat(9, 20), big_rat(3, 10), big_rat(9, 20),
         big_rat(3, 10), big_rat(9, 20), big_rat(0)},
        "pl5");
}

}  // namespace mme
