#pragma once

#include "mmentropy/map_model.hpp"

namespace mme {

// Unimodal f(x) = exp(-alpha^2 x^2) + beta on [-(1+beta), 1+beta].
// Requires alpha != 0, beta > -1, and the image staying in the interval.
MapModel make_gaussian(double alpha, double beta);

// Bimodal cubic on [0,1] with critical points 1/4 and 3/4, critical values
// f(1/4) = v1 and f(3/4) = v2, boundary values f(0) = v2 and f(1) = v1.
// Requires 0 <= v2 < v1 <= 1.
MapModel make_bimodal_cubic(double v1, double v2);

// Trimodal quartic-like map on [0,1] with f(0) = 0, f(c_2) = v2 and
// f(c_3) = v3, where c_2 = 1/2, c_3 = (2+sqrt 2)/4 and c_1 depends on the
// parameters.  Requires 0 <= v2 < v3 <= 1 and a nonvanishing c_1
// denominator.
MapModel make_trimodal_quartic(double v2, double v3);

// Continuous piecewise linear map through the given exact points.
MapModel make_piecewise_linear(std::vector<big_rat> breakpoints,
                               std::vector<big_rat> values,
                               std::string name = "pl");

// Full tent map on [0,1]; topological entropy ln 2.
MapModel make_tent();

// 4-modal sawtooth on [0,1] with slopes +-3/2, critical points
// 3/10, 23/60, 7/15, 11/20; boundary anchored.  Entropy ln(3/2).
MapModel make_pl4();

// 5-modal sawtooth on [0,1] with slopes +-3/2, critical points
// 3/10, 2/5, 1/2, 3/5, 7/10; boundary anchored.  Entropy ln(3/2).
MapModel make_pl5();

}  // namespace mme
