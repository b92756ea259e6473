#pragma once

#include "ogstv/image.hpp"

namespace ogstv {

// Parameters of the elementwise p-power shrinkage map
//   shrink(xi) = max(|xi| - beta^(p-2) |xi|^(p-1), 0) * sign(xi),
// defined as 0 at xi = 0. With p = 1 this is the classical soft threshold
// at 1/beta.
struct ShrinkParams {
  double p = 1.0;    // in (0, 1]
  double beta = 1.0; // positive
};

double shrink_p(double xi, const ShrinkParams& prm);
Image shrink_p(const Image& xi, const ShrinkParams& prm);

// Elementwise clamp to [0,1].
double project_box(double f);
Image project_box(const Image& f);

}  // namespace ogstv
