#include "ogstv/shrinkage.hpp"

#include <cmath>
#include <stdexcept>

namespace ogstv {

namespace {

void check(const ShrinkParams& prm) {
  if (!(prm.p > 0.0 && prm.p <= 1.0)) throw std::invalid_argument("ShrinkParams: p must lie in (0,1]");
  if (!(prm.beta > 0.0)) throw std::invalid_argument("ShrinkParams: beta must be positive");
}

double shrink_unchecked(double xi, const ShrinkParams& prm) {
  if (xi == 0.0) return 0.0;
  const double a = std::abs(xi);
  // p = 1 reduces to |xi| - 1/beta; spelled out so the soft-threshold path
  // is exact rather than pow-rounded.
  const double t = prm.p == 1.0 ? 1.0 / prm.beta
                                : std::pow(prm.beta, prm.p - 2.0) * std::pow(a, prm.p - 1.0);
  const double m = a - t;
  return m > 0.0 ? std::copysign(m, xi) : 0.0;
}

}  // namespace

double shrink_p(double xi, const ShrinkParams& prm) {
  check(prm);
  return shrink_unchecked(xi, prm);
}

Image shrink_p(const Image& xi, const ShrinkParams& prm) {
  check(prm);
  Image out = xi;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = shrink_unchecked(out.data()[i], prm);
  }
  return out;
}

double project_box(double f) { return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f); }

Image project_box(const Image& f) {
  Image out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = project_box(out.data()[i]);
  return out;
}

}  // namespace ogstv
