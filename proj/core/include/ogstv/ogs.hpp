#pragma once

#include <vector>

#include "ogstv/image.hpp"

namespace ogstv {

// Overlapping K x K pixel groups with periodic indexing. A group anchored
// at (i,j) spans rows i-left()..i+right() and the same column range, so
// every pixel belongs to K^2 groups.
struct GroupConfig {
  int group_size = 3;       // K
  double group_eps = 1e-10; // added inside the square root of zero-energy groups

  int left() const { return (group_size - 1) / 2; }
  int right() const { return group_size / 2; }
};

// Inner-loop settings for the majorize-minimize prox iteration. The prox
// is re-solved inside every outer solver iteration, so the defaults favor
// warm accuracy over exactness.
struct MMConfig {
  double gamma_prox = 1.0; // weight of the group functional inside the prox
  double tol = 1e-3;       // relative successive-iterate change
  int max_iter = 5;        // inner iteration cap
};

// Group functional: sum over all anchors of the l2 norm of the K x K
// group. With K = 1 this is the plain l1 magnitude of the field.
double ogs_value(const Image& v, const GroupConfig& cfg);

// Per-pixel diagonal of the majorizer,
//   d(r,c) = sum_{(a,b) in window} [eps + energy(r-a, c-b)]^(-1/2),
// where energy(r,c) is the squared l2 norm of the group anchored at
// (r,c). Both passes are K x K periodic box sums.
Image mm_weights(const Image& v, const GroupConfig& cfg);

// Proximal map of gamma_prox * (group functional) at v0, computed by the
// majorize-minimize fixed point
//   v <- v0 ./ (1 + gamma_prox * d(v)),
// stopped on relative change <= tol or after max_iter sweeps. The update
// is a pointwise shrink factor in (0,1], so the output keeps the sign
// pattern of v0 and |out| <= |v0| elementwise.
//
// When objective_trace is non-null it receives the smoothed prox
// objective (see ogs_prox_objective) at v0 and after every sweep; the
// sequence is non-increasing up to rounding.
Image ogs_prox(const Image& v0, const MMConfig& mm, const GroupConfig& cfg,
               std::vector<double>* objective_trace = nullptr);

// 0.5*||v - v0||^2 + gamma_prox * sum_groups sqrt(eps + energy). Uses the
// same eps smoothing as mm_weights, which is the function the MM
// iteration provably descends.
double ogs_prox_objective(const Image& v, const Image& v0, double gamma_prox,
                          const GroupConfig& cfg);

}  // namespace ogstv
