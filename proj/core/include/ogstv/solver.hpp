#pragma once

#include <utility>
#include <vector>

#include "ogstv/image.hpp"
#include "ogstv/ogs.hpp"

namespace ogstv {

// Deblurring model solved here:
//
//   min_F  phi(Kh*F) + phi(Kv*F) + mu ||H*F - G||_p^p   s.t. F in [0,1],
//
// with phi the overlapping-group functional of ogs.hpp. The augmented
// Lagrangian splits Z1 = Kh*F, Z2 = Kv*F, W = H*F - G, T = F with penalty
// weights lambda1 (both Z), lambda2 (W), lambda3 (T) and dual step gamma.
struct SolverConfig {
  double p = 0.6;         // fidelity power, in (0,1]
  double mu = 80.0;       // fidelity weight
  double lambda1 = 1.0;   // gradient-splitting penalty
  double lambda2 = 500.0; // fidelity-splitting penalty
  double lambda3 = 1.0;   // box-splitting penalty
  double gamma = 1.618;   // dual step, in (0,2)
  double eta = 0.999;     // restart factor, in [0,1)
  GroupConfig group;      // K = 3 by default
  MMConfig mm;            // inner prox settings; gamma_prox is forced to 1/lambda1
  double tol = 1e-5;      // stop when ||F_next - F||/||F|| drops below this
  int max_iter = 500;
  bool accelerate = false;

  void validate() const; // throws std::invalid_argument
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> re_history; // one successive-iterate RE per iteration
  bool converged = false;
  double wall_time_s = 0.0;
};

// Full iterate set. Subproblems always read the shadow multipliers
// shadow_v*; the plain solver keeps them equal to v* after every
// iteration, the accelerated solver extrapolates or restarts them
// per-constraint. prev_* hold the previous iteration's plain values for
// the extrapolation step, d[] the combined restart energies and alpha[]
// the extrapolation weights (alpha_i >= 1, reset to 1 on restart).
struct SolverState {
  Image f, z1, z2, w, t;
  Image v1, v2, v3, v4;
  Image shadow_z1, shadow_z2, shadow_w, shadow_t;
  Image shadow_v1, shadow_v2, shadow_v3, shadow_v4;
  Image prev_z1, prev_z2, prev_w, prev_t;
  Image prev_v1, prev_v2, prev_v3, prev_v4;
  double alpha[4] = {1.0, 1.0, 1.0, 1.0};
  double d[4];
  int k = 0;

  // Problem data fixed at init time.
  Image g;       // observation
  Image hf;      // H * f for the current f
  FreqImage g_hat, otf_h, otf_kh, otf_kv;
  FreqImage lhs; // frequency-domain normal-equation denominator
};

// Horizontal and vertical first-difference stencils.
Kernel horizontal_diff_kernel();
Kernel vertical_diff_kernel();

// lambda1 (|F(Kh)|^2 + |F(Kv)|^2) + lambda2 |F(H)|^2 + lambda3, stored as
// a real-valued spectrum; every bin is >= lambda3.
FreqImage precompute_lhs(const Kernel& h, int rows, int cols, const SolverConfig& cfg);

// Builds the iterate set for observation g and blur h: f = z = t = g,
// w = 0, multipliers 0, shadows equal to plain, alpha = 1 and restart
// energies at the +inf sentinel.
SolverState init_solver_state(const Image& g, const Kernel& h, const SolverConfig& cfg);

// Exact minimizer of the quadratic coupling subproblem, evaluated as a
// frequency-domain ratio against the precomputed denominator. Reads
// z1, z2, w, t and the shadow multipliers from the state. Throws
// std::runtime_error if the result is non-finite.
Image update_f(const SolverState& state, const SolverConfig& cfg);

// Plain alternating-direction solver. Returns the box-projected estimate
// and a per-iteration report. cfg.accelerate is ignored (forced off).
std::pair<Image, SolveReport> admm_solve(const Image& g, const Kernel& h,
                                         const SolverConfig& cfg);

// Accelerated variant with per-constraint Nesterov extrapolation and a
// residual-guarded restart: after each iteration the combined energy
//   d_i = (gamma*lambda)^-1 ||V_i - shadow_V_i||^2 + gamma*lambda ||primal_i - shadow_primal_i||^2
// must drop below eta * d_i_prev, else that constraint restarts
// (alpha_i = 1, shadow = plain, d_i = d_i_prev / eta). With eta = 0 the
// restart branch is always taken and the iterate sequence matches
// admm_solve exactly.
std::pair<Image, SolveReport> fast_admm_solve(const Image& g, const Kernel& h,
                                              const SolverConfig& cfg);

// Benchmark-calibrated (mu, p) for a salt-and-pepper level. Grid values
// at 0.3 -> (90, 0.5), 0.4 -> (80, 0.6), 0.5 -> (80, 0.6),
// 0.6 -> (70, 0.6); other levels in (0,1) snap to the nearest grid point
// (ties toward the lower level).
std::pair<double, double> default_params(double noise_level);

}  // namespace ogstv
