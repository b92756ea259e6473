#include "ogstv/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ogstv/shrinkage.hpp"

namespace ogstv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// a + scale * b
Image add_scaled(const Image& a, const Image& b, double scale) {
  Image out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += scale * b.data()[i];
  return out;
}

double sq_dist(const Image& a, const Image& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    s += d * d;
  }
  return s;
}

double successive_re(const Image& next, const Image& prev) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const double d = next.data()[i] - prev.data()[i];
    num += d * d;
    den += prev.data()[i] * prev.data()[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
  return std::sqrt(num / den);
}

void check_finite(const Image& img, const char* stage) {
  if (!img.all_finite()) {
    throw std::runtime_error(std::string("solver: non-finite iterate after the ") + stage);
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("SolverConfig: p must lie in (0,1]");
  if (!(mu > 0.0)) throw std::invalid_argument("SolverConfig: mu must be positive");
  if (!(lambda1 > 0.0 && lambda2 > 0.0 && lambda3 > 0.0)) {
    throw std::invalid_argument("SolverConfig: lambda1..lambda3 must be positive");
  }
  if (!(gamma > 0.0 && gamma < 2.0)) throw std::invalid_argument("SolverConfig: gamma must lie in (0,2)");
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("SolverConfig: eta must lie in [0,1)");
  if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
  if (group.group_size < 1) throw std::invalid_argument("SolverConfig: group_size must be >= 1");
  if (!(group.group_eps > 0.0)) throw std::invalid_argument("SolverConfig: group_eps must be positive");
  if (!(mm.tol > 0.0) || mm.max_iter < 1) throw std::invalid_argument("SolverConfig: bad MM settings");
}

Kernel horizontal_diff_kernel() {
  Kernel k = Kernel::make(1, 2);
  k(0, 0) = -1.0;
  k(0, 1) = 1.0;
  return k;
}

Kernel vertical_diff_kernel() {
  Kernel k = Kernel::make(2, 1);
  k(0, 0) = -1.0;
  k(1, 0) = 1.0;
  return k;
}

FreqImage precompute_lhs(const Kernel& h, int rows, int cols, const SolverConfig& cfg) {
  const FreqImage oh = otf_from_psf(h, rows, cols);
  const FreqImage okh = otf_from_psf(horizontal_diff_kernel(), rows, cols);
  const FreqImage okv = otf_from_psf(vertical_diff_kernel(), rows, cols);
  FreqImage lhs(rows, cols);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    lhs.data()[i] = cfg.lambda1 * (std::norm(okh.data()[i]) + std::norm(okv.data()[i])) +
                    cfg.lambda2 * std::norm(oh.data()[i]) + cfg.lambda3;
  }
  return lhs;
}

SolverState init_solver_state(const Image& g, const Kernel& h, const SolverConfig& cfg) {
  SolverState st;
  st.g = g;
  st.g_hat = fft2(g);
  st.otf_h = otf_from_psf(h, g.rows(), g.cols());
  st.otf_kh = otf_from_psf(horizontal_diff_kernel(), g.rows(), g.cols());
  st.otf_kv = otf_from_psf(vertical_diff_kernel(), g.rows(), g.cols());
  st.lhs = precompute_lhs(h, g.rows(), g.cols(), cfg);
  st.hf = conv_with_otf(g, st.otf_h);

  st.f = g;
  st.z1 = g;
  st.z2 = g;
  st.w = Image(g.rows(), g.cols(), 0.0);
  st.t = g;
  const Image zero(g.rows(), g.cols(), 0.0);
  st.v1 = st.v2 = st.v3 = st.v4 = zero;

  st.shadow_z1 = st.z1;
  st.shadow_z2 = st.z2;
  st.shadow_w = st.w;
  st.shadow_t = st.t;
  st.shadow_v1 = st.shadow_v2 = st.shadow_v3 = st.shadow_v4 = zero;

  st.prev_z1 = st.z1;
  st.prev_z2 = st.z2;
  st.prev_w = st.w;
  st.prev_t = st.t;
  st.prev_v1 = st.prev_v2 = st.prev_v3 = st.prev_v4 = zero;

  for (double& di : st.d) di = kInf;
  for (double& ai : st.alpha) ai = 1.0;
  st.k = 0;
  return st;
}

Image update_f(const SolverState& st, const SolverConfig& cfg) {
  const int rows = st.g.rows(), cols = st.g.cols();
  const FreqImage s1 = fft2(add_scaled(st.z1, st.shadow_v1, -1.0 / cfg.lambda1));
  const FreqImage s2 = fft2(add_scaled(st.z2, st.shadow_v2, -1.0 / cfg.lambda1));
  const FreqImage s3 = fft2(add_scaled(st.w, st.shadow_v3, -1.0 / cfg.lambda2));
  const FreqImage s4 = fft2(add_scaled(st.t, st.shadow_v4, -1.0 / cfg.lambda3));
  FreqImage ratio(rows, cols);
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    const std::complex<double> rhs =
        cfg.lambda1 * (std::conj(st.otf_kh.data()[i]) * s1.data()[i] +
                       std::conj(st.otf_kv.data()[i]) * s2.data()[i]) +
        cfg.lambda2 * std::conj(st.otf_h.data()[i]) * (st.g_hat.data()[i] + s3.data()[i]) +
        cfg.lambda3 * s4.data()[i];
    ratio.data()[i] = rhs / st.lhs.data()[i];
  }
  Image out = ifft2(ratio);
  check_finite(out, "F subproblem");
  return out;
}

namespace {

std::pair<Image, SolveReport> run_solver(const Image& g, const Kernel& h, const SolverConfig& cfg) {
  cfg.validate();
  if (!g.all_finite()) throw std::invalid_argument("solver: observation contains non-finite values");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = g.data()[i];
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("solver: observation outside [0,1]");
  }

  const auto start = std::chrono::steady_clock::now();
  SolverState st = init_solver_state(g, h, cfg);
  const Kernel kh = horizontal_diff_kernel();
  const Kernel kv = vertical_diff_kernel();
  MMConfig mm = cfg.mm;
  mm.gamma_prox = 1.0 / cfg.lambda1;

  const double gl1 = cfg.gamma * cfg.lambda1;
  const double gl2 = cfg.gamma * cfg.lambda2;
  const double gl3 = cfg.gamma * cfg.lambda3;

  SolveReport report;
  report.re_history.reserve(static_cast<std::size_t>(cfg.max_iter));

  while (st.k < cfg.max_iter) {
    st.prev_z1 = st.z1;
    st.prev_z2 = st.z2;
    st.prev_w = st.w;
    st.prev_t = st.t;
    st.prev_v1 = st.v1;
    st.prev_v2 = st.v2;
    st.prev_v3 = st.v3;
    st.prev_v4 = st.v4;

    st.z1 = ogs_prox(add_scaled(conv_circular(st.f, kh), st.shadow_v1, 1.0 / cfg.lambda1), mm, cfg.group);
    check_finite(st.z1, "Z1 subproblem");
    st.z2 = ogs_prox(add_scaled(conv_circular(st.f, kv), st.shadow_v2, 1.0 / cfg.lambda1), mm, cfg.group);
    check_finite(st.z2, "Z2 subproblem");

    Image xi = add_scaled(st.hf, st.g, -1.0);
    xi = add_scaled(xi, st.shadow_v3, 1.0 / cfg.lambda2);
    st.w = shrink_p(xi, ShrinkParams{cfg.p, cfg.lambda2 / cfg.mu});
    check_finite(st.w, "W subproblem");

    st.t = project_box(add_scaled(st.f, st.shadow_v4, 1.0 / cfg.lambda3));
    check_finite(st.t, "T subproblem");

    const Image f_next = update_f(st, cfg);
    const Image hf_next = conv_with_otf(f_next, st.otf_h);

    st.v1 = add_scaled(st.shadow_v1, add_scaled(st.z1, conv_circular(f_next, kh), -1.0), -gl1);
    st.v2 = add_scaled(st.shadow_v2, add_scaled(st.z2, conv_circular(f_next, kv), -1.0), -gl1);
    Image rw = add_scaled(st.w, add_scaled(hf_next, st.g, -1.0), -1.0);
    st.v3 = add_scaled(st.shadow_v3, rw, -gl2);
    st.v4 = add_scaled(st.shadow_v4, add_scaled(st.t, f_next, -1.0), -gl3);
    check_finite(st.v1, "multiplier update");
    check_finite(st.v2, "multiplier update");
    check_finite(st.v3, "multiplier update");
    check_finite(st.v4, "multiplier update");

    if (cfg.accelerate) {
      const double d_new[4] = {
          sq_dist(st.v1, st.shadow_v1) / gl1 + gl1 * sq_dist(st.z1, st.shadow_z1),
          sq_dist(st.v2, st.shadow_v2) / gl1 + gl1 * sq_dist(st.z2, st.shadow_z2),
          sq_dist(st.v3, st.shadow_v3) / gl2 + gl2 * sq_dist(st.w, st.shadow_w),
          sq_dist(st.v4, st.shadow_v4) / gl3 + gl3 * sq_dist(st.t, st.shadow_t),
      };
      for (int i = 0; i < 4; ++i) {
        if (d_new[i] < cfg.eta * st.d[i]) {
          const double alpha_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * st.alpha[i] * st.alpha[i]));
          const double c = (st.alpha[i] - 1.0) / alpha_next;
          switch (i) {
            case 0:
              st.shadow_z1 = add_scaled(st.z1, add_scaled(st.z1, st.prev_z1, -1.0), c);
              st.shadow_v1 = add_scaled(st.v1, add_scaled(st.v1, st.prev_v1, -1.0), c);
              break;
            case 1:
              st.shadow_z2 = add_scaled(st.z2, add_scaled(st.z2, st.prev_z2, -1.0), c);
              st.shadow_v2 = add_scaled(st.v2, add_scaled(st.v2, st.prev_v2, -1.0), c);
              break;
            case 2:
              st.shadow_w = add_scaled(st.w, add_scaled(st.w, st.prev_w, -1.0), c);
              st.shadow_v3 = add_scaled(st.v3, add_scaled(st.v3, st.prev_v3, -1.0), c);
              break;
            case 3:
              st.shadow_t = add_scaled(st.t, add_scaled(st.t, st.prev_t, -1.0), c);
              st.shadow_v4 = add_scaled(st.v4, add_scaled(st.v4, st.prev_v4, -1.0), c);
              break;
          }
          st.alpha[i] = alpha_next;
          st.d[i] = d_new[i];
        } else {
          st.alpha[i] = 1.0;
          st.d[i] = st.d[i] / cfg.eta;
          switch (i) {
            case 0:
              st.shadow_z1 = st.z1;
              st.shadow_v1 = st.v1;
              break;
            case 1:
              st.shadow_z2 = st.z2;
              st.shadow_v2 = st.v2;
              break;
            case 2:
              st.shadow_w = st.w;
              st.shadow_v3 = st.v3;
              break;
            case 3:
              st.shadow_t = st.t;
              st.shadow_v4 = st.v4;
              break;
          }
        }
      }
    } else {
      st.shadow_z1 = st.z1;
      st.shadow_z2 = st.z2;
      st.shadow_w = st.w;
      st.shadow_t = st.t;
      st.shadow_v1 = st.v1;
      st.shadow_v2 = st.v2;
      st.shadow_v3 = st.v3;
      st.shadow_v4 = st.v4;
    }

    const double re = successive_re(f_next, st.f);
    report.re_history.push_back(re);
    st.f = f_next;
    st.hf = hf_next;
    ++st.k;
    if (re < cfg.tol) {
      report.converged = true;
      break;
    }
  }

  report.iterations = st.k;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {project_box(st.f), std::move(report)};
}

}  // namespace

std::pair<Image, SolveReport> admm_solve(const Image& g, const Kernel& h, const SolverConfig& cfg) {
  SolverConfig plain = cfg;
  plain.accelerate = false;
  return run_solver(g, h, plain);
}

std::pair<Image, SolveReport> fast_admm_solve(const Image& g, const Kernel& h,
                                              const SolverConfig& cfg) {
  SolverConfig fast = cfg;
  fast.accelerate = true;
  return run_solver(g, h, fast);
}

std::pair<double, double> default_params(double noise_level) {
  if (!(noise_level > 0.0 && noise_level < 1.0)) {
    throw std::invalid_argument("default_params: noise level must lie in (0,1)");
  }
  static constexpr double levels[4] = {0.3, 0.4, 0.5, 0.6};
  static constexpr double mus[4] = {90.0, 80.0, 80.0, 70.0};
  static constexpr double ps[4] = {0.5, 0.6, 0.6, 0.6};
  int best = 0;
  double best_dist = std::abs(noise_level - levels[0]);
  for (int i = 1; i < 4; ++i) {
    const double dist = std::abs(noise_level - levels[i]);
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return {mus[best], ps[best]};
}

}  // namespace ogstv
