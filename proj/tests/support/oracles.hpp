#pragma once

// Independent reference implementations used to cross-check the library:
// literal nested-loop versions of the group functional and majorizer
// weights, a coordinate-descent minimizer for the prox objective, a dense
// circulant normal-equation solve, and a standalone anisotropic-TV/L1
// solver. None of them share code with the library paths they verify.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ogstv/image.hpp"
#include "ogstv/solver.hpp"

namespace testsupport {

inline int wrap_idx(int i, int n) {
  int m = i % n;
  return m < 0 ? m + n : m;
}

// Group functional by direct enumeration of every K x K group.
inline double naive_ogs_value(const ogstv::Image& v, int K) {
  const int kl = (K - 1) / 2, kr = K / 2;
  double total = 0.0;
  for (int r = 0; r < v.rows(); ++r) {
    for (int c = 0; c < v.cols(); ++c) {
      double energy = 0.0;
      for (int a = -kl; a <= kr; ++a)
        for (int b = -kl; b <= kr; ++b) {
          const double x = v(wrap_idx(r + a, v.rows()), wrap_idx(c + b, v.cols()));
          energy += x * x;
        }
      total += std::sqrt(energy);
    }
  }
  return total;
}

// Majorizer diagonal by the literal quadruple loop: for pixel (r,c) sum
// the inverse norms of every group containing it.
inline ogstv::Image naive_mm_weights(const ogstv::Image& v, int K, double eps) {
  const int kl = (K - 1) / 2, kr = K / 2;
  ogstv::Image d(v.rows(), v.cols(), 0.0);
  for (int r = 0; r < v.rows(); ++r) {
    for (int c = 0; c < v.cols(); ++c) {
      double acc = 0.0;
      for (int i = -kl; i <= kr; ++i) {
        for (int j = -kl; j <= kr; ++j) {
          double energy = eps;
          for (int k1 = -kl; k1 <= kr; ++k1)
            for (int k2 = -kl; k2 <= kr; ++k2) {
              const double x = v(wrap_idx(r - i + k1, v.rows()), wrap_idx(c - j + k2, v.cols()));
              energy += x * x;
            }
          acc += 1.0 / std::sqrt(energy);
        }
      }
      d(r, c) = acc;
    }
  }
  return d;
}

// 0.5||v-v0||^2 + gamma * sum_g sqrt(eps + ||group||^2), fully spelled out.
inline double naive_prox_objective(const ogstv::Image& v, const ogstv::Image& v0, double gamma,
                                   int K, double eps) {
  const int kl = (K - 1) / 2, kr = K / 2;
  double quad = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v.data()[i] - v0.data()[i];
    quad += d * d;
  }
  double reg = 0.0;
  for (int r = 0; r < v.rows(); ++r) {
    for (int c = 0; c < v.cols(); ++c) {
      double energy = eps;
      for (int a = -kl; a <= kr; ++a)
        for (int b = -kl; b <= kr; ++b) {
          const double x = v(wrap_idx(r + a, v.rows()), wrap_idx(c + b, v.cols()));
          energy += x * x;
        }
      reg += std::sqrt(energy);
    }
  }
  return 0.5 * quad + gamma * reg;
}

// Cyclic coordinate descent with golden-section line searches on the
// smoothed prox objective. Each coordinate minimizer lies strictly
// between 0 and v0 at that pixel (the derivative changes sign across that
// interval), so the bracket is exact.
inline ogstv::Image prox_reference(const ogstv::Image& v0, double gamma, int K, double eps,
                                   int max_sweeps = 3000, double obj_tol = 1e-14) {
  const int kl = (K - 1) / 2, kr = K / 2;
  const int rows = v0.rows(), cols = v0.cols();
  ogstv::Image v = v0;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double last_obj = naive_prox_objective(v, v0, gamma, K, eps);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const double target = v0(r, c);
        if (target == 0.0) {
          v(r, c) = 0.0;
          continue;
        }
        // Partial energies of the K^2 groups containing (r,c), with the
        // active coordinate removed.
        std::vector<double> partial;
        partial.reserve(static_cast<std::size_t>(K) * K);
        const double self = v(r, c);
        for (int a = -kl; a <= kr; ++a) {
          for (int b = -kl; b <= kr; ++b) {
            const int ar = r - a, ac = c - b;
            double energy = eps;
            for (int i = -kl; i <= kr; ++i)
              for (int j = -kl; j <= kr; ++j) {
                const double x = v(wrap_idx(ar + i, rows), wrap_idx(ac + j, cols));
                energy += x * x;
              }
            partial.push_back(energy - self * self);
          }
        }
        auto line_obj = [&](double t) {
          double value = 0.5 * (t - target) * (t - target);
          for (double pg : partial) value += gamma * std::sqrt(pg + t * t);
          return value;
        };
        double lo = target < 0.0 ? target : 0.0;
        double hi = target < 0.0 ? 0.0 : target;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = line_obj(x1), f2 = line_obj(x2);
        for (int it = 0; it < 120 && hi - lo > 1e-15 * (1.0 + std::abs(target)); ++it) {
          if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = line_obj(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = line_obj(x2);
          }
        }
        v(r, c) = 0.5 * (lo + hi);
      }
    }
    const double obj = naive_prox_objective(v, v0, gamma, K, eps);
    if (last_obj - obj < obj_tol * (1.0 + std::abs(obj))) break;
    last_obj = obj;
  }
  return v;
}

inline Eigen::VectorXd vec(const ogstv::Image& img) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(img.size()));
  for (std::size_t i = 0; i < img.size(); ++i) x[static_cast<Eigen::Index>(i)] = img.data()[i];
  return x;
}

inline ogstv::Image unvec(const Eigen::VectorXd& x, int rows, int cols) {
  ogstv::Image img(rows, cols);
  for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = x[static_cast<Eigen::Index>(i)];
  return img;
}

// Dense matrix of the periodic convolution operator, assembled straight
// from the taps (independent of both the spatial and FFT library paths).
inline Eigen::MatrixXd circulant_from_kernel(const ogstv::Kernel& k, int rows, int cols) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows) * cols;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Eigen::Index p = static_cast<Eigen::Index>(r) * cols + c;
      for (int i = 0; i < k.rows; ++i) {
        for (int j = 0; j < k.cols; ++j) {
          const int rr = wrap_idx(r - i + k.anchor_row, rows);
          const int cc = wrap_idx(c - j + k.anchor_col, cols);
          m(p, static_cast<Eigen::Index>(rr) * cols + cc) += k(i, j);
        }
      }
    }
  }
  return m;
}

// Dense normal-equation solve of the quadratic coupling subproblem.
inline ogstv::Image dense_f_update(const ogstv::Image& z1, const ogstv::Image& z2,
                                   const ogstv::Image& w, const ogstv::Image& t,
                                   const ogstv::Image& v1, const ogstv::Image& v2,
                                   const ogstv::Image& v3, const ogstv::Image& v4,
                                   const ogstv::Image& g, const ogstv::Kernel& h, double l1,
                                   double l2, double l3) {
  const int rows = g.rows(), cols = g.cols();
  const Eigen::MatrixXd mh = circulant_from_kernel(ogstv::horizontal_diff_kernel(), rows, cols);
  const Eigen::MatrixXd mv = circulant_from_kernel(ogstv::vertical_diff_kernel(), rows, cols);
  const Eigen::MatrixXd mb = circulant_from_kernel(h, rows, cols);
  const Eigen::Index n = static_cast<Eigen::Index>(rows) * cols;
  const Eigen::MatrixXd a = l1 * (mh.transpose() * mh + mv.transpose() * mv) +
                            l2 * mb.transpose() * mb +
                            l3 * Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd b = l1 * (mh.transpose() * (vec(z1) - vec(v1) / l1) +
                                  mv.transpose() * (vec(z2) - vec(v2) / l1)) +
                            l2 * (mb.transpose() * (vec(g) + vec(w) - vec(v3) / l2)) +
                            l3 * (vec(t) - vec(v4) / l3);
  return unvec(a.llt().solve(b), rows, cols);
}

inline double soft_threshold(double x, double thr) {
  if (x > thr) return x - thr;
  if (x < -thr) return x + thr;
  return 0.0;
}

struct AtvL1Params {
  double mu = 80.0;
  double lambda1 = 1.0;
  double lambda2 = 500.0;
  double lambda3 = 1.0;
  double gamma = 1.618;
  double tol = 1e-5;
  int max_iter = 500;
};

// Anisotropic-TV / l1-fidelity solver with the same variable splitting
// but plain scalar soft thresholds everywhere, written from scratch as a
// reference for the group-size-1, p = 1 degenerate configuration.
inline ogstv::Image atv_l1_solve(const ogstv::Image& g, const ogstv::Kernel& h,
                                 const AtvL1Params& prm, int* iterations = nullptr) {
  using ogstv::Image;
  const int rows = g.rows(), cols = g.cols();
  const ogstv::Kernel kh = ogstv::horizontal_diff_kernel();
  const ogstv::Kernel kv = ogstv::vertical_diff_kernel();
  const ogstv::FreqImage oh = ogstv::otf_from_psf(h, rows, cols);
  const ogstv::FreqImage okh = ogstv::otf_from_psf(kh, rows, cols);
  const ogstv::FreqImage okv = ogstv::otf_from_psf(kv, rows, cols);
  const ogstv::FreqImage g_hat = ogstv::fft2(g);
  std::vector<double> lhs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    lhs[i] = prm.lambda1 * (std::norm(okh.data()[i]) + std::norm(okv.data()[i])) +
             prm.lambda2 * std::norm(oh.data()[i]) + prm.lambda3;
  }

  Image f = g, z1 = g, z2 = g, t = g;
  Image w(rows, cols, 0.0);
  Image v1(rows, cols, 0.0), v2(rows, cols, 0.0), v3(rows, cols, 0.0), v4(rows, cols, 0.0);
  Image hf = ogstv::conv_with_otf(g, oh);

  int k = 0;
  for (; k < prm.max_iter; ++k) {
    const Image khf = ogstv::conv_circular(f, kh);
    const Image kvf = ogstv::conv_circular(f, kv);
    for (std::size_t i = 0; i < g.size(); ++i) {
      z1.data()[i] = soft_threshold(khf.data()[i] + v1.data()[i] / prm.lambda1, 1.0 / prm.lambda1);
      z2.data()[i] = soft_threshold(kvf.data()[i] + v2.data()[i] / prm.lambda1, 1.0 / prm.lambda1);
      w.data()[i] = soft_threshold(hf.data()[i] - g.data()[i] + v3.data()[i] / prm.lambda2,
                                   prm.mu / prm.lambda2);
      const double tt = f.data()[i] + v4.data()[i] / prm.lambda3;
      t.data()[i] = tt < 0.0 ? 0.0 : (tt > 1.0 ? 1.0 : tt);
    }

    Image s1(rows, cols), s2(rows, cols), s3(rows, cols), s4(rows, cols);
    for (std::size_t i = 0; i < g.size(); ++i) {
      s1.data()[i] = z1.data()[i] - v1.data()[i] / prm.lambda1;
      s2.data()[i] = z2.data()[i] - v2.data()[i] / prm.lambda1;
      s3.data()[i] = w.data()[i] - v3.data()[i] / prm.lambda2;
      s4.data()[i] = t.data()[i] - v4.data()[i] / prm.lambda3;
    }
    const ogstv::FreqImage f1 = ogstv::fft2(s1);
    const ogstv::FreqImage f2 = ogstv::fft2(s2);
    const ogstv::FreqImage f3 = ogstv::fft2(s3);
    const ogstv::FreqImage f4 = ogstv::fft2(s4);
    ogstv::FreqImage ratio(rows, cols);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::complex<double> rhs =
          prm.lambda1 * (std::conj(okh.data()[i]) * f1.data()[i] +
                         std::conj(okv.data()[i]) * f2.data()[i]) +
          prm.lambda2 * std::conj(oh.data()[i]) * (g_hat.data()[i] + f3.data()[i]) +
          prm.lambda3 * f4.data()[i];
      ratio.data()[i] = rhs / lhs[i];
    }
    const Image f_next = ogstv::ifft2(ratio);
    const Image hf_next = ogstv::conv_with_otf(f_next, oh);
    const Image khf_next = ogstv::conv_circular(f_next, kh);
    const Image kvf_next = ogstv::conv_circular(f_next, kv);
    for (std::size_t i = 0; i < g.size(); ++i) {
      v1.data()[i] -= prm.gamma * prm.lambda1 * (z1.data()[i] - khf_next.data()[i]);
      v2.data()[i] -= prm.gamma * prm.lambda1 * (z2.data()[i] - kvf_next.data()[i]);
      v3.data()[i] -=
          prm.gamma * prm.lambda2 * (w.data()[i] - (hf_next.data()[i] - g.data()[i]));
      v4.data()[i] -= prm.gamma * prm.lambda3 * (t.data()[i] - f_next.data()[i]);
    }

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double d = f_next.data()[i] - f.data()[i];
      num += d * d;
      den += f.data()[i] * f.data()[i];
    }
    f = f_next;
    hf = hf_next;
    if (den > 0.0 && std::sqrt(num / den) < prm.tol) {
      ++k;
      break;
    }
  }
  if (iterations) *iterations = k;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double& x = f.data()[i];
    x = x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
  }
  return f;
}

}  // namespace testsupport
