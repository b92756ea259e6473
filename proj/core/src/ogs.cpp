#include "ogstv/ogs.hpp"

#include <cmath>
#include <stdexcept>

namespace ogstv {

namespace {

void check_group(const GroupConfig& cfg) {
  if (cfg.group_size < 1) throw std::invalid_argument("GroupConfig: group_size must be >= 1");
  if (!(cfg.group_eps > 0.0)) throw std::invalid_argument("GroupConfig: group_eps must be positive");
}

// Wrapped index table covering offsets in [-k, n + k).
std::vector<int> wrap_table(int n, int k) {
  std::vector<int> t(static_cast<std::size_t>(n) + 2 * k);
  for (int i = -k; i < n + k; ++i) {
    int m = i % n;
    if (m < 0) m += n;
    t[static_cast<std::size_t>(i + k)] = m;
  }
  return t;
}

// energy(r,c) = eps + sum of v^2 over the group anchored at (r,c).
Image group_energy(const Image& v, const GroupConfig& cfg) {
  const int rows = v.rows(), cols = v.cols();
  const int kl = cfg.left(), kr = cfg.right();
  const int k = std::max(kl, kr);
  const auto wr = wrap_table(rows, k);
  const auto wc = wrap_table(cols, k);
  Image e(rows, cols, cfg.group_eps);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int a = -kl; a <= kr; ++a) {
        const int rr = wr[static_cast<std::size_t>(r + a + k)];
        for (int b = -kl; b <= kr; ++b) {
          const double x = v(rr, wc[static_cast<std::size_t>(c + b + k)]);
          acc += x * x;
        }
      }
      e(r, c) += acc;
    }
  }
  return e;
}

}  // namespace

double ogs_value(const Image& v, const GroupConfig& cfg) {
  check_group(cfg);
  const int rows = v.rows(), cols = v.cols();
  const int kl = cfg.left(), kr = cfg.right();
  const int k = std::max(kl, kr);
  const auto wr = wrap_table(rows, k);
  const auto wc = wrap_table(cols, k);
  double total = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int a = -kl; a <= kr; ++a) {
        const int rr = wr[static_cast<std::size_t>(r + a + k)];
        for (int b = -kl; b <= kr; ++b) {
          const double x = v(rr, wc[static_cast<std::size_t>(c + b + k)]);
          acc += x * x;
        }
      }
      total += std::sqrt(acc);
    }
  }
  return total;
}

Image mm_weights(const Image& v, const GroupConfig& cfg) {
  check_group(cfg);
  const int rows = v.rows(), cols = v.cols();
  const int kl = cfg.left(), kr = cfg.right();
  const int k = std::max(kl, kr);
  const auto wr = wrap_table(rows, k);
  const auto wc = wrap_table(cols, k);

  Image inv_norm = group_energy(v, cfg);
  for (std::size_t i = 0; i < inv_norm.size(); ++i) {
    inv_norm.data()[i] = 1.0 / std::sqrt(inv_norm.data()[i]);
  }

  // d(r,c) accumulates the inverse group norms of every group containing
  // (r,c): anchors (r-a, c-b) for (a,b) in the group window.
  Image d(rows, cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int a = -kl; a <= kr; ++a) {
        const int rr = wr[static_cast<std::size_t>(r - a + k)];
        for (int b = -kl; b <= kr; ++b) {
          acc += inv_norm(rr, wc[static_cast<std::size_t>(c - b + k)]);
        }
      }
      d(r, c) = acc;
    }
  }
  return d;
}

Image ogs_prox(const Image& v0, const MMConfig& mm, const GroupConfig& cfg,
               std::vector<double>* objective_trace) {
  check_group(cfg);
  if (!(mm.tol > 0.0)) throw std::invalid_argument("MMConfig: tol must be positive");
  if (mm.max_iter < 1) throw std::invalid_argument("MMConfig: max_iter must be >= 1");
  if (!(mm.gamma_prox > 0.0)) throw std::invalid_argument("MMConfig: gamma_prox must be positive");

  Image v = v0;
  if (objective_trace) {
    objective_trace->clear();
    objective_trace->push_back(ogs_prox_objective(v, v0, mm.gamma_prox, cfg));
  }
  for (int iter = 0; iter < mm.max_iter; ++iter) {
    const Image d = mm_weights(v, cfg);
    double diff2 = 0.0, prev2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double prev = v.data()[i];
      const double next = v0.data()[i] / (1.0 + mm.gamma_prox * d.data()[i]);
      diff2 += (next - prev) * (next - prev);
      prev2 += prev * prev;
      v.data()[i] = next;
    }
    if (objective_trace) {
      objective_trace->push_back(ogs_prox_objective(v, v0, mm.gamma_prox, cfg));
    }
    const double rel = prev2 > 0.0 ? std::sqrt(diff2 / prev2) : (diff2 > 0.0 ? 1.0 : 0.0);
    if (rel <= mm.tol) break;
  }
  return v;
}

double ogs_prox_objective(const Image& v, const Image& v0, double gamma_prox,
                          const GroupConfig& cfg) {
  if (!v.same_shape(v0)) throw std::invalid_argument("ogs_prox_objective: dimension mismatch");
  double quad = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v.data()[i] - v0.data()[i];
    quad += d * d;
  }
  const Image e = group_energy(v, cfg);
  double reg = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) reg += std::sqrt(e.data()[i]);
  return 0.5 * quad + gamma_prox * reg;
}

}  // namespace ogstv
