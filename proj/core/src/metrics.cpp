#include "ogstv/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ogstv {

double psnr(const Image& x, const Image& y) {
  if (!x.same_shape(y)) throw std::invalid_argument("psnr: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = 255.0 * (x.data()[i] - y.data()[i]);
    acc += d * d;
  }
  const double mse = acc / static_cast<double>(x.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim_global(const Image& x, const Image& y, double k1, double k2) {
  if (!x.same_shape(y)) throw std::invalid_argument("ssim_global: dimension mismatch");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += 255.0 * x.data()[i];
    my += 255.0 * y.data()[i];
  }
  mx /= n;
  my /= n;
  double vx = 0.0, vy = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = 255.0 * x.data()[i] - mx;
    const double dy = 255.0 * y.data()[i] - my;
    vx += dx * dx;
    vy += dy * dy;
    cov += dx * dy;
  }
  vx /= n;
  vy /= n;
  cov /= n;
  const double c1 = (255.0 * k1) * (255.0 * k1);
  const double c2 = (255.0 * k2) * (255.0 * k2);
  return ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
         ((mx * mx + my * my + c1) * (vx + vy + c2));
}

double relative_error(const Image& x_ref, const Image& y) {
  if (!x_ref.same_shape(y)) throw std::invalid_argument("relative_error: dimension mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x_ref.size(); ++i) {
    const double d = y.data()[i] - x_ref.data()[i];
    num += d * d;
    den += x_ref.data()[i] * x_ref.data()[i];
  }
  if (den == 0.0) throw std::invalid_argument("relative_error: reference is identically zero");
  return std::sqrt(num / den);
}

QualityReport evaluate_quality(const Image& ref, const Image& test) {
  QualityReport q;
  q.psnr_db = psnr(ref, test);
  q.ssim = ssim_global(ref, test);
  q.re = relative_error(ref, test);
  return q;
}

}  // namespace ogstv
