#pragma once

#include "ogstv/image.hpp"

namespace ogstv {

struct QualityReport {
  double psnr_db = 0.0;
  double ssim = 0.0;
  double re = 0.0;
};

// 10 log10(255^2 / MSE) with the MSE taken on the 255 intensity scale.
// Identical images return +infinity.
double psnr(const Image& x, const Image& y);

// Single-window SSIM over whole-image means, population variances and
// covariance on the 255 scale, with stabilizers (255 k1)^2 and (255 k2)^2.
// Deliberately not the 11x11 windowed variant.
double ssim_global(const Image& x, const Image& y, double k1 = 0.01, double k2 = 0.03);

// ||y - x_ref||_F / ||x_ref||_F. Throws if the reference is identically
// zero.
double relative_error(const Image& x_ref, const Image& y);

QualityReport evaluate_quality(const Image& ref, const Image& test);

}  // namespace ogstv
