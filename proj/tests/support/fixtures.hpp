#pragma once

#include <cstdint>
#include <random>

#include "ogstv/image.hpp"

namespace testsupport {

// Top 53 bits -> [0,1); keeps test vectors identical across platforms.
inline double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline ogstv::Image random_image(int rows, int cols, std::uint64_t seed, double lo = 0.0,
                                 double hi = 1.0) {
  std::mt19937_64 rng(seed);
  ogstv::Image img(rows, cols);
  for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = lo + (hi - lo) * u01(rng);
  return img;
}

// Piecewise-constant test scene: flat background with a rectangle, a
// square, a bar and a disk at distinct intensities, all inside [0,1].
inline ogstv::Image make_phantom(int rows, int cols) {
  ogstv::Image img(rows, cols, 0.15);
  auto paint_rect = [&](double r0, double r1, double c0, double c1, double value) {
    for (int r = static_cast<int>(r0 * rows); r < static_cast<int>(r1 * rows); ++r)
      for (int c = static_cast<int>(c0 * cols); c < static_cast<int>(c1 * cols); ++c)
        img(r, c) = value;
  };
  paint_rect(0.12, 0.45, 0.15, 0.60, 0.85);
  paint_rect(0.60, 0.85, 0.55, 0.90, 0.45);
  paint_rect(0.08, 0.40, 0.70, 0.82, 0.65);
  const double cr = 0.68 * rows, cc = 0.28 * cols;
  const double radius = 0.13 * (rows < cols ? rows : cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if ((r - cr) * (r - cr) + (c - cc) * (c - cc) <= radius * radius) img(r, c) = 1.0;
  return img;
}

}  // namespace testsupport
