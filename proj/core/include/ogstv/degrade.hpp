#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ogstv/image.hpp"

namespace ogstv {

// Salt-and-pepper corruption parameters. `level` is the fraction of
// corrupted pixels in [0,1]; a corrupted pixel becomes 0 or 1 with equal
// probability.
struct NoiseSpec {
  double level = 0.0;
  std::uint64_t seed = 0;
};

// Normalized Gaussian stencil, taps(i,j) ~ exp(-(x^2+y^2)/(2 sigma^2))
// with integer offsets from the center. Only odd sizes are accepted.
Kernel gaussian_kernel(int size, double sigma);

// size x size stencil of constant taps 1/size^2.
Kernel mean_kernel(int size);

// Periodic-boundary blur, conv_circular(img, k).
Image blur(const Image& img, const Kernel& k);

// Impulse corruption. Draws come from a std::mt19937_64 seeded with
// spec.seed; pixels are visited in row-major order, each drawing one
// 64-bit word u. The pixel is corrupted when u < floor(level * 2^64); a
// corrupted pixel draws a second word w and becomes 1 when w is odd,
// else 0. This sequence is stable across platforms and releases, so
// recorded outputs for a given (image, level, seed) never drift.
// When mask is non-null it receives one byte per pixel (row-major),
// 1 where the generator corrupted the pixel. This distinguishes real
// corruption from a noise value that happens to equal the original.
Image add_salt_pepper(const Image& img, const NoiseSpec& spec,
                      std::vector<std::uint8_t>* mask = nullptr);

// Parses the CLI kernel grammar: "gaussian:<size>:<sigma>" or
// "mean:<size>". Throws std::invalid_argument on malformed specs.
Kernel parse_kernel_spec(const std::string& spec);

}  // namespace ogstv
