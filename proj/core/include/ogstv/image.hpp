#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ogstv {

// Row-major grayscale raster of dimensionless intensities. The canonical
// working range is [0,1]; 8-bit file I/O maps a byte v to v/255.
class Image {
 public:
  Image() = default;
  Image(int rows, int cols, double value = 0.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return pixels_.size(); }

  double& operator()(int r, int c) { return pixels_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return pixels_[static_cast<std::size_t>(r) * cols_ + c]; }

  // Periodic (wrap-around) access; r and c may be any integer.
  double at_wrapped(int r, int c) const;

  double* data() { return pixels_.data(); }
  const double* data() const { return pixels_.data(); }

  bool same_shape(const Image& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> pixels_;
};

// Small convolution stencil. The anchor marks the tap treated as the
// kernel center; make() places it at (rows/2, cols/2), which keeps odd
// kernels shift-free under periodic convolution.
struct Kernel {
  int rows = 0;
  int cols = 0;
  int anchor_row = 0;
  int anchor_col = 0;
  std::vector<double> taps;

  static Kernel make(int rows, int cols);

  double& operator()(int r, int c) { return taps[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return taps[static_cast<std::size_t>(r) * cols + c]; }

  double sum() const;
};

// Complex spectrum with the same grid dimensions as the spatial image it
// transforms.
class FreqImage {
 public:
  FreqImage() = default;
  FreqImage(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return bins_.size(); }

  std::complex<double>& operator()(int r, int c) {
    return bins_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const std::complex<double>& operator()(int r, int c) const {
    return bins_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::complex<double>* data() { return bins_.data(); }
  const std::complex<double>* data() const { return bins_.data(); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::complex<double>> bins_;
};

// Unnormalized forward 2-D DFT; the inverse carries the 1/(rows*cols)
// factor, so bin (0,0) of the forward transform equals the pixel sum.
FreqImage fft2(const Image& img);

// Real part of the inverse 2-D DFT (scaled by 1/(rows*cols)). Throws
// std::runtime_error if the discarded imaginary residue exceeds 1e-6
// max-abs, which signals a conjugate-symmetry bug upstream.
Image ifft2(const FreqImage& spec);

// Transfer function of a stencil on a rows x cols periodic grid: the taps
// are zero-padded and circularly shifted so the anchor lands at (0,0),
// then forward-transformed. Multiplying spectra by the result reproduces
// conv_circular. Throws std::invalid_argument if the kernel is larger
// than the grid.
FreqImage otf_from_psf(const Kernel& k, int rows, int cols);

// True (tap-flipped) convolution with periodic wrap-around indexing.
Image conv_circular(const Image& img, const Kernel& k);

// Periodic convolution evaluated in the frequency domain with a
// precomputed transfer function.
Image conv_with_otf(const Image& img, const FreqImage& otf);

double norm_fro(const Image& img);
double max_abs(const Image& img);
double max_abs_diff(const Image& a, const Image& b);

}  // namespace ogstv
