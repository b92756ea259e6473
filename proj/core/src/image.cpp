#include "ogstv/image.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace ogstv {

namespace {

int wrap(int i, int n) {
  int m = i % n;
  return m < 0 ? m + n : m;
}

// FFTW planning is not thread-safe and measured plans are not
// reproducible, so plans are created once per (rows, cols, sign) under a
// lock with FFTW_ESTIMATE and reused via the new-array execute API.
// FFTW_UNALIGNED keeps new-array execution valid for any buffer.
class PlanCache {
 public:
  fftw_plan get(int rows, int cols, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(rows, cols, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch_in(static_cast<std::size_t>(rows) * cols);
    std::vector<std::complex<double>> scratch_out(scratch_in.size());
    fftw_plan plan = fftw_plan_dft_2d(
        rows, cols,
        reinterpret_cast<fftw_complex*>(scratch_in.data()),
        reinterpret_cast<fftw_complex*>(scratch_out.data()),
        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fft2: FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(fftw_plan plan, const std::complex<double>* in, std::complex<double>* out) {
  // Out-of-place c2c transforms leave the input untouched.
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

Image::Image(int rows, int cols, double value)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("Image: dimensions must be positive");
  pixels_.assign(static_cast<std::size_t>(rows) * cols, value);
}

double Image::at_wrapped(int r, int c) const {
  return (*this)(wrap(r, rows_), wrap(c, cols_));
}

bool Image::all_finite() const {
  for (double v : pixels_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Kernel Kernel::make(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("Kernel: dimensions must be positive");
  Kernel k;
  k.rows = rows;
  k.cols = cols;
  k.anchor_row = rows / 2;
  k.anchor_col = cols / 2;
  k.taps.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  return k;
}

double Kernel::sum() const {
  double s = 0.0;
  for (double t : taps) s += t;
  return s;
}

FreqImage::FreqImage(int rows, int cols)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("FreqImage: dimensions must be positive");
  bins_.assign(static_cast<std::size_t>(rows) * cols, {0.0, 0.0});
}

FreqImage fft2(const Image& img) {
  const int rows = img.rows(), cols = img.cols();
  std::vector<std::complex<double>> in(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) in[i] = img.data()[i];
  FreqImage out(rows, cols);
  execute(plan_cache().get(rows, cols, FFTW_FORWARD), in.data(), out.data());
  return out;
}

Image ifft2(const FreqImage& spec) {
  const int rows = spec.rows(), cols = spec.cols();
  std::vector<std::complex<double>> out(spec.size());
  execute(plan_cache().get(rows, cols, FFTW_BACKWARD), spec.data(), out.data());
  const double scale = 1.0 / (static_cast<double>(rows) * cols);
  Image img(rows, cols);
  double residue = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    img.data()[i] = out[i].real() * scale;
    residue = std::max(residue, std::abs(out[i].imag()) * scale);
  }
  if (residue > 1e-6) {
    throw std::runtime_error("ifft2: imaginary residue " + std::to_string(residue) +
                             " exceeds 1e-6; spectrum is not conjugate-symmetric");
  }
  return img;
}

FreqImage otf_from_psf(const Kernel& k, int rows, int cols) {
  if (k.rows > rows || k.cols > cols) {
    throw std::invalid_argument("otf_from_psf: kernel larger than image");
  }
  Image padded(rows, cols, 0.0);
  for (int i = 0; i < k.rows; ++i) {
    for (int j = 0; j < k.cols; ++j) {
      padded(wrap(i - k.anchor_row, rows), wrap(j - k.anchor_col, cols)) += k(i, j);
    }
  }
  return fft2(padded);
}

Image conv_circular(const Image& img, const Kernel& k) {
  const int rows = img.rows(), cols = img.cols();
  if (k.rows > rows || k.cols > cols) {
    throw std::invalid_argument("conv_circular: kernel larger than image");
  }
  Image out(rows, cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = 0; i < k.rows; ++i) {
        const int rr = wrap(r - i + k.anchor_row, rows);
        for (int j = 0; j < k.cols; ++j) {
          const int cc = wrap(c - j + k.anchor_col, cols);
          acc += k(i, j) * img(rr, cc);
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Image conv_with_otf(const Image& img, const FreqImage& otf) {
  if (img.rows() != otf.rows() || img.cols() != otf.cols()) {
    throw std::invalid_argument("conv_with_otf: dimension mismatch");
  }
  FreqImage spec = fft2(img);
  for (std::size_t i = 0; i < spec.size(); ++i) spec.data()[i] *= otf.data()[i];
  return ifft2(spec);
}

double norm_fro(const Image& img) {
  double s = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) s += img.data()[i] * img.data()[i];
  return std::sqrt(s);
}

double max_abs(const Image& img) {
  double m = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) m = std::max(m, std::abs(img.data()[i]));
  return m;
}

double max_abs_diff(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace ogstv
