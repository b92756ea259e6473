#include "ogstv/degrade.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ogstv {

Kernel gaussian_kernel(int size, double sigma) {
  if (size < 1) throw std::invalid_argument("gaussian_kernel: size must be positive");
  if (size % 2 == 0) throw std::invalid_argument("gaussian_kernel: size must be odd");
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel: sigma must be positive");
  Kernel k = Kernel::make(size, size);
  const int c = size / 2;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double y = i - c, x = j - c;
      const double t = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
      k(i, j) = t;
      sum += t;
    }
  }
  for (double& t : k.taps) t /= sum;
  return k;
}

Kernel mean_kernel(int size) {
  if (size < 1) throw std::invalid_argument("mean_kernel: size must be positive");
  Kernel k = Kernel::make(size, size);
  const double t = 1.0 / (static_cast<double>(size) * size);
  for (double& tap : k.taps) tap = t;
  return k;
}

Image blur(const Image& img, const Kernel& k) { return conv_circular(img, k); }

Image add_salt_pepper(const Image& img, const NoiseSpec& spec,
                      std::vector<std::uint8_t>* mask) {
  if (!(spec.level >= 0.0 && spec.level <= 1.0)) {
    throw std::invalid_argument("add_salt_pepper: level must lie in [0,1]");
  }
  std::mt19937_64 rng(spec.seed);
  const bool always = spec.level >= 1.0;
  // level < 1 keeps the product strictly below 2^64, so the cast is safe.
  const std::uint64_t threshold =
      always ? 0 : static_cast<std::uint64_t>(spec.level * 18446744073709551616.0L);
  Image out = img;
  if (mask) mask->assign(img.size(), 0);
  std::size_t i = 0;
  for (int r = 0; r < out.rows(); ++r) {
    for (int c = 0; c < out.cols(); ++c, ++i) {
      const std::uint64_t u = rng();
      if (always || u < threshold) {
        out(r, c) = (rng() & 1u) ? 1.0 : 0.0;
        if (mask) (*mask)[i] = 1;
      }
    }
  }
  return out;
}

namespace {

int parse_int(std::string_view text, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.begin(), text.end(), value);
  if (ec != std::errc() || ptr != text.end()) {
    throw std::invalid_argument(std::string("kernel spec: bad ") + what);
  }
  return value;
}

double parse_double(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("kernel spec: bad ") + what);
  }
  if (used != text.size()) throw std::invalid_argument(std::string("kernel spec: bad ") + what);
  return value;
}

}  // namespace

Kernel parse_kernel_spec(const std::string& spec) {
  const auto first = spec.find(':');
  const std::string name = spec.substr(0, first);
  if (name == "mean") {
    if (first == std::string::npos) throw std::invalid_argument("kernel spec: mean:<size>");
    return mean_kernel(parse_int(spec.substr(first + 1), "size"));
  }
  if (name == "gaussian") {
    if (first == std::string::npos) throw std::invalid_argument("kernel spec: gaussian:<size>:<sigma>");
    const auto second = spec.find(':', first + 1);
    if (second == std::string::npos) throw std::invalid_argument("kernel spec: gaussian:<size>:<sigma>");
    const int size = parse_int(std::string_view(spec).substr(first + 1, second - first - 1), "size");
    const double sigma = parse_double(spec.substr(second + 1), "sigma");
    return gaussian_kernel(size, sigma);
  }
  throw std::invalid_argument("kernel spec: unknown kernel '" + name + "'");
}

}  // namespace ogstv
