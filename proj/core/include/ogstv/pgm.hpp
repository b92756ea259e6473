#pragma once

#include <string>

#include "ogstv/image.hpp"

namespace ogstv {

// Binary 8-bit grayscale PGM (P5, maxval 255). Bytes map to intensities
// as v/255 on read; writing rounds clamp(v,0,1)*255 to the nearest byte.
Image read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Image& img);

}  // namespace ogstv
