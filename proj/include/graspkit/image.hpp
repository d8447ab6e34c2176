#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "graspkit/common.hpp"

namespace graspkit {

/// Dense 8-bit image, row-major, interleaved channels (1 = mask/gray, 3 = RGB).
struct Image {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int h, int w, int c, std::uint8_t fill = 0)
      : height(h), width(w), channels(c), data(static_cast<std::size_t>(h) * w * c, fill) {}

  std::uint8_t& at(int y, int x, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int y, int x, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  std::size_t pixel_count() const { return static_cast<std::size_t>(height) * width; }

  bool same_shape(const Image& o) const {
    return height == o.height && width == o.width && channels == o.channels;
  }
  bool operator==(const Image& o) const { return same_shape(o) && data == o.data; }
};

/// Float image in [0,1]-ish range used by encoders and augmentation; same
/// layout as Image.
struct ImageF {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> data;

  ImageF() = default;
  ImageF(int h, int w, int c, float fill = 0.f)
      : height(h), width(w), channels(c), data(static_cast<std::size_t>(h) * w * c, fill) {}

  float& at(int y, int x, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  float at(int y, int x, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

inline ImageF to_float01(const Image& img) {
  ImageF out(img.height, img.width, img.channels);
  for (std::size_t i = 0; i < img.data.size(); ++i) out.data[i] = img.data[i] / 255.0f;
  return out;
}

inline Image to_u8(const ImageF& img) {
  Image out(img.height, img.width, img.channels);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    float v = std::clamp(img.data[i], 0.0f, 1.0f) * 255.0f;
    out.data[i] = static_cast<std::uint8_t>(std::lround(v));
  }
  return out;
}

inline std::size_t mask_area(const Image& mask) {
  std::size_t n = 0;
  for (auto v : mask.data) n += (v != 0);
  return n;
}

/// 3x3 binary dilation (8-connected).
inline Image dilate1(const Image& mask) {
  Image out(mask.height, mask.width, 1, 0);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) {
      std::uint8_t v = 0;
      for (int dy = -1; dy <= 1 && !v; ++dy)
        for (int dx = -1; dx <= 1 && !v; ++dx) {
          int yy = y + dy, xx = x + dx;
          if (yy >= 0 && yy < mask.height && xx >= 0 && xx < mask.width && mask.at(yy, xx))
            v = 1;
        }
      out.at(y, x) = v;
    }
  return out;
}

/// 3x3 binary erosion (8-connected); border pixels erode.
inline Image erode1(const Image& mask) {
  Image out(mask.height, mask.width, 1, 0);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) {
      std::uint8_t v = 1;
      for (int dy = -1; dy <= 1 && v; ++dy)
        for (int dx = -1; dx <= 1 && v; ++dx) {
          int yy = y + dy, xx = x + dx;
          if (yy < 0 || yy >= mask.height || xx < 0 || xx >= mask.width || !mask.at(yy, xx))
            v = 0;
        }
      out.at(y, x) = v;
    }
  return out;
}

/// RGB <-> HSV on [0,1] floats, standard hexcone model.
inline std::array<float, 3> rgb_to_hsv(float r, float g, float b) {
  float mx = std::max({r, g, b}), mn = std::min({r, g, b});
  float d = mx - mn;
  float h = 0.f;
  if (d > 0.f) {
    if (mx == r)
      h = std::fmod((g - b) / d, 6.0f);
    else if (mx == g)
      h = (b - r) / d + 2.0f;
    else
      h = (r - g) / d + 4.0f;
    h /= 6.0f;
    if (h < 0.f) h += 1.0f;
  }
  float s = mx > 0.f ? d / mx : 0.f;
  return {h, s, mx};
}

inline std::array<float, 3> hsv_to_rgb(float h, float s, float v) {
  h = h - std::floor(h);
  float c = v * s;
  float hp = h * 6.0f;
  float x = c * (1.0f - std::fabs(std::fmod(hp, 2.0f) - 1.0f));
  float r = 0, g = 0, b = 0;
  if (hp < 1) {
    r = c; g = x;
  } else if (hp < 2) {
    r = x; g = c;
  } else if (hp < 3) {
    g = c; b = x;
  } else if (hp < 4) {
    g = x; b = c;
  } else if (hp < 5) {
    r = x; b = c;
  } else {
    r = c; b = x;
  }
  float m = v - c;
  return {r + m, g + m, b + m};
}

}  // namespace graspkit
