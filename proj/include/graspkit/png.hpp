#pragma once

#include <zlib.h>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "graspkit/common.hpp"
#include "graspkit/image.hpp"

namespace graspkit {

namespace detail {

inline void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back((v >> 24) & 0xff);
  out.push_back((v >> 16) & 0xff);
  out.push_back((v >> 8) & 0xff);
  out.push_back(v & 0xff);
}

inline std::uint32_t get_u32be(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) | (std::uint32_t(p[2]) << 8) |
         std::uint32_t(p[3]);
}

inline void png_chunk(std::vector<std::uint8_t>& out, const char type[4],
                      const std::vector<std::uint8_t>& payload) {
  put_u32be(out, static_cast<std::uint32_t>(payload.size()));
  std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  std::uint32_t crc = static_cast<std::uint32_t>(
      crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start)));
  put_u32be(out, crc);
}

}  // namespace detail

/// Encode an 8-bit gray or RGB image as a non-interlaced PNG (filter 0).
inline std::vector<std::uint8_t> png_encode(const Image& img) {
  require(img.channels == 1 || img.channels == 3, Errc::ShapeMismatch,
          "png encoder supports 1 or 3 channels");
  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(img.height) * (1 + img.width * img.channels));
  for (int y = 0; y < img.height; ++y) {
    raw.push_back(0);  // filter: none
    const std::uint8_t* row = img.data.data() + static_cast<std::size_t>(y) * img.width * img.channels;
    raw.insert(raw.end(), row, row + static_cast<std::size_t>(img.width) * img.channels);
  }
  uLongf comp_len = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> comp(comp_len);
  int rc = compress2(comp.data(), &comp_len, raw.data(), static_cast<uLong>(raw.size()), 6);
  require(rc == Z_OK, Errc::IoFailure, "zlib compression failed");
  comp.resize(comp_len);

  std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  std::vector<std::uint8_t> ihdr;
  detail::put_u32be(ihdr, static_cast<std::uint32_t>(img.width));
  detail::put_u32be(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.push_back(8);                               // bit depth
  ihdr.push_back(img.channels == 1 ? 0 : 2);       // gray / truecolor
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  detail::png_chunk(out, "IHDR", ihdr);
  detail::png_chunk(out, "IDAT", comp);
  detail::png_chunk(out, "IEND", {});
  return out;
}

/// Decode an 8-bit gray/RGB/RGBA non-interlaced PNG. RGBA drops alpha.
inline Image png_decode(const std::vector<std::uint8_t>& bytes) {
  static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  require(bytes.size() > 8 && std::memcmp(bytes.data(), sig, 8) == 0, Errc::BadMagic,
          "not a PNG stream");
  std::size_t pos = 8;
  int width = 0, height = 0, channels = 0, file_channels = 0;
  std::vector<std::uint8_t> idat;
  while (pos + 8 <= bytes.size()) {
    std::uint32_t len = detail::get_u32be(bytes.data() + pos);
    require(pos + 12 + len <= bytes.size(), Errc::Truncated, "PNG chunk runs past end");
    std::string type(reinterpret_cast<const char*>(bytes.data() + pos + 4), 4);
    const std::uint8_t* payload = bytes.data() + pos + 8;
    if (type == "IHDR") {
      width = static_cast<int>(detail::get_u32be(payload));
      height = static_cast<int>(detail::get_u32be(payload + 4));
      int depth = payload[8], color = payload[9], interlace = payload[12];
      require(depth == 8 && interlace == 0, Errc::Unparseable,
              "only 8-bit non-interlaced PNGs supported");
      switch (color) {
        case 0: file_channels = 1; channels = 1; break;
        case 2: file_channels = 3; channels = 3; break;
        case 6: file_channels = 4; channels = 3; break;
        default: raise(Errc::Unparseable, "unsupported PNG color type");
      }
    } else if (type == "IDAT") {
      idat.insert(idat.end(), payload, payload + len);
    } else if (type == "IEND") {
      break;
    }
    pos += 12 + len;
  }
  require(width > 0 && height > 0 && !idat.empty(), Errc::Truncated, "PNG missing IHDR/IDAT");

  std::size_t stride = static_cast<std::size_t>(width) * file_channels;
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(height) * (stride + 1));
  uLongf raw_len = static_cast<uLongf>(raw.size());
  int rc = uncompress(raw.data(), &raw_len, idat.data(), static_cast<uLong>(idat.size()));
  require(rc == Z_OK && raw_len == raw.size(), Errc::Truncated, "PNG inflate failed");

  // Undo per-scanline filters in place.
  std::vector<std::uint8_t> prev(stride, 0);
  Image img(height, width, channels);
  const int bpp = file_channels;
  for (int y = 0; y < height; ++y) {
    std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * (stride + 1);
    std::uint8_t filter = row[0];
    std::uint8_t* cur = row + 1;
    for (std::size_t i = 0; i < stride; ++i) {
      int a = i >= static_cast<std::size_t>(bpp) ? cur[i - bpp] : 0;
      int b = prev[i];
      int c = i >= static_cast<std::size_t>(bpp) ? prev[i - bpp] : 0;
      int x = cur[i];
      switch (filter) {
        case 0: break;
        case 1: x += a; break;
        case 2: x += b; break;
        case 3: x += (a + b) / 2; break;
        case 4: {
          int p = a + b - c;
          int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
          x += (pa <= pb && pa <= pc) ? a : (pb <= pc ? b : c);
          break;
        }
        default: raise(Errc::Unparseable, "unknown PNG filter");
      }
      cur[i] = static_cast<std::uint8_t>(x & 0xff);
    }
    std::memcpy(prev.data(), cur, stride);
    for (int x = 0; x < width; ++x)
      for (int ch = 0; ch < channels; ++ch) img.at(y, x, ch) = cur[x * file_channels + ch];
  }
  return img;
}

inline void png_save(const fs::path& path, const Image& img) {
  auto bytes = png_encode(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), Errc::IoFailure, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline Image png_load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::IoFailure, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return png_decode(bytes);
}

}  // namespace graspkit
