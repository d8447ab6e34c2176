#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "graspkit/common.hpp"

namespace graspkit {

static_assert(std::endian::native == std::endian::little,
              "tensor container assumes a little-endian host");

enum class Dtype : std::uint8_t { F32 = 0, U8 = 1, I64 = 2 };

inline std::size_t dtype_size(Dtype d) {
  switch (d) {
    case Dtype::F32: return 4;
    case Dtype::U8: return 1;
    case Dtype::I64: return 8;
  }
  raise(Errc::UnknownDtype, "dtype code " + std::to_string(static_cast<int>(d)));
}

/// In-memory tensor with row-major payload. Exactly one of the typed buffers
/// is populated, matching `dtype`.
struct Tensor {
  Dtype dtype = Dtype::F32;
  std::vector<std::uint32_t> shape;
  std::vector<float> f32;
  std::vector<std::uint8_t> u8;
  std::vector<std::int64_t> i64;

  static Tensor of_f32(std::vector<std::uint32_t> shape, std::vector<float> data) {
    Tensor t;
    t.dtype = Dtype::F32;
    t.shape = std::move(shape);
    t.f32 = std::move(data);
    return t;
  }
  static Tensor of_u8(std::vector<std::uint32_t> shape, std::vector<std::uint8_t> data) {
    Tensor t;
    t.dtype = Dtype::U8;
    t.shape = std::move(shape);
    t.u8 = std::move(data);
    return t;
  }
  static Tensor of_i64(std::vector<std::uint32_t> shape, std::vector<std::int64_t> data) {
    Tensor t;
    t.dtype = Dtype::I64;
    t.shape = std::move(shape);
    t.i64 = std::move(data);
    return t;
  }

  std::size_t element_count() const {
    std::size_t n = 1;
    for (auto d : shape) n *= d;
    return n;
  }

  std::size_t stored_count() const {
    switch (dtype) {
      case Dtype::F32: return f32.size();
      case Dtype::U8: return u8.size();
      case Dtype::I64: return i64.size();
    }
    return 0;
  }

  const void* raw_data() const {
    switch (dtype) {
      case Dtype::F32: return f32.data();
      case Dtype::U8: return u8.data();
      case Dtype::I64: return i64.data();
    }
    return nullptr;
  }

  bool operator==(const Tensor& o) const {
    return dtype == o.dtype && shape == o.shape && f32 == o.f32 && u8 == o.u8 && i64 == o.i64;
  }
};

inline constexpr char kTensorMagic[4] = {'D', 'G', 'T', '1'};

/// Layout: magic "DGT1" | dtype u8 | ndim u8 | ndim x u32 LE dims |
/// row-major LE payload. Shape/data mismatch is rejected before any bytes
/// are written.
inline void write_tensor(const fs::path& path, const Tensor& t) {
  require(!t.shape.empty() && t.shape.size() <= 255, Errc::ShapeMismatch,
          "tensor rank must be in [1,255]");
  require(t.element_count() == t.stored_count(), Errc::ShapeMismatch,
          "shape declares " + std::to_string(t.element_count()) + " elements, payload has " +
              std::to_string(t.stored_count()));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), Errc::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(kTensorMagic, 4);
  auto code = static_cast<std::uint8_t>(t.dtype);
  out.write(reinterpret_cast<const char*>(&code), 1);
  auto ndim = static_cast<std::uint8_t>(t.shape.size());
  out.write(reinterpret_cast<const char*>(&ndim), 1);
  for (std::uint32_t d : t.shape) out.write(reinterpret_cast<const char*>(&d), 4);
  out.write(reinterpret_cast<const char*>(t.raw_data()),
            static_cast<std::streamsize>(t.element_count() * dtype_size(t.dtype)));
  require(out.good(), Errc::IoFailure, "short write to " + path.string());
}

inline Tensor read_tensor(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::IoFailure, "cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  require(in.gcount() == 4 && std::memcmp(magic, kTensorMagic, 4) == 0, Errc::BadMagic,
          path.string() + " is not a tensor file");
  std::uint8_t code = 0, ndim = 0;
  in.read(reinterpret_cast<char*>(&code), 1);
  in.read(reinterpret_cast<char*>(&ndim), 1);
  require(in.good(), Errc::Truncated, "header cut short in " + path.string());
  require(code <= 2, Errc::UnknownDtype, "dtype code " + std::to_string(code));
  require(ndim >= 1, Errc::ShapeMismatch, "zero-rank tensor in " + path.string());

  Tensor t;
  t.dtype = static_cast<Dtype>(code);
  t.shape.resize(ndim);
  in.read(reinterpret_cast<char*>(t.shape.data()), std::streamsize(4) * ndim);
  require(in.gcount() == std::streamsize(4) * ndim, Errc::Truncated,
          "dims cut short in " + path.string());

  const std::size_t count = t.element_count();
  const std::streamsize bytes = static_cast<std::streamsize>(count * dtype_size(t.dtype));
  switch (t.dtype) {
    case Dtype::F32: t.f32.resize(count); break;
    case Dtype::U8: t.u8.resize(count); break;
    case Dtype::I64: t.i64.resize(count); break;
  }
  in.read(reinterpret_cast<char*>(const_cast<void*>(t.raw_data())), bytes);
  require(in.gcount() == bytes, Errc::Truncated,
          "payload shorter than declared shape in " + path.string());
  return t;
}

}  // namespace graspkit
