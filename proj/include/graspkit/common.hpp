#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace graspkit {

namespace fs = std::filesystem;

/// Typed failure categories. Every throwing operation in the library raises
/// Error with one of these codes so callers and tests can match on the cause.
enum class Errc {
  IoFailure,
  BadMagic,
  Truncated,
  UnknownDtype,
  ShapeMismatch,
  MissingStream,
  InconsistentStream,
  EmptyDataset,
  DimensionMismatch,
  TooManyObjects,
  UnplaceableScene,
  UnknownObject,
  OccludedTarget,
  UnreachableTarget,
  ExpertFloorViolated,
  WrongResolution,
  NoObjectInBox,
  TrackLost,
  InvalidBBox,
  Unparseable,
  ConfigError,
  CheckpointMismatch,
  NonFiniteLoss,
  HttpError,
  DegenerateInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::IoFailure: return "IoFailure";
    case Errc::BadMagic: return "BadMagic";
    case Errc::Truncated: return "Truncated";
    case Errc::UnknownDtype: return "UnknownDtype";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::MissingStream: return "MissingStream";
    case Errc::InconsistentStream: return "InconsistentStream";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TooManyObjects: return "TooManyObjects";
    case Errc::UnplaceableScene: return "UnplaceableScene";
    case Errc::UnknownObject: return "UnknownObject";
    case Errc::OccludedTarget: return "OccludedTarget";
    case Errc::UnreachableTarget: return "UnreachableTarget";
    case Errc::ExpertFloorViolated: return "ExpertFloorViolated";
    case Errc::WrongResolution: return "WrongResolution";
    case Errc::NoObjectInBox: return "NoObjectInBox";
    case Errc::TrackLost: return "TrackLost";
    case Errc::InvalidBBox: return "InvalidBBox";
    case Errc::Unparseable: return "Unparseable";
    case Errc::ConfigError: return "ConfigError";
    case Errc::CheckpointMismatch: return "CheckpointMismatch";
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::HttpError: return "HttpError";
    case Errc::DegenerateInput: return "DegenerateInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) raise(code, what);
}

/// FNV-1a over raw bytes. Used to fingerprint frozen encoder weights.
inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string base64_encode(const std::vector<std::uint8_t>& in) {
  static const char* tbl = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((in.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= in.size(); i += 3) {
    std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8) | in[i + 2];
    out += tbl[(v >> 18) & 63];
    out += tbl[(v >> 12) & 63];
    out += tbl[(v >> 6) & 63];
    out += tbl[v & 63];
  }
  if (i + 1 == in.size()) {
    std::uint32_t v = in[i] << 16;
    out += tbl[(v >> 18) & 63];
    out += tbl[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == in.size()) {
    std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8);
    out += tbl[(v >> 18) & 63];
    out += tbl[(v >> 12) & 63];
    out += tbl[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

inline std::vector<std::uint8_t> base64_decode(std::string_view in) {
  auto val = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<std::uint8_t> out;
  int acc = 0, bits = 0;
  for (char c : in) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = val(c);
    require(v >= 0, Errc::Unparseable, "invalid base64 character");
    acc = (acc << 6) | v;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
    }
  }
  return out;
}

}  // namespace graspkit
