#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "graspkit/common.hpp"
#include "graspkit/image.hpp"
#include "graspkit/nn/mat.hpp"

namespace graspkit::perception {

enum class EncoderKind { FrozenPatch, TrainablePatch, Adapter };

inline const char* encoder_kind_name(EncoderKind k) {
  switch (k) {
    case EncoderKind::FrozenPatch: return "frozen_patch";
    case EncoderKind::TrainablePatch: return "trainable_patch";
    case EncoderKind::Adapter: return "adapter";
  }
  return "?";
}
inline EncoderKind encoder_kind_from(const std::string& s) {
  if (s == "frozen_patch") return EncoderKind::FrozenPatch;
  if (s == "trainable_patch") return EncoderKind::TrainablePatch;
  if (s == "adapter") return EncoderKind::Adapter;
  raise(Errc::ConfigError, "unknown encoder kind " + s);
}

/// frozen_patch standardizes each patch before a fixed seeded projection, the
/// mechanism that makes the features exactly invariant to per-pixel affine
/// lighting changes. trainable_patch projects raw pixel patches with learned
/// weights and inherits no such invariance.
struct EncoderSpec {
  EncoderKind kind = EncoderKind::FrozenPatch;
  int img_side = 96;
  int patch_side = 8;
  int dim = 128;
  std::uint64_t weight_seed = 1;
  bool frozen = true;       // trainable ablations flip this
  bool standardize = true;  // per-patch standardization before projection
  double pos_scale = 0.25;

  static EncoderSpec frozen_patch(int img_side = 96, int patch = 8, int dim = 128,
                                  std::uint64_t seed = 1) {
    return EncoderSpec{EncoderKind::FrozenPatch, img_side, patch, dim, seed, true, true, 0.25};
  }
  static EncoderSpec trainable_patch(int img_side = 96, int patch = 8, int dim = 128,
                                     std::uint64_t seed = 1) {
    return EncoderSpec{EncoderKind::TrainablePatch, img_side, patch, dim, seed, false, false, 0.25};
  }

  int grid_side() const { return img_side / patch_side; }
  int token_count() const { return grid_side() * grid_side(); }
  int patch_dim(int channels) const { return patch_side * patch_side * channels; }

  void validate() const {
    require(img_side % patch_side == 0, Errc::ConfigError,
            "image side must be a multiple of the patch side");
    require(kind != EncoderKind::FrozenPatch || frozen, Errc::ConfigError,
            "frozen_patch implies frozen=true");
  }
};

inline int tokens_for(int img_side, int patch_side) {
  int g = img_side / patch_side;
  return g * g;
}

struct FeatureGrid {
  enum class Source { Head, Wrist, Mask };
  Matf tokens;  // L x D
  int rows = 0, cols = 0;
  Source source = Source::Head;
};

/// Fixed 2D sinusoidal grid features: one quarter of the dims each for
/// sin/cos over rows and sin/cos over columns, geometric frequency ladder.
inline Matd position_features(int rows, int cols, int dim, double scale) {
  Matd pos(rows * cols, dim);
  int quarter = dim / 4;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int t = r * cols + c;
      for (int i = 0; i < quarter; ++i) {
        double freq = std::pow(10000.0, -static_cast<double>(i) / quarter);
        pos(t, i) = scale * std::sin(r * freq);
        pos(t, quarter + i) = scale * std::cos(r * freq);
        pos(t, 2 * quarter + i) = scale * std::sin(c * freq);
        pos(t, 3 * quarter + i) = scale * std::cos(c * freq);
      }
      for (int i = 4 * quarter; i < dim; ++i) pos(t, i) = 0.0;
    }
  return pos;
}

class PatchEncoder {
 public:
  explicit PatchEncoder(const EncoderSpec& spec, int channels = 3) : spec_(spec), channels_(channels) {
    spec_.validate();
    require(spec_.kind != EncoderKind::Adapter, Errc::ConfigError,
            "adapter encoders live behind the HTTP client");
    Rng rng(mix_seed(spec_.weight_seed, 0xE0C0DE));
    const int pd = spec_.patch_dim(channels_);
    proj_ = gaussian_mat<double>(pd, spec_.dim, rng, 1.0 / std::sqrt(static_cast<double>(pd)));
    pos_ = position_features(spec_.grid_side(), spec_.grid_side(), spec_.dim, spec_.pos_scale);
  }

  const EncoderSpec& spec() const { return spec_; }
  int channels() const { return channels_; }
  const Matd& projection() const { return proj_; }
  const Matd& positions() const { return pos_; }

  /// Patch matrix (L x patch_dim); standardized per patch when the spec asks.
  /// Standardization: (v - mean) / (std + 1e-8) over the whole patch vector.
  Matd patchify(const ImageF& img) const {
    require(img.height == spec_.img_side && img.width == spec_.img_side &&
                img.channels == channels_,
            Errc::WrongResolution,
            "encoder expects " + std::to_string(spec_.img_side) + "x" +
                std::to_string(spec_.img_side) + "x" + std::to_string(channels_));
    const int g = spec_.grid_side();
    const int p = spec_.patch_side;
    const int pd = spec_.patch_dim(channels_);
    Matd out(g * g, pd);
    for (int pr = 0; pr < g; ++pr)
      for (int pc = 0; pc < g; ++pc) {
        int t = pr * g + pc;
        int k = 0;
        for (int y = 0; y < p; ++y)
          for (int x = 0; x < p; ++x)
            for (int c = 0; c < channels_; ++c)
              out(t, k++) = img.at(pr * p + y, pc * p + x, c);
        if (spec_.standardize) {
          double mean = out.row(t).mean();
          double var = (out.row(t).array() - mean).square().mean();
          double denom = std::sqrt(var) + 1e-8;
          out.row(t) = (out.row(t).array() - mean) / denom;
        }
      }
    return out;
  }

  FeatureGrid encode(const ImageF& img, FeatureGrid::Source source = FeatureGrid::Source::Head) const {
    Matd tokens = patchify(img) * proj_ + pos_;
    FeatureGrid fg;
    fg.tokens = tokens.cast<float>();
    fg.rows = fg.cols = spec_.grid_side();
    fg.source = source;
    return fg;
  }

  FeatureGrid encode(const Image& img, FeatureGrid::Source source = FeatureGrid::Source::Head) const {
    return encode(to_float01(img), source);
  }

  /// Tokens with the additive position features removed; the analysis
  /// module's PCA operates on these so background patches are exactly zero.
  Matd content_tokens(const ImageF& img) const { return patchify(img) * proj_; }
  Matd content_tokens(const Image& img) const { return content_tokens(to_float01(img)); }

  /// Fingerprint of the projection weights; frozen runs must keep it stable.
  std::uint64_t weights_hash() const {
    return fnv1a64(proj_.data(), sizeof(double) * static_cast<std::size_t>(proj_.size()));
  }

 private:
  EncoderSpec spec_;
  int channels_;
  Matd proj_;
  Matd pos_;
};

}  // namespace graspkit::perception
