#pragma once

#include <cstdint>
#include <optional>

#include "graspkit/image.hpp"
#include "graspkit/rng.hpp"
#include "graspkit/sim/world.hpp"

namespace graspkit::perception {

/// Optional mask corruption for robustness testing: morphological growth or
/// shrinkage by one pixel plus i.i.d. pixel dropout.
struct TrackCorruption {
  int dilate = 0;   // +1 dilate, -1 erode, 0 off
  double dropout = 0.0;
  std::uint64_t seed = 0;
};

/// Video-object tracker stand-in. The oracle resolves the tracked object id
/// once at init (max-IoU against every object's ground-truth mask) and then
/// returns that object's current ground-truth mask every frame, declaring
/// TrackLost after `max_occluded_frames` consecutive empty masks.
class OracleTracker {
 public:
  explicit OracleTracker(const sim::SimWorld* world, int max_occluded_frames = 10)
      : world_(world), max_occluded_(max_occluded_frames) {}

  void set_corruption(const TrackCorruption& c) {
    corruption_ = c;
    rng_.reseed(c.seed);
  }

  /// Resolve the target from an initial mask.
  void init(const Image& initial_mask) {
    require(mask_area(initial_mask) > 0, Errc::NoObjectInBox,
            "tracker initialized with an empty mask");
    double best = -1.0;
    int best_id = -1;
    for (int i = 0; i < world_->object_count(); ++i) {
      Image gt = world_->gt_mask(i);
      double iou = mask_iou(initial_mask, gt);
      if (iou > best) {
        best = iou;
        best_id = i;
      }
    }
    require(best_id >= 0 && best > 0.0, Errc::NoObjectInBox,
            "initial mask overlaps no object");
    target_id_ = best_id;
    occluded_frames_ = 0;
  }

  bool initialized() const { return target_id_ >= 0; }
  int target_id() const { return target_id_; }

  /// Current mask of the tracked object. `frame` is unused by the oracle but
  /// kept so adapter-backed trackers share the call shape.
  Image track(const Image& frame) {
    (void)frame;
    require(initialized(), Errc::TrackLost, "tracker not initialized");
    Image mask = world_->gt_mask(target_id_);
    if (mask_area(mask) == 0) {
      if (++occluded_frames_ > max_occluded_) raise(Errc::TrackLost, "target occluded too long");
    } else {
      occluded_frames_ = 0;
    }
    return corrupt(mask);
  }

  static double mask_iou(const Image& a, const Image& b) {
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
      bool va = a.data[i] != 0, vb = b.data[i] != 0;
      inter += (va && vb);
      uni += (va || vb);
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }

 private:
  Image corrupt(Image mask) {
    if (corruption_.dilate > 0) mask = dilate1(mask);
    if (corruption_.dilate < 0) mask = erode1(mask);
    if (corruption_.dropout > 0.0)
      for (auto& v : mask.data)
        if (v && rng_.bernoulli(corruption_.dropout)) v = 0;
    return mask;
  }

  const sim::SimWorld* world_;
  int max_occluded_;
  int target_id_ = -1;
  int occluded_frames_ = 0;
  TrackCorruption corruption_;
  Rng rng_;
};

}  // namespace graspkit::perception
