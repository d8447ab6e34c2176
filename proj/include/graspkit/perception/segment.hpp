#pragma once

#include "graspkit/image.hpp"
#include "graspkit/sim/world.hpp"
#include "graspkit/types.hpp"

namespace graspkit::perception {

/// Box-prompted segmenter stand-in: returns the ground-truth mask of the
/// object whose mask best matches the box interior by IoU.
class OracleSegmenter {
 public:
  explicit OracleSegmenter(const sim::SimWorld* world) : world_(world) {}

  Image segment(const Image& image, const BBox& bbox) const {
    bbox.validate(image.width, image.height);
    Image box_mask(image.height, image.width, 1, 0);
    for (int y = bbox.y1; y < bbox.y2; ++y)
      for (int x = bbox.x1; x < bbox.x2; ++x) box_mask.at(y, x) = 1;

    double best = 0.0;
    int best_id = -1;
    for (int i = 0; i < world_->object_count(); ++i) {
      Image gt = world_->gt_mask(i);
      if (mask_area(gt) == 0) continue;
      double iou = iou_of(box_mask, gt);
      if (iou > best) {
        best = iou;
        best_id = i;
      }
    }
    require(best_id >= 0, Errc::NoObjectInBox, "bounding box intersects no object");
    return world_->gt_mask(best_id);
  }

  /// The object id the box would resolve to; shared with planner oracles.
  int resolve(const BBox& bbox) const {
    Image img(world_->config().img_h, world_->config().img_w, 1);
    Image box_mask(img.height, img.width, 1, 0);
    bbox.validate(img.width, img.height);
    for (int y = bbox.y1; y < bbox.y2; ++y)
      for (int x = bbox.x1; x < bbox.x2; ++x) box_mask.at(y, x) = 1;
    double best = 0.0;
    int best_id = -1;
    for (int i = 0; i < world_->object_count(); ++i) {
      Image gt = world_->gt_mask(i);
      if (mask_area(gt) == 0) continue;
      double iou = iou_of(box_mask, gt);
      if (iou > best) {
        best = iou;
        best_id = i;
      }
    }
    require(best_id >= 0, Errc::NoObjectInBox, "bounding box intersects no object");
    return best_id;
  }

 private:
  static double iou_of(const Image& a, const Image& b) {
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
      bool va = a.data[i] != 0, vb = b.data[i] != 0;
      inter += (va && vb);
      uni += (va || vb);
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }

  const sim::SimWorld* world_;
};

}  // namespace graspkit::perception
