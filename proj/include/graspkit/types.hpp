#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "graspkit/common.hpp"
#include "graspkit/image.hpp"

namespace graspkit {

/// One controller timestep: both camera views, proprioception, and the
/// tracked binary target mask (head-view aligned).
struct Observation {
  Image head_rgb;           // H x W x 3
  Image wrist_rgb;          // H x W x 3
  std::vector<float> proprio;  // length D_s
  Image mask;               // H x W x 1, values in {0,1}

  void validate() const {
    require(head_rgb.channels == 3 && wrist_rgb.channels == 3 && mask.channels == 1,
            Errc::ShapeMismatch, "observation channel layout");
    require(head_rgb.height == wrist_rgb.height && head_rgb.width == wrist_rgb.width &&
                head_rgb.height == mask.height && head_rgb.width == mask.width,
            Errc::ShapeMismatch, "observation images must share resolution");
    for (auto v : mask.data)
      require(v <= 1, Errc::ShapeMismatch, "mask values must be 0/1");
    for (float v : proprio)
      require(std::isfinite(v), Errc::ShapeMismatch, "proprio must be finite");
  }
};

/// Target joint positions / gripper pose, length D_a.
struct Action {
  std::vector<float> target;
};

/// H consecutive actions starting at `start_step`; rows ordered by time.
struct ActionChunk {
  std::vector<std::vector<float>> actions;  // H x D_a
  int start_step = 0;

  int horizon() const { return static_cast<int>(actions.size()); }
};

/// Axis-aligned pixel box, top-left inclusive, bottom-right exclusive.
struct BBox {
  int x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  int width() const { return x2 - x1; }
  int height() const { return y2 - y1; }
  long area() const { return static_cast<long>(width()) * height(); }

  void validate(int img_w, int img_h) const {
    require(0 <= x1 && x1 < x2 && x2 <= img_w && 0 <= y1 && y1 < y2 && y2 <= img_h,
            Errc::InvalidBBox,
            "bbox (" + std::to_string(x1) + "," + std::to_string(y1) + "," + std::to_string(x2) +
                "," + std::to_string(y2) + ") outside " + std::to_string(img_w) + "x" +
                std::to_string(img_h));
  }

  bool contains(int x, int y) const { return x >= x1 && x < x2 && y >= y1 && y < y2; }
  bool operator==(const BBox& o) const = default;
};

/// Demonstration unit: T aligned (observation, action) pairs plus scene
/// provenance. Grasping datasets use a fixed T; nonprehensile ones vary.
struct Episode {
  std::vector<Observation> observations;
  std::vector<Action> actions;
  std::string scene_meta;       // serialized SceneSpec
  int target_object_id = 0;
  int length() const { return static_cast<int>(observations.size()); }

  void validate() const {
    require(!observations.empty(), Errc::ShapeMismatch, "empty episode");
    require(observations.size() == actions.size(), Errc::ShapeMismatch,
            "observation/action count mismatch");
    for (const auto& o : observations) o.validate();
  }
};

}  // namespace graspkit
