#pragma once

#include <cmath>
#include <string>

#include "graspkit/rng.hpp"
#include "graspkit/sim/world.hpp"

namespace graspkit::sim {

/// Closed-loop scripted demonstrator. The grasp policy is
/// hover -> descend -> close -> lift with bounded Gaussian waypoint noise;
/// the nonprehensile policy pushes the flat target toward the nearest table
/// edge until it overhangs enough, then hands over to the grasp routine.
/// Each call inspects the current state, so the expert recovers from missed
/// grasps by reopening and retrying.
class ScriptedExpert {
 public:
  ScriptedExpert(int target_id, const std::string& task_kind, std::uint64_t noise_seed)
      : target_(target_id), task_(task_kind) {
    Rng rng(noise_seed);
    noise_x_ = std::clamp(rng.gaussian(0.0, 0.012), -0.03, 0.03);
    noise_y_ = std::clamp(rng.gaussian(0.0, 0.012), -0.03, 0.03);
  }

  int target() const { return target_; }

  Action act(const SimWorld& world) const {
    const auto& st = world.state();
    const auto& cfg = world.config();
    require(target_ >= 0 && target_ < world.object_count(), Errc::UnknownObject,
            "expert target " + std::to_string(target_));
    require(!world.state().objects[target_].removed, Errc::UnreachableTarget,
            "expert target already removed");
    if (task_ == "grasp")
      require(world.scene().objects[target_].graspable, Errc::UnreachableTarget,
              "grasp expert needs a graspable target");

    const auto& obj = st.objects[target_];

    if (st.held_object == target_) {
      // Lift and hold above the success height.
      return make(st.x, st.y, 0.95, 0.12);
    }

    if (!world.graspable_now(target_)) {
      require(task_ == "nonprehensile", Errc::UnreachableTarget,
              "target is not graspable in a grasp task");
      return push_action(world);
    }

    double hx = obj.x + noise_x_;
    double hy = obj.y + noise_y_;
    double dxy = std::hypot(st.x - hx, st.y - hy);

    // Missed grasp recovery: reopen at height before trying again.
    if (st.g < cfg.g_close && st.z < 0.4) return make(st.x, st.y, z_hover_, 1.0);
    if (dxy > 0.02 || st.z > z_hover_ + 0.08) return make(hx, hy, z_hover_, 1.0);
    if (st.z > z_grasp_ + 0.02) return make(hx, hy, z_grasp_, 1.0);
    return make(obj.x, obj.y, z_grasp_, 0.0);
  }

  /// Direction from the target toward its nearest table edge.
  static void push_direction(const SimWorld& world, int id, double& dx, double& dy) {
    const auto& cfg = world.config();
    const auto& o = world.state().objects[id];
    double d_left = o.x - cfg.table_lo, d_right = cfg.table_hi - o.x;
    double d_bot = o.y - cfg.table_lo, d_top = cfg.table_hi - o.y;
    double m = std::min({d_left, d_right, d_bot, d_top});
    dx = 0;
    dy = 0;
    if (m == d_left)
      dx = -1;
    else if (m == d_right)
      dx = 1;
    else if (m == d_bot)
      dy = -1;
    else
      dy = 1;
  }

 private:
  Action push_action(const SimWorld& world) const {
    const auto& st = world.state();
    const auto& cfg = world.config();
    const auto& obj = st.objects[target_];
    double dx, dy;
    push_direction(world, target_, dx, dy);
    double standoff = world.scene().objects[target_].bound_radius() + cfg.gripper_radius + 0.012;
    double bx = obj.x - dx * standoff;
    double by = obj.y - dy * standoff;
    double d_behind = std::hypot(st.x - bx, st.y - by);
    bool behind = (obj.x - st.x) * dx + (obj.y - st.y) * dy >= -0.01;

    // Pre-close at height so the aperture never crosses g_close down low,
    // which would otherwise snatch a nearby graspable distractor.
    if (st.g > 0.42 && st.z > 0.4) return make(bx, by, 0.5, 0.3);
    // Already down and trailing the object: keep driving it toward the edge.
    if (st.z <= z_push_ + 0.03 && behind)
      return make(obj.x + dx * 0.3, obj.y + dy * 0.3, z_push_, 0.3);
    if (d_behind > 0.035) return make(bx, by, 0.5, 0.3);
    if (st.z > z_push_ + 0.02) return make(bx, by, z_push_, 0.3);
    return make(obj.x + dx * 0.3, obj.y + dy * 0.3, z_push_, 0.3);
  }

  static Action make(double x, double y, double z, double g) {
    return Action{{static_cast<float>(x), static_cast<float>(y), static_cast<float>(z),
                   static_cast<float>(g)}};
  }

  int target_;
  std::string task_;
  double noise_x_ = 0, noise_y_ = 0;
  double z_hover_ = 0.45;
  double z_grasp_ = 0.08;
  double z_push_ = 0.12;
};

}  // namespace graspkit::sim
