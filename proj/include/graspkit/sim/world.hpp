#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "graspkit/image.hpp"
#include "graspkit/sim/scene.hpp"
#include "graspkit/types.hpp"

namespace graspkit::sim {

/// World-model constants. The world is the unit square; the table occupies
/// [table_lo, table_hi]^2 with a dark margin band around it. Heights and the
/// gripper aperture are normalized to [0,1].
struct SimConfig {
  int img_h = 96, img_w = 96;
  double table_lo = 0.06, table_hi = 0.94;
  double delta_max = 0.1;       // per-dimension position-control rate limit
  double g_close = 0.5;         // aperture below which a grasp can engage
  double z_low = 0.25;          // height below which a grasp can engage
  double r_grasp = 0.07;        // attach radius around an object center
  double z_lift = 0.8;          // success height
  int lift_hold_steps = 10;     // K consecutive steps above z_lift
  double home_x = 0.5, home_y = 0.0, home_z = 1.0, home_g = 1.0;
  double gripper_radius = 0.05; // body footprint used for pushing/blocking
  double push_z_max = 0.2;      // gripper below this height shoves flat objects
  double overhang_frac = 0.35;  // diameter fraction past the edge => graspable
  double wrist_min_half = 0.10, wrist_max_half = 0.55;
  double bin_x = 0.03, bin_y = 0.03, bin_radius = 0.09;
  int max_objects = 9;
  int step_budget = 75;
};

struct ObjectState {
  double x = 0, y = 0, theta = 0;
  bool removed = false;  // placed into the bin, no longer on the table
};

struct SimState {
  double x = 0, y = 0, z = 1, g = 1;
  std::vector<ObjectState> objects;
  int held_object = -1;
  int step_index = 0;
  int lift_counter = 0;
  bool done = false;

  std::vector<float> proprio() const {
    return {static_cast<float>(x), static_cast<float>(y), static_cast<float>(z),
            static_cast<float>(g)};
  }
};

struct RenderResult {
  Image rgb;
  std::vector<std::int16_t> ids;  // -1 background, -2 gripper, else object index
};

class SimWorld {
 public:
  static constexpr std::int16_t kIdBackground = -1;
  static constexpr std::int16_t kIdGripper = -2;

  SimWorld() = default;
  SimWorld(SceneSpec scene, SimConfig config = {}) { reset(std::move(scene), config); }

  /// Places objects per the spec, returns gripper to home. Deterministic.
  void reset(SceneSpec scene, SimConfig config = {}) {
    require(!scene.objects.empty(), Errc::UnplaceableScene, "scene has no objects");
    require(static_cast<int>(scene.objects.size()) <= config.max_objects, Errc::TooManyObjects,
            "scene has " + std::to_string(scene.objects.size()) + " objects, max " +
                std::to_string(config.max_objects));
    for (const auto& o : scene.objects) {
      require(o.x - o.bound_radius() >= config.table_lo - 1e-9 &&
                  o.x + o.bound_radius() <= config.table_hi + 1e-9 &&
                  o.y - o.bound_radius() >= config.table_lo - 1e-9 &&
                  o.y + o.bound_radius() <= config.table_hi + 1e-9,
              Errc::UnplaceableScene, "object footprint outside table region");
      require(!o.graspable || o.size <= 0.08, Errc::UnplaceableScene,
              "graspable object too large for the gripper");
    }
    for (std::size_t i = 0; i < scene.objects.size(); ++i)
      for (std::size_t j = i + 1; j < scene.objects.size(); ++j) {
        double dx = scene.objects[i].x - scene.objects[j].x;
        double dy = scene.objects[i].y - scene.objects[j].y;
        require(std::sqrt(dx * dx + dy * dy) >= 0.5 * 0.12, Errc::UnplaceableScene,
                "objects overlap beyond the separation floor");
      }
    scene_ = std::move(scene);
    cfg_ = config;
    reset_gripper();
    state_.objects.clear();
    for (const auto& o : scene_.objects) state_.objects.push_back({o.x, o.y, o.theta, false});
    state_.step_index = 0;
    state_.lift_counter = 0;
    state_.done = false;
    state_.held_object = -1;
  }

  /// Returns the arm to the home pose without touching object poses
  /// (the planner's per-attempt robot reset).
  void reset_gripper() {
    if (state_.held_object >= 0) release_held();
    state_.x = cfg_.home_x;
    state_.y = cfg_.home_y;
    state_.z = cfg_.home_z;
    state_.g = cfg_.home_g;
    state_.lift_counter = 0;
  }

  const SceneSpec& scene() const { return scene_; }
  const SimConfig& config() const { return cfg_; }
  const SimState& state() const { return state_; }
  int object_count() const { return static_cast<int>(scene_.objects.size()); }

  bool object_on_table(int id) const {
    return id >= 0 && id < object_count() && !state_.objects[id].removed &&
           state_.held_object != id;
  }

  bool in_bin(double x, double y) const {
    double dx = x - cfg_.bin_x, dy = y - cfg_.bin_y;
    return std::sqrt(dx * dx + dy * dy) <= cfg_.bin_radius;
  }

  /// Flat objects become graspable once their footprint extends far enough
  /// past a table edge.
  bool graspable_now(int id) const {
    const auto& spec = scene_.objects[id];
    if (spec.graspable) return true;
    return overhang(id) >= cfg_.overhang_frac;
  }

  /// Fraction of the object's diameter hanging past the nearest table edge.
  double overhang(int id) const {
    const auto& st = state_.objects[id];
    double r = scene_.objects[id].bound_radius();
    double ext = std::max({cfg_.table_lo - (st.x - r), (st.x + r) - cfg_.table_hi,
                           cfg_.table_lo - (st.y - r), (st.y + r) - cfg_.table_hi});
    return std::clamp(ext, 0.0, 2.0 * r) / (2.0 * r);
  }

  /// Position-control step: per-dimension rate limit delta_max; grasp engages
  /// when the aperture crosses below g_close at low height near a graspable
  /// object; flat (not-yet-graspable) objects are shoved by a low gripper.
  void step(const Action& action) {
    require(action.target.size() == 4, Errc::DimensionMismatch, "action must be length 4");
    for (float v : action.target)
      require(std::isfinite(v), Errc::DimensionMismatch, "action must be finite");

    double old_g = state_.g;
    double tgt[4];
    for (int i = 0; i < 4; ++i) tgt[i] = std::clamp(static_cast<double>(action.target[i]), 0.0, 1.0);
    auto move = [&](double cur, double target) {
      return cur + std::clamp(target - cur, -cfg_.delta_max, cfg_.delta_max);
    };
    state_.x = move(state_.x, tgt[0]);
    state_.y = move(state_.y, tgt[1]);
    state_.z = move(state_.z, tgt[2]);
    state_.g = move(state_.g, tgt[3]);

    if (state_.held_object >= 0) {
      state_.objects[state_.held_object].x = state_.x;
      state_.objects[state_.held_object].y = state_.y;
    }

    // Release: opening past g_close drops the object where it is.
    if (state_.held_object >= 0 && state_.g >= cfg_.g_close) release_held();

    // Attach: requires the close threshold to be crossed this step.
    if (state_.held_object < 0 && old_g >= cfg_.g_close && state_.g < cfg_.g_close &&
        state_.z < cfg_.z_low) {
      int best = -1;
      double best_d = cfg_.r_grasp;
      for (int i = 0; i < object_count(); ++i) {
        if (!object_on_table(i) || !graspable_now(i)) continue;
        double dx = state_.objects[i].x - state_.x, dy = state_.objects[i].y - state_.y;
        double d = std::sqrt(dx * dx + dy * dy);
        if (d <= best_d) {
          best_d = d;
          best = i;
        }
      }
      if (best >= 0) {
        state_.held_object = best;
        state_.objects[best].x = state_.x;
        state_.objects[best].y = state_.y;
      }
    }

    // Pushing: the gripper body displaces flat objects it overlaps. Graspable
    // objects are not obstacles (the hand descends over them to grasp).
    if (state_.z < cfg_.push_z_max) {
      for (int i = 0; i < object_count(); ++i) {
        if (!object_on_table(i) || graspable_now(i)) continue;
        auto& st = state_.objects[i];
        double r = cfg_.gripper_radius + scene_.objects[i].bound_radius();
        double dx = st.x - state_.x, dy = st.y - state_.y;
        double d = std::sqrt(dx * dx + dy * dy);
        if (d < r) {
          double nx = d > 1e-9 ? dx / d : 1.0;
          double ny = d > 1e-9 ? dy / d : 0.0;
          st.x = std::clamp(state_.x + nx * r, cfg_.table_lo, cfg_.table_hi);
          st.y = std::clamp(state_.y + ny * r, cfg_.table_lo, cfg_.table_hi);
        }
      }
    }

    if (state_.held_object >= 0 && state_.z >= cfg_.z_lift)
      ++state_.lift_counter;
    else
      state_.lift_counter = 0;

    ++state_.step_index;
    state_.done = success_check() || state_.step_index >= cfg_.step_budget;
  }

  /// Lift condition sustained for K consecutive steps.
  bool success_check() const { return state_.lift_counter >= cfg_.lift_hold_steps; }

  void set_step_budget(int budget) { cfg_.step_budget = budget; }

  // ----- rendering ---------------------------------------------------------

  RenderResult render_head() const { return rasterize(0.5, 0.5, 0.5); }

  /// Wrist view: zoom crop centered at the gripper, zoom ~ 1/z.
  Image render_wrist() const {
    double half = cfg_.wrist_min_half + (cfg_.wrist_max_half - cfg_.wrist_min_half) * state_.z;
    return rasterize(state_.x, state_.y, half).rgb;
  }

  Observation observe() const {
    Observation o;
    auto head = render_head();
    o.head_rgb = std::move(head.rgb);
    o.wrist_rgb = render_wrist();
    o.proprio = state_.proprio();
    o.mask = Image(cfg_.img_h, cfg_.img_w, 1, 0);  // filled by the mask pipeline
    return o;
  }

  Image gt_mask(int object_id) const {
    require(object_id >= 0 && object_id < object_count(), Errc::UnknownObject,
            "object " + std::to_string(object_id));
    auto head = render_head();
    Image mask(cfg_.img_h, cfg_.img_w, 1, 0);
    for (std::size_t i = 0; i < head.ids.size(); ++i)
      if (head.ids[i] == object_id) mask.data[i] = 1;
    return mask;
  }

  BBox gt_bbox(int object_id) const {
    Image mask = gt_mask(object_id);
    int x1 = cfg_.img_w, y1 = cfg_.img_h, x2 = -1, y2 = -1;
    for (int y = 0; y < cfg_.img_h; ++y)
      for (int x = 0; x < cfg_.img_w; ++x)
        if (mask.at(y, x)) {
          x1 = std::min(x1, x);
          y1 = std::min(y1, y);
          x2 = std::max(x2, x);
          y2 = std::max(y2, y);
        }
    require(x2 >= 0, Errc::OccludedTarget,
            "object " + std::to_string(object_id) + " has no visible pixels");
    return BBox{x1, y1, x2 + 1, y2 + 1};
  }

  /// Rasterize the axis-aligned viewport [cx-half, cx+half] x [cy-half, cy+half].
  /// Stage 1 renders under white light; stage 2 applies the lighting transform
  /// pixel-wise, so render(light) == light_map(render(white)) exactly.
  RenderResult rasterize(double cx, double cy, double half) const {
    RenderResult out;
    out.rgb = Image(cfg_.img_h, cfg_.img_w, 3);
    out.ids.assign(static_cast<std::size_t>(cfg_.img_h) * cfg_.img_w, kIdBackground);

    // Draw order: non-held objects by index, held object above them.
    std::vector<int> order;
    for (int i = 0; i < object_count(); ++i)
      if (!state_.objects[i].removed && i != state_.held_object) order.push_back(i);
    if (state_.held_object >= 0) order.push_back(state_.held_object);

    for (int py = 0; py < cfg_.img_h; ++py) {
      for (int px = 0; px < cfg_.img_w; ++px) {
        double wx = cx - half + (px + 0.5) / cfg_.img_w * 2.0 * half;
        double wy = cy - half + (py + 0.5) / cfg_.img_h * 2.0 * half;
        std::uint8_t r, g, b;
        background_color(wx, wy, r, g, b);
        std::int16_t id = kIdBackground;
        for (int i : order)
          if (point_in_object(i, wx, wy)) {
            const auto& c = scene_.objects[i].color;
            r = c[0];
            g = c[1];
            b = c[2];
            id = static_cast<std::int16_t>(i);
          }
        if (point_in_gripper(wx, wy)) {
          auto shade = static_cast<std::uint8_t>(40 + 140 * state_.z);
          r = g = b = shade;
          id = kIdGripper;
        }
        std::size_t idx = static_cast<std::size_t>(py) * cfg_.img_w + px;
        out.rgb.data[idx * 3 + 0] = r;
        out.rgb.data[idx * 3 + 1] = g;
        out.rgb.data[idx * 3 + 2] = b;
        out.ids[idx] = id;
      }
    }
    apply_lighting(out.rgb, scene_.lighting, scene_.lighting_gain, state_.step_index,
                   scene_.rng_seed);
    return out;
  }

  /// Pixel-wise lighting map applied to a white-light render.
  static void apply_lighting(Image& rgb, Lighting mode, double gain, int step,
                             std::uint64_t seed) {
    if (mode == Lighting::White && gain == 1.0) return;
    double gr = gain, gg = gain, gb = gain;
    double hue_shift = 0.0;
    switch (mode) {
      case Lighting::White: break;
      case Lighting::Dim:
        gr *= 0.42;
        gg *= 0.42;
        gb *= 0.50;
        break;
      case Lighting::Lamp:
        gr *= 0.98;
        gg *= 0.80;
        gb *= 0.55;
        break;
      case Lighting::Disco: {
        std::uint64_t x = seed;
        double phase = (splitmix64(x) >> 11) * 0x1.0p-53;
        hue_shift = std::fmod(phase + 0.13 * step, 1.0);
        gr *= 0.9;
        gg *= 0.9;
        gb *= 0.9;
        break;
      }
    }
    for (std::size_t i = 0; i < rgb.data.size(); i += 3) {
      double r = rgb.data[i] / 255.0 * gr;
      double g = rgb.data[i + 1] / 255.0 * gg;
      double b = rgb.data[i + 2] / 255.0 * gb;
      if (hue_shift != 0.0) {
        auto hsv = rgb_to_hsv(static_cast<float>(r), static_cast<float>(g), static_cast<float>(b));
        auto rot = hsv_to_rgb(hsv[0] + static_cast<float>(hue_shift), hsv[1], hsv[2]);
        r = rot[0];
        g = rot[1];
        b = rot[2];
      }
      rgb.data[i] = static_cast<std::uint8_t>(std::lround(std::clamp(r, 0.0, 1.0) * 255.0));
      rgb.data[i + 1] = static_cast<std::uint8_t>(std::lround(std::clamp(g, 0.0, 1.0) * 255.0));
      rgb.data[i + 2] = static_cast<std::uint8_t>(std::lround(std::clamp(b, 0.0, 1.0) * 255.0));
    }
  }

  bool point_in_object(int i, double wx, double wy) const {
    const auto& spec = scene_.objects[i];
    const auto& st = state_.objects[i];
    double dx = wx - st.x, dy = wy - st.y;
    switch (spec.shape) {
      case Shape::Circle:
        return dx * dx + dy * dy <= spec.size * spec.size;
      case Shape::Square: {
        double c = std::cos(-st.theta), s = std::sin(-st.theta);
        double lx = c * dx - s * dy, ly = s * dx + c * dy;
        return std::fabs(lx) <= spec.size && std::fabs(ly) <= spec.size;
      }
      case Shape::Bar: {
        double c = std::cos(-st.theta), s = std::sin(-st.theta);
        double lx = c * dx - s * dy, ly = s * dx + c * dy;
        return std::fabs(lx) <= spec.size && std::fabs(ly) <= 0.35 * spec.size;
      }
      case Shape::Triangle: {
        // Equilateral triangle with circumradius `size`.
        double vx[3], vy[3];
        for (int k = 0; k < 3; ++k) {
          double a = st.theta + 1.570796326794897 + k * 2.094395102393195;
          vx[k] = st.x + spec.size * std::cos(a);
          vy[k] = st.y + spec.size * std::sin(a);
        }
        auto cross = [](double ax, double ay, double bx, double by) { return ax * by - ay * bx; };
        double d0 = cross(vx[1] - vx[0], vy[1] - vy[0], wx - vx[0], wy - vy[0]);
        double d1 = cross(vx[2] - vx[1], vy[2] - vy[1], wx - vx[1], wy - vy[1]);
        double d2 = cross(vx[0] - vx[2], vy[0] - vy[2], wx - vx[2], wy - vy[2]);
        bool neg = d0 < 0 || d1 < 0 || d2 < 0;
        bool pos = d0 > 0 || d1 > 0 || d2 > 0;
        return !(neg && pos);
      }
    }
    return false;
  }

  bool point_in_gripper(double wx, double wy) const {
    double dx = wx - state_.x, dy = wy - state_.y;
    double body_r = 0.016;
    if (dx * dx + dy * dy <= body_r * body_r) return true;
    double finger_off = 0.02 + 0.03 * state_.g;
    double fr = 0.011;
    for (double s : {-1.0, 1.0}) {
      double fx = dx - s * finger_off;
      if (fx * fx + dy * dy <= fr * fr) return true;
    }
    return false;
  }

 private:
  void release_held() {
    int id = state_.held_object;
    state_.held_object = -1;
    if (in_bin(state_.objects[id].x, state_.objects[id].y)) state_.objects[id].removed = true;
    state_.lift_counter = 0;
  }

  void background_color(double wx, double wy, std::uint8_t& r, std::uint8_t& g,
                        std::uint8_t& b) const {
    bool on_table = wx >= cfg_.table_lo && wx <= cfg_.table_hi && wy >= cfg_.table_lo &&
                    wy <= cfg_.table_hi;
    if (!on_table) {
      r = g = b = 58;
      return;
    }
    switch (scene_.background) {
      case Background::White:
        r = g = b = 245;
        return;
      case Background::Checker: {
        int ix = static_cast<int>(std::floor(wx / 0.11));
        int iy = static_cast<int>(std::floor(wy / 0.11));
        std::uint8_t v = ((ix + iy) % 2 == 0) ? 208 : 124;
        r = g = b = v;
        return;
      }
      case Background::ColorfulCloth: {
        double u = std::sin(14.0 * wx) * std::cos(11.0 * wy);
        double v = std::sin(9.0 * (wx + wy));
        r = static_cast<std::uint8_t>(150 + 70 * u);
        g = static_cast<std::uint8_t>(120 + 80 * v);
        b = static_cast<std::uint8_t>(160 + 60 * std::sin(17.0 * wy));
        return;
      }
      case Background::Wood: {
        double grain = std::sin(40.0 * wy + 3.0 * std::sin(6.0 * wx));
        r = static_cast<std::uint8_t>(168 + 26 * grain);
        g = static_cast<std::uint8_t>(122 + 18 * grain);
        b = static_cast<std::uint8_t>(82 + 12 * grain);
        return;
      }
    }
    r = g = b = 245;
  }

  SceneSpec scene_;
  SimConfig cfg_;
  SimState state_;
};

}  // namespace graspkit::sim
