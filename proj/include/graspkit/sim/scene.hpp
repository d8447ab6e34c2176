#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "graspkit/common.hpp"
#include "graspkit/kv.hpp"
#include "graspkit/rng.hpp"

namespace graspkit::sim {

enum class Shape { Circle, Square, Triangle, Bar };
enum class Background { White, Checker, ColorfulCloth, Wood };
enum class Lighting { White, Dim, Lamp, Disco };

inline const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Circle: return "circle";
    case Shape::Square: return "square";
    case Shape::Triangle: return "triangle";
    case Shape::Bar: return "bar";
  }
  return "?";
}
inline Shape shape_from(const std::string& s) {
  if (s == "circle") return Shape::Circle;
  if (s == "square") return Shape::Square;
  if (s == "triangle") return Shape::Triangle;
  if (s == "bar") return Shape::Bar;
  raise(Errc::ConfigError, "unknown shape " + s);
}

inline const char* background_name(Background b) {
  switch (b) {
    case Background::White: return "white";
    case Background::Checker: return "checker";
    case Background::ColorfulCloth: return "colorful_cloth";
    case Background::Wood: return "wood";
  }
  return "?";
}
inline Background background_from(const std::string& s) {
  if (s == "white") return Background::White;
  if (s == "checker") return Background::Checker;
  if (s == "colorful_cloth") return Background::ColorfulCloth;
  if (s == "wood") return Background::Wood;
  raise(Errc::ConfigError, "unknown background " + s);
}

inline const char* lighting_name(Lighting l) {
  switch (l) {
    case Lighting::White: return "white";
    case Lighting::Dim: return "dim";
    case Lighting::Lamp: return "lamp";
    case Lighting::Disco: return "disco";
  }
  return "?";
}
inline Lighting lighting_from(const std::string& s) {
  if (s == "white") return Lighting::White;
  if (s == "dim") return Lighting::Dim;
  if (s == "lamp") return Lighting::Lamp;
  if (s == "disco") return Lighting::Disco;
  raise(Errc::ConfigError, "unknown lighting " + s);
}

struct NamedColor {
  const char* name;
  std::array<std::uint8_t, 3> rgb;
};

inline const std::vector<NamedColor>& color_palette() {
  static const std::vector<NamedColor> palette = {
      {"red", {220, 50, 47}},    {"green", {64, 160, 70}},  {"blue", {38, 110, 200}},
      {"yellow", {228, 200, 48}}, {"purple", {150, 80, 200}}, {"orange", {235, 140, 40}},
  };
  return palette;
}

inline std::string color_name_of(const std::array<std::uint8_t, 3>& rgb) {
  long best = 1 << 30;
  std::string name = "unknown";
  for (const auto& c : color_palette()) {
    long d = 0;
    for (int i = 0; i < 3; ++i) {
      long e = long(c.rgb[i]) - long(rgb[i]);
      d += e * e;
    }
    if (d < best) {
      best = d;
      name = c.name;
    }
  }
  return name;
}

/// Fixed (color, shape) -> category map used for long-horizon predicates.
inline std::string category_of(const std::string& color, Shape shape) {
  static const char* cats[3] = {"food", "toy", "tool"};
  std::size_t ci = 0;
  for (std::size_t i = 0; i < color_palette().size(); ++i)
    if (color == color_palette()[i].name) ci = i;
  return cats[(ci + static_cast<std::size_t>(shape)) % 3];
}

struct ObjectSpec {
  Shape shape = Shape::Circle;
  std::array<std::uint8_t, 3> color{200, 200, 200};
  double size = 0.04;   // circle radius, square half-side, triangle circumradius, bar half-length
  double x = 0.5, y = 0.5, theta = 0.0;
  bool graspable = true;
  std::vector<std::string> tags;

  /// Conservative bounding radius for collision/occupancy tests.
  double bound_radius() const {
    switch (shape) {
      case Shape::Circle: return size;
      case Shape::Square: return size * 1.41421356;
      case Shape::Triangle: return size;
      case Shape::Bar: return size;
    }
    return size;
  }
};

struct SceneSpec {
  Background background = Background::White;
  Lighting lighting = Lighting::White;
  double lighting_gain = 1.0;  // extra global gain knob on top of the mode
  std::vector<ObjectSpec> objects;
  std::uint64_t rng_seed = 0;

  KvFile to_kv() const {
    KvFile kv;
    kv.set("scene.background", background_name(background));
    kv.set("scene.lighting", lighting_name(lighting));
    kv.set("scene.lighting_gain", lighting_gain);
    kv.set("scene.rng_seed", rng_seed);
    kv.set("scene.object_count", static_cast<std::int64_t>(objects.size()));
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const auto& o = objects[i];
      std::string p = "object." + std::to_string(i) + ".";
      kv.set(p + "shape", shape_name(o.shape));
      kv.set(p + "color", std::to_string(o.color[0]) + "," + std::to_string(o.color[1]) + "," +
                              std::to_string(o.color[2]));
      kv.set(p + "size", o.size);
      kv.set(p + "pose", std::vector<double>{o.x, o.y, o.theta});
      kv.set(p + "graspable", o.graspable);
      std::string tags;
      for (std::size_t t = 0; t < o.tags.size(); ++t) tags += (t ? "," : "") + o.tags[t];
      kv.set(p + "tags", tags);
    }
    return kv;
  }

  static SceneSpec from_kv(const KvFile& kv) {
    SceneSpec s;
    s.background = background_from(kv.get("scene.background"));
    s.lighting = lighting_from(kv.get("scene.lighting"));
    s.lighting_gain = kv.get_double_or("scene.lighting_gain", 1.0);
    s.rng_seed = static_cast<std::uint64_t>(kv.get_int("scene.rng_seed"));
    int n = static_cast<int>(kv.get_int("scene.object_count"));
    for (int i = 0; i < n; ++i) {
      std::string p = "object." + std::to_string(i) + ".";
      ObjectSpec o;
      o.shape = shape_from(kv.get(p + "shape"));
      auto rgb = kv.get_doubles(p + "color");
      for (int c = 0; c < 3; ++c) o.color[c] = static_cast<std::uint8_t>(rgb[c]);
      o.size = kv.get_double(p + "size");
      auto pose = kv.get_doubles(p + "pose");
      o.x = pose[0];
      o.y = pose[1];
      o.theta = pose[2];
      o.graspable = kv.get_bool(p + "graspable");
      std::string tags = kv.get(p + "tags");
      std::size_t pos = 0;
      while (pos < tags.size()) {
        auto comma = tags.find(',', pos);
        o.tags.push_back(tags.substr(pos, comma - pos));
        pos = (comma == std::string::npos) ? tags.size() : comma + 1;
      }
      s.objects.push_back(std::move(o));
    }
    return s;
  }

  std::string serialize() const { return to_kv().serialize(); }
  static SceneSpec parse(const std::string& text) { return from_kv(KvFile::parse(text)); }

  bool has_tag(int object_index, const std::string& tag) const {
    for (const auto& t : objects[object_index].tags)
      if (t == tag) return true;
    return false;
  }
};

/// A (color, shape) vocabulary slice plus layout parameters; the generator
/// for demo scenes and benchmark suites.
struct SceneDistribution {
  std::vector<std::string> colors = {"red", "green", "blue", "yellow"};
  std::vector<Shape> shapes = {Shape::Circle, Shape::Square, Shape::Triangle, Shape::Bar};
  /// Pairs excluded from the "seen" world; suites sample them for the
  /// unseen-objects condition.
  std::vector<std::pair<std::string, Shape>> held_out = {
      {"red", Shape::Bar},
      {"green", Shape::Square},
      {"blue", Shape::Triangle},
      {"yellow", Shape::Circle},
  };
  bool use_held_out_combos = false;  // sample only held-out pairs when true
  int min_objects = 4, max_objects = 6;
  std::vector<Background> backgrounds = {Background::White};
  std::vector<Lighting> lightings = {Lighting::White};
  double table_lo = 0.06, table_hi = 0.94;
  double min_separation = 0.12;
  double edge_margin = 0.10;  // keep footprints fully on the table
  int placement_retries = 400;
  bool flat_target = false;  // nonprehensile: one non-graspable flat object
};

inline bool is_held_out(const SceneDistribution& dist, const std::string& color, Shape shape) {
  for (const auto& [c, s] : dist.held_out)
    if (c == color && s == shape) return true;
  return false;
}

inline ObjectSpec sample_object(const SceneDistribution& dist, Rng& rng, bool flat) {
  ObjectSpec o;
  for (int tries = 0; tries < 200; ++tries) {
    // Draw (color, shape) respecting the held-out split.
    std::string chosen_color = dist.colors[rng.uniform_index(dist.colors.size())];
    Shape shape = dist.shapes[rng.uniform_index(dist.shapes.size())];
    if (dist.use_held_out_combos != is_held_out(dist, chosen_color, shape)) continue;
    o.shape = shape;
    for (const auto& c : color_palette())
      if (chosen_color == c.name) o.color = c.rgb;
    if (flat) {
      o.graspable = false;
      switch (shape) {
        case Shape::Circle: o.size = rng.uniform(0.065, 0.085); break;
        case Shape::Square: o.size = rng.uniform(0.055, 0.068); break;
        case Shape::Triangle: o.size = rng.uniform(0.07, 0.09); break;
        case Shape::Bar: o.size = rng.uniform(0.080, 0.095); break;
      }
    } else {
      o.graspable = true;
      switch (shape) {
        case Shape::Circle: o.size = rng.uniform(0.030, 0.048); break;
        case Shape::Square: o.size = rng.uniform(0.028, 0.042); break;
        case Shape::Triangle: o.size = rng.uniform(0.034, 0.052); break;
        case Shape::Bar: o.size = rng.uniform(0.050, 0.068); break;
      }
    }
    o.theta = rng.uniform(0.0, 2.0 * 3.141592653589793);
    o.tags = {chosen_color, shape_name(shape), category_of(chosen_color, shape)};
    if (flat) o.tags.push_back("flat");
    return o;
  }
  raise(Errc::UnplaceableScene, "could not draw an object matching the distribution");
}

/// Rejection-sample a scene: poses are explicit in the returned spec.
inline SceneSpec sample_scene(const SceneDistribution& dist, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x5ce9e));
  SceneSpec scene;
  scene.rng_seed = seed;
  scene.background = dist.backgrounds[rng.uniform_index(dist.backgrounds.size())];
  scene.lighting = dist.lightings[rng.uniform_index(dist.lightings.size())];
  int count = static_cast<int>(rng.uniform_int(dist.min_objects, dist.max_objects));
  require(count >= 1 && count <= 9, Errc::TooManyObjects, "object count must be 1..9");

  for (int i = 0; i < count; ++i) {
    ObjectSpec o = sample_object(dist, rng, dist.flat_target && i == 0);
    bool placed = false;
    for (int attempt = 0; attempt < dist.placement_retries; ++attempt) {
      double lo = dist.table_lo + dist.edge_margin;
      double hi = dist.table_hi - dist.edge_margin;
      o.x = rng.uniform(lo, hi);
      o.y = rng.uniform(lo, hi);
      bool ok = true;
      for (const auto& other : scene.objects) {
        double dx = o.x - other.x, dy = o.y - other.y;
        if (std::sqrt(dx * dx + dy * dy) < dist.min_separation) {
          ok = false;
          break;
        }
      }
      if (ok) {
        placed = true;
        break;
      }
    }
    require(placed, Errc::UnplaceableScene,
            "separation constraint unsatisfiable after bounded retries");
    scene.objects.push_back(o);
  }
  return scene;
}

}  // namespace graspkit::sim
