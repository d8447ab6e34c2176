#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "graspkit/episode_io.hpp"
#include "graspkit/kv.hpp"

namespace graspkit {

/// Dataset-level schema and normalization statistics. Action min/max drive
/// the [-1,1] normalization used by the controller; state mean/std
/// standardize proprioception. Constant (degenerate) action dimensions are
/// flagged and normalize to 0.
struct DatasetManifest {
  int episodes = 0;
  int image_height = 0;
  int image_width = 0;
  int state_dim = 0;
  int action_dim = 0;
  double frame_rate_hz = 20.0;
  std::string task = "grasp";  // grasp | nonprehensile
  std::vector<double> action_min, action_max, action_mean, action_std;
  std::vector<bool> action_degenerate;
  std::vector<double> state_mean, state_std;

  static constexpr double kDegenerateEps = 1e-9;

  double normalize_action(double v, int dim) const {
    if (action_degenerate[dim]) return 0.0;
    return 2.0 * (v - action_min[dim]) / (action_max[dim] - action_min[dim]) - 1.0;
  }
  double denormalize_action(double v, int dim) const {
    if (action_degenerate[dim]) return action_min[dim];
    return action_min[dim] + (v + 1.0) * 0.5 * (action_max[dim] - action_min[dim]);
  }
  double normalize_state(double v, int dim) const {
    double s = state_std[dim];
    return s > kDegenerateEps ? (v - state_mean[dim]) / s : 0.0;
  }

  KvFile to_kv() const {
    KvFile kv;
    kv.set("manifest.episodes", static_cast<std::int64_t>(episodes));
    kv.set("manifest.image_height", static_cast<std::int64_t>(image_height));
    kv.set("manifest.image_width", static_cast<std::int64_t>(image_width));
    kv.set("manifest.state_dim", static_cast<std::int64_t>(state_dim));
    kv.set("manifest.action_dim", static_cast<std::int64_t>(action_dim));
    kv.set("manifest.frame_rate_hz", frame_rate_hz);
    kv.set("manifest.task", task);
    kv.set("action.min", action_min);
    kv.set("action.max", action_max);
    kv.set("action.mean", action_mean);
    kv.set("action.std", action_std);
    std::string degen;
    for (std::size_t i = 0; i < action_degenerate.size(); ++i)
      degen += std::string(i ? "," : "") + (action_degenerate[i] ? "1" : "0");
    kv.set("action.degenerate", degen);
    kv.set("state.mean", state_mean);
    kv.set("state.std", state_std);
    return kv;
  }

  static DatasetManifest from_kv(const KvFile& kv) {
    DatasetManifest m;
    m.episodes = static_cast<int>(kv.get_int("manifest.episodes"));
    m.image_height = static_cast<int>(kv.get_int("manifest.image_height"));
    m.image_width = static_cast<int>(kv.get_int("manifest.image_width"));
    m.state_dim = static_cast<int>(kv.get_int("manifest.state_dim"));
    m.action_dim = static_cast<int>(kv.get_int("manifest.action_dim"));
    m.frame_rate_hz = kv.get_double("manifest.frame_rate_hz");
    m.task = kv.get("manifest.task");
    m.action_min = kv.get_doubles("action.min");
    m.action_max = kv.get_doubles("action.max");
    m.action_mean = kv.get_doubles("action.mean");
    m.action_std = kv.get_doubles("action.std");
    m.state_mean = kv.get_doubles("state.mean");
    m.state_std = kv.get_doubles("state.std");
    for (const auto& tok : kv.get("action.degenerate"))
      if (tok == '0' || tok == '1') m.action_degenerate.push_back(tok == '1');
    require(static_cast<int>(m.action_min.size()) == m.action_dim &&
                static_cast<int>(m.action_degenerate.size()) == m.action_dim,
            Errc::ConfigError, "manifest action stats are malformed");
    return m;
  }

  void save(const fs::path& dataset_dir) const { to_kv().save(dataset_dir / "manifest"); }
  static DatasetManifest load(const fs::path& dataset_dir) {
    return from_kv(KvFile::load(dataset_dir / "manifest"));
  }
};

/// Single deterministic pass over all episodes in directory order.
inline DatasetManifest compute_manifest(const fs::path& dataset_dir,
                                        double frame_rate_hz = 20.0,
                                        const std::string& task = "grasp") {
  auto dirs = list_episode_dirs(dataset_dir);
  require(!dirs.empty(), Errc::EmptyDataset, "no episodes under " + dataset_dir.string());

  DatasetManifest m;
  m.episodes = static_cast<int>(dirs.size());
  m.frame_rate_hz = frame_rate_hz;
  m.task = task;

  std::vector<double> sum, sumsq, ssum, ssumsq;
  std::size_t n = 0;
  bool fixed_length = true;
  int first_len = -1;
  for (const auto& d : dirs) {
    Episode ep = read_episode(d);
    if (first_len < 0) {
      first_len = ep.length();
      const auto& o = ep.observations.front();
      m.image_height = o.head_rgb.height;
      m.image_width = o.head_rgb.width;
      m.state_dim = static_cast<int>(o.proprio.size());
      m.action_dim = static_cast<int>(ep.actions.front().target.size());
      m.action_min.assign(m.action_dim, std::numeric_limits<double>::infinity());
      m.action_max.assign(m.action_dim, -std::numeric_limits<double>::infinity());
      sum.assign(m.action_dim, 0.0);
      sumsq.assign(m.action_dim, 0.0);
      ssum.assign(m.state_dim, 0.0);
      ssumsq.assign(m.state_dim, 0.0);
    }
    require(static_cast<int>(ep.actions.front().target.size()) == m.action_dim,
            Errc::DimensionMismatch, "action dim varies across episodes");
    require(static_cast<int>(ep.observations.front().proprio.size()) == m.state_dim,
            Errc::DimensionMismatch, "state dim varies across episodes");
    fixed_length = fixed_length && (ep.length() == first_len);
    for (int t = 0; t < ep.length(); ++t) {
      for (int i = 0; i < m.action_dim; ++i) {
        double v = ep.actions[t].target[i];
        m.action_min[i] = std::min(m.action_min[i], v);
        m.action_max[i] = std::max(m.action_max[i], v);
        sum[i] += v;
        sumsq[i] += v * v;
      }
      for (int i = 0; i < m.state_dim; ++i) {
        double v = ep.observations[t].proprio[i];
        ssum[i] += v;
        ssumsq[i] += v * v;
      }
      ++n;
    }
  }
  require(task != "grasp" || fixed_length, Errc::InconsistentStream,
          "grasp datasets must use a fixed episode length");

  m.action_mean.resize(m.action_dim);
  m.action_std.resize(m.action_dim);
  m.action_degenerate.resize(m.action_dim);
  for (int i = 0; i < m.action_dim; ++i) {
    m.action_mean[i] = sum[i] / static_cast<double>(n);
    m.action_std[i] =
        std::sqrt(std::max(0.0, sumsq[i] / static_cast<double>(n) - m.action_mean[i] * m.action_mean[i]));
    m.action_degenerate[i] =
        (m.action_max[i] - m.action_min[i]) < DatasetManifest::kDegenerateEps;
  }
  m.state_mean.resize(m.state_dim);
  m.state_std.resize(m.state_dim);
  for (int i = 0; i < m.state_dim; ++i) {
    m.state_mean[i] = ssum[i] / static_cast<double>(n);
    m.state_std[i] =
        std::sqrt(std::max(0.0, ssumsq[i] / static_cast<double>(n) - m.state_mean[i] * m.state_mean[i]));
  }
  return m;
}

}  // namespace graspkit
