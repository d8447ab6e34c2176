#pragma once

#include <cstdio>
#include <string>

#include "graspkit/episode_io.hpp"
#include "graspkit/manifest.hpp"
#include "graspkit/perception/segment.hpp"
#include "graspkit/perception/tracker.hpp"
#include "graspkit/sim/expert.hpp"
#include "graspkit/sim/scene.hpp"
#include "graspkit/sim/world.hpp"

namespace graspkit::sim {

struct CollectConfig {
  int n = 300;
  std::string task = "grasp";  // grasp | nonprehensile
  std::uint64_t seed = 7;
  int fixed_length = 75;   // grasp episodes record exactly this many steps
  int max_length = 150;    // nonprehensile cap; episode ends at success
  double success_floor = 0.5;
  double frame_rate_hz = 20.0;
  SceneDistribution dist;
  SimConfig sim;
  bool verbose = false;
};

struct ExpertRollout {
  Episode episode;
  bool success = false;
};

/// One expert demonstration attempt on a freshly sampled scene. Masks come
/// from the oracle tracker, initialized from the target's bounding box the
/// same way the deployed pipeline is.
inline ExpertRollout expert_rollout(const SceneSpec& scene, int target_id,
                                    const CollectConfig& cfg, std::uint64_t noise_seed) {
  SimWorld world(scene, cfg.sim);
  world.set_step_budget(cfg.task == "grasp" ? cfg.fixed_length : cfg.max_length);
  ScriptedExpert expert(target_id, cfg.task, noise_seed);

  perception::OracleSegmenter segmenter(&world);
  perception::OracleTracker tracker(&world);
  Observation first = world.observe();
  tracker.init(segmenter.segment(first.head_rgb, world.gt_bbox(target_id)));

  ExpertRollout out;
  out.episode.scene_meta = scene.serialize();
  out.episode.target_object_id = target_id;
  const int limit = cfg.task == "grasp" ? cfg.fixed_length : cfg.max_length;
  for (int t = 0; t < limit; ++t) {
    Observation obs = world.observe();
    obs.mask = tracker.track(obs.head_rgb);
    Action a = expert.act(world);
    out.episode.observations.push_back(std::move(obs));
    out.episode.actions.push_back(a);
    world.step(a);
    if (cfg.task != "grasp" && world.success_check()) break;
  }
  out.success = world.success_check();
  return out;
}

/// Writes n successful demonstrations; failed rollouts are discarded and the
/// scene resampled. Fully determined by cfg.seed.
inline DatasetManifest collect_demos(const CollectConfig& cfg, const fs::path& out_dir) {
  require(cfg.n >= 1, Errc::ConfigError, "need n >= 1 demos");
  fs::create_directories(out_dir / "episodes");

  int written = 0, attempts = 0;
  while (written < cfg.n) {
    std::uint64_t attempt_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(attempts), 0xc0);
    ++attempts;
    SceneSpec scene = sample_scene(cfg.dist, attempt_seed);
    Rng pick(mix_seed(attempt_seed, 17));
    int target = -1;
    if (cfg.task == "nonprehensile") {
      for (std::size_t i = 0; i < scene.objects.size(); ++i)
        if (!scene.objects[i].graspable) target = static_cast<int>(i);
      require(target >= 0, Errc::ConfigError,
              "nonprehensile collection needs a flat target in the distribution");
    } else {
      std::vector<int> graspable;
      for (std::size_t i = 0; i < scene.objects.size(); ++i)
        if (scene.objects[i].graspable) graspable.push_back(static_cast<int>(i));
      require(!graspable.empty(), Errc::ConfigError, "scene has no graspable object");
      target = graspable[pick.uniform_index(graspable.size())];
    }

    ExpertRollout rollout = expert_rollout(scene, target, cfg, mix_seed(attempt_seed, 99));
    if (rollout.success) {
      write_episode(out_dir / "episodes" / episode_dir_name(written), rollout.episode);
      ++written;
      if (cfg.verbose && written % 50 == 0)
        std::fprintf(stderr, "collect: %d/%d episodes\n", written, cfg.n);
    }

    if (attempts >= 20 && static_cast<double>(written) / attempts < cfg.success_floor)
      raise(Errc::ExpertFloorViolated,
            "expert success rate " + std::to_string(written) + "/" + std::to_string(attempts) +
                " fell below the configured floor");
  }

  DatasetManifest manifest = compute_manifest(out_dir, cfg.frame_rate_hz, cfg.task);
  manifest.save(out_dir);
  return manifest;
}

}  // namespace graspkit::sim
