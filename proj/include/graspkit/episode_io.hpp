#pragma once

#include <string>
#include <vector>

#include "graspkit/common.hpp"
#include "graspkit/kv.hpp"
#include "graspkit/tensor_io.hpp"
#include "graspkit/types.hpp"

namespace graspkit {

inline std::string episode_dir_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "ep_%06d", index);
  return buf;
}

/// Episode directory layout:
///   meta           target id, episode length, inlined scene spec
///   head_rgb.dgt   [T,H,W,3] u8
///   wrist_rgb.dgt  [T,H,W,3] u8
///   mask.dgt       [T,H,W,1] u8
///   state.dgt      [T,D_s]   f32
///   action.dgt     [T,D_a]   f32
inline void write_episode(const fs::path& dir, const Episode& ep) {
  ep.validate();
  fs::create_directories(dir);
  const int t_len = ep.length();
  const auto& first = ep.observations.front();
  const auto h = static_cast<std::uint32_t>(first.head_rgb.height);
  const auto w = static_cast<std::uint32_t>(first.head_rgb.width);
  const auto d_s = static_cast<std::uint32_t>(first.proprio.size());
  const auto d_a = static_cast<std::uint32_t>(ep.actions.front().target.size());

  std::vector<std::uint8_t> head, wrist, mask;
  std::vector<float> state, action;
  head.reserve(static_cast<std::size_t>(t_len) * h * w * 3);
  wrist.reserve(head.capacity());
  mask.reserve(static_cast<std::size_t>(t_len) * h * w);
  for (int t = 0; t < t_len; ++t) {
    const auto& o = ep.observations[t];
    require(o.head_rgb.height == static_cast<int>(h) && o.head_rgb.width == static_cast<int>(w),
            Errc::InconsistentStream, "image resolution varies within episode");
    require(o.proprio.size() == d_s, Errc::InconsistentStream, "state dim varies within episode");
    require(ep.actions[t].target.size() == d_a, Errc::InconsistentStream,
            "action dim varies within episode");
    head.insert(head.end(), o.head_rgb.data.begin(), o.head_rgb.data.end());
    wrist.insert(wrist.end(), o.wrist_rgb.data.begin(), o.wrist_rgb.data.end());
    mask.insert(mask.end(), o.mask.data.begin(), o.mask.data.end());
    state.insert(state.end(), o.proprio.begin(), o.proprio.end());
    action.insert(action.end(), ep.actions[t].target.begin(), ep.actions[t].target.end());
  }
  const auto tl = static_cast<std::uint32_t>(t_len);
  write_tensor(dir / "head_rgb.dgt", Tensor::of_u8({tl, h, w, 3}, std::move(head)));
  write_tensor(dir / "wrist_rgb.dgt", Tensor::of_u8({tl, h, w, 3}, std::move(wrist)));
  write_tensor(dir / "mask.dgt", Tensor::of_u8({tl, h, w, 1}, std::move(mask)));
  write_tensor(dir / "state.dgt", Tensor::of_f32({tl, d_s}, std::move(state)));
  write_tensor(dir / "action.dgt", Tensor::of_f32({tl, d_a}, std::move(action)));

  KvFile meta;
  meta.set("episode.length", static_cast<std::int64_t>(t_len));
  meta.set("episode.target_object_id", static_cast<std::int64_t>(ep.target_object_id));
  KvFile scene = KvFile::parse(ep.scene_meta);
  for (const auto& k : scene.keys()) meta.set(k, scene.get(k));
  meta.save(dir / "meta");
}

inline Episode read_episode(const fs::path& dir) {
  for (const char* stream : {"meta", "head_rgb.dgt", "wrist_rgb.dgt", "mask.dgt", "state.dgt",
                             "action.dgt"})
    require(fs::exists(dir / stream), Errc::MissingStream,
            std::string(stream) + " absent in " + dir.string());

  KvFile meta = KvFile::load(dir / "meta");
  Tensor head = read_tensor(dir / "head_rgb.dgt");
  Tensor wrist = read_tensor(dir / "wrist_rgb.dgt");
  Tensor mask = read_tensor(dir / "mask.dgt");
  Tensor state = read_tensor(dir / "state.dgt");
  Tensor action = read_tensor(dir / "action.dgt");

  require(head.shape.size() == 4 && wrist.shape.size() == 4 && mask.shape.size() == 4 &&
              state.shape.size() == 2 && action.shape.size() == 2,
          Errc::InconsistentStream, "unexpected stream ranks in " + dir.string());
  const std::uint32_t t_len = head.shape[0];
  require(wrist.shape[0] == t_len && mask.shape[0] == t_len && state.shape[0] == t_len &&
              action.shape[0] == t_len,
          Errc::InconsistentStream, "stream lengths disagree in " + dir.string());
  require(head.shape[1] == mask.shape[1] && head.shape[2] == mask.shape[2],
          Errc::InconsistentStream, "mask resolution disagrees in " + dir.string());
  require(t_len == static_cast<std::uint32_t>(meta.get_int("episode.length")),
          Errc::InconsistentStream, "meta length disagrees with streams");

  const int h = static_cast<int>(head.shape[1]);
  const int w = static_cast<int>(head.shape[2]);
  const int d_s = static_cast<int>(state.shape[1]);
  const int d_a = static_cast<int>(action.shape[1]);

  Episode ep;
  ep.target_object_id = static_cast<int>(meta.get_int("episode.target_object_id"));
  KvFile scene;
  for (const auto& k : meta.keys())
    if (k.rfind("episode.", 0) != 0) scene.set(k, meta.get(k));
  ep.scene_meta = scene.serialize();

  ep.observations.resize(t_len);
  ep.actions.resize(t_len);
  const std::size_t img_n = static_cast<std::size_t>(h) * w * 3;
  const std::size_t mask_n = static_cast<std::size_t>(h) * w;
  for (std::uint32_t t = 0; t < t_len; ++t) {
    Observation& o = ep.observations[t];
    o.head_rgb = Image(h, w, 3);
    o.wrist_rgb = Image(h, w, 3);
    o.mask = Image(h, w, 1);
    std::copy_n(head.u8.begin() + t * img_n, img_n, o.head_rgb.data.begin());
    std::copy_n(wrist.u8.begin() + t * img_n, img_n, o.wrist_rgb.data.begin());
    std::copy_n(mask.u8.begin() + t * mask_n, mask_n, o.mask.data.begin());
    o.proprio.assign(state.f32.begin() + t * d_s, state.f32.begin() + (t + 1) * d_s);
    ep.actions[t].target.assign(action.f32.begin() + t * d_a,
                                action.f32.begin() + (t + 1) * d_a);
  }
  return ep;
}

/// Sorted list of episode directories under `dataset_dir`/episodes.
inline std::vector<fs::path> list_episode_dirs(const fs::path& dataset_dir) {
  std::vector<fs::path> dirs;
  fs::path root = dataset_dir / "episodes";
  if (fs::exists(root))
    for (const auto& e : fs::directory_iterator(root))
      if (e.is_directory() && e.path().filename().string().rfind("ep_", 0) == 0)
        dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

}  // namespace graspkit
