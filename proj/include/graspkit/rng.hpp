#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace graspkit {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Combine a base seed with stream identifiers (worker id, step index, ...)
/// into an independent child seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  std::uint64_t x = a;
  std::uint64_t h = splitmix64(x);
  x ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= splitmix64(x);
  x ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return splitmix64(x);
}

/// xoshiro256** with hand-rolled distributions. The standard library's
/// distribution objects are not bit-stable across implementations; everything
/// downstream (datasets, sampling, jitter) needs byte-identical replays.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

  void reseed(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
    gauss_valid_ = false;
    gauss_spare_ = 0.0;
  }

  std::uint64_t next_u64() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_index(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Standard normal via Box-Muller (polar form avoided: trig form is
  /// branch-free and equally portable).
  double gaussian() {
    if (gauss_valid_) {
      gauss_valid_ = false;
      return gauss_spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    gauss_spare_ = r * std::sin(theta);
    gauss_valid_ = true;
    return r * std::cos(theta);
  }

  double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// State serialization for resumable training.
  std::string save_state() const {
    std::string out;
    for (auto w : s_) out += std::to_string(w) + " ";
    out += gauss_valid_ ? "1" : "0";
    out += " " + std::to_string(gauss_spare_);
    return out;
  }

  void load_state(const std::string& text) {
    std::size_t pos = 0;
    auto next = [&]() {
      std::size_t sp = text.find(' ', pos);
      std::string tok = text.substr(pos, sp - pos);
      pos = (sp == std::string::npos) ? text.size() : sp + 1;
      return tok;
    };
    for (auto& w : s_) w = std::stoull(next());
    gauss_valid_ = next() == "1";
    gauss_spare_ = std::stod(next());
  }

 private:
  std::array<std::uint64_t, 4> s_{};
  bool gauss_valid_ = false;
  double gauss_spare_ = 0.0;
};

}  // namespace graspkit
