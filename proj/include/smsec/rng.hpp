#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

#include "smsec/types.hpp"

namespace smsec {

// Random stream used by every stochastic operation. Streams are derived from
// (seed, path) by hashing, so any work item can rebuild its own stream without
// touching shared state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream for a (seed, index path), e.g. derive(seed, {kChannel, realization}).
  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);
  static Rng derive(std::uint64_t seed, std::span<const std::uint64_t> path);

  double normal() { return std_normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t bits() { return engine_(); }
  std::size_t index(std::size_t n);

  // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  Complex complex_normal(double variance = 1.0);
  CVector complex_normal_vector(Eigen::Index n, double variance = 1.0);
  CMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, double variance = 1.0);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> std_normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Stream tags for Rng::derive.
namespace stream {
inline constexpr std::uint64_t kChannel = 0x43484e;
inline constexpr std::uint64_t kMutualInfoBob = 0x4d4942;
inline constexpr std::uint64_t kMutualInfoEve = 0x4d4945;
inline constexpr std::uint64_t kBer = 0x424552;
}  // namespace stream

}  // namespace smsec
