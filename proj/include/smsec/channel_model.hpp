#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "smsec/rng.hpp"
#include "smsec/types.hpp"

namespace smsec {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AnMode { NullSpace, Random };

std::string_view to_string(AnMode mode);
AnMode parse_an_mode(std::string_view text);

/// Scenario parameters. Powers in watts, variances linear.
struct SystemConfig {
  int n_tx = 8;      // N, Alice antennas
  int n_active = 8;  // N_t = 2^floor(log2 N)
  int n_bob = 6;     // N_b
  int n_mallory = 4; // N_m
  double power = 10.0;        // P
  double mallory_power = 1.0; // P_M
  double beta = 0.5;
  double sigma_a2 = 1.0;
  double sigma_m2 = 1.0;
  double sigma_b2 = 1.0;
  double sigma_e2 = 1.0;
  int order = 4;  // M
  std::uint64_t seed = 1;

  // Throws ConfigError naming the offending field.
  void validate() const;

  // Jamming streams N_m' = N_m - 1.
  int n_jam() const { return n_mallory - 1; }
  int bits_per_use() const;

  bool operator==(const SystemConfig&) const = default;
};

bool is_power_of_two(long long v);

/// One channel realization plus everything derived from it.
struct ChannelSet {
  CMatrix h;      // N_b x N, Alice -> Bob
  CMatrix g;      // N_m x N, Alice -> Mallory
  CMatrix f;      // N_b x N_m, Mallory -> Bob
  CMatrix mself;  // N_m x N_m, Mallory self-interference
  RMatrix t;      // N x N_t antenna selection
  std::vector<int> selected;  // antenna indices picked by t, ascending
  CMatrix p_an;   // N_t x N_t
  CVector u_er;   // N_m, Mallory receive vector
  CMatrix p_jm;   // N_m x N_m'
  bool self_interference_fallback = false;

  CMatrix ht() const { return h * t.cast<Complex>(); }
  CMatrix gt() const { return g * t.cast<Complex>(); }
};

/// i.i.d. CN(0,1) entries for H, G, F and Mself; derived fields left empty.
ChannelSet sample_channels(const SystemConfig& cfg, Rng& rng);

/// Keeps the n_active columns of H with the largest norms; lower index wins
/// ties, selected antennas stay in ascending order.
RMatrix build_tas_matrix(const CMatrix& h, int n_active);
std::vector<int> selected_antennas(const RMatrix& t);

/// AN projection, N_t x N_t, with trace(P P^H) * sigma_a2 = 1.
///
/// NullSpace: orthonormal basis of null(H T) zero-padded to N_t columns, so
/// AN never reaches Bob. Requires N_t > N_b. Random: a scaled random unitary.
CMatrix build_an_projection(const CMatrix& h, const RMatrix& t, const SystemConfig& cfg,
                            AnMode mode, Rng& rng);

struct MalloryChain {
  CVector u_er;
  CMatrix p_jm;
  bool fallback = false;
};

/// Mallory's receive vector (max intercepted power) and a jamming precoder
/// whose self-interference vanishes along u_er.
MalloryChain build_mallory_chain(const CMatrix& g, const RMatrix& t, const CMatrix& mself,
                                 const SystemConfig& cfg);

/// sample_channels followed by all builders.
ChannelSet draw_channel_set(const SystemConfig& cfg, AnMode mode, Rng& rng);

}  // namespace smsec
