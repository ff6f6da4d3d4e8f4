#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "smsec/beamformers.hpp"
#include "smsec/channel_model.hpp"
#include "smsec/rng.hpp"
#include "smsec/sm_signal.hpp"
#include "smsec/types.hpp"

namespace smsec {

enum class Side { Bob, Mallory };

/// Covariance of Bob's interference plus noise:
/// (1-beta) P sigma_a2 H T P_AN P_AN^H T^H H^H + P_M sigma_m2 F P_JM P_JM^H F^H + sigma_b2 I.
CMatrix noise_cov_bob(const ChannelSet& cs, const SystemConfig& cfg);

/// Post-combining interference-plus-noise power W_B (Bob) or W_E (Mallory).
double scalar_inpn_cov(const CVector& u, const ChannelSet& cs, const SystemConfig& cfg, Side side);

/// (beta P / N_t) u^H H T T^H H^H u / (u^H R_w u).
double sjnr(const CVector& u, const ChannelSet& cs, const SystemConfig& cfg);

/// Scalar constellation seen after combining with u and normalizing by
/// 1/sqrt(W): sqrt(beta P / W) u^H C T e_n s_m for every codebook entry, with
/// C = H (Bob) or G (Mallory). Unscaled when W == 0.
std::vector<Complex> effective_constellation(const CVector& u, Side side, const ChannelSet& cs,
                                             const SystemConfig& cfg, const TxCodebook& codebook);

/// Monte-Carlo mutual information (bits) of a uniform discrete input over
/// `points` through y = x + n, n ~ CN(0, 1):
///   log2 K - 1/K sum_i E_n log2 sum_j exp(-|x_i - x_j + n|^2 + |n|^2).
/// Clamped to [0, log2 K].
double discrete_input_mi(std::span<const Complex> points, int n_noise, Rng& rng);

/// Mutual information between the SM codebook and the combined, whitened
/// scalar at Bob or Mallory. Throws std::invalid_argument when n_noise < 1.
double mutual_info_mc(const CVector& u, Side side, const ChannelSet& cs, const SystemConfig& cfg,
                      const TxCodebook& codebook, int n_noise, Rng& rng);

/// [I_b - I_e]^+ for one realization; Mallory combines with cs.u_er.
double secrecy_rate(const Beamformer& bf, const ChannelSet& cs, const SystemConfig& cfg,
                    const TxCodebook& codebook, int n_noise, Rng& rng);

/// Minimum-distance detector on the whitened combiner output.
class MlDetector {
 public:
  MlDetector(const Beamformer& bf, const ChannelSet& cs, const SystemConfig& cfg,
             const TxCodebook& codebook);

  std::size_t detect(const CVector& y_b) const;

 private:
  CVector u_;
  double scale_ = 1.0;
  std::vector<Complex> refs_;
};

std::size_t ml_detect(const CVector& y_b, const Beamformer& bf, const ChannelSet& cs,
                      const SystemConfig& cfg, const TxCodebook& codebook);

struct BerResult {
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t trials = 0;
  std::uint64_t infeasible_channels = 0;

  double ber() const { return bits == 0 ? 0.0 : static_cast<double>(bit_errors) / bits; }
  BerResult& operator+=(const BerResult& o);
};

int hamming_distance(std::uint32_t a, std::uint32_t b);

/// n_trials uniformly drawn codebook entries sent over one channel and beamformer.
BerResult ber_trials(const Beamformer& bf, const ChannelSet& cs, const SystemConfig& cfg,
                     const TxCodebook& codebook, std::uint64_t n_trials, Rng& rng);

/// BER of `method` over a stream of channels; trial t uses channel t mod size.
/// Channels on which the method is infeasible are skipped and counted.
/// Throws std::invalid_argument when n_trials == 0 or the stream is empty.
BerResult ber(Method method, std::span<const ChannelSet> channels, const SystemConfig& cfg,
              const TxCodebook& codebook, std::uint64_t n_trials, Rng& rng);

/// Approximate FLOP counts of the four receive beamformers.
double flop_estimate(Method method, int n_bob);

/// (sorted sample, k/n) pairs.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples);

struct MetricsRecord {
  Method method = Method::MaxRP;
  double snr_db = 0.0;
  double p_m = 0.0;
  double avg_sr = 0.0;
  double sr_stderr = 0.0;
  double ber = 0.0;
  double avg_sjnr_db = 0.0;
  std::vector<double> sr_samples;
  std::uint64_t n_realizations = 0;   // realizations on which the method ran
  std::uint64_t n_zfc_infeasible = 0;
  std::uint64_t n_ber_trials = 0;
  std::uint64_t n_bit_errors = 0;

  bool operator==(const MetricsRecord&) const = default;
};

}  // namespace smsec
