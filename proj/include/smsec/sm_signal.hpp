#pragma once

#include <cstdint>
#include <vector>

#include "smsec/channel_model.hpp"
#include "smsec/rng.hpp"
#include "smsec/types.hpp"

namespace smsec {

/// One spatial-modulation transmit vector e_n s_m and its bit label.
///
/// The label packs log2 N_t antenna bits above log2 M Gray-coded symbol bits;
/// an entry's position in the codebook equals its label.
struct CodebookEntry {
  std::uint32_t label = 0;
  int antenna = 0;       // 0-based index into the N_t active antennas
  int symbol_index = 0;  // PSK phase index k, point exp(j(2 pi k / M + offset))
  Complex symbol;
};

class TxCodebook {
 public:
  TxCodebook(int n_active, int order);

  int n_active() const { return n_active_; }
  int order() const { return order_; }
  int bits_per_use() const { return antenna_bits_ + symbol_bits_; }
  std::size_t size() const { return entries_.size(); }

  const CodebookEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<CodebookEntry>& entries() const { return entries_; }
  std::vector<CodebookEntry>::const_iterator begin() const { return entries_.begin(); }
  std::vector<CodebookEntry>::const_iterator end() const { return entries_.end(); }

  std::size_t index_of(int antenna, int symbol_index) const;

  // e_n s_m as an N_t-vector.
  CVector vector(std::size_t i) const;

 private:
  int n_active_;
  int order_;
  int antenna_bits_;
  int symbol_bits_;
  std::vector<CodebookEntry> entries_;
};

/// Gray-labeled M-PSK spatial-modulation codebook. Throws ConfigError on
/// non-power-of-2 sizes.
TxCodebook build_codebook(int n_active, int order);

/// Gray code of k and its inverse.
std::uint32_t gray_encode(std::uint32_t k);
std::uint32_t gray_decode(std::uint32_t g);

struct RxSample {
  CVector y_b;  // N_b, before Bob's combiner
  CVector y_e;  // N_m, before Mallory's combiner
  std::size_t truth = 0;
};

/// x_a = T (sqrt(beta P) e_n s_m + sqrt((1-beta) P) P_AN n_a), n_a ~ CN(0, sigma_a2 I).
CVector transmit_alice(const CodebookEntry& entry, const ChannelSet& cs, const SystemConfig& cfg,
                       Rng& rng);

/// x_m = sqrt(P_M) P_JM n_m, n_m ~ CN(0, sigma_m2 I).
CVector transmit_mallory(const ChannelSet& cs, const SystemConfig& cfg, Rng& rng);

/// y_b = H x_a + F x_m + n_b and y_e = G x_a + Mself x_m + n_e.
RxSample receive(const CodebookEntry& entry, const ChannelSet& cs, const SystemConfig& cfg,
                 Rng& rng);

}  // namespace smsec
