#include "smsec/sm_signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace smsec {
namespace {

int log2_exact(int v) {
  int b = 0;
  while ((1 << b) < v) ++b;
  return b;
}

}  // namespace

std::uint32_t gray_encode(std::uint32_t k) { return k ^ (k >> 1); }

std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t k = g;
  for (std::uint32_t s = g >> 1; s != 0; s >>= 1) k ^= s;
  return k;
}

TxCodebook::TxCodebook(int n_active, int order) : n_active_(n_active), order_(order) {
  if (!is_power_of_two(n_active))
    throw ConfigError("N_t must be a power of 2, got " + std::to_string(n_active));
  if (!is_power_of_two(order) || order < 2)
    throw ConfigError("M must be a power of 2 and >= 2, got " + std::to_string(order));
  antenna_bits_ = log2_exact(n_active);
  symbol_bits_ = log2_exact(order);

  // BPSK sits on the real axis; higher orders are rotated by pi/M (QPSK at pi/4).
  const double offset = order == 2 ? 0.0 : std::numbers::pi / order;
  const std::size_t total = static_cast<std::size_t>(n_active) * order;
  entries_.reserve(total);
  for (std::uint32_t label = 0; label < total; ++label) {
    CodebookEntry e;
    e.label = label;
    e.antenna = static_cast<int>(label >> symbol_bits_);
    e.symbol_index = static_cast<int>(gray_decode(label & (order - 1)));
    e.symbol = std::polar(1.0, 2.0 * std::numbers::pi * e.symbol_index / order + offset);
    entries_.push_back(e);
  }
}

std::size_t TxCodebook::index_of(int antenna, int symbol_index) const {
  return (static_cast<std::size_t>(antenna) << symbol_bits_) |
         gray_encode(static_cast<std::uint32_t>(symbol_index));
}

CVector TxCodebook::vector(std::size_t i) const {
  CVector x = CVector::Zero(n_active_);
  x(entries_[i].antenna) = entries_[i].symbol;
  return x;
}

TxCodebook build_codebook(int n_active, int order) { return TxCodebook(n_active, order); }

CVector transmit_alice(const CodebookEntry& entry, const ChannelSet& cs, const SystemConfig& cfg,
                       Rng& rng) {
  const Eigen::Index nt = cs.t.cols();
  CVector active = CVector::Zero(nt);
  active(entry.antenna) = std::sqrt(cfg.beta * cfg.power) * entry.symbol;
  const double an_amp = std::sqrt((1.0 - cfg.beta) * cfg.power);
  if (an_amp > 0.0) active += an_amp * (cs.p_an * rng.complex_normal_vector(nt, cfg.sigma_a2));
  return cs.t.cast<Complex>() * active;
}

CVector transmit_mallory(const ChannelSet& cs, const SystemConfig& cfg, Rng& rng) {
  if (cfg.mallory_power == 0.0) return CVector::Zero(cs.p_jm.rows());
  return std::sqrt(cfg.mallory_power) *
         (cs.p_jm * rng.complex_normal_vector(cs.p_jm.cols(), cfg.sigma_m2));
}

RxSample receive(const CodebookEntry& entry, const ChannelSet& cs, const SystemConfig& cfg,
                 Rng& rng) {
  const CVector xa = transmit_alice(entry, cs, cfg, rng);
  const CVector xm = transmit_mallory(cs, cfg, rng);
  RxSample out;
  out.y_b = cs.h * xa + cs.f * xm + rng.complex_normal_vector(cs.h.rows(), cfg.sigma_b2);
  out.y_e = cs.g * xa + cs.mself * xm + rng.complex_normal_vector(cs.g.rows(), cfg.sigma_e2);
  out.truth = entry.label;
  return out;
}

}  // namespace smsec
