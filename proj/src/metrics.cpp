#include "smsec/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "smsec/numerics.hpp"

namespace smsec {

CMatrix noise_cov_bob(const ChannelSet& cs, const SystemConfig& cfg) {
  const Eigen::Index nb = cs.h.rows();
  const CMatrix an = cs.ht() * cs.p_an;
  const CMatrix jam = cs.f * cs.p_jm;
  CMatrix rw = (1.0 - cfg.beta) * cfg.power * cfg.sigma_a2 * (an * an.adjoint()) +
               cfg.mallory_power * cfg.sigma_m2 * (jam * jam.adjoint()) +
               cfg.sigma_b2 * CMatrix::Identity(nb, nb);
  return 0.5 * (rw + rw.adjoint());
}

double scalar_inpn_cov(const CVector& u, const ChannelSet& cs, const SystemConfig& cfg, Side side) {
  if (side == Side::Bob) return numerics::quadratic_form(noise_cov_bob(cs, cfg), u);
  const CVector an = (u.adjoint() * cs.gt() * cs.p_an).transpose();
  const CVector self = (u.adjoint() * cs.mself * cs.p_jm).transpose();
  return (1.0 - cfg.beta) * cfg.power * cfg.sigma_a2 * an.squaredNorm() +
         cfg.mallory_power * cfg.sigma_m2 * self.squaredNorm() + cfg.sigma_e2;
}

double sjnr(const CVector& u, const ChannelSet& cs, const SystemConfig& cfg) {
  const CMatrix ht = cs.ht();
  const double signal =
      cfg.beta * cfg.power / cfg.n_active * (ht.adjoint() * u).squaredNorm();
  return signal / scalar_inpn_cov(u, cs, cfg, Side::Bob);
}

std::vector<Complex> effective_constellation(const CVector& u, Side side, const ChannelSet& cs,
                                             const SystemConfig& cfg, const TxCodebook& codebook) {
  const double w = scalar_inpn_cov(u, cs, cfg, side);
  const CMatrix ct = side == Side::Bob ? cs.ht() : cs.gt();
  const Eigen::RowVectorXcd gains = u.adjoint() * ct;
  const double amp = std::sqrt(cfg.beta * cfg.power / (w > 0.0 ? w : 1.0));
  std::vector<Complex> points;
  points.reserve(codebook.size());
  for (const auto& e : codebook) points.push_back(amp * gains(e.antenna) * e.symbol);
  return points;
}

double discrete_input_mi(std::span<const Complex> points, int n_noise, Rng& rng) {
  if (n_noise < 1) throw std::invalid_argument("mutual information: n_noise must be >= 1");
  const std::size_t k = points.size();
  if (k == 0) throw std::invalid_argument("mutual information: empty constellation");
  const double log2k = std::log2(static_cast<double>(k));

  std::vector<double> expo(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double acc = 0.0;
    for (int s = 0; s < n_noise; ++s) {
      const Complex n = rng.complex_normal(1.0);
      const double nn = std::norm(n);
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < k; ++j) {
        expo[j] = nn - std::norm(points[i] - points[j] + n);
        top = std::max(top, expo[j]);
      }
      double sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) sum += std::exp(expo[j] - top);
      acc += (top + std::log(sum)) / std::numbers::ln2;
    }
    total += acc / n_noise;
  }
  const double mi = log2k - total / static_cast<double>(k);
  return std::clamp(mi, 0.0, log2k);
}

double mutual_info_mc(const CVector& u, Side side, const ChannelSet& cs, const SystemConfig& cfg,
                      const TxCodebook& codebook, int n_noise, Rng& rng) {
  if (n_noise < 1) throw std::invalid_argument("mutual_info_mc: n_noise must be >= 1");
  const double w = scalar_inpn_cov(u, cs, cfg, side);
  const auto points = effective_constellation(u, side, cs, cfg, codebook);
  if (!(w > 0.0)) {
    // Noise-free observation: the input is recovered up to coincident points.
    std::vector<Complex> distinct;
    const double tol = 1e-12 * std::max(1.0, std::abs(*std::max_element(
        points.begin(), points.end(),
        [](Complex a, Complex b) { return std::abs(a) < std::abs(b); })));
    for (Complex p : points)
      if (std::none_of(distinct.begin(), distinct.end(),
                       [&](Complex q) { return std::abs(p - q) <= tol; }))
        distinct.push_back(p);
    return std::log2(static_cast<double>(distinct.size()));
  }
  return discrete_input_mi(points, n_noise, rng);
}

double secrecy_rate(const Beamformer& bf, const ChannelSet& cs, const SystemConfig& cfg,
                    const TxCodebook& codebook, int n_noise, Rng& rng) {
  const double ib = mutual_info_mc(bf.u_br, Side::Bob, cs, cfg, codebook, n_noise, rng);
  const double ie = mutual_info_mc(cs.u_er, Side::Mallory, cs, cfg, codebook, n_noise, rng);
  return std::max(0.0, ib - ie);
}

MlDetector::MlDetector(const Beamformer& bf, const ChannelSet& cs, const SystemConfig& cfg,
                       const TxCodebook& codebook)
    : u_(bf.u_br) {
  const double w = scalar_inpn_cov(u_, cs, cfg, Side::Bob);
  scale_ = w > 0.0 ? 1.0 / std::sqrt(w) : 1.0;
  refs_ = effective_constellation(u_, Side::Bob, cs, cfg, codebook);
}

std::size_t MlDetector::detect(const CVector& y_b) const {
  const Complex z = scale_ * u_.dot(y_b);
  std::size_t best = 0;
  double best_d = std::norm(z - refs_[0]);
  for (std::size_t i = 1; i < refs_.size(); ++i) {
    const double d = std::norm(z - refs_[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t ml_detect(const CVector& y_b, const Beamformer& bf, const ChannelSet& cs,
                      const SystemConfig& cfg, const TxCodebook& codebook) {
  return MlDetector(bf, cs, cfg, codebook).detect(y_b);
}

BerResult& BerResult::operator+=(const BerResult& o) {
  bit_errors += o.bit_errors;
  bits += o.bits;
  trials += o.trials;
  infeasible_channels += o.infeasible_channels;
  return *this;
}

int hamming_distance(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

BerResult ber_trials(const Beamformer& bf, const ChannelSet& cs, const SystemConfig& cfg,
                     const TxCodebook& codebook, std::uint64_t n_trials, Rng& rng) {
  const MlDetector detector(bf, cs, cfg, codebook);
  BerResult out;
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    const auto& entry = codebook[rng.index(codebook.size())];
    const RxSample rx = receive(entry, cs, cfg, rng);
    const std::size_t hat = detector.detect(rx.y_b);
    out.bit_errors += hamming_distance(entry.label, codebook[hat].label);
  }
  out.trials = n_trials;
  out.bits = n_trials * static_cast<std::uint64_t>(codebook.bits_per_use());
  return out;
}

BerResult ber(Method method, std::span<const ChannelSet> channels, const SystemConfig& cfg,
              const TxCodebook& codebook, std::uint64_t n_trials, Rng& rng) {
  if (n_trials == 0) throw std::invalid_argument("ber: n_trials must be >= 1");
  if (channels.empty()) throw std::invalid_argument("ber: empty channel stream");
  const std::uint64_t n_ch = channels.size();
  BerResult total;
  for (std::uint64_t c = 0; c < n_ch; ++c) {
    const std::uint64_t share = n_trials / n_ch + (c < n_trials % n_ch ? 1 : 0);
    if (share == 0) continue;
    try {
      const Beamformer bf = design(method, channels[c], cfg);
      total += ber_trials(bf, channels[c], cfg, codebook, share, rng);
    } catch (const ZfcInfeasible&) {
      ++total.infeasible_channels;
    }
  }
  return total;
}

double flop_estimate(Method method, int n_bob) {
  const double n = n_bob;
  const double n3 = n * n * n;
  switch (method) {
    case Method::MaxRP: return 129.0 * n3;
    case Method::MaxWFRP: return 266.0 * n3 + 3.0 * n;
    case Method::MaxRPZFC: return 259.0 * n3;
    case Method::MaxSJNR: return 268.0 * n3 + 3.0 * n;
  }
  return 0.0;
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(samples.size());
  const double n = static_cast<double>(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k)
    out.emplace_back(samples[k], static_cast<double>(k + 1) / n);
  return out;
}

}  // namespace smsec
