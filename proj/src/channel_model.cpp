#include "smsec/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <string>

#include "smsec/numerics.hpp"

namespace smsec {

std::string_view to_string(AnMode mode) {
  return mode == AnMode::NullSpace ? "nullspace" : "random";
}

AnMode parse_an_mode(std::string_view text) {
  if (text == "nullspace") return AnMode::NullSpace;
  if (text == "random") return AnMode::Random;
  throw ConfigError("an_mode must be 'nullspace' or 'random', got '" + std::string(text) + "'");
}

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

int SystemConfig::bits_per_use() const {
  int b = 0;
  for (long long k = static_cast<long long>(n_active) * order; k > 1; k >>= 1) ++b;
  return b;
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
  };
  if (n_tx < 1) fail("N", "must be >= 1");
  if (n_bob < 1) fail("N_b", "must be >= 1");
  if (n_mallory < 2) fail("N_m", "must be >= 2");
  if (!is_power_of_two(n_active)) fail("N_t", "must be a power of 2");
  int expected = 1;
  while (expected * 2 <= n_tx) expected *= 2;
  if (n_active != expected)
    fail("N_t", "must equal 2^floor(log2 N) = " + std::to_string(expected));
  if (!is_power_of_two(order) || order < 2) fail("M", "must be a power of 2 and >= 2");
  if (!(power >= 0.0) || !std::isfinite(power)) fail("P", "must be finite and >= 0");
  if (!(mallory_power >= 0.0) || !std::isfinite(mallory_power)) fail("P_M", "must be finite and >= 0");
  if (!(beta >= 0.0 && beta <= 1.0)) fail("beta", "must lie in [0, 1]");
  const std::pair<const char*, double> variances[] = {
      {"sigma_a2", sigma_a2}, {"sigma_m2", sigma_m2}, {"sigma_b2", sigma_b2}, {"sigma_e2", sigma_e2}};
  for (const auto& [name, v] : variances)
    if (!(v >= 0.0) || !std::isfinite(v)) fail(name, "must be finite and >= 0");
}

ChannelSet sample_channels(const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  ChannelSet cs;
  cs.h = rng.complex_normal_matrix(cfg.n_bob, cfg.n_tx);
  cs.g = rng.complex_normal_matrix(cfg.n_mallory, cfg.n_tx);
  cs.f = rng.complex_normal_matrix(cfg.n_bob, cfg.n_mallory);
  cs.mself = rng.complex_normal_matrix(cfg.n_mallory, cfg.n_mallory);
  return cs;
}

RMatrix build_tas_matrix(const CMatrix& h, int n_active) {
  const auto n = static_cast<int>(h.cols());
  if (n_active < 1 || n_active > n)
    throw ConfigError("N_t: cannot select " + std::to_string(n_active) + " of " +
                      std::to_string(n) + " antennas");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const Eigen::VectorXd norms = h.colwise().squaredNorm().transpose();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return norms(a) > norms(b); });
  order.resize(n_active);
  std::sort(order.begin(), order.end());

  RMatrix t = RMatrix::Zero(n, n_active);
  for (int k = 0; k < n_active; ++k) t(order[k], k) = 1.0;
  return t;
}

std::vector<int> selected_antennas(const RMatrix& t) {
  std::vector<int> out;
  for (Eigen::Index k = 0; k < t.cols(); ++k) {
    Eigen::Index row = 0;
    t.col(k).maxCoeff(&row);
    out.push_back(static_cast<int>(row));
  }
  return out;
}

CMatrix build_an_projection(const CMatrix& h, const RMatrix& t, const SystemConfig& cfg,
                            AnMode mode, Rng& rng) {
  const Eigen::Index nt = t.cols();
  CMatrix basis;
  if (mode == AnMode::NullSpace) {
    if (nt <= h.rows()) throw ConfigError("AN null space empty: N_t must exceed N_b");
    const CMatrix ht = h * t.cast<Complex>();
    const auto ns = numerics::null_space_basis(ht.adjoint());
    if (ns.empty()) throw ConfigError("AN null space empty: H T has full column rank");
    basis = ns.columns;
  } else {
    Eigen::HouseholderQR<CMatrix> qr(rng.complex_normal_matrix(nt, nt));
    basis = qr.householderQ() * CMatrix::Identity(nt, nt);
  }
  const double width = static_cast<double>(basis.cols());
  if (cfg.sigma_a2 > 0.0) basis /= std::sqrt(width * cfg.sigma_a2);

  CMatrix p = CMatrix::Zero(nt, nt);
  p.leftCols(basis.cols()) = basis;
  return p;
}

MalloryChain build_mallory_chain(const CMatrix& g, const RMatrix& t, const CMatrix& mself,
                                 const SystemConfig& cfg) {
  if (g.rows() < 2) throw ConfigError("N_m: Mallory needs at least 2 antennas");
  const CMatrix gt = g * t.cast<Complex>();
  MalloryChain out;
  out.u_er = numerics::max_eigvec_hermitian(gt * gt.adjoint()).vector;

  CVector leak = mself.adjoint() * out.u_er;
  if (leak.norm() <= numerics::kRankTol * mself.norm()) {
    std::clog << "smsec: Mself^H u_er vanished; jamming precoder falls back to the complement "
                 "of u_er\n";
    leak = out.u_er;
    out.fallback = true;
  }
  out.p_jm = numerics::null_space_basis(leak).columns;
  if (cfg.sigma_m2 > 0.0)
    out.p_jm /= std::sqrt(static_cast<double>(out.p_jm.cols()) * cfg.sigma_m2);
  return out;
}

ChannelSet draw_channel_set(const SystemConfig& cfg, AnMode mode, Rng& rng) {
  ChannelSet cs = sample_channels(cfg, rng);
  cs.t = build_tas_matrix(cs.h, cfg.n_active);
  cs.selected = selected_antennas(cs.t);
  cs.p_an = build_an_projection(cs.h, cs.t, cfg, mode, rng);
  auto chain = build_mallory_chain(cs.g, cs.t, cs.mself, cfg);
  cs.u_er = std::move(chain.u_er);
  cs.p_jm = std::move(chain.p_jm);
  cs.self_interference_fallback = chain.fallback;
  return cs;
}

}  // namespace smsec
