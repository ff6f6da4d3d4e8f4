#include "smsec/beamformers.hpp"

#include <string>

#include "smsec/metrics.hpp"
#include "smsec/numerics.hpp"

namespace smsec {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::MaxRP: return "MaxRP";
    case Method::MaxWFRP: return "MaxWFRP";
    case Method::MaxRPZFC: return "MaxRPZFC";
    case Method::MaxSJNR: return "MaxSJNR";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  for (Method m : kAllMethods)
    if (to_string(m) == text) return m;
  throw ConfigError("unknown method '" + std::string(text) +
                    "' (expected MaxRP, MaxWFRP, MaxRPZFC or MaxSJNR)");
}

CMatrix signal_gram(const ChannelSet& cs) {
  const CMatrix ht = cs.ht();
  return ht * ht.adjoint();
}

Beamformer max_rp(const ChannelSet& cs, const SystemConfig& cfg) {
  const auto top = numerics::max_eigvec_hermitian(signal_gram(cs));
  const CMatrix rw = noise_cov_bob(cs, cfg);
  const double sigma_w2 = rw.trace().real() / static_cast<double>(rw.rows());
  Beamformer bf{Method::MaxRP, top.vector, 0.0, std::nullopt};
  bf.objective = cfg.beta * cfg.power / (sigma_w2 * cfg.n_active) * top.value;
  return bf;
}

Beamformer max_wfrp(const ChannelSet& cs, const SystemConfig& cfg) {
  const CMatrix w = numerics::whitening_matrix(noise_cov_bob(cs, cfg));
  const CMatrix whitened = w * signal_gram(cs) * w.adjoint();
  const auto top = numerics::max_eigvec_hermitian(0.5 * (whitened + whitened.adjoint()));

  CVector u = w.adjoint() * top.vector;
  u.normalize();
  numerics::canonicalize_phase(u);
  return {Method::MaxWFRP, std::move(u), cfg.beta * cfg.power / cfg.n_active * top.value, w};
}

Beamformer max_rp_zfc(const ChannelSet& cs, const SystemConfig& cfg) {
  const CMatrix f_eff = cs.f * cs.p_jm;
  const auto perp = numerics::null_space_basis(f_eff);
  if (perp.empty())
    throw ZfcInfeasible("ZFC infeasible: rank(F P_JM) = N_b = " + std::to_string(cs.f.rows()));

  const CMatrix& u_perp = perp.columns;
  const CMatrix gram = signal_gram(cs);
  CMatrix num = cfg.beta * cfg.power * (u_perp.adjoint() * gram * u_perp);
  num = 0.5 * (num + num.adjoint());
  CMatrix den = u_perp.adjoint() * u_perp;
  den = 0.5 * (den + den.adjoint());
  const auto inner = numerics::gen_max_eigvec(num, den);

  CVector u = u_perp * inner.vector;
  u.normalize();
  numerics::canonicalize_phase(u);
  const double obj = cfg.beta * cfg.power / cfg.n_active * numerics::quadratic_form(gram, u);
  return {Method::MaxRPZFC, std::move(u), obj, std::nullopt};
}

Beamformer max_sjnr(const ChannelSet& cs, const SystemConfig& cfg) {
  const CMatrix num = cfg.beta * cfg.power / cfg.n_active * signal_gram(cs);
  const auto best = numerics::gen_max_eigvec(num, noise_cov_bob(cs, cfg));
  return {Method::MaxSJNR, best.vector, best.value, std::nullopt};
}

Beamformer design(Method m, const ChannelSet& cs, const SystemConfig& cfg) {
  switch (m) {
    case Method::MaxRP: return max_rp(cs, cfg);
    case Method::MaxWFRP: return max_wfrp(cs, cfg);
    case Method::MaxRPZFC: return max_rp_zfc(cs, cfg);
    case Method::MaxSJNR: return max_sjnr(cs, cfg);
  }
  throw ConfigError("unknown method");
}

}  // namespace smsec
