#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "smsec/channel_model.hpp"
#include "smsec/types.hpp"

namespace smsec {

enum class Method { MaxRP, MaxWFRP, MaxRPZFC, MaxSJNR };

inline constexpr std::array<Method, 4> kAllMethods = {Method::MaxRP, Method::MaxWFRP,
                                                      Method::MaxRPZFC, Method::MaxSJNR};

std::string_view to_string(Method m);
Method parse_method(std::string_view text);

/// Raised when rank(F P_JM) >= N_b leaves no room for the zero-forcing constraint.
class ZfcInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A unit-norm receive vector for Bob. u_br is always the vector applied to
/// the raw N_b-dimensional observation (for Max-WFRP that is W_WF^H u,
/// renormalized); `whitening` holds W_WF for Max-WFRP only.
struct Beamformer {
  Method method = Method::MaxRP;
  CVector u_br;
  double objective = 0.0;
  std::optional<CMatrix> whitening;
};

/// H T T^H H^H.
CMatrix signal_gram(const ChannelSet& cs);

/// Dominant eigenvector of H T T^H H^H. The reported objective uses the white
/// approximation sigma_w^2 = trace(R_w) / N_b.
Beamformer max_rp(const ChannelSet& cs, const SystemConfig& cfg);

/// Whitens with W_WF = Lambda^{-1/2} U_w^H of R_w, then Max-RP in the whitened
/// domain. objective = beta P / N_t * lambda_max, which is the achieved SJNR.
Beamformer max_wfrp(const ChannelSet& cs, const SystemConfig& cfg);

/// Max-RP restricted to the orthogonal complement of range(F P_JM).
/// Throws ZfcInfeasible when that complement is {0}.
Beamformer max_rp_zfc(const ChannelSet& cs, const SystemConfig& cfg);

/// Generalized Rayleigh quotient of (beta P / N_t) H T T^H H^H against R_w.
Beamformer max_sjnr(const ChannelSet& cs, const SystemConfig& cfg);

Beamformer design(Method m, const ChannelSet& cs, const SystemConfig& cfg);

}  // namespace smsec
