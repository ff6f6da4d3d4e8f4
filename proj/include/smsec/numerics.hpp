#pragma once

#include <stdexcept>
#include <string>

#include "smsec/types.hpp"

// Dense complex-matrix primitives shared by the channel builders, the
// beamformers and the metrics. Everything here is a pure function.
namespace smsec::numerics {

class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit eigenvector with its (real) eigenvalue or generalized ratio.
struct EigenPair {
  CVector vector;
  double value = 0.0;
};

/// Orthonormal columns spanning a subspace. Zero columns means the subspace is
/// {0}; callers treating the basis as a constraint set must check empty().
struct OrthonormalBasis {
  CMatrix columns;

  Eigen::Index dim() const { return columns.rows(); }
  Eigen::Index width() const { return columns.cols(); }
  bool empty() const { return columns.cols() == 0; }
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kPdTol = 1e-12;
inline constexpr double kTieTol = 1e-10;
inline constexpr double kConditionLimit = 1e10;

bool is_finite(const CMatrix& a);
bool is_hermitian(const CMatrix& a, double tol = kHermitianTol);

// Throws NumericsError unless `a` is square, finite and Hermitian.
void require_hermitian(const CMatrix& a, const char* what);

/// Rotates the phase of v so its largest-magnitude entry (lowest index on
/// ties) is real and positive.
void canonicalize_phase(CVector& v);

/// Dominant eigenpair of a Hermitian matrix. Among eigenvalues within kTieTol
/// (relative) of the maximum the first one returned by the decomposition wins.
EigenPair max_eigvec_hermitian(const CMatrix& a);

/// Orthonormal basis of the orthogonal complement of range(b) in C^n, n = b.rows().
/// A singular value counts as zero when it is <= kRankTol * sigma_max.
OrthonormalBasis null_space_basis(const CMatrix& b);

/// W = Lambda^{-1/2} U^H for R = U Lambda U^H, so that W R W^H = I and
/// W^H W = R^{-1}. Rejects R whose smallest eigenvalue is <= kPdTol*trace(R)/n.
CMatrix whitening_matrix(const CMatrix& r);

/// Maximizer of (v^H num v) / (v^H den v) with the attained ratio.
///
/// Solved as the dominant eigenvector of den^{-1} num. When the condition
/// number of den exceeds kConditionLimit the Cholesky-symmetrized problem
/// L^{-1} num L^{-H} is used instead. The returned value is the quotient
/// evaluated at the returned vector.
EigenPair gen_max_eigvec(const CMatrix& num, const CMatrix& den);

/// v^H a v, real part (a Hermitian).
double quadratic_form(const CMatrix& a, const CVector& v);

}  // namespace smsec::numerics
