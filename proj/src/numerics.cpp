#include "smsec/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace smsec::numerics {
namespace {

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

bool is_finite(const CMatrix& a) { return a.allFinite(); }

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

void require_hermitian(const CMatrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw NumericsError(std::string(what) + ": expected a non-empty square matrix, got " +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  if (!is_finite(a)) throw NumericsError(std::string(what) + ": non-finite entry");
  if (!is_hermitian(a))
    throw NumericsError(std::string(what) + ": matrix is not Hermitian (max |A - A^H| = " +
                        std::to_string((a - a.adjoint()).cwiseAbs().maxCoeff()) + ")");
}

void canonicalize_phase(CVector& v) {
  if (v.size() == 0) return;
  Eigen::Index k = 0;
  double best = std::abs(v(0));
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best * (1.0 + 1e-12)) {
      best = m;
      k = i;
    }
  }
  if (best == 0.0) return;
  v *= std::conj(v(k)) / best;
  v(k) = Complex(v(k).real(), 0.0);
}

EigenPair max_eigvec_hermitian(const CMatrix& a) {
  require_hermitian(a, "max_eigvec_hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) throw NumericsError("max_eigvec_hermitian: eigensolver failed");

  const auto& lambda = es.eigenvalues();  // ascending
  const Eigen::Index n = lambda.size();
  const double top = lambda(n - 1);
  const double tie = kTieTol * std::max(1.0, std::abs(top));
  Eigen::Index pick = n - 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (top - lambda(i) <= tie) {
      pick = i;
      break;
    }
  }
  EigenPair out{es.eigenvectors().col(pick), lambda(pick)};
  out.vector.normalize();
  canonicalize_phase(out.vector);
  return out;
}

OrthonormalBasis null_space_basis(const CMatrix& b) {
  const Eigen::Index n = b.rows();
  if (n == 0) throw NumericsError("null_space_basis: zero-row input");
  if (!is_finite(b)) throw NumericsError("null_space_basis: non-finite entry");
  if (b.cols() == 0 || b.cwiseAbs().maxCoeff() == 0.0)
    return {CMatrix::Identity(n, n)};

  Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double cut = kRankTol * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return {svd.matrixU().rightCols(n - rank)};
}

CMatrix whitening_matrix(const CMatrix& r) {
  require_hermitian(r, "whitening_matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(r));
  if (es.info() != Eigen::Success) throw NumericsError("whitening_matrix: eigensolver failed");
  const Eigen::Index n = r.rows();
  const double eps = kPdTol * std::abs(r.trace().real()) / static_cast<double>(n);
  const auto& d = es.eigenvalues();
  if (!(d(0) > eps))
    throw NumericsError("whitening_matrix: covariance is not positive definite (min eigenvalue " +
                        std::to_string(d(0)) + "); degenerate noise model?");
  const Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
  return inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double quadratic_form(const CMatrix& a, const CVector& v) {
  return v.dot(a * v).real();  // dot() conjugates its left operand
}

EigenPair gen_max_eigvec(const CMatrix& num, const CMatrix& den) {
  require_hermitian(num, "gen_max_eigvec (numerator)");
  require_hermitian(den, "gen_max_eigvec (denominator)");
  if (num.rows() != den.rows())
    throw NumericsError("gen_max_eigvec: dimension mismatch " + std::to_string(num.rows()) +
                        " vs " + std::to_string(den.rows()));

  Eigen::SelfAdjointEigenSolver<CMatrix> den_es(hermitian_part(den), Eigen::EigenvaluesOnly);
  const auto& dl = den_es.eigenvalues();
  const Eigen::Index n = den.rows();
  const double eps = kPdTol * std::abs(den.trace().real()) / static_cast<double>(n);
  if (!(dl(0) > eps))
    throw NumericsError("gen_max_eigvec: denominator is not positive definite (min eigenvalue " +
                        std::to_string(dl(0)) + ")");

  CVector v;
  if (dl(n - 1) / dl(0) <= kConditionLimit) {
    const CMatrix c = hermitian_part(den).partialPivLu().solve(hermitian_part(num));
    Eigen::ComplexEigenSolver<CMatrix> es(c);
    if (es.info() != Eigen::Success) throw NumericsError("gen_max_eigvec: eigensolver failed");
    const auto& lambda = es.eigenvalues();
    double top = lambda(0).real();
    for (Eigen::Index i = 1; i < n; ++i) top = std::max(top, lambda(i).real());
    const double tie = kTieTol * std::max(1.0, std::abs(top));
    Eigen::Index pick = 0;
    while (top - lambda(pick).real() > tie) ++pick;
    v = es.eigenvectors().col(pick);
  } else {
    Eigen::LLT<CMatrix> llt(hermitian_part(den));
    if (llt.info() != Eigen::Success)
      throw NumericsError("gen_max_eigvec: Cholesky of denominator failed");
    const CMatrix l = llt.matrixL();
    const CMatrix linv_num = l.triangularView<Eigen::Lower>().solve(hermitian_part(num));
    const CMatrix sym =
        l.triangularView<Eigen::Lower>().solve(linv_num.adjoint()).adjoint();
    const EigenPair inner = max_eigvec_hermitian(hermitian_part(sym));
    v = l.adjoint().triangularView<Eigen::Upper>().solve(inner.vector);
  }
  v.normalize();
  canonicalize_phase(v);
  const double value = quadratic_form(num, v) / quadratic_form(den, v);
  return {std::move(v), value};
}

}  // namespace smsec::numerics
