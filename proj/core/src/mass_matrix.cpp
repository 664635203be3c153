#include "astpa/mass_matrix.hpp"

#include <algorithm>

namespace astpa {
namespace {
constexpr double kDiagonalFloor = 1e-8;
}

MassMatrix MassMatrix::identity(std::size_t d) {
  if (d == 0) throw InvalidInput("MassMatrix: zero dimension");
  MassMatrix m;
  m.kind_ = Kind::kIdentity;
  m.dim_ = d;
  return m;
}

MassMatrix MassMatrix::diagonal(const Vector& v) {
  if (v.size() == 0 || !(v.array() > 0.0).all() || !v.allFinite()) {
    throw InvalidInput("MassMatrix: diagonal must be positive");
  }
  return from_inverse_diagonal(v.cwiseInverse());
}

MassMatrix MassMatrix::from_inverse_diagonal(const Vector& v) {
  if (v.size() == 0 || !(v.array() > 0.0).all() || !v.allFinite()) {
    throw InvalidInput("MassMatrix: diagonal must be positive");
  }
  MassMatrix m;
  m.kind_ = Kind::kDiagonal;
  m.dim_ = v.size();
  m.diag_inv_ = v;
  return m;
}

MassMatrix MassMatrix::full(const Matrix& mm) {
  if (mm.rows() == 0 || mm.rows() != mm.cols() || !mm.allFinite()) throw InvalidInput("MassMatrix: bad matrix");
  Eigen::LLT<Matrix> llt(mm);
  if (llt.info() != Eigen::Success) throw InvalidInput("MassMatrix: not positive definite");
  MassMatrix m;
  m.kind_ = Kind::kFull;
  m.dim_ = mm.rows();
  m.factor_ = llt.matrixL();
  m.inv_ = llt.solve(Matrix::Identity(m.dim_, m.dim_));
  return m;
}

MassMatrix MassMatrix::from_inverse(const Matrix& w) {
  if (w.rows() == 0 || w.rows() != w.cols()) throw InvalidInput("MassMatrix: bad matrix");
  Eigen::LLT<Matrix> llt(w);
  if (!w.allFinite() || llt.info() != Eigen::Success) {
    Vector d = w.diagonal();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      d[i] = std::isfinite(d[i]) ? std::max(d[i], kDiagonalFloor) : 1.0;
    }
    MassMatrix m = from_inverse_diagonal(d);
    m.fell_back_ = true;
    return m;
  }
  MassMatrix m;
  m.kind_ = Kind::kFull;
  m.dim_ = w.rows();
  m.inv_ = w;
  m.factor_ = llt.matrixL();
  m.factor_of_inverse_ = true;
  return m;
}

Vector MassMatrix::momentum_from_standard(const Vector& zs) const {
  require_dimension(zs, dim_, "MassMatrix");
  switch (kind_) {
    case Kind::kIdentity: return zs;
    case Kind::kDiagonal: return zs.cwiseQuotient(diag_inv_.cwiseSqrt());
    case Kind::kFull:
      // With W = L L^T, L^{-T} z' has covariance W^{-1} = M.
      if (factor_of_inverse_) return factor_.transpose().triangularView<Eigen::Upper>().solve(zs);
      return factor_ * zs;
  }
  return zs;
}

Vector MassMatrix::sample_momentum(Rng& rng) const {
  std::normal_distribution<double> n01;
  Vector zs(dim_);
  for (std::size_t i = 0; i < dim_; ++i) zs[i] = n01(rng);
  return momentum_from_standard(zs);
}

Vector MassMatrix::apply_inverse(const Vector& z) const {
  switch (kind_) {
    case Kind::kIdentity: return z;
    case Kind::kDiagonal: return z.cwiseProduct(diag_inv_);
    case Kind::kFull: return inv_ * z;
  }
  return z;
}

Matrix MassMatrix::dense() const {
  switch (kind_) {
    case Kind::kIdentity: return Matrix::Identity(dim_, dim_);
    case Kind::kDiagonal: return diag_inv_.cwiseInverse().asDiagonal();
    case Kind::kFull:
      if (factor_of_inverse_) return Eigen::LLT<Matrix>(inv_).solve(Matrix::Identity(dim_, dim_));
      return factor_ * factor_.transpose();
  }
  return {};
}

Matrix MassMatrix::inverse_dense() const {
  switch (kind_) {
    case Kind::kIdentity: return Matrix::Identity(dim_, dim_);
    case Kind::kDiagonal: return diag_inv_.asDiagonal();
    case Kind::kFull: return inv_;
  }
  return {};
}

}  // namespace astpa
