#pragma once

#include "astpa/types.hpp"

namespace astpa {

/// Mass matrix M of the kinetic energy 0.5 z^T M^{-1} z. Can be built from M
/// or from M^{-1} directly (the sampling phase uses M^{-1} = W).
class MassMatrix {
 public:
  enum class Kind { kIdentity, kDiagonal, kFull };

  static MassMatrix identity(std::size_t d);
  static MassMatrix diagonal(const Vector& m);
  static MassMatrix full(const Matrix& m);
  static MassMatrix from_inverse(const Matrix& m_inv);
  static MassMatrix from_inverse_diagonal(const Vector& m_inv);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return dim_; }
  /// True when a full inverse was not positive definite and its floored
  /// diagonal was used instead.
  bool fell_back() const { return fell_back_; }

  /// z ~ N(0, M).
  Vector sample_momentum(Rng& rng) const;
  /// z = F z' for a given standard normal z', with F F^T = M.
  Vector momentum_from_standard(const Vector& zs) const;
  Vector apply_inverse(const Vector& z) const;
  double kinetic(const Vector& z) const { return 0.5 * z.dot(apply_inverse(z)); }
  Matrix dense() const;
  Matrix inverse_dense() const;

 private:
  Kind kind_ = Kind::kIdentity;
  std::size_t dim_ = 0;
  bool fell_back_ = false;
  Vector diag_inv_;      // diagonal: M^{-1}
  Matrix inv_;           // full: M^{-1}
  Matrix factor_;        // full: lower-triangular L with L L^T = M, or of M^{-1}
  bool factor_of_inverse_ = false;
};

}  // namespace astpa
