#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "decoh/fock.hpp"

namespace decoh {

/// Normalized superposition over a list of Slater determinants.
struct PureState {
  SpinOrbitalBasis basis;
  std::vector<SlaterDeterminant> dets;
  Eigen::VectorXcd amplitudes;

  /// Merges duplicate determinants and checks normalization (1e-12).
  PureState(SpinOrbitalBasis basis, std::vector<SlaterDeterminant> dets,
            Eigen::VectorXcd amplitudes);
};

/// N-body electronic density matrix as a Hermitian coefficient matrix
/// a_nm over a determinant list.  Validated at construction: duplicate
/// determinants are merged, a must be Hermitian (1e-12), unit trace
/// (1e-12) and positive semidefinite (eigenvalues >= -1e-10; ensemble
/// averages accumulate roundoff, so a strict zero would reject valid
/// states).  Immutable afterwards.
class DensityMatrixExpansion {
 public:
  DensityMatrixExpansion(SpinOrbitalBasis basis, std::vector<SlaterDeterminant> dets,
                         Eigen::MatrixXcd coefficients);

  const SpinOrbitalBasis& basis() const { return basis_; }
  const std::vector<SlaterDeterminant>& determinants() const { return dets_; }
  const Eigen::MatrixXcd& coefficients() const { return coeffs_; }
  int n_determinants() const { return static_cast<int>(dets_.size()); }
  int electron_count() const { return n_electrons_; }

  /// Populations a_nn as a real vector.
  Eigen::VectorXd populations() const { return coeffs_.diagonal().real(); }

  /// Pairwise coherence orders s_nm of the determinant list.
  Eigen::MatrixXi coherence_orders() const;

 private:
  SpinOrbitalBasis basis_;
  std::vector<SlaterDeterminant> dets_;
  Eigen::MatrixXcd coeffs_;
  int n_electrons_ = 0;
};

/// rho = |psi><psi|; the result is rank one and idempotent.
DensityMatrixExpansion from_pure(const PureState& state);

/// Tr{rho^2} = sum_nm |a_nm|^2.
double nbody_purity(const DensityMatrixExpansion& rho);

/// Returns a copy with a_nm (and a_mn) zeroed for every pair n != m
/// selected by the predicate.  The result is revalidated; selectively
/// zeroing coherences of a positive matrix can break positivity, in
/// which case this throws.
DensityMatrixExpansion dephase(const DensityMatrixExpansion& rho,
                               const std::function<bool(int, int)>& zero_pair);

}  // namespace decoh
