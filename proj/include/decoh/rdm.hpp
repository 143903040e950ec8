#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "decoh/densmat.hpp"

namespace decoh {

/// r-body reduced density matrix.  Elements are stored for
/// ascending-ordered bra and ket index tuples only; antisymmetry under
/// exchange of any two upper or two lower indices fills in the rest.
/// Tuples are flattened in lexicographic order, which is fixed so that
/// serialized output is deterministic (the spectrum does not depend on
/// it).
///
/// The stored Hermitian matrix over composite indices is scaled such
/// that its spectrum is the physical spectrum {lambda_n}: its trace is
/// binomial(N, r) and its squared Frobenius norm equals the full
/// index-tuple sum of Gamma^{j...}_{i...} Gamma^{i...}_{j...}.
/// Individual tensor elements carry the conventional 1/r! prefactor and
/// are recovered through element().
class ReducedDensityMatrix {
 public:
  ReducedDensityMatrix(SpinOrbitalBasis basis, int order, int electron_count,
                       Eigen::MatrixXcd operator_matrix);

  int order() const { return order_; }
  int electron_count() const { return n_electrons_; }
  const SpinOrbitalBasis& basis() const { return basis_; }

  int n_tuples() const { return static_cast<int>(tuples_.size()); }
  const std::vector<std::vector<int>>& tuples() const { return tuples_; }
  /// Lexicographic rank of an ascending index tuple.
  int tuple_rank(std::span<const int> tuple) const;

  /// Hermitian matrix over ascending composite indices; eigenvalues are
  /// the lambda_n.
  const Eigen::MatrixXcd& operator_matrix() const { return matrix_; }

  /// Tensor element Gamma^{upper}_{lower} for arbitrary index tuples
  /// (any order, 1/r! prefactor included); zero when an index repeats.
  std::complex<double> element(std::span<const int> lower, std::span<const int> upper) const;

  /// Sum over all index tuples of the diagonal, equal to binomial(N, r).
  double full_trace() const { return matrix_.trace().real(); }

 private:
  SpinOrbitalBasis basis_;
  int order_;
  int n_electrons_;
  std::vector<std::vector<int>> tuples_;
  Eigen::MatrixXcd matrix_;
};

/// Builds the r-body reduced density matrix of an expansion by direct
/// operator-string evaluation over determinant pairs.  1 <= r <= N.
ReducedDensityMatrix build_rdm(const DensityMatrixExpansion& rho, int r);

/// Contracts one matched upper/lower index pair, mapping an (r+1)-body
/// matrix onto the r-body one of the same state (scale (r+1)/(N-r)).
/// Guards the vanishing denominator N - r and throws instead of
/// dividing by zero.
ReducedDensityMatrix contract(const ReducedDensityMatrix& gamma);

/// Real spectrum in descending order; the sum equals binomial(N, r).
/// Throws PhysicsError if the stored matrix drifted from Hermitian.
Eigen::VectorXd rdm_eigenvalues(const ReducedDensityMatrix& gamma);

/// All ascending r-tuples over {0..K-1} in lexicographic order.
std::vector<std::vector<int>> ascending_tuples(int K, int r);

}  // namespace decoh
