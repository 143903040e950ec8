#pragma once

#include <Eigen/Dense>
#include <vector>

#include "decoh/rdm.hpp"

namespace decoh {

/// Limiting values of an r-body purity for a given population set and
/// coherence-order matrix: the bounds of the achievable range and the
/// maximum decays attributable to first-order (delta1) and second-order
/// (delta2, two-body only) decoherence.
struct LimitLedger {
  int r = 0;
  int M = 0;  // number of determinants
  int N = 0;  // number of electrons
  double max_value = 0.0;
  /// Smallest value reachable with these populations over every
  /// coherence pattern and order assignment (all orders maximal).
  double min_value_given_populations = 0.0;
  /// Value with every coherence zeroed, at the given order matrix.
  double fully_incoherent_value = 0.0;
  /// Value with every pair fully coherent (|a_nm|^2 = a_nn a_mm).
  double fully_coherent_value = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;  // zero for r = 1
  std::vector<double> populations;  // echoed verbatim, no canonicalization
};

struct LimitLedgers {
  LimitLedger one_body;
  LimitLedger two_body;
};

struct PurityReport {
  int r = 0;
  double value = 0.0;
  double population_term = 0.0;
  double coherence_term = 0.0;
  LimitLedger limits;
};

/// Tr{Gamma^2}: sum over all index tuples of
/// Gamma^{j...}_{i...} Gamma^{i...}_{j...}, accounting for the
/// antisymmetric ascending-tuple storage.  Equals the eigenvalue sum of
/// squares.
double purity_trace(const ReducedDensityMatrix& gamma);

/// Population/coherence split of a purity value.
struct PurityTerms {
  double population_term = 0.0;
  double coherence_term = 0.0;
  double value() const { return population_term + coherence_term; }
};

/// One-body purity from expansion structure alone:
///   P1 = N - 2 sum_{n>m} (a_nn a_mm s_nm - |a_nm|^2 [s_nm = 1]).
/// `coherence_sq(n, m)` supplies |a_nm|^2 for n > m.
PurityTerms p1_terms(int N, const Eigen::VectorXd& populations, const Eigen::MatrixXi& orders,
                     const Eigen::MatrixXd& coherence_sq);

/// Two-body purity from expansion structure alone:
///   P2 = N(N-1)/2 - sum_{n>m} a_nn a_mm s_nm (2N - s_nm - 1)
///        + 2 sum_{n>m} |a_nm|^2 ([s_nm = 1](N-1) + [s_nm = 2]).
PurityTerms p2_terms(int N, const Eigen::VectorXd& populations, const Eigen::MatrixXi& orders,
                     const Eigen::MatrixXd& coherence_sq);

/// Closed-form one-body purity of an expansion, with limits attached.
/// Coherences between determinants separated by more than one transition
/// contribute nothing (they are invisible at this order).
///
/// The closed forms assume distinct coherent pairs connect through
/// distinct orbital transitions; see coherence_pattern_additive().
PurityReport p1_closed_form(const DensityMatrixExpansion& rho);

/// Closed-form two-body purity; coherences of order one and two enter,
/// first order weighted (N-1) times stronger.
PurityReport p2_closed_form(const DensityMatrixExpansion& rho);

/// True when no two coherent pairs (|a_nm| > threshold, s_nm <= 2) share
/// the same orbital-transition signature.  On such expansions the closed
/// forms match the trace route exactly; a shared transition makes the
/// corresponding reduced-matrix element a coherent sum, adding
/// interference the |a_nm|^2 sums cannot represent.
bool coherence_pattern_additive(const DensityMatrixExpansion& rho, double threshold = 1e-14);

/// Full ledger of limiting values for both r = 1 and r = 2.
LimitLedgers limit_ledger(const Eigen::VectorXd& populations, const Eigen::MatrixXi& orders,
                          int N);

/// P_{N-r} - P_r, identically zero for pure states (complementary-order
/// spectra coincide) and generically nonzero for mixed ones.
double carlson_keller_gap(const DensityMatrixExpansion& rho, int r);

}  // namespace decoh
