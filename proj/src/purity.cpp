#include "decoh/purity.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace decoh {

namespace {

void check_structure_inputs(int N, const Eigen::VectorXd& populations,
                            const Eigen::MatrixXi& orders, const Eigen::MatrixXd& coherence_sq) {
  const auto m = populations.size();
  if (orders.rows() != m || orders.cols() != m || coherence_sq.rows() != m ||
      coherence_sq.cols() != m)
    throw std::invalid_argument("purity terms: shape mismatch between populations and matrices");
  if (N <= 0) throw std::invalid_argument("purity terms: electron count must be positive");
}

Eigen::MatrixXd coherence_sq_of(const DensityMatrixExpansion& rho) {
  const auto& a = rho.coefficients();
  return a.cwiseAbs2();
}

}  // namespace

double purity_trace(const ReducedDensityMatrix& gamma) { return gamma.operator_matrix().squaredNorm(); }

PurityTerms p1_terms(int N, const Eigen::VectorXd& populations, const Eigen::MatrixXi& orders,
                     const Eigen::MatrixXd& coherence_sq) {
  check_structure_inputs(N, populations, orders, coherence_sq);
  PurityTerms t;
  t.population_term = static_cast<double>(N);
  for (int n = 0; n < populations.size(); ++n)
    for (int m = 0; m < n; ++m) {
      t.population_term -= 2.0 * populations(n) * populations(m) * orders(n, m);
      if (orders(n, m) == 1) t.coherence_term += 2.0 * coherence_sq(n, m);
    }
  return t;
}

PurityTerms p2_terms(int N, const Eigen::VectorXd& populations, const Eigen::MatrixXi& orders,
                     const Eigen::MatrixXd& coherence_sq) {
  check_structure_inputs(N, populations, orders, coherence_sq);
  PurityTerms t;
  t.population_term = 0.5 * N * (N - 1);
  for (int n = 0; n < populations.size(); ++n)
    for (int m = 0; m < n; ++m) {
      const int s = orders(n, m);
      t.population_term -= populations(n) * populations(m) * s * (2 * N - s - 1);
      if (s == 1)
        t.coherence_term += 2.0 * coherence_sq(n, m) * (N - 1);
      else if (s == 2)
        t.coherence_term += 2.0 * coherence_sq(n, m);
    }
  return t;
}

namespace {

LimitLedger make_ledger(int r, const Eigen::VectorXd& populations, const Eigen::MatrixXi& orders,
                        int N) {
  const int M = static_cast<int>(populations.size());
  LimitLedger ledger;
  ledger.r = r;
  ledger.M = M;
  ledger.N = N;
  ledger.populations.assign(populations.data(), populations.data() + populations.size());

  const double sum_sq = populations.squaredNorm();
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(M, M);
  Eigen::MatrixXd full(M, M);
  for (int n = 0; n < M; ++n)
    for (int m = 0; m < M; ++m) full(n, m) = populations(n) * populations(m);

  if (r == 1) {
    ledger.max_value = static_cast<double>(N);
    // all pairs at the maximal order N: P1 = N * sum_n a_nn^2
    ledger.min_value_given_populations = N * sum_sq;
    ledger.fully_incoherent_value = p1_terms(N, populations, orders, zero).value();
    ledger.fully_coherent_value = p1_terms(N, populations, orders, full).value();
    ledger.delta1 = 1.0 - 1.0 / M;
    ledger.delta2 = 0.0;
  } else {
    ledger.max_value = 0.5 * N * (N - 1);
    ledger.min_value_given_populations = 0.5 * N * (N - 1) * sum_sq;
    ledger.fully_incoherent_value = p2_terms(N, populations, orders, zero).value();
    ledger.fully_coherent_value = p2_terms(N, populations, orders, full).value();
    ledger.delta1 = (N - 1) * (1.0 - 1.0 / M);
    ledger.delta2 = 1.0 - 1.0 / M;
  }
  return ledger;
}

}  // namespace

LimitLedgers limit_ledger(const Eigen::VectorXd& populations, const Eigen::MatrixXi& orders,
                          int N) {
  if (populations.size() == 0) throw std::invalid_argument("limit_ledger: empty populations");
  if (std::abs(populations.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("limit_ledger: populations must sum to one");
  return {make_ledger(1, populations, orders, N), make_ledger(2, populations, orders, N)};
}

PurityReport p1_closed_form(const DensityMatrixExpansion& rho) {
  const int N = rho.electron_count();
  const auto pops = rho.populations();
  const auto orders = rho.coherence_orders();
  const auto terms = p1_terms(N, pops, orders, coherence_sq_of(rho));
  return {1, terms.value(), terms.population_term, terms.coherence_term,
          make_ledger(1, pops, orders, N)};
}

PurityReport p2_closed_form(const DensityMatrixExpansion& rho) {
  const int N = rho.electron_count();
  const auto pops = rho.populations();
  const auto orders = rho.coherence_orders();
  const auto terms = p2_terms(N, pops, orders, coherence_sq_of(rho));
  return {2, terms.value(), terms.population_term, terms.coherence_term,
          make_ledger(2, pops, orders, N)};
}

bool coherence_pattern_additive(const DensityMatrixExpansion& rho, double threshold) {
  const auto& dets = rho.determinants();
  const auto& a = rho.coefficients();
  std::vector<std::pair<std::vector<int>, std::vector<int>>> signatures;
  for (int n = 0; n < rho.n_determinants(); ++n)
    for (int m = 0; m < n; ++m) {
      if (std::abs(a(n, m)) <= threshold) continue;
      if (coherence_order(dets[n], dets[m]) > 2) continue;
      std::vector<int> only_n, only_m;
      for (int i : dets[n].occupied_list())
        if (!dets[m].occupied(i)) only_n.push_back(i);
      for (int i : dets[m].occupied_list())
        if (!dets[n].occupied(i)) only_m.push_back(i);
      if (only_m < only_n) std::swap(only_n, only_m);
      signatures.emplace_back(std::move(only_n), std::move(only_m));
    }
  std::sort(signatures.begin(), signatures.end());
  return std::adjacent_find(signatures.begin(), signatures.end()) == signatures.end();
}

double carlson_keller_gap(const DensityMatrixExpansion& rho, int r) {
  const int N = rho.electron_count();
  if (r < 1 || r >= N)
    throw std::invalid_argument("carlson_keller_gap: order must satisfy 1 <= r < N");
  return purity_trace(build_rdm(rho, N - r)) - purity_trace(build_rdm(rho, r));
}

}  // namespace decoh
