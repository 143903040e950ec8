#pragma once

// Shared random-state generators for tests.  All draws go through a
// caller-provided engine so every test is reproducible from its seed.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "decoh/densmat.hpp"
#include "decoh/fock.hpp"

namespace decoh::testing {

inline SlaterDeterminant random_determinant(std::mt19937_64& rng, int K, int N) {
  std::vector<int> idx(K);
  for (int i = 0; i < K; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(N);
  std::sort(idx.begin(), idx.end());
  return SlaterDeterminant::from_occupied(K, idx);
}

inline std::vector<SlaterDeterminant> random_determinant_list(std::mt19937_64& rng, int K, int N,
                                                              int M) {
  std::vector<SlaterDeterminant> dets;
  while (static_cast<int>(dets.size()) < M) {
    auto d = random_determinant(rng, K, N);
    if (std::find(dets.begin(), dets.end(), d) == dets.end()) dets.push_back(d);
  }
  return dets;
}

inline Eigen::VectorXcd random_amplitudes(std::mt19937_64& rng, int M) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd c(M);
  for (int i = 0; i < M; ++i) c(i) = std::complex<double>(g(rng), g(rng));
  c.normalize();
  return c;
}

inline PureState random_pure_state(std::mt19937_64& rng, int K, int N, int M) {
  auto basis = SpinOrbitalBasis::spin_blocked(K / 2);
  auto dets = random_determinant_list(rng, K, N, M);
  return PureState(basis, dets, random_amplitudes(rng, M));
}

/// Full-rank random mixed state: a = G G^dag / tr(G G^dag).
inline DensityMatrixExpansion random_mixed_state(std::mt19937_64& rng, int K, int N, int M) {
  auto basis = SpinOrbitalBasis::spin_blocked(K / 2);
  auto dets = random_determinant_list(rng, K, N, M);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd G(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) G(i, j) = std::complex<double>(g(rng), g(rng));
  Eigen::MatrixXcd a = G * G.adjoint();
  a /= a.trace().real();
  return DensityMatrixExpansion(basis, dets, std::move(a));
}

/// Mixture of pure states each supported on a clique of the
/// "coherence order <= max_order" graph of the determinant list, so
/// every nonzero coherence in the result has order <= max_order while
/// the state stays positive by construction.
inline DensityMatrixExpansion random_low_order_state(std::mt19937_64& rng, int K, int N, int M,
                                                     int max_order) {
  auto basis = SpinOrbitalBasis::spin_blocked(K / 2);
  auto dets = random_determinant_list(rng, K, N, M);

  Eigen::MatrixXi s(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) s(i, j) = coherence_order(dets[i], dets[j]);

  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(M, M);
  int n_blocks = 1 + static_cast<int>(rng() % 3);
  Eigen::VectorXd w(n_blocks);
  for (int b = 0; b < n_blocks; ++b) w(b) = u(rng) + 0.05;
  w /= w.sum();
  for (int b = 0; b < n_blocks; ++b) {
    // grow a random clique
    std::vector<int> clique{static_cast<int>(rng() % M)};
    for (int cand = 0; cand < M; ++cand) {
      if (std::find(clique.begin(), clique.end(), cand) != clique.end()) continue;
      bool ok = true;
      for (int c : clique)
        if (s(cand, c) > max_order) ok = false;
      if (ok && u(rng) < 0.6) clique.push_back(cand);
    }
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(M);
    for (int c : clique) amp(c) = std::complex<double>(g(rng), g(rng));
    amp.normalize();
    a += w(b) * (amp * amp.adjoint());
  }
  return DensityMatrixExpansion(basis, dets, std::move(a));
}

/// Random state whose nonzero coherences sit only on pairs with
/// s_nm <= 2 and pairwise-distinct orbital-transition signatures, the
/// domain on which the structural purity formulas are exact.
/// Positivity is enforced by damping the off-diagonal block.
inline DensityMatrixExpansion random_additive_pattern_state(std::mt19937_64& rng, int K, int N,
                                                            int M) {
  auto basis = SpinOrbitalBasis::spin_blocked(K / 2);
  auto dets = random_determinant_list(rng, K, N, M);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  Eigen::VectorXd pops(M);
  for (int i = 0; i < M; ++i) pops(i) = -std::log(u(rng) + 1e-12);
  pops /= pops.sum();

  auto signature = [&](int n, int m) {
    std::vector<int> a, b;
    for (int i : dets[n].occupied_list())
      if (!dets[m].occupied(i)) a.push_back(i);
    for (int i : dets[m].occupied_list())
      if (!dets[n].occupied(i)) b.push_back(i);
    if (b < a) std::swap(a, b);
    return std::make_pair(a, b);
  };

  std::vector<std::pair<int, int>> pairs;
  for (int n = 0; n < M; ++n)
    for (int m = 0; m < n; ++m)
      if (coherence_order(dets[n], dets[m]) <= 2) pairs.emplace_back(n, m);
  std::shuffle(pairs.begin(), pairs.end(), rng);

  std::vector<std::pair<std::vector<int>, std::vector<int>>> used;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(M, M);
  a.diagonal() = pops.cast<std::complex<double>>();
  for (auto [n, m] : pairs) {
    auto sig = signature(n, m);
    if (std::find(used.begin(), used.end(), sig) != used.end()) continue;
    if (u(rng) < 0.25) continue;  // leave some pairs incoherent
    used.push_back(std::move(sig));
    const double mag = u(rng) * std::sqrt(pops(n) * pops(m));
    const double phase = 2.0 * M_PI * u(rng);
    a(n, m) = std::polar(mag, phase);
    a(m, n) = std::conj(a(n, m));
  }

  // damp coherences until positive semidefinite
  for (int attempt = 0; attempt < 200; ++attempt) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() >= 0.0) break;
    for (int n = 0; n < M; ++n)
      for (int m = 0; m < M; ++m)
        if (n != m) a(n, m) *= 0.8;
  }
  return DensityMatrixExpansion(basis, dets, std::move(a));
}

}  // namespace decoh::testing
