#include "decoh/densmat.hpp"

#include <map>
#include <stdexcept>

#include "decoh/errors.hpp"

namespace decoh {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = -1e-10;

// Returns the index of the first occurrence of every determinant,
// giving a merge map old index -> merged index.
std::vector<int> merge_map(const std::vector<SlaterDeterminant>& dets, int* n_merged) {
  std::map<SlaterDeterminant, int> seen;
  std::vector<int> to(dets.size());
  int next = 0;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    auto [it, inserted] = seen.emplace(dets[i], next);
    if (inserted) ++next;
    to[i] = it->second;
  }
  *n_merged = next;
  return to;
}

}  // namespace

PureState::PureState(SpinOrbitalBasis basis_in, std::vector<SlaterDeterminant> dets_in,
                     Eigen::VectorXcd amplitudes_in)
    : basis(std::move(basis_in)), dets(std::move(dets_in)), amplitudes(std::move(amplitudes_in)) {
  if (dets.empty()) throw std::invalid_argument("PureState: empty determinant list");
  if (amplitudes.size() != static_cast<Eigen::Index>(dets.size()))
    throw std::invalid_argument("PureState: amplitude/determinant count mismatch");
  int n_merged = 0;
  auto to = merge_map(dets, &n_merged);
  if (n_merged != static_cast<int>(dets.size())) {
    std::vector<SlaterDeterminant> mdets;
    Eigen::VectorXcd mamp = Eigen::VectorXcd::Zero(n_merged);
    mdets.reserve(n_merged);
    for (std::size_t i = 0; i < dets.size(); ++i) {
      if (to[i] == static_cast<int>(mdets.size())) mdets.push_back(dets[i]);
      mamp(to[i]) += amplitudes(static_cast<Eigen::Index>(i));
    }
    dets = std::move(mdets);
    amplitudes = std::move(mamp);
  }
  const int K = basis.size();
  const int N = dets.front().electron_count();
  for (const auto& d : dets) {
    if (d.n_orbitals() != K) throw std::invalid_argument("PureState: determinant/basis size mismatch");
    if (d.electron_count() != N)
      throw std::invalid_argument("PureState: mixed electron counts");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kTraceTol)
    throw PhysicsError("PureState: amplitudes are not normalized");
}

DensityMatrixExpansion::DensityMatrixExpansion(SpinOrbitalBasis basis,
                                               std::vector<SlaterDeterminant> dets,
                                               Eigen::MatrixXcd coefficients)
    : basis_(std::move(basis)), dets_(std::move(dets)), coeffs_(std::move(coefficients)) {
  if (dets_.empty()) throw std::invalid_argument("DensityMatrixExpansion: empty determinant list");
  const auto m = static_cast<Eigen::Index>(dets_.size());
  if (coeffs_.rows() != m || coeffs_.cols() != m)
    throw std::invalid_argument("DensityMatrixExpansion: coefficient matrix shape mismatch");

  int n_merged = 0;
  auto to = merge_map(dets_, &n_merged);
  if (n_merged != static_cast<int>(dets_.size())) {
    std::vector<SlaterDeterminant> mdets;
    mdets.reserve(n_merged);
    Eigen::MatrixXcd mc = Eigen::MatrixXcd::Zero(n_merged, n_merged);
    for (std::size_t i = 0; i < dets_.size(); ++i) {
      if (to[i] == static_cast<int>(mdets.size())) mdets.push_back(dets_[i]);
      for (std::size_t j = 0; j < dets_.size(); ++j)
        mc(to[i], to[j]) += coeffs_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    dets_ = std::move(mdets);
    coeffs_ = std::move(mc);
  }

  const int K = basis_.size();
  n_electrons_ = dets_.front().electron_count();
  for (const auto& d : dets_) {
    if (d.n_orbitals() != K)
      throw std::invalid_argument("DensityMatrixExpansion: determinant/basis size mismatch");
    if (d.electron_count() != n_electrons_)
      throw std::invalid_argument("DensityMatrixExpansion: mixed electron counts");
  }

  if ((coeffs_ - coeffs_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw PhysicsError("DensityMatrixExpansion: coefficient matrix is not Hermitian");
  if (std::abs(coeffs_.trace().real() - 1.0) > kTraceTol ||
      std::abs(coeffs_.trace().imag()) > kTraceTol)
    throw PhysicsError("DensityMatrixExpansion: trace is not one");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(coeffs_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kPsdTol)
    throw PhysicsError("DensityMatrixExpansion: coefficient matrix is not positive semidefinite");
}

Eigen::MatrixXi DensityMatrixExpansion::coherence_orders() const {
  const int m = n_determinants();
  Eigen::MatrixXi s(m, m);
  for (int n = 0; n < m; ++n)
    for (int k = n; k < m; ++k) s(n, k) = s(k, n) = coherence_order(dets_[n], dets_[k]);
  return s;
}

DensityMatrixExpansion from_pure(const PureState& state) {
  Eigen::MatrixXcd a = state.amplitudes * state.amplitudes.adjoint();
  return DensityMatrixExpansion(state.basis, state.dets, std::move(a));
}

double nbody_purity(const DensityMatrixExpansion& rho) {
  return rho.coefficients().squaredNorm();
}

DensityMatrixExpansion dephase(const DensityMatrixExpansion& rho,
                               const std::function<bool(int, int)>& zero_pair) {
  Eigen::MatrixXcd a = rho.coefficients();
  const int m = rho.n_determinants();
  for (int n = 0; n < m; ++n)
    for (int k = 0; k < m; ++k)
      if (n != k && zero_pair(n, k)) {
        a(n, k) = 0.0;
        a(k, n) = 0.0;
      }
  return DensityMatrixExpansion(rho.basis(), rho.determinants(), std::move(a));
}

}  // namespace decoh
