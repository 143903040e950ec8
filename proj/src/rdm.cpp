#include "decoh/rdm.hpp"

#include <algorithm>
#include <stdexcept>

#include "decoh/errors.hpp"

namespace decoh {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = -1e-10;
constexpr double kTraceTol = 1e-10;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Sorts a tuple in place, returning the permutation parity (+1/-1), or 0
// if an index repeats.
int sort_with_parity(std::vector<int>& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  return sign;
}

// Removal table entry: annihilating the orbitals of an ascending tuple
// from determinant `det_index` leaves `sign * reduced`.
struct Removal {
  SlaterDeterminant reduced;
  int det_index;
  int tuple_rank;
  int sign;
};

}  // namespace

std::vector<std::vector<int>> ascending_tuples(int K, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(r);
  for (int i = 0; i < r; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    int p = r - 1;
    while (p >= 0 && t[p] == K - r + p) --p;
    if (p < 0) break;
    ++t[p];
    for (int q = p + 1; q < r; ++q) t[q] = t[q - 1] + 1;
  }
  return out;
}

ReducedDensityMatrix::ReducedDensityMatrix(SpinOrbitalBasis basis, int order, int electron_count,
                                           Eigen::MatrixXcd operator_matrix)
    : basis_(std::move(basis)),
      order_(order),
      n_electrons_(electron_count),
      tuples_(ascending_tuples(basis_.size(), order)),
      matrix_(std::move(operator_matrix)) {
  const auto dim = static_cast<Eigen::Index>(tuples_.size());
  if (matrix_.rows() != dim || matrix_.cols() != dim)
    throw std::invalid_argument("ReducedDensityMatrix: matrix dimension mismatch");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw PhysicsError("ReducedDensityMatrix: matrix is not Hermitian");
  if (std::abs(full_trace() - binomial(n_electrons_, order_)) > kTraceTol)
    throw PhysicsError("ReducedDensityMatrix: trace differs from binomial(N, r)");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kPsdTol)
    throw PhysicsError("ReducedDensityMatrix: negative eigenvalue beyond tolerance");
}

int ReducedDensityMatrix::tuple_rank(std::span<const int> tuple) const {
  const int K = basis_.size(), r = order_;
  int rank = 0, prev = -1;
  for (int p = 0; p < r; ++p) {
    for (int v = prev + 1; v < tuple[p]; ++v)
      rank += static_cast<int>(binomial(K - 1 - v, r - 1 - p));
    prev = tuple[p];
  }
  return rank;
}

std::complex<double> ReducedDensityMatrix::element(std::span<const int> lower,
                                                   std::span<const int> upper) const {
  if (static_cast<int>(lower.size()) != order_ || static_cast<int>(upper.size()) != order_)
    throw std::invalid_argument("ReducedDensityMatrix: tuple length differs from order");
  std::vector<int> lo(lower.begin(), lower.end()), up(upper.begin(), upper.end());
  const int s_lo = sort_with_parity(lo), s_up = sort_with_parity(up);
  if (s_lo == 0 || s_up == 0) return 0.0;
  const double pref = static_cast<double>(s_lo * s_up) / factorial(order_);
  return pref * matrix_(tuple_rank(lo), tuple_rank(up));
}

ReducedDensityMatrix build_rdm(const DensityMatrixExpansion& rho, int r) {
  const int N = rho.electron_count();
  if (r < 1 || r > N) throw std::invalid_argument("build_rdm: order must satisfy 1 <= r <= N");
  const int K = rho.basis().size();
  const auto tuples = ascending_tuples(K, r);

  // Index tuples are ranked lexicographically; precompute ranks on the fly
  // through a scratch RDM-less ranker identical to tuple_rank above.
  auto rank_of = [&](const std::vector<int>& t) {
    int rank = 0, prev = -1;
    for (int p = 0; p < r; ++p) {
      for (int v = prev + 1; v < t[p]; ++v)
        rank += static_cast<int>(binomial(K - 1 - v, r - 1 - p));
      prev = t[p];
    }
    return rank;
  };

  // For every determinant, annihilate each ascending r-subset of its
  // occupied orbitals.  Matching leftover determinants between bra and
  // ket contribute a_nm with the two string signs.
  std::vector<Removal> removals;
  const auto& dets = rho.determinants();
  const auto occ_subsets = ascending_tuples(N, r);
  for (int n = 0; n < static_cast<int>(dets.size()); ++n) {
    const auto occ = dets[n].occupied_list();
    for (const auto& sub : occ_subsets) {
      std::vector<int> orbitals(r);
      for (int p = 0; p < r; ++p) orbitals[p] = occ[sub[p]];
      std::vector<FermionOp> ops;
      ops.reserve(r);
      // string c_{j_r} ... c_{j_1} applied right to left: ascending order
      for (int p = r - 1; p >= 0; --p) ops.push_back({Action::annihilate, orbitals[p]});
      auto res = apply_operator_string(OperatorString(std::move(ops)), dets[n]);
      removals.push_back({std::move(res->det), n, rank_of(orbitals), res->sign});
    }
  }
  std::sort(removals.begin(), removals.end(), [](const Removal& a, const Removal& b) {
    if (a.reduced != b.reduced) return a.reduced < b.reduced;
    if (a.det_index != b.det_index) return a.det_index < b.det_index;
    return a.tuple_rank < b.tuple_rank;
  });

  const auto dim = static_cast<Eigen::Index>(tuples.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  const auto& a = rho.coefficients();
  std::size_t lo = 0;
  while (lo < removals.size()) {
    std::size_t hi = lo + 1;
    while (hi < removals.size() && removals[hi].reduced == removals[lo].reduced) ++hi;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = lo; j < hi; ++j) {
        const auto& bra = removals[i];  // row: annihilated from <Phi_m|
        const auto& ket = removals[j];
        M(bra.tuple_rank, ket.tuple_rank) +=
            static_cast<double>(bra.sign * ket.sign) * a(ket.det_index, bra.det_index);
      }
    lo = hi;
  }
  return ReducedDensityMatrix(rho.basis(), r, N, std::move(M));
}

ReducedDensityMatrix contract(const ReducedDensityMatrix& gamma) {
  const int r_in = gamma.order();
  if (r_in < 2) throw std::invalid_argument("contract: nothing below a one-body matrix");
  const int r = r_in - 1;
  const int N = gamma.electron_count();
  if (N - r == 0) throw std::invalid_argument("contract: N = r, contraction scale undefined");
  const int K = gamma.basis().size();

  const auto out_tuples = ascending_tuples(K, r);
  const auto dim = static_cast<Eigen::Index>(out_tuples.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);

  // Insert the contracted index as the trailing slot of both tuples;
  // bubbling it into ascending position costs one sign per larger
  // element already present.
  auto insert_sorted = [](const std::vector<int>& t, int c, int* sign) {
    std::vector<int> out = t;
    int above = 0;
    for (int x : t)
      if (x > c) ++above;
    out.insert(std::lower_bound(out.begin(), out.end(), c), c);
    *sign = (above % 2 == 0) ? 1 : -1;
    return out;
  };

  for (Eigen::Index I = 0; I < dim; ++I) {
    for (Eigen::Index J = I; J < dim; ++J) {
      std::complex<double> acc = 0.0;
      for (int c = 0; c < K; ++c) {
        if (std::binary_search(out_tuples[I].begin(), out_tuples[I].end(), c)) continue;
        if (std::binary_search(out_tuples[J].begin(), out_tuples[J].end(), c)) continue;
        int sI = 1, sJ = 1;
        auto bigI = insert_sorted(out_tuples[I], c, &sI);
        auto bigJ = insert_sorted(out_tuples[J], c, &sJ);
        acc += static_cast<double>(sI * sJ) *
               gamma.operator_matrix()(gamma.tuple_rank(bigI), gamma.tuple_rank(bigJ));
      }
      M(I, J) = acc / static_cast<double>(N - r);
      M(J, I) = std::conj(M(I, J));
    }
  }
  return ReducedDensityMatrix(gamma.basis(), r, N, std::move(M));
}

Eigen::VectorXd rdm_eigenvalues(const ReducedDensityMatrix& gamma) {
  const auto& M = gamma.operator_matrix();
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw PhysicsError("rdm_eigenvalues: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

}  // namespace decoh
