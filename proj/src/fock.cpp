#include "decoh/fock.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace decoh {

namespace {
constexpr int kWordBits = 64;

int word_count(int n_orbitals) { return (n_orbitals + kWordBits - 1) / kWordBits; }
}  // namespace

SpinOrbitalBasis::SpinOrbitalBasis(std::vector<SpinOrbital> orbitals)
    : orbitals_(std::move(orbitals)) {
  if (orbitals_.empty()) throw std::invalid_argument("SpinOrbitalBasis: empty orbital list");
  for (std::size_t i = 0; i < orbitals_.size(); ++i)
    for (std::size_t j = i + 1; j < orbitals_.size(); ++j)
      if (orbitals_[i] == orbitals_[j])
        throw std::invalid_argument("SpinOrbitalBasis: duplicate orbital label");
}

SpinOrbitalBasis SpinOrbitalBasis::spin_blocked(int n_spatial) {
  if (n_spatial <= 0) throw std::invalid_argument("SpinOrbitalBasis: n_spatial must be positive");
  std::vector<SpinOrbital> orbs;
  orbs.reserve(2 * static_cast<std::size_t>(n_spatial));
  for (int i = 0; i < n_spatial; ++i) orbs.push_back({i, Spin::up});
  for (int i = 0; i < n_spatial; ++i) orbs.push_back({i, Spin::down});
  return SpinOrbitalBasis(std::move(orbs));
}

int SpinOrbitalBasis::index_of(int spatial, Spin spin) const {
  for (std::size_t i = 0; i < orbitals_.size(); ++i)
    if (orbitals_[i].spatial == spatial && orbitals_[i].spin == spin) return static_cast<int>(i);
  throw std::out_of_range("SpinOrbitalBasis: no such orbital label");
}

SlaterDeterminant::SlaterDeterminant(int n_orbitals)
    : n_orbitals_(n_orbitals), words_(word_count(n_orbitals), 0) {
  if (n_orbitals <= 0) throw std::invalid_argument("SlaterDeterminant: need at least one orbital");
}

SlaterDeterminant SlaterDeterminant::from_string(std::string_view occupation) {
  SlaterDeterminant det(static_cast<int>(occupation.size()));
  for (std::size_t i = 0; i < occupation.size(); ++i) {
    if (occupation[i] == '1')
      det.words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
    else if (occupation[i] != '0')
      throw std::invalid_argument("SlaterDeterminant: occupation string must be 0/1");
  }
  return det;
}

SlaterDeterminant SlaterDeterminant::from_occupied(int n_orbitals, std::span<const int> occupied) {
  SlaterDeterminant det(n_orbitals);
  for (int i : occupied) {
    det.check_range(i);
    if (det.occupied(i)) throw std::invalid_argument("SlaterDeterminant: orbital listed twice");
    det.words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
  }
  return det;
}

SlaterDeterminant SlaterDeterminant::from_occupied(int n_orbitals,
                                                   std::initializer_list<int> occupied) {
  return from_occupied(n_orbitals, std::span<const int>(occupied.begin(), occupied.size()));
}

int SlaterDeterminant::electron_count() const {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool SlaterDeterminant::occupied(int orbital) const {
  check_range(orbital);
  return (words_[orbital / kWordBits] >> (orbital % kWordBits)) & 1u;
}

int SlaterDeterminant::occupied_below(int orbital) const {
  check_range(orbital);
  const int w = orbital / kWordBits, b = orbital % kWordBits;
  int n = 0;
  for (int k = 0; k < w; ++k) n += std::popcount(words_[k]);
  if (b > 0) n += std::popcount(words_[w] & ((std::uint64_t{1} << b) - 1));
  return n;
}

std::vector<int> SlaterDeterminant::occupied_list() const {
  std::vector<int> occ;
  for (int i = 0; i < n_orbitals_; ++i)
    if ((words_[i / kWordBits] >> (i % kWordBits)) & 1u) occ.push_back(i);
  return occ;
}

std::string SlaterDeterminant::to_string() const {
  std::string s(static_cast<std::size_t>(n_orbitals_), '0');
  for (int i = 0; i < n_orbitals_; ++i)
    if ((words_[i / kWordBits] >> (i % kWordBits)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

int SlaterDeterminant::common_occupation(const SlaterDeterminant& other) const {
  if (other.n_orbitals_ != n_orbitals_)
    throw std::invalid_argument("SlaterDeterminant: basis size mismatch");
  int n = 0;
  for (std::size_t k = 0; k < words_.size(); ++k) n += std::popcount(words_[k] & other.words_[k]);
  return n;
}

SlaterDeterminant SlaterDeterminant::with_set(int orbital) const {
  check_range(orbital);
  SlaterDeterminant d = *this;
  d.words_[orbital / kWordBits] |= std::uint64_t{1} << (orbital % kWordBits);
  return d;
}

SlaterDeterminant SlaterDeterminant::with_cleared(int orbital) const {
  check_range(orbital);
  SlaterDeterminant d = *this;
  d.words_[orbital / kWordBits] &= ~(std::uint64_t{1} << (orbital % kWordBits));
  return d;
}

bool operator<(const SlaterDeterminant& a, const SlaterDeterminant& b) {
  if (a.n_orbitals_ != b.n_orbitals_) return a.n_orbitals_ < b.n_orbitals_;
  return std::lexicographical_compare(a.words_.begin(), a.words_.end(), b.words_.begin(),
                                      b.words_.end());
}

std::size_t SlaterDeterminant::hash() const {
  std::size_t h = std::hash<int>{}(n_orbitals_);
  for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

void SlaterDeterminant::check_range(int orbital) const {
  if (orbital < 0 || orbital >= n_orbitals_)
    throw std::out_of_range("SlaterDeterminant: orbital index does not fit the basis");
}

OperatorString OperatorString::adjoint() const {
  std::vector<FermionOp> rev(ops_.rbegin(), ops_.rend());
  for (auto& op : rev)
    op.action = (op.action == Action::create) ? Action::annihilate : Action::create;
  return OperatorString(std::move(rev));
}

OperatorString OperatorString::then(const OperatorString& right) const {
  std::vector<FermionOp> ops = ops_;
  ops.insert(ops.end(), right.ops_.begin(), right.ops_.end());
  return OperatorString(std::move(ops));
}

std::optional<SignedDeterminant> apply_operator_string(const OperatorString& op,
                                                       const SlaterDeterminant& det) {
  SlaterDeterminant cur = det;
  int sign = 1;
  const auto& ops = op.ops();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const bool occ = cur.occupied(it->orbital);  // also range-checks
    if (it->action == Action::create) {
      if (occ) return std::nullopt;
      if (cur.occupied_below(it->orbital) % 2 != 0) sign = -sign;
      cur = cur.with_set(it->orbital);
    } else {
      if (!occ) return std::nullopt;
      if (cur.occupied_below(it->orbital) % 2 != 0) sign = -sign;
      cur = cur.with_cleared(it->orbital);
    }
  }
  return SignedDeterminant{sign, std::move(cur)};
}

int matrix_element(const SlaterDeterminant& bra, const OperatorString& op,
                   const SlaterDeterminant& ket) {
  auto res = apply_operator_string(op, ket);
  if (!res) return 0;
  return (res->det == bra) ? res->sign : 0;
}

int distribution(const SlaterDeterminant& det, int orbital) {
  return det.occupied(orbital) ? 1 : 0;
}

int coherence_order(const SlaterDeterminant& a, const SlaterDeterminant& b) {
  if (a.n_orbitals() != b.n_orbitals())
    throw std::invalid_argument("coherence_order: determinants live on different bases");
  const int na = a.electron_count(), nb = b.electron_count();
  if (na != nb) throw std::invalid_argument("coherence_order: electron counts differ");
  return na - a.common_occupation(b);
}

}  // namespace decoh
