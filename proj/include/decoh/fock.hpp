#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace decoh {

enum class Spin : std::uint8_t { up, down };

struct SpinOrbital {
  int spatial;
  Spin spin;
  friend bool operator==(const SpinOrbital&, const SpinOrbital&) = default;
};

/// Ordered list of spin-orbital labels.  The ordering is fixed at
/// construction and defines every fermionic sign convention downstream:
/// determinants are ordered products of creators on the vacuum in
/// ascending label-index order.
class SpinOrbitalBasis {
 public:
  explicit SpinOrbitalBasis(std::vector<SpinOrbital> orbitals);

  /// Spin-blocked layout used throughout: spatial orbitals 0..n-1 with
  /// spin up, then the same spatial orbitals with spin down.
  static SpinOrbitalBasis spin_blocked(int n_spatial);

  int size() const { return static_cast<int>(orbitals_.size()); }
  const SpinOrbital& orbital(int i) const { return orbitals_.at(i); }
  const std::vector<SpinOrbital>& orbitals() const { return orbitals_; }

  /// Index of (spatial, spin) in this basis; throws std::out_of_range if absent.
  int index_of(int spatial, Spin spin) const;

  friend bool operator==(const SpinOrbitalBasis&, const SpinOrbitalBasis&) = default;

 private:
  std::vector<SpinOrbital> orbitals_;
};

/// Occupation bit-string over K spin-orbitals.  K <= 64 fits in one
/// machine word; larger bases spill into further 64-bit words.
/// Immutable value type; determinants compare equal iff their
/// bit-strings are equal.
class SlaterDeterminant {
 public:
  explicit SlaterDeterminant(int n_orbitals);

  /// Parse an occupation string such as "11001100" (character i is the
  /// occupation of basis orbital i).
  static SlaterDeterminant from_string(std::string_view occupation);
  static SlaterDeterminant from_occupied(int n_orbitals, std::span<const int> occupied);
  static SlaterDeterminant from_occupied(int n_orbitals, std::initializer_list<int> occupied);

  int n_orbitals() const { return n_orbitals_; }
  int electron_count() const;
  bool occupied(int orbital) const;
  /// Number of occupied orbitals with index strictly below `orbital`.
  int occupied_below(int orbital) const;
  std::vector<int> occupied_list() const;
  std::string to_string() const;

  /// Number of orbitals occupied in both `*this` and `other`.
  int common_occupation(const SlaterDeterminant& other) const;

  SlaterDeterminant with_set(int orbital) const;
  SlaterDeterminant with_cleared(int orbital) const;

  friend bool operator==(const SlaterDeterminant&, const SlaterDeterminant&) = default;
  /// Lexicographic order on the bit-string; gives deterministic map ordering.
  friend bool operator<(const SlaterDeterminant& a, const SlaterDeterminant& b);

  std::size_t hash() const;

 private:
  void check_range(int orbital) const;

  int n_orbitals_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class Action : std::uint8_t { create, annihilate };

struct FermionOp {
  Action action;
  int orbital;
  friend bool operator==(const FermionOp&, const FermionOp&) = default;
};

/// Product of creation/annihilation operators written left to right.
/// Application to a ket proceeds right to left (the last operator in the
/// list acts first).
class OperatorString {
 public:
  OperatorString() = default;
  OperatorString(std::initializer_list<FermionOp> ops) : ops_(ops) {}
  explicit OperatorString(std::vector<FermionOp> ops) : ops_(std::move(ops)) {}

  static OperatorString create(int orbital) { return {{Action::create, orbital}}; }
  static OperatorString annihilate(int orbital) { return {{Action::annihilate, orbital}}; }

  /// Hermitian conjugate: reversed order, create <-> annihilate.
  OperatorString adjoint() const;
  OperatorString then(const OperatorString& right) const;  // (*this) * right

  const std::vector<FermionOp>& ops() const { return ops_; }
  bool empty() const { return ops_.empty(); }

 private:
  std::vector<FermionOp> ops_;
};

struct SignedDeterminant {
  int sign;  // +1 or -1
  SlaterDeterminant det;
};

/// Applies the operator string to a determinant.  Each elementary
/// operator contributes (-1)^(number of occupied orbitals strictly below
/// the acted index); a creation on an occupied orbital or an
/// annihilation on an empty one kills the state (nullopt).
/// Throws std::out_of_range when an index does not fit the determinant's basis.
std::optional<SignedDeterminant> apply_operator_string(const OperatorString& op,
                                                       const SlaterDeterminant& det);

/// <bra| op |ket> in {-1, 0, +1}.
int matrix_element(const SlaterDeterminant& bra, const OperatorString& op,
                   const SlaterDeterminant& ket);

/// Occupation f_n(eps) of a single-particle level in a determinant, 0 or 1.
int distribution(const SlaterDeterminant& det, int orbital);

/// Number of single-particle transitions connecting two determinants:
/// s = N - sum_eps f_a(eps) f_b(eps).
int coherence_order(const SlaterDeterminant& a, const SlaterDeterminant& b);

}  // namespace decoh

template <>
struct std::hash<decoh::SlaterDeterminant> {
  std::size_t operator()(const decoh::SlaterDeterminant& d) const noexcept { return d.hash(); }
};
