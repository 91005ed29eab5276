#pragma once

// Finite-dimensional multigraded quotients of free Lie algebras: free n-Engel
// Lie algebras over F_p truncated above a class cap, as structure-constant
// tables.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "engel/execution.hpp"
#include "engel/freelie.hpp"
#include "engel/gf.hpp"
#include "engel/lie_element.hpp"
#include "engel/multidegree.hpp"

namespace engel::quotient {

inline constexpr std::int32_t kNoParent = -1;

struct BasisElement {
  MultiDegree degree;
  // Basis elements produced by the builder satisfy e = [parent, generator];
  // degree-one elements, and quotient elements whose parent was factored
  // out, carry kNoParent.
  std::int32_t parent = kNoParent;
  std::uint32_t generator = 0;
  std::string word;  // nested-paren representative, e.g. "((g1,g2),g2)"

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

struct Component {
  MultiDegree degree;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  std::uint32_t size() const noexcept { return end - begin; }
};

struct TableHeader {
  std::uint32_t p = 2;
  std::size_t rank = 1;
  unsigned engel_n = 0;  // 0: no Engel relations imposed
  unsigned class_cap = 1;
  std::optional<unsigned> multidegree_cap;
  std::optional<MultiDegree> weight_bound;  // per-generator weight caps

  friend bool operator==(const TableHeader&, const TableHeader&) = default;
};

class AlgebraTable {
 public:
  using ProductMap = std::unordered_map<std::uint64_t, gf::FpVector>;

  // Products are keyed by pair_key(i, j) with i < j and store [e_i, e_j].
  // Basis elements must be sorted by multidegree.
  AlgebraTable(TableHeader header, std::vector<BasisElement> basis, ProductMap products);

  std::uint64_t id() const noexcept { return id_; }
  const TableHeader& header() const noexcept { return header_; }
  const gf::PrimeField& field() const noexcept { return field_; }
  std::uint32_t p() const noexcept { return header_.p; }
  std::size_t rank() const noexcept { return header_.rank; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::span<const BasisElement> basis() const noexcept { return basis_; }
  std::span<const Component> components() const noexcept { return components_; }
  const Component* component(const MultiDegree& d) const;

  // Number of basis elements in each total degree 1..class_cap.
  std::vector<std::size_t> dims_by_degree() const;
  unsigned top_degree() const noexcept;

  LieElement zero() const;
  LieElement basis_element(std::size_t i) const;
  // Image of generator g, or zero if it does not survive.
  LieElement generator(std::size_t g) const;
  std::optional<std::uint32_t> generator_index(std::size_t g) const;

  // [e_i, e_j] with the correct sign for any i, j.
  gf::FpVector basis_bracket(std::uint32_t i, std::uint32_t j) const;
  const gf::FpVector* stored_product(std::uint32_t i, std::uint32_t j) const;  // i < j only
  const ProductMap& products() const noexcept { return products_; }

  LieElement bracket(const LieElement& x, const LieElement& y) const;
  gf::FpVector bracket(const gf::FpVector& x, const gf::FpVector& y) const;
  LieElement left_normed(std::span<const LieElement> args) const;

  LieElement element(gf::FpVector coeffs) const;

  static std::uint64_t pair_key(std::uint32_t i, std::uint32_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }

  bool same_contents(const AlgebraTable& other) const;

 private:
  std::uint64_t id_;
  TableHeader header_;
  gf::PrimeField field_;
  std::vector<BasisElement> basis_;
  std::vector<Component> components_;
  std::unordered_map<MultiDegree, std::size_t, MultiDegreeHash> component_of_;
  ProductMap products_;
};

struct BuildOptions {
  std::uint32_t p = 5;
  std::size_t rank = 2;
  unsigned engel_n = 3;  // 0 builds the truncated free Lie algebra
  unsigned class_cap = 6;
  std::optional<unsigned> multidegree_cap;
  std::optional<MultiDegree> weight_bound;
  // Permit engel_n >= p. The imposed relations are then the partial
  // linearizations, i.e. the identity as it holds over infinite fields of
  // characteristic p.
  bool allow_small_characteristic = false;
  Execution execution = Execution::parallel;
  std::size_t max_dim = 0;  // 0: unlimited; otherwise BudgetError when exceeded
};

AlgebraTable build_quotient(const BuildOptions& options);

struct ClassInfo {
  unsigned nilpotency_class = 0;
  bool cap_reached = false;
};
ClassInfo nilpotency_class(const AlgebraTable& a);

// Instances of the partial linearizations of [x, y^n] = 0 inside one
// multihomogeneous component of a free Lie algebra, with x and the y-slots
// filled by Hall basis words.
std::vector<LieElement> engel_instances(unsigned n, const MultiDegree& component,
                                        const freelie::FreeLieAlgebra& free,
                                        bool allow_small_characteristic = false);

// Per-degree dimensions of the same quotient computed in the Hall basis of the
// free Lie algebra: relations of each component are the Engel instances plus
// brackets of the previous components' relations with the generators.
std::vector<std::size_t> hall_route_dims(std::uint32_t p, std::size_t rank, unsigned engel_n,
                                         unsigned class_cap,
                                         std::optional<unsigned> multidegree_cap = std::nullopt,
                                         bool allow_small_characteristic = false);

class Subspace {
 public:
  Subspace(std::uint64_t algebra, gf::EchelonBasis basis);

  std::uint64_t algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return basis_.rank(); }
  const gf::EchelonBasis& echelon() const noexcept { return basis_; }
  gf::FpMatrix matrix() const { return basis_.to_matrix(); }
  bool contains(const LieElement& x) const;

 private:
  std::uint64_t algebra_;
  gf::EchelonBasis basis_;
};

Subspace span_of(const AlgebraTable& a, std::span<const LieElement> elements);
// Smallest ideal containing gens.
Subspace ideal_generated(const AlgebraTable& a, std::span<const LieElement> gens);
// True if [s, e_j] lies in s for every spanning vector s and basis element e_j.
bool is_ideal(const AlgebraTable& a, const Subspace& s);
// Throws NotAnIdeal if the subspace is not bracket-closed against the algebra.
AlgebraTable quotient_by_ideal(const AlgebraTable& a, const Subspace& ideal);

}  // namespace engel::quotient
