#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkf/cache.hpp"
#include "gkf/exact_linalg.hpp"
#include "gkf/invariant_split.hpp"
#include "gkf/poly_dual.hpp"

namespace gkf {

/// Multiplicities k_j (j ≥ 3) of dual generators of degree j.
class CochainType {
 public:
  CochainType() = default;
  explicit CochainType(std::map<int, int> k);

  const std::map<int, int>& multiplicities() const { return k_; }
  int k(int j) const;
  /// Σ k_j.
  int degree() const;
  /// Σ k_j (j − 2).
  int weight() const;
  /// Λ^{k_3}S_3 ⊗ Λ^{k_4}S_4 ⊗ …
  SpaceSpec space(int n) const;
  /// "k3=2,k6=1".
  std::string to_string() const;

  auto operator<=>(const CochainType&) const = default;

 private:
  std::map<int, int> k_;
};

/// All types of degree m and weight w, in lexicographic order of
/// (k_3, k_4, …) descending. Odd or negative w gives none.
std::vector<CochainType> enumerate_cochain_types(int w, int m);

/// Options shared by space construction and Betti computations.
struct ComplexOptions {
  unsigned threads = 1;
  /// Permits single-block systems above kDirectLimit unknowns (Λ⁶S₃).
  bool extended = false;
  /// Solve multi-block types by maximal vectors on the full product instead
  /// of pairing isotypic components.
  bool direct = false;
  bool strict_grading = false;
  const Cache* cache = nullptr;
  std::function<void(const std::string&)> progress;
};

/// Largest weight-zero system solved without ComplexOptions::extended.
inline constexpr std::size_t kDirectLimit = 60000;

struct CochainSummand {
  CochainType type;
  /// Unset when the summand was skipped (too large without --extended).
  std::optional<std::size_t> dimension;
  std::vector<WedgeVector> basis;
  /// "empty", "maximal", "pairing", "direct" or "skipped".
  std::string method;
  /// Number of weight-zero monomials of the ambient space.
  std::size_t weight_zero_monomials = 0;
};

class CochainSpace {
 public:
  CochainSpace() = default;
  CochainSpace(int n, int w, int m) : n_(n), w_(w), m_(m) {}

  int rank() const { return n_; }
  int weight() const { return w_; }
  int degree() const { return m_; }
  std::vector<CochainSummand>& summands() { return summands_; }
  const std::vector<CochainSummand>& summands() const { return summands_; }

  /// Unset if any summand is unknown.
  std::optional<std::size_t> dimension() const;
  /// True when every summand has its basis.
  bool has_basis() const;
  /// Concatenated bases; every vector has coefficient 1 at a pivot monomial
  /// where all other basis vectors vanish.
  std::vector<WedgeVector> basis() const;

 private:
  int n_ = 0, w_ = 0, m_ = 0;
  std::vector<CochainSummand> summands_;
};

/// Trivial component of the weight-w degree-m cochains, n = 3 in practice.
CochainSpace build_relative_cochain_space(int n, int w, int m, const ComplexOptions& opts = {});

/// Trivial multiplicity of a product of distinct S_q (all p = 1) computed
/// purely on the crystal side; nullopt if some p > 1.
std::optional<std::uint64_t> crystal_trivial_count(const SpaceSpec& s);

/// Terms of d z_A: (B, C, c) with B < C meaning c·z_B∧z_C.
struct CoboundaryTerm {
  GenId b, c;
  std::int64_t coefficient;
};
const std::vector<CoboundaryTerm>& generator_coboundary(int n, GenId a);

/// Skew-derivation extension of d to wedge monomials (exterior only).
WedgeVector coboundary(const WedgeVector& v);

/// Coordinates of d(src basis) in the dst basis: dst.dim rows, src.dim
/// columns. Throws std::logic_error if an image leaves span(dst).
SparseRationalMatrix coboundary_matrix(const CochainSpace& src, const CochainSpace& dst);

/// Rank of d on the span of the given vectors, from their images.
std::size_t coboundary_rank(const std::vector<WedgeVector>& basis, const LinalgOptions& opts = {});

struct ComplexReport {
  int n = 3, w = 0;
  bool strict_grading = false;
  /// Index j = 0..w; unset entries could not be computed.
  std::vector<std::optional<std::size_t>> dims;
  /// rank d_j : C^j → C^{j+1}.
  std::vector<std::optional<std::size_t>> ranks;
  std::vector<std::optional<long>> betti;
  std::optional<long> euler;
  /// Σ_{j≥1} (−1)^j dim C^j.
  std::optional<long> euler_from_dims;
  /// Per degree, the types and their dimensions.
  std::vector<CochainSpace> spaces;
};

ComplexReport betti_numbers(int n, int w, const ComplexOptions& opts = {});

/// Σ_{j≥1} (−1)^j b^j; nullopt when some Betti number is unknown.
std::optional<long> euler_characteristic(int n, int w, const ComplexOptions& opts = {});

}  // namespace gkf
