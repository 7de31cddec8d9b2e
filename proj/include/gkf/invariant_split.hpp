#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gkf/exact_linalg.hpp"
#include "gkf/poly_dual.hpp"
#include "gkf/tensor_decomp.hpp"

namespace gkf {

/// Λ^p S_q (or Sym^p S_q) factor of a cochain space.
struct Block {
  int q = 1;
  int p = 1;
  bool symmetric = false;
  auto operator<=>(const Block&) const = default;
};

/// Λ^{p₁}S_{q₁} ⊗ Λ^{p₂}S_{q₂} ⊗ … with distinct q, stored by ascending q.
class SpaceSpec {
 public:
  SpaceSpec() = default;
  SpaceSpec(int n, std::vector<Block> blocks);

  /// "L<p> S<q> [* L<p> S<q>]…"; also "S<q>" and "Sym<p> S<q>".
  static SpaceSpec parse(std::string_view text, int n);

  int rank() const { return n_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  /// Total number of generators in a monomial.
  int degree() const;
  /// Σ p(q − 2).
  int gkf_weight() const;
  std::uint32_t symmetric_mask() const;
  Integer dimension() const;
  /// "L2 S3 * L1 S4".
  std::string to_string() const;

  /// Everything but the last block, and the last block alone.
  SpaceSpec head() const;
  SpaceSpec tail() const;

  auto operator<=>(const SpaceSpec&) const = default;

 private:
  int n_ = 0;
  std::vector<Block> blocks_;
};

/// Which raising vectors are imposed when solving for maximal vectors.
enum class RootSet { Simple, All };

/// dim S[μ] for every weight μ that occurs.
std::map<Weight, std::uint64_t> weight_multiplicities(const SpaceSpec& s);

/// Canonical monomials of S with torus weight λ, in canonical order.
std::vector<WedgeMonomial> weight_subspace_basis(const SpaceSpec& s, const Weight& lambda);

/// The stacked system ρ·v = 0 over the λ-weight subspace.
struct InvarianceSystem {
  std::vector<WedgeMonomial> basis;
  SparseRationalMatrix matrix;
};
InvarianceSystem invariance_system(const SpaceSpec& s, const Weight& lambda, RootSet roots = RootSet::Simple);

/// Canonical basis of the maximal vectors of weight λ. The solution is
/// re-verified against all raising root vectors.
std::vector<WedgeVector> maximal_vectors(const SpaceSpec& s, const Weight& lambda, RootSet roots = RootSet::Simple,
                                         const LinalgOptions& opts = {});

struct DecomposeStats {
  std::size_t dominant_weights = 0;   // dominant weights with a nonzero weight space
  std::size_t candidates = 0;         // after pruning by the crystal tensor power
  std::size_t systems_solved = 0;
};

struct DecomposeOptions {
  unsigned threads = 1;
  /// Use exact maximal vectors instead of modular nullities.
  bool exact = false;
  /// Progress callback: (systems done, total).
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Thrown when Σ mult·dim V_λ differs from dim S.
struct DimensionAuditError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Irreducible decomposition of S from maximal-vector counts.
IrrepDecomposition decompose_space(const SpaceSpec& s, const DecomposeOptions& opts = {}, DecomposeStats* stats = nullptr);

/// Dominant weights of S with a nonzero weight space, descending.
std::vector<Weight> dominant_weights(const SpaceSpec& s);

/// Support of ⊗ S_q^{⊗p} over all blocks, from crystal tensor powers.
IrrepDecomposition tensor_power_envelope(const SpaceSpec& s);

/// Exact subspace with a reduced echelon basis per weight: each basis vector
/// has coefficient 1 at its pivot monomial and 0 at the other pivots.
class WeightedSpan {
 public:
  explicit WeightedSpan(int n = 1, std::uint32_t symmetric_degrees = 0) : n_(n), symmetric_(symmetric_degrees) {}

  /// Reduces and inserts; returns false if v was already in the span.
  bool insert(WedgeVector v);
  std::size_t dimension() const;
  const std::map<Weight, std::vector<WedgeVector>>& by_weight() const { return basis_; }
  const std::vector<WedgeVector>& at(const Weight& mu) const;

  /// Coordinates of v (homogeneous of weight μ) in the basis at μ; throws if
  /// v is outside the span.
  std::vector<Rational> coordinates(const WedgeVector& v, const Weight& mu) const;

  std::vector<WedgeVector> flatten() const;

 private:
  int n_;
  std::uint32_t symmetric_;
  std::map<Weight, std::vector<WedgeVector>> basis_;
};

/// U⁻-orbit closure of the given maximal vectors of weight λ; its dimension
/// must reach |maximal|·dim V_λ.
WeightedSpan isotypic_span(const std::vector<WedgeVector>& maximal, const Weight& lambda);

/// Basis of the irreducible subspace generated by one maximal vector.
std::vector<WedgeVector> irreducible_span(const WedgeVector& v, const Weight& lambda);

/// Invariants of X ⊗ Y where every X generator has lower degree than every Y
/// generator, returned expanded as x ∧ y wedge vectors.
std::vector<WedgeVector> invariant_pairings(const WeightedSpan& x, const WeightedSpan& y, const LinalgOptions& opts = {});

/// Exact reduced echelon form of a list of wedge vectors (zero rows dropped).
std::vector<WedgeVector> rref(const std::vector<WedgeVector>& vectors);

/// True when every vector in the list is annihilated by the given roots.
bool annihilated_by(const std::vector<WedgeVector>& vectors, const std::vector<RootVector>& roots);

bool is_dominant(const Weight& w);

}  // namespace gkf
