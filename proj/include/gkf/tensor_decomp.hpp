#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkf/crystal.hpp"
#include "gkf/partition.hpp"

namespace gkf {

/// Multiset of irreducible Sp(2n) representations: λ ↦ multiplicity ξ^λ ≥ 1.
class IrrepDecomposition {
 public:
  explicit IrrepDecomposition(int rank = 1) : rank_(rank) {}

  int rank() const { return rank_; }
  void add(const Partition& lambda, std::uint64_t mult = 1);
  std::uint64_t multiplicity(const Partition& lambda) const;
  const std::map<Partition, std::uint64_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Σ ξ^λ · dim V_λ.
  std::uint64_t dimension() const;
  /// Number of irreducible summands counted with multiplicity.
  std::uint64_t summand_count() const;

  /// Summands sorted by partition, descending lexicographic.
  std::vector<std::pair<Partition, std::uint64_t>> sorted_descending() const;

  /// "V[0,0,0] + 3 V[3,0,0] + …" in ascending order.
  std::string to_string() const;
  /// {"rank": n, "summands": [{"lambda": [...], "mult": m}, ...]}.
  std::string to_json() const;
  static IrrepDecomposition from_json(const std::string& text);

  bool operator==(const IrrepDecomposition&) const = default;

 private:
  int rank_;
  std::map<Partition, std::uint64_t> entries_;
};

/// Adds a cell to row k for letter k ≤ n, removes one from row 2n+1−k for a
/// barred letter. Returns nullopt as soon as the result is not a Young diagram.
std::optional<std::vector<int>> apply_letter(std::vector<int> diagram, int letter, int n);

/// Folds apply_letter over the tableau: rightmost column first, each column
/// top to bottom.
std::optional<Partition> apply_tableau(const Tableau& t, const Partition& lambda);

/// V_λ ⊗ V_μ via the crystal base of μ acting on λ.
IrrepDecomposition tensor_decompose(int n, const Partition& lambda, const Partition& mu);

/// W ⊗ Z for two decomposed representations.
IrrepDecomposition tensor_product(const IrrepDecomposition& w, const IrrepDecomposition& z);

/// V_μ^{⊗p}.
IrrepDecomposition tensor_power(int n, const Partition& mu, int p);

/// T_μ: row k filled with the letter k. The unique tableau with T·triv = μ.
Tableau canonical_tableau_T(const Partition& mu);

/// T̂_μ: columns (j̄,…,2̄,1̄) following the column decomposition of μ. The
/// unique tableau with T̂·μ = triv.
Tableau canonical_tableau_That(const Partition& mu);

/// dim (W ⊗ Z)^triv = Σ_{λ common} ξ_W^λ ξ_Z^λ.
std::uint64_t trivial_multiplicity(const IrrepDecomposition& w, const IrrepDecomposition& z);

/// dim (W ⊗ S_h)^triv = ξ_W^{[h,0,…,0]}.
std::uint64_t trivial_multiplicity_with_S(const IrrepDecomposition& w, int h);

}  // namespace gkf
