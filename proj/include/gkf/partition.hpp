#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gkf {

/// A partition λ₁ ≥ … ≥ λ_n ≥ 0 stored zero-padded to the rank n, so the
/// rank of Sp(2n) it labels is always explicit.
class Partition {
 public:
  Partition() = default;

  /// Pads `parts` with zeros up to `rank`; throws std::invalid_argument on a
  /// negative entry, an increase, or more than `rank` nonzero parts.
  Partition(std::vector<int> parts, int rank);

  static Partition trivial(int rank) { return Partition({}, rank); }

  /// Lenient parse of "4,2,1" (spaces allowed, trailing zeros optional).
  static Partition parse(std::string_view text, int rank);

  int rank() const { return static_cast<int>(parts_.size()); }
  int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& parts() const { return parts_; }

  /// |λ|, the number of cells.
  int size() const;
  /// Number of nonzero parts.
  int length() const;
  bool is_trivial() const { return size() == 0; }

  /// Conjugate partition: column heights, left to right.
  std::vector<int> column_heights() const;

  /// "4,2,1" with all n entries, e.g. "4,2,1" or "3,0,0".
  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// True when `v` is weakly decreasing and non-negative.
bool is_partition(const std::vector<int>& v);

/// Multiplicities of single-cell-width columns: counts[i-1] = p_i, the
/// number of columns of height i.
struct ColumnDecomposition {
  std::vector<int> counts;

  int p(int height) const { return counts[static_cast<std::size_t>(height - 1)]; }
  /// μ_k = Σ_{i ≥ k} p_i.
  Partition to_partition() const;

  bool operator==(const ColumnDecomposition&) const = default;
};

ColumnDecomposition column_decomposition(const Partition& lambda);

/// Dimension of the irreducible Sp(2n) representation V_λ (type C Weyl
/// dimension formula). Throws std::overflow_error beyond 64 bits.
std::uint64_t weyl_dim(int n, const Partition& lambda);

/// Convenience overload; validates `parts` as a partition of rank n.
std::uint64_t weyl_dim(int n, const std::vector<int>& parts);

/// dim of homogeneous degree-k polynomials in 2n variables, (2n−1+k)!/((2n−1)! k!).
std::uint64_t poly_dim(int n, int k);

/// All partitions of rank n with |λ| ≤ max_size, in increasing order.
std::vector<Partition> partitions_up_to(int n, int max_size);

}  // namespace gkf
