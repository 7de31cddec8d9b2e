#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gkf/rational.hpp"

namespace gkf {

using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

/// Row-major sparse matrix over Q. Rows hold (column, value) pairs sorted by
/// column with no explicit zeros.
class SparseRationalMatrix {
 public:
  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::size_t rows, std::size_t cols);

  static SparseRationalMatrix identity(std::size_t k);
  /// Dense input, one inner vector per row.
  static SparseRationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  /// Appends a row; entries are sorted, duplicates summed and zeros dropped.
  void add_row(std::vector<std::pair<std::uint32_t, Rational>> entries);
  const SparseVector& row(std::size_t r) const { return rows_[r]; }
  Rational entry(std::size_t r, std::size_t c) const;

  SparseRationalMatrix transpose() const;

  /// M·v for a sparse vector of length cols().
  std::vector<Rational> multiply(const SparseVector& v) const;

  /// "rows cols nnz" then one "r c num/den" line per entry (0-based indices).
  void write_text(std::ostream& out) const;
  static SparseRationalMatrix read_text(std::istream& in);

  bool operator==(const SparseRationalMatrix&) const = default;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

struct LinalgOptions {
  /// Worker threads used across primes; results do not depend on it.
  unsigned threads = 1;
  /// Upper bound on primes tried before giving up on a lift.
  int max_primes = 400;
};

/// Primes just below 2^31, in decreasing order, generated on demand.
std::uint32_t nth_prime(std::size_t index);

/// Echelon form of a matrix over F_p. Rows are inserted one at a time and
/// reduced against the current basis; each new pivot is the nonzero column
/// of smallest original column count.
class ModularEchelon {
 public:
  ModularEchelon(std::uint32_t prime, std::size_t cols, std::vector<std::uint32_t> column_counts = {});

  std::uint32_t prime() const { return p_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Returns true when the row was independent of the current basis.
  bool insert(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& row);

  /// Kernel of the inserted rows in reduced row echelon form: vectors
  /// (one per nonpivot column) with leading 1 and zeros in every other
  /// leading column.
  std::vector<std::vector<std::uint32_t>> kernel_rref() const;

  /// Columns without a pivot, ascending.
  std::vector<std::uint32_t> free_columns() const;

 private:
  struct Row {
    std::uint32_t pivot;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
  };

  std::uint32_t p_;
  std::size_t cols_;
  std::vector<std::uint32_t> colcount_;
  std::vector<std::int32_t> pivot_row_;
  std::vector<Row> rows_;

  std::vector<std::uint64_t> acc_;
  std::vector<std::uint8_t> touched_;
  std::vector<std::uint8_t> queued_;
};

/// x^{-1} mod p.
std::uint32_t inverse_mod(std::uint32_t x, std::uint32_t p);

/// Reduction of a rational modulo p; throws std::domain_error when p divides
/// the denominator.
std::uint32_t reduce_mod(const Rational& q, std::uint32_t p);

/// r/s with r ≡ s·a (mod m) and |r|, |s| ≤ sqrt(m/2), if one exists.
bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out);

/// Nullity of M over F_p; an upper bound for the nullity over Q.
std::size_t modular_nullity(const SparseRationalMatrix& m, std::uint32_t prime);

/// Basis of {x : Mx = 0} over Q in reduced row echelon form. Computed modulo
/// several primes, lifted by CRT and rational reconstruction, and verified
/// exactly against M before returning.
std::vector<SparseVector> nullspace_basis(const SparseRationalMatrix& m, const LinalgOptions& opts = {});

/// Exact rank over Q.
std::size_t rank(const SparseRationalMatrix& m, const LinalgOptions& opts = {});

/// True when M·v = 0 exactly.
bool is_in_kernel(const SparseRationalMatrix& m, const SparseVector& v);

}  // namespace gkf
