#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gkf/partition.hpp"

namespace gkf {

// Letters of the symplectic alphabet 1 < … < n < n̄ < … < 1̄ are encoded as
// integers 1..2n with k̄ = 2n+1−k.

inline int bar(int n, int letter) { return 2 * n + 1 - letter; }
inline bool is_barred(int n, int letter) { return letter > n; }

/// "3" or "3b" for 3̄.
std::string format_letter(int n, int letter);
int parse_letter(int n, std::string_view text);

using Column = std::vector<int>;

/// 1-based position of `letter` in a strictly increasing column.
std::optional<int> pos(std::span<const int> column, int letter);

/// One-column admissibility: if k and k̄ both occur then
/// pos(k) + (|J| + 1 − pos(k̄)) ≤ k.
bool check_c1(std::span<const int> column, int n);

/// Two-column admissibility for adjacent columns L (left) and R (right):
/// no (a,b)-configuration violates the distance inequality.
bool check_c2(std::span<const int> left, std::span<const int> right, int n);

/// A semistandard C-tableau, stored column-major (left to right, each
/// column top to bottom).
class Tableau {
 public:
  Tableau() = default;
  Tableau(int n, std::vector<Column> columns);

  int rank() const { return n_; }
  const std::vector<Column>& columns() const { return columns_; }
  Partition shape() const;
  std::size_t cell_count() const;

  /// Row-major view: rows()[r] lists row r+1 left to right.
  std::vector<std::vector<int>> rows() const;

  /// Builds a tableau from its rows (each row left to right).
  static Tableau from_rows(int n, const std::vector<std::vector<int>>& rows);

  /// "1,2|1,3b": columns separated by '|', entries by ','.
  std::string to_string() const;
  static Tableau parse(std::string_view text, int n);

  /// Column-major reading word.
  std::vector<int> word() const;

  auto operator<=>(const Tableau&) const = default;

 private:
  int n_ = 0;
  std::vector<Column> columns_;
};

/// Shape, strictness, row, C-1 and C-2 conditions.
bool is_admissible(const Tableau& t);

/// Strictly increasing columns of the given height that satisfy C-1, in
/// lexicographic order.
std::vector<Column> admissible_columns(int n, int height);

/// cbase_μ: every semistandard C-tableau of shape μ, sorted lexicographically
/// on the column-major reading word. Its size equals weyl_dim(n, μ).
std::vector<Tableau> enumerate_crystal_base(int n, const Partition& mu);

/// Weight of a tableau: each letter k adds e_k, each k̄ subtracts e_k.
std::vector<int> tableau_weight(const Tableau& t);

}  // namespace gkf
