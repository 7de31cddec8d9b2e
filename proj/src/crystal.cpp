#include "gkf/crystal.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gkf {

std::string format_letter(int n, int letter) {
  if (letter < 1 || letter > 2 * n) throw std::invalid_argument("letter out of range");
  if (is_barred(n, letter)) return std::to_string(bar(n, letter)) + "b";
  return std::to_string(letter);
}

int parse_letter(int n, std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  bool barred = false;
  if (!text.empty() && text.back() == 'b') {
    barred = true;
    text.remove_suffix(1);
  }
  int k = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc{} || ptr != text.data() + text.size() || k < 1 || k > n)
    throw std::invalid_argument("bad tableau letter '" + std::string(text) + "'");
  return barred ? bar(n, k) : k;
}

std::optional<int> pos(std::span<const int> column, int letter) {
  for (std::size_t i = 0; i < column.size(); ++i)
    if (column[i] == letter) return static_cast<int>(i) + 1;
  return std::nullopt;
}

bool check_c1(std::span<const int> column, int n) {
  const int len = static_cast<int>(column.size());
  for (int k = 1; k <= n; ++k) {
    auto pk = pos(column, k);
    auto pkb = pos(column, bar(n, k));
    if (pk && pkb && *pk + (len + 1 - *pkb) > k) return false;
  }
  return true;
}

bool check_c2(std::span<const int> left, std::span<const int> right, int n) {
  for (int a = 1; a <= n; ++a) {
    auto pa = pos(left, a);
    auto pab = pos(right, bar(n, a));
    if (!pa || !pab) continue;
    for (int b = a; b <= n; ++b) {
      const int bb = bar(n, b);
      // b and b̄ both in the right column.
      if (auto pb = pos(right, b), pbb = pos(right, bb); pb && pbb) {
        if (*pa <= *pb && *pb < *pbb && *pbb <= *pab && (*pb - *pa) + (*pab - *pbb) >= b - a) return false;
      }
      // b and b̄ both in the left column.
      if (auto pb = pos(left, b), pbb = pos(left, bb); pb && pbb) {
        if (*pa <= *pb && *pb < *pbb && *pbb <= *pab && (*pb - *pa) + (*pab - *pbb) >= b - a) return false;
      }
    }
  }
  return true;
}

Tableau::Tableau(int n, std::vector<Column> columns) : n_(n), columns_(std::move(columns)) {
  for (std::size_t c = 1; c < columns_.size(); ++c)
    if (columns_[c].size() > columns_[c - 1].size())
      throw std::invalid_argument("column heights must weakly decrease");
  for (const auto& col : columns_) {
    if (col.empty()) throw std::invalid_argument("empty column");
    if (col.size() > static_cast<std::size_t>(n)) throw std::invalid_argument("column taller than the rank");
    for (int x : col)
      if (x < 1 || x > 2 * n) throw std::invalid_argument("letter out of range");
  }
}

Partition Tableau::shape() const {
  std::vector<int> parts(static_cast<std::size_t>(n_), 0);
  for (const auto& col : columns_)
    for (std::size_t r = 0; r < col.size(); ++r) ++parts[r];
  return Partition(std::move(parts), n_);
}

std::size_t Tableau::cell_count() const {
  std::size_t s = 0;
  for (const auto& col : columns_) s += col.size();
  return s;
}

std::vector<std::vector<int>> Tableau::rows() const {
  std::vector<std::vector<int>> out;
  for (const auto& col : columns_) {
    if (out.size() < col.size()) out.resize(col.size());
    for (std::size_t r = 0; r < col.size(); ++r) out[r].push_back(col[r]);
  }
  return out;
}

Tableau Tableau::from_rows(int n, const std::vector<std::vector<int>>& rows) {
  std::vector<Column> cols;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r > 0 && rows[r].size() > rows[r - 1].size()) throw std::invalid_argument("row lengths must weakly decrease");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (cols.size() <= c) cols.emplace_back();
      cols[c].push_back(rows[r][c]);
    }
  }
  return Tableau(n, std::move(cols));
}

std::string Tableau::to_string() const {
  std::string s;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) s += '|';
    for (std::size_t r = 0; r < columns_[c].size(); ++r) {
      if (r) s += ',';
      s += format_letter(n_, columns_[c][r]);
    }
  }
  return s;
}

Tableau Tableau::parse(std::string_view text, int n) {
  std::vector<Column> cols;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar_at = text.find('|', start);
    std::string_view col_text = text.substr(start, bar_at == std::string_view::npos ? std::string_view::npos : bar_at - start);
    Column col;
    std::size_t s = 0;
    while (s <= col_text.size()) {
      std::size_t comma = col_text.find(',', s);
      std::string_view item = col_text.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s);
      col.push_back(parse_letter(n, item));
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
    cols.push_back(std::move(col));
    if (bar_at == std::string_view::npos) break;
    start = bar_at + 1;
  }
  if (text.empty()) cols.clear();
  return Tableau(n, std::move(cols));
}

std::vector<int> Tableau::word() const {
  std::vector<int> w;
  for (const auto& col : columns_) w.insert(w.end(), col.begin(), col.end());
  return w;
}

bool is_admissible(const Tableau& t) {
  const int n = t.rank();
  const auto& cols = t.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& col = cols[c];
    for (std::size_t r = 1; r < col.size(); ++r)
      if (col[r] <= col[r - 1]) return false;
    if (!check_c1(col, n)) return false;
    if (c > 0) {
      const auto& left = cols[c - 1];
      for (std::size_t r = 0; r < col.size(); ++r)
        if (left[r] > col[r]) return false;
      if (!check_c2(left, col, n)) return false;
    }
  }
  return true;
}

namespace {

void columns_rec(int n, int height, int next, Column& cur, std::vector<Column>& out) {
  if (static_cast<int>(cur.size()) == height) {
    if (check_c1(cur, n)) out.push_back(cur);
    return;
  }
  for (int x = next; x <= 2 * n - (height - static_cast<int>(cur.size()) - 1); ++x) {
    cur.push_back(x);
    columns_rec(n, height, x + 1, cur, out);
    cur.pop_back();
  }
}

void tableaux_rec(int n, const std::vector<int>& heights, std::vector<Column>& chosen,
                  const std::vector<const std::vector<Column>*>& candidates, std::vector<Tableau>& out) {
  const std::size_t c = chosen.size();
  if (c == heights.size()) {
    out.emplace_back(n, chosen);
    return;
  }
  for (const Column& col : *candidates[c]) {
    if (c > 0) {
      const Column& left = chosen[c - 1];
      bool rows_ok = true;
      for (std::size_t r = 0; r < col.size() && rows_ok; ++r) rows_ok = left[r] <= col[r];
      if (!rows_ok || !check_c2(left, col, n)) continue;
    }
    chosen.push_back(col);
    tableaux_rec(n, heights, chosen, candidates, out);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<Column> admissible_columns(int n, int height) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<Column>> memo;
  std::lock_guard lock(mutex);
  auto [it, inserted] = memo.try_emplace({n, height});
  if (inserted) {
    Column cur;
    columns_rec(n, height, 1, cur, it->second);
  }
  return it->second;
}

std::vector<Tableau> enumerate_crystal_base(int n, const Partition& mu) {
  if (mu.rank() != n) throw std::invalid_argument("partition rank does not match n");
  const std::vector<int> heights = mu.column_heights();
  std::vector<std::vector<Column>> per_height(static_cast<std::size_t>(n) + 1);
  std::vector<const std::vector<Column>*> candidates;
  for (int h : heights) {
    auto& slot = per_height[static_cast<std::size_t>(h)];
    if (slot.empty()) slot = admissible_columns(n, h);
    candidates.push_back(&slot);
  }
  std::vector<Tableau> out;
  std::vector<Column> chosen;
  tableaux_rec(n, heights, chosen, candidates, out);
  std::sort(out.begin(), out.end(), [](const Tableau& a, const Tableau& b) { return a.word() < b.word(); });
  return out;
}

std::vector<int> tableau_weight(const Tableau& t) {
  const int n = t.rank();
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  for (const auto& col : t.columns())
    for (int x : col) {
      if (is_barred(n, x))
        --w[static_cast<std::size_t>(bar(n, x) - 1)];
      else
        ++w[static_cast<std::size_t>(x - 1)];
    }
  return w;
}

}  // namespace gkf
