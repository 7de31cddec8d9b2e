#include "gkf/partition.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "gkf/rational.hpp"

namespace gkf {

bool is_partition(const std::vector<int>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) return false;
    if (i > 0 && v[i] > v[i - 1]) return false;
  }
  return true;
}

Partition::Partition(std::vector<int> parts, int rank) : parts_(std::move(parts)) {
  if (rank < 1) throw std::invalid_argument("partition rank must be positive");
  while (parts_.size() > static_cast<std::size_t>(rank) && parts_.back() == 0) parts_.pop_back();
  if (parts_.size() > static_cast<std::size_t>(rank))
    throw std::invalid_argument("partition has more than " + std::to_string(rank) + " nonzero parts");
  parts_.resize(static_cast<std::size_t>(rank), 0);
  if (!is_partition(parts_)) throw std::invalid_argument("not a partition: " + to_string());
}

Partition Partition::parse(std::string_view text, int rank) {
  std::vector<int> parts;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_space();
  if (i < text.size() && (text[i] == '[' || text[i] == '(')) ++i;
  while (true) {
    skip_space();
    if (i >= text.size() || text[i] == ']' || text[i] == ')') break;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{}) throw std::invalid_argument("cannot parse partition '" + std::string(text) + "'");
    parts.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
    skip_space();
    if (i < text.size() && text[i] == ',') ++i;
  }
  return Partition(std::move(parts), rank);
}

int Partition::size() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

int Partition::length() const {
  int l = 0;
  for (int p : parts_)
    if (p > 0) ++l;
  return l;
}

std::vector<int> Partition::column_heights() const {
  std::vector<int> heights;
  if (parts_.empty()) return heights;
  for (int c = 1; c <= parts_.front(); ++c) {
    int h = 0;
    for (int p : parts_)
      if (p >= c) ++h;
    heights.push_back(h);
  }
  return heights;
}

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

Partition ColumnDecomposition::to_partition() const {
  const int n = static_cast<int>(counts.size());
  std::vector<int> mu(counts.size(), 0);
  int running = 0;
  for (int k = n; k >= 1; --k) {
    running += p(k);
    mu[static_cast<std::size_t>(k - 1)] = running;
  }
  return Partition(std::move(mu), n);
}

ColumnDecomposition column_decomposition(const Partition& lambda) {
  const int n = lambda.rank();
  ColumnDecomposition d;
  d.counts.assign(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n; ++i) {
    const int next = i < n ? lambda[i] : 0;
    d.counts[static_cast<std::size_t>(i - 1)] = lambda[i - 1] - next;
  }
  return d;
}

std::uint64_t weyl_dim(int n, const Partition& lambda) {
  if (lambda.rank() != n) throw std::invalid_argument("partition rank does not match n");
  // l_i = λ_i + n − i + 1 and m_i = n − i + 1 (ρ-shifted coordinates of type C).
  Integer num = 1, den = 1;
  std::vector<long> l(static_cast<std::size_t>(n)), m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    l[static_cast<std::size_t>(i)] = lambda[i] + n - i;
    m[static_cast<std::size_t>(i)] = n - i;
  }
  for (int i = 0; i < n; ++i) {
    num *= l[static_cast<std::size_t>(i)];
    den *= m[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      const long li = l[static_cast<std::size_t>(i)], lj = l[static_cast<std::size_t>(j)];
      const long mi = m[static_cast<std::size_t>(i)], mj = m[static_cast<std::size_t>(j)];
      num *= li * li - lj * lj;
      den *= mi * mi - mj * mj;
    }
  }
  if (num % den != 0) throw std::logic_error("Weyl dimension is not an integer");
  return to_u64(Integer(num / den));
}

std::uint64_t weyl_dim(int n, const std::vector<int>& parts) { return weyl_dim(n, Partition(parts, n)); }

std::uint64_t poly_dim(int n, int k) {
  if (k < 0) throw std::invalid_argument("degree must be non-negative");
  return to_u64(binomial(2L * n - 1 + k, k));
}

namespace {

void extend(int n, int max_size, std::vector<int>& cur, int remaining, int cap, std::vector<Partition>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.emplace_back(cur, n);
    return;
  }
  for (int v = 0; v <= std::min(cap, remaining); ++v) {
    cur.push_back(v);
    extend(n, max_size, cur, remaining - v, v, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_up_to(int n, int max_size) {
  std::vector<Partition> out;
  std::vector<int> cur;
  extend(n, max_size, cur, max_size, max_size, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gkf
