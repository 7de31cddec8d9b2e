#include "gkf/tensor_decomp.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

namespace gkf {

void IrrepDecomposition::add(const Partition& lambda, std::uint64_t mult) {
  if (lambda.rank() != rank_) throw std::invalid_argument("summand rank does not match decomposition rank");
  if (mult == 0) return;
  entries_[lambda] += mult;
}

std::uint64_t IrrepDecomposition::multiplicity(const Partition& lambda) const {
  auto it = entries_.find(lambda);
  return it == entries_.end() ? 0 : it->second;
}

std::uint64_t IrrepDecomposition::dimension() const {
  std::uint64_t d = 0;
  for (const auto& [lambda, mult] : entries_) d += mult * weyl_dim(rank_, lambda);
  return d;
}

std::uint64_t IrrepDecomposition::summand_count() const {
  std::uint64_t c = 0;
  for (const auto& [lambda, mult] : entries_) c += mult;
  return c;
}

std::vector<std::pair<Partition, std::uint64_t>> IrrepDecomposition::sorted_descending() const {
  std::vector<std::pair<Partition, std::uint64_t>> out(entries_.begin(), entries_.end());
  std::reverse(out.begin(), out.end());
  return out;
}

std::string IrrepDecomposition::to_string() const {
  if (entries_.empty()) return "0";
  std::string s;
  for (const auto& [lambda, mult] : sorted_descending()) {
    if (!s.empty()) s += " + ";
    if (mult != 1) s += std::to_string(mult) + " ";
    s += "V[" + lambda.to_string() + "]";
  }
  return s;
}

std::string IrrepDecomposition::to_json() const {
  nlohmann::json j;
  j["rank"] = rank_;
  j["summands"] = nlohmann::json::array();
  for (const auto& [lambda, mult] : sorted_descending())
    j["summands"].push_back({{"lambda", lambda.parts()}, {"mult", mult}});
  return j.dump();
}

IrrepDecomposition IrrepDecomposition::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  IrrepDecomposition d(j.at("rank").get<int>());
  for (const auto& s : j.at("summands"))
    d.add(Partition(s.at("lambda").get<std::vector<int>>(), d.rank()), s.at("mult").get<std::uint64_t>());
  return d;
}

std::optional<std::vector<int>> apply_letter(std::vector<int> diagram, int letter, int n) {
  if (letter < 1 || letter > 2 * n) throw std::invalid_argument("letter out of range");
  const std::size_t row = static_cast<std::size_t>(is_barred(n, letter) ? bar(n, letter) - 1 : letter - 1);
  if (diagram.size() < static_cast<std::size_t>(n)) diagram.resize(static_cast<std::size_t>(n), 0);
  diagram[row] += is_barred(n, letter) ? -1 : 1;
  if (!is_partition(diagram)) return std::nullopt;
  return diagram;
}

std::optional<Partition> apply_tableau(const Tableau& t, const Partition& lambda) {
  const int n = t.rank();
  if (lambda.rank() != n) throw std::invalid_argument("partition rank does not match tableau rank");
  std::vector<int> diagram = lambda.parts();
  const auto& cols = t.columns();
  for (auto col = cols.rbegin(); col != cols.rend(); ++col) {
    for (int letter : *col) {
      auto next = apply_letter(std::move(diagram), letter, n);
      if (!next) return std::nullopt;
      diagram = std::move(*next);
    }
  }
  return Partition(std::move(diagram), n);
}

namespace {

const std::vector<Tableau>& cached_crystal_base(int n, const Partition& mu) {
  static std::mutex mutex;
  static std::map<std::pair<int, Partition>, std::vector<Tableau>> memo;
  std::lock_guard lock(mutex);
  auto [it, inserted] = memo.try_emplace({n, mu});
  if (inserted) it->second = enumerate_crystal_base(n, mu);
  return it->second;
}

}  // namespace

IrrepDecomposition tensor_decompose(int n, const Partition& lambda, const Partition& mu) {
  if (lambda.rank() != n || mu.rank() != n) throw std::invalid_argument("partition rank does not match n");
  IrrepDecomposition out(n);
  for (const Tableau& t : cached_crystal_base(n, mu))
    if (auto nu = apply_tableau(t, lambda)) out.add(*nu);
  return out;
}

IrrepDecomposition tensor_product(const IrrepDecomposition& w, const IrrepDecomposition& z) {
  if (w.rank() != z.rank()) throw std::invalid_argument("rank mismatch");
  IrrepDecomposition out(w.rank());
  for (const auto& [lw, mw] : w.entries())
    for (const auto& [lz, mz] : z.entries()) {
      const auto part = tensor_decompose(w.rank(), lw, lz);
      for (const auto& [nu, m] : part.entries()) out.add(nu, mw * mz * m);
    }
  return out;
}

IrrepDecomposition tensor_power(int n, const Partition& mu, int p) {
  IrrepDecomposition out(n);
  out.add(Partition::trivial(n));
  IrrepDecomposition single(n);
  single.add(mu);
  for (int i = 0; i < p; ++i) out = tensor_product(out, single);
  return out;
}

Tableau canonical_tableau_T(const Partition& mu) {
  const int n = mu.rank();
  std::vector<std::vector<int>> rows;
  for (int k = 1; k <= n; ++k)
    if (mu[k - 1] > 0) rows.emplace_back(static_cast<std::size_t>(mu[k - 1]), k);
  return Tableau::from_rows(n, rows);
}

Tableau canonical_tableau_That(const Partition& mu) {
  const int n = mu.rank();
  std::vector<Column> cols;
  for (int h : mu.column_heights()) {
    Column col;
    for (int j = h; j >= 1; --j) col.push_back(bar(n, j));
    cols.push_back(std::move(col));
  }
  return Tableau(n, std::move(cols));
}

std::uint64_t trivial_multiplicity(const IrrepDecomposition& w, const IrrepDecomposition& z) {
  if (w.rank() != z.rank()) throw std::invalid_argument("rank mismatch");
  std::uint64_t total = 0;
  for (const auto& [lambda, mult] : w.entries()) total += mult * z.multiplicity(lambda);
  return total;
}

std::uint64_t trivial_multiplicity_with_S(const IrrepDecomposition& w, int h) {
  std::vector<int> parts(static_cast<std::size_t>(w.rank()), 0);
  parts[0] = h;
  return w.multiplicity(Partition(std::move(parts), w.rank()));
}

}  // namespace gkf
