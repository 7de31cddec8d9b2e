#include "gkf/invariant_split.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace gkf {

SpaceSpec::SpaceSpec(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  if (blocks_.empty()) throw std::invalid_argument("space needs at least one block");
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.q < b.q; });
  const int max_degree = MonomialTable::get(n).max_degree();
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& b = blocks_[i];
    if (b.p < 1 || b.q < 1) throw std::invalid_argument("block exponents must be positive");
    if (b.q > max_degree) throw std::invalid_argument("polynomial degree " + std::to_string(b.q) + " exceeds the supported maximum");
    if (i > 0 && blocks_[i - 1].q == b.q) throw std::invalid_argument("blocks must have distinct polynomial degrees");
  }
  if (degree() > static_cast<int>(kMaxFactors)) throw std::invalid_argument("too many factors");
}

SpaceSpec SpaceSpec::parse(std::string_view text, int n) {
  std::vector<Block> blocks;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t star = text.find('*', start);
    std::string part;
    for (char c : text.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start))
      if (!std::isspace(static_cast<unsigned char>(c))) part += c;
    auto number = [&](std::size_t& i) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(part.data() + i, part.data() + part.size(), v);
      if (ec != std::errc{}) throw std::invalid_argument("bad space spec '" + std::string(text) + "'");
      i = static_cast<std::size_t>(ptr - part.data());
      return v;
    };
    Block b;
    std::size_t i = 0;
    if (part.rfind("Sym", 0) == 0) {
      i = 3;
      b.p = number(i);
      b.symmetric = true;
    } else if (part.rfind("L", 0) == 0) {
      i = 1;
      b.p = number(i);
    }
    if (i >= part.size() || part[i] != 'S') throw std::invalid_argument("bad space spec '" + std::string(text) + "'");
    ++i;
    b.q = number(i);
    if (i != part.size()) throw std::invalid_argument("bad space spec '" + std::string(text) + "'");
    blocks.push_back(b);
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  return SpaceSpec(n, std::move(blocks));
}

int SpaceSpec::degree() const {
  int d = 0;
  for (const auto& b : blocks_) d += b.p;
  return d;
}

int SpaceSpec::gkf_weight() const {
  int w = 0;
  for (const auto& b : blocks_) w += b.p * (b.q - 2);
  return w;
}

std::uint32_t SpaceSpec::symmetric_mask() const {
  std::uint32_t m = 0;
  for (const auto& b : blocks_)
    if (b.symmetric) m |= 1U << b.q;
  return m;
}

Integer SpaceSpec::dimension() const {
  Integer d = 1;
  for (const auto& b : blocks_) {
    const long dim = static_cast<long>(poly_dim(n_, b.q));
    d *= b.symmetric ? binomial(dim + b.p - 1, b.p) : binomial(dim, b.p);
  }
  return d;
}

std::string SpaceSpec::to_string() const {
  std::string s;
  for (const auto& b : blocks_) {
    if (!s.empty()) s += " * ";
    s += (b.symmetric ? "Sym" : "L") + std::to_string(b.p) + " S" + std::to_string(b.q);
  }
  return s;
}

SpaceSpec SpaceSpec::head() const {
  if (blocks_.size() < 2) throw std::logic_error("head of a single-block space");
  return SpaceSpec(n_, std::vector<Block>(blocks_.begin(), blocks_.end() - 1));
}

SpaceSpec SpaceSpec::tail() const { return SpaceSpec(n_, {blocks_.back()}); }

bool is_dominant(const Weight& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0) return false;
    if (i > 0 && w[i] > w[i - 1]) return false;
  }
  return true;
}

namespace {

constexpr int kOffset = 128;

std::uint64_t pack(const Weight& w, int count = 0) {
  std::uint64_t k = static_cast<std::uint64_t>(count);
  for (int x : w) k = (k << 8) | static_cast<std::uint64_t>(x + kOffset);
  return k;
}

Weight unpack(std::uint64_t k, int n) {
  Weight w(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<int>(k & 0xFF) - kOffset;
    k >>= 8;
  }
  return w;
}

Weight add(const Weight& a, const Weight& b) {
  Weight c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

Weight negate(Weight a) {
  for (auto& x : a) x = -x;
  return a;
}

/// Weight multiplicities of one block as (count = p) states.
std::unordered_map<std::uint64_t, std::uint64_t> block_weights(int n, const Block& b) {
  const auto& table = MonomialTable::get(n);
  // state key: (count << 8n) | packed weight
  std::unordered_map<std::uint64_t, std::uint64_t> states{{pack(Weight(static_cast<std::size_t>(n), 0), 0), 1}};
  const int shift = 8 * n;
  for (GenId g = table.begin_of(b.q); g < table.end_of(b.q); ++g) {
    const Weight& wg = table.weight(g);
    std::unordered_map<std::uint64_t, std::uint64_t> next = states;
    for (const auto& [key, mult] : states) {
      const int count = static_cast<int>(key >> shift);
      Weight w = unpack(key, n);
      const int max_take = b.symmetric ? b.p - count : std::min(1, b.p - count);
      for (int t = 1; t <= max_take; ++t) {
        w = add(w, wg);
        next[pack(w, count + t)] += mult;
      }
    }
    states = std::move(next);
  }
  std::unordered_map<std::uint64_t, std::uint64_t> out;
  for (const auto& [key, mult] : states)
    if (static_cast<int>(key >> shift) == b.p) out[key & ((std::uint64_t{1} << shift) - 1)] += mult;
  return out;
}

}  // namespace

std::map<Weight, std::uint64_t> weight_multiplicities(const SpaceSpec& s) {
  const int n = s.rank();
  std::unordered_map<std::uint64_t, std::uint64_t> total{{pack(Weight(static_cast<std::size_t>(n), 0)), 1}};
  for (const auto& b : s.blocks()) {
    const auto bw = block_weights(n, b);
    std::unordered_map<std::uint64_t, std::uint64_t> next;
    for (const auto& [k1, m1] : total)
      for (const auto& [k2, m2] : bw) next[pack(add(unpack(k1, n), unpack(k2, n)))] += m1 * m2;
    total = std::move(next);
  }
  std::map<Weight, std::uint64_t> out;
  for (const auto& [k, m] : total) out[unpack(k, n)] = m;
  return out;
}

namespace {

struct Enumerator {
  const SpaceSpec& spec;
  const MonomialTable& table;
  Weight target;
  std::vector<WedgeMonomial>& out;
  // For each block: generators of degree q bucketed by weight.
  std::vector<std::unordered_map<std::uint64_t, std::vector<GenId>>> by_weight;
  std::vector<int> l1_after;  // max L1 contribution of generators after position k

  int positions = 0;
  std::vector<int> block_of;  // block index per position

  void run() {
    const auto& blocks = spec.blocks();
    by_weight.resize(blocks.size());
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      for (GenId g = table.begin_of(blocks[bi].q); g < table.end_of(blocks[bi].q); ++g)
        by_weight[bi][pack(table.weight(g))].push_back(g);
      for (int k = 0; k < blocks[bi].p; ++k) block_of.push_back(static_cast<int>(bi));
    }
    positions = static_cast<int>(block_of.size());
    l1_after.assign(static_cast<std::size_t>(positions) + 1, 0);
    for (int k = positions - 1; k >= 0; --k)
      l1_after[static_cast<std::size_t>(k)] = l1_after[static_cast<std::size_t>(k) + 1] + blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(k)])].q;
    WedgeMonomial cur;
    Weight w(target.size(), 0);
    rec(0, cur, w);
  }

  void rec(int pos, WedgeMonomial& cur, Weight& w) {
    int l1 = 0;
    for (std::size_t i = 0; i < w.size(); ++i) l1 += std::abs(target[i] - w[i]);
    if (l1 > l1_after[static_cast<std::size_t>(pos)]) return;
    if (pos == positions) {
      if (l1 == 0) out.push_back(cur);
      return;
    }
    const auto& blocks = spec.blocks();
    const int bi = block_of[static_cast<std::size_t>(pos)];
    const Block& b = blocks[static_cast<std::size_t>(bi)];
    const bool first_in_block = pos == 0 || block_of[static_cast<std::size_t>(pos) - 1] != bi;
    GenId lo = table.begin_of(b.q);
    if (!first_in_block) lo = cur.f[cur.size - 1] + (b.symmetric ? 0 : 1);
    const bool last_in_block = pos + 1 == positions || block_of[static_cast<std::size_t>(pos) + 1] != bi;
    const int after_in_block = [&] {
      int k = 0;
      for (int t = pos + 1; t < positions && block_of[static_cast<std::size_t>(t)] == bi; ++t) ++k;
      return k;
    }();
    if (pos + 1 == positions) {
      Weight need(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) need[i] = target[i] - w[i];
      auto it = by_weight[static_cast<std::size_t>(bi)].find(pack(need));
      if (it == by_weight[static_cast<std::size_t>(bi)].end()) return;
      for (GenId g : it->second) {
        if (g < lo) continue;
        cur.push_back(g);
        out.push_back(cur);
        --cur.size;
      }
      return;
    }
    const GenId hi = table.end_of(b.q) - static_cast<GenId>(b.symmetric || last_in_block ? 0 : after_in_block);
    for (GenId g = lo; g < hi; ++g) {
      const Weight& wg = table.weight(g);
      cur.push_back(g);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += wg[i];
      rec(pos + 1, cur, w);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= wg[i];
      --cur.size;
    }
  }
};

}  // namespace

std::vector<WedgeMonomial> weight_subspace_basis(const SpaceSpec& s, const Weight& lambda) {
  if (lambda.size() != static_cast<std::size_t>(s.rank())) throw std::invalid_argument("weight has the wrong length");
  std::vector<WedgeMonomial> out;
  Enumerator e{s, MonomialTable::get(s.rank()), lambda, out, {}, {}, 0, {}};
  e.run();
  return out;
}

InvarianceSystem invariance_system(const SpaceSpec& s, const Weight& lambda, RootSet roots) {
  const int n = s.rank();
  const auto& table = MonomialTable::get(n);
  InvarianceSystem sys;
  sys.basis = weight_subspace_basis(s, lambda);
  const auto rvs = roots == RootSet::Simple ? simple_roots(n) : positive_roots(n);
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows;
  std::vector<std::pair<WedgeMonomial, std::int64_t>> terms;
  for (const auto& rho : rvs) {
    std::unordered_map<WedgeMonomial, std::uint32_t, WedgeMonomialHash> row_of;
    for (std::size_t j = 0; j < sys.basis.size(); ++j) {
      terms.clear();
      root_action_terms(rho, sys.basis[j], table, s.symmetric_mask(), terms);
      for (const auto& [m, c] : terms) {
        auto [it, inserted] = row_of.try_emplace(m, static_cast<std::uint32_t>(rows.size()));
        if (inserted) rows.emplace_back();
        rows[it->second].emplace_back(static_cast<std::uint32_t>(j), Rational(static_cast<long>(c)));
      }
    }
  }
  sys.matrix = SparseRationalMatrix(0, sys.basis.size());
  for (auto& r : rows) sys.matrix.add_row(std::move(r));
  return sys;
}

bool annihilated_by(const std::vector<WedgeVector>& vectors, const std::vector<RootVector>& roots) {
  for (const auto& v : vectors)
    for (const auto& rho : roots)
      if (!root_action(rho, v).is_zero()) return false;
  return true;
}

std::vector<WedgeVector> maximal_vectors(const SpaceSpec& s, const Weight& lambda, RootSet roots, const LinalgOptions& opts) {
  const auto sys = invariance_system(s, lambda, roots);
  const auto kernel = nullspace_basis(sys.matrix, opts);
  std::vector<WedgeVector> out;
  for (const auto& k : kernel) {
    std::vector<WedgeVector::Term> terms;
    for (const auto& [c, x] : k) terms.emplace_back(sys.basis[c], x);
    out.push_back(WedgeVector::from_sorted(s.rank(), s.symmetric_mask(), std::move(terms)));
  }
  if (!annihilated_by(out, positive_roots(s.rank()))) throw std::logic_error("maximal vector fails a raising root");
  return out;
}

std::vector<Weight> dominant_weights(const SpaceSpec& s) {
  std::vector<Weight> out;
  for (const auto& [w, m] : weight_multiplicities(s))
    if (m > 0 && is_dominant(w)) out.push_back(w);
  std::sort(out.rbegin(), out.rend());
  return out;
}

IrrepDecomposition tensor_power_envelope(const SpaceSpec& s) {
  const int n = s.rank();
  IrrepDecomposition env(n);
  env.add(Partition::trivial(n));
  for (const auto& b : s.blocks()) env = tensor_product(env, tensor_power(n, Partition({b.q}, n), b.p));
  return env;
}

IrrepDecomposition decompose_space(const SpaceSpec& s, const DecomposeOptions& opts, DecomposeStats* stats) {
  const int n = s.rank();
  const auto dominant = dominant_weights(s);
  const auto env = tensor_power_envelope(s);
  std::vector<Weight> candidates;
  for (const auto& w : dominant)
    if (env.multiplicity(Partition(w, n)) > 0) candidates.push_back(w);
  if (stats) {
    stats->dominant_weights = dominant.size();
    stats->candidates = candidates.size();
  }

  std::vector<std::size_t> mult(candidates.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto solve = [&](std::size_t prime_index) {
    return [&, prime_index] {
      for (std::size_t i = next++; i < candidates.size(); i = next++) {
        if (opts.exact) {
          mult[i] = maximal_vectors(s, candidates[i]).size();
        } else {
          const auto sys = invariance_system(s, candidates[i]);
          const std::size_t k = modular_nullity(sys.matrix, nth_prime(prime_index));
          mult[i] = prime_index == 0 ? k : std::min(mult[i], k);
        }
        const std::size_t d = ++done;
        if (opts.progress) {
          std::lock_guard lock(progress_mutex);
          opts.progress(d, candidates.size());
        }
      }
    };
  };
  auto run_pass = [&](std::size_t prime_index) {
    next = 0;
    done = 0;
    const unsigned threads = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(candidates.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(solve(prime_index));
    solve(prime_index)();
    for (auto& t : pool) t.join();
  };
  auto audit = [&] {
    Integer total = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      total += Integer(static_cast<unsigned long>(mult[i])) * Integer(static_cast<unsigned long>(weyl_dim(n, Partition(candidates[i], n))));
    return total == s.dimension();
  };

  run_pass(0);
  std::size_t solved = candidates.size();
  bool ok = audit();
  if (!ok && !opts.exact) {
    run_pass(1);
    solved += candidates.size();
    ok = audit();
  }
  if (stats) stats->systems_solved = solved;
  if (!ok) throw DimensionAuditError("dimension audit failed for " + s.to_string());

  IrrepDecomposition out(n);
  for (std::size_t i = 0; i < candidates.size(); ++i) out.add(Partition(candidates[i], n), mult[i]);
  return out;
}

namespace {

/// Eliminates the pivots of `basis` from v, in place.
void reduce(WedgeVector& v, const std::vector<WedgeVector>& basis, const std::vector<WedgeMonomial>& pivots) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Rational c = v.coefficient(pivots[i]);
    if (c != 0) v -= c * basis[i];
  }
}

/// Inserts v into an RREF list kept sorted by pivot. Returns false if v
/// reduces to zero.
bool rref_insert(WedgeVector v, std::vector<WedgeVector>& basis, std::vector<WedgeMonomial>& pivots) {
  reduce(v, basis, pivots);
  if (v.is_zero()) return false;
  v.normalize_leading();
  const WedgeMonomial p = v.terms().front().first;
  for (auto& b : basis) {
    const Rational c = b.coefficient(p);
    if (c != 0) b -= c * v;
  }
  const auto pos = static_cast<std::size_t>(std::lower_bound(pivots.begin(), pivots.end(), p) - pivots.begin());
  pivots.insert(pivots.begin() + static_cast<std::ptrdiff_t>(pos), p);
  basis.insert(basis.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  return true;
}

std::vector<WedgeMonomial> pivots_of(const std::vector<WedgeVector>& basis) {
  std::vector<WedgeMonomial> p;
  for (const auto& b : basis) p.push_back(b.terms().front().first);
  return p;
}

}  // namespace

std::vector<WedgeVector> rref(const std::vector<WedgeVector>& vectors) {
  std::vector<WedgeVector> basis;
  std::vector<WedgeMonomial> pivots;
  for (const auto& v : vectors) rref_insert(v, basis, pivots);
  return basis;
}

bool WeightedSpan::insert(WedgeVector v) {
  if (v.is_zero()) return false;
  const auto& table = MonomialTable::get(n_);
  const Weight mu = torus_weight(v.terms().front().first, table);
  auto& basis = basis_[mu];
  auto pivots = pivots_of(basis);
  const bool added = rref_insert(std::move(v), basis, pivots);
  if (basis.empty()) basis_.erase(mu);
  return added;
}

std::size_t WeightedSpan::dimension() const {
  std::size_t d = 0;
  for (const auto& [mu, b] : basis_) d += b.size();
  return d;
}

const std::vector<WedgeVector>& WeightedSpan::at(const Weight& mu) const {
  static const std::vector<WedgeVector> empty;
  auto it = basis_.find(mu);
  return it == basis_.end() ? empty : it->second;
}

std::vector<Rational> WeightedSpan::coordinates(const WedgeVector& v, const Weight& mu) const {
  const auto& basis = at(mu);
  std::vector<Rational> c;
  WedgeVector check(n_, symmetric_);
  for (const auto& b : basis) {
    c.push_back(v.coefficient(b.terms().front().first));
    if (c.back() != 0) check += c.back() * b;
  }
  if (!(check == v)) throw std::logic_error("vector lies outside the span");
  return c;
}

std::vector<WedgeVector> WeightedSpan::flatten() const {
  std::vector<WedgeVector> out;
  for (const auto& [mu, b] : basis_) out.insert(out.end(), b.begin(), b.end());
  return out;
}

WeightedSpan isotypic_span(const std::vector<WedgeVector>& maximal, const Weight& lambda) {
  if (maximal.empty()) throw std::invalid_argument("no maximal vectors");
  const int n = maximal.front().rank();
  WeightedSpan span(n, maximal.front().symmetric_degrees());
  const std::size_t target = maximal.size() * weyl_dim(n, Partition(lambda, n));
  std::vector<WedgeVector> queue;
  for (const auto& v : maximal)
    if (span.insert(v)) queue.push_back(v);
  const auto lowering = [&] {
    auto r = simple_roots(n);
    for (auto& x : r) x = x.opposite();
    return r;
  }();
  std::size_t head = 0;
  while (head < queue.size() && span.dimension() < target) {
    const WedgeVector u = queue[head++];
    for (const auto& f : lowering) {
      WedgeVector w = root_action(f, u);
      if (!w.is_zero() && span.insert(w)) queue.push_back(std::move(w));
    }
  }
  if (span.dimension() != target)
    throw std::logic_error("isotypic span stopped at dimension " + std::to_string(span.dimension()) + " of " + std::to_string(target));
  return span;
}

std::vector<WedgeVector> irreducible_span(const WedgeVector& v, const Weight& lambda) {
  return isotypic_span({v}, lambda).flatten();
}

std::vector<WedgeVector> invariant_pairings(const WeightedSpan& x, const WeightedSpan& y, const LinalgOptions& opts) {
  const auto xs = x.flatten();
  const auto ys = y.flatten();
  if (xs.empty() || ys.empty()) return {};
  const int n = xs.front().rank();
  const auto& table = MonomialTable::get(n);

  // Global ids of basis vectors, grouped by weight.
  std::map<Weight, std::size_t> x_offset, y_offset;
  {
    std::size_t o = 0;
    for (const auto& [mu, b] : x.by_weight()) {
      x_offset[mu] = o;
      o += b.size();
    }
    o = 0;
    for (const auto& [mu, b] : y.by_weight()) {
      y_offset[mu] = o;
      o += b.size();
    }
  }
  auto weight_of = [&](const WedgeVector& v) { return torus_weight(v.terms().front().first, table); };

  struct Unknown {
    std::size_t xs, ys;
  };
  std::vector<Unknown> unknowns;
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> unknown_index;
  for (const auto& [mu, bx] : x.by_weight()) {
    const Weight nu = negate(mu);
    const auto& by = y.at(nu);
    for (std::size_t s = 0; s < bx.size(); ++s)
      for (std::size_t t = 0; t < by.size(); ++t) {
        unknown_index[{x_offset[mu] + s, y_offset[nu] + t}] = static_cast<std::uint32_t>(unknowns.size());
        unknowns.push_back({x_offset[mu] + s, y_offset[nu] + t});
      }
  }
  if (unknowns.empty()) return {};

  // Coordinates of ρ·x_s and ρ·y_t in the spans.
  auto images = [&](const WeightedSpan& span, const std::vector<WedgeVector>& flat, const std::map<Weight, std::size_t>& offset,
                    const RootVector& rho) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> out(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const WedgeVector img = root_action(rho, flat[i]);
      if (img.is_zero()) continue;
      const Weight mu = weight_of(img);
      auto off = offset.find(mu);
      if (off == offset.end()) throw std::logic_error("span is not closed under a raising root");
      const auto c = span.coordinates(img, mu);
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) out[i].emplace_back(off->second + k, c[k]);
    }
    return out;
  };

  SparseRationalMatrix m(0, unknowns.size());
  for (const auto& rho : simple_roots(n)) {
    const auto ex = images(x, xs, x_offset, rho);
    const auto ey = images(y, ys, y_offset, rho);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::uint32_t, Rational>>> rows;
    for (std::uint32_t u = 0; u < unknowns.size(); ++u) {
      const auto [s, t] = unknowns[u];
      for (const auto& [s2, c] : ex[s]) rows[{s2, t}].emplace_back(u, c);
      for (const auto& [t2, c] : ey[t]) rows[{s, t2}].emplace_back(u, c);
    }
    for (auto& [key, r] : rows) m.add_row(std::move(r));
  }
  const auto kernel = nullspace_basis(m, opts);

  std::vector<WedgeVector> out;
  for (const auto& k : kernel) {
    WedgeAccumulator acc(n, xs.front().symmetric_degrees() | ys.front().symmetric_degrees());
    for (const auto& [u, c] : k) {
      const auto& xv = xs[unknowns[u].xs];
      const auto& yv = ys[unknowns[u].ys];
      for (const auto& [mx, cx] : xv.terms())
        for (const auto& [my, cy] : yv.terms()) {
          WedgeMonomial mm = mx;
          for (GenId g : my.factors()) mm.push_back(g);
          acc.add(mm, c * cx * cy);
        }
    }
    out.push_back(acc.finish());
  }
  return rref(out);
}

}  // namespace gkf
