#include "gkf/gkf_complex.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "gkf/partition.hpp"
#include "gkf/tensor_decomp.hpp"

namespace gkf {

CochainType::CochainType(std::map<int, int> k) {
  for (const auto& [j, c] : k) {
    if (j < 3) throw std::invalid_argument("generator degree below 3");
    if (c < 0) throw std::invalid_argument("negative multiplicity");
    if (c > 0) k_[j] = c;
  }
}

int CochainType::k(int j) const {
  auto it = k_.find(j);
  return it == k_.end() ? 0 : it->second;
}

int CochainType::degree() const {
  int m = 0;
  for (const auto& [j, c] : k_) m += c;
  return m;
}

int CochainType::weight() const {
  int w = 0;
  for (const auto& [j, c] : k_) w += c * (j - 2);
  return w;
}

SpaceSpec CochainType::space(int n) const {
  std::vector<Block> blocks;
  for (const auto& [j, c] : k_) blocks.push_back({j, c, false});
  return SpaceSpec(n, std::move(blocks));
}

std::string CochainType::to_string() const {
  std::string out;
  for (const auto& [j, c] : k_) {
    if (!out.empty()) out += ',';
    out += "k" + std::to_string(j) + "=" + std::to_string(c);
  }
  return out;
}

std::vector<CochainType> enumerate_cochain_types(int w, int m) {
  std::vector<CochainType> out;
  if (w < 0 || m < 0 || w % 2 != 0) return out;
  std::map<int, int> k;
  // Largest multiplicity of the smallest degree first gives the documented order.
  auto rec = [&](auto&& self, int j, int left_m, int left_w) -> void {
    if (left_m == 0) {
      if (left_w == 0) out.emplace_back(k);
      return;
    }
    if (left_w < left_m * (j - 2)) return;
    for (int c = left_m; c >= 0; --c) {
      if (c * (j - 2) > left_w) continue;
      if (c > 0) k[j] = c;
      self(self, j + 1, left_m - c, left_w - c * (j - 2));
      k.erase(j);
    }
  };
  if (m == 0) {
    if (w == 0) out.emplace_back();
    return out;
  }
  rec(rec, 3, m, w);
  return out;
}

std::optional<std::size_t> CochainSpace::dimension() const {
  std::size_t d = 0;
  for (const auto& s : summands_) {
    if (!s.dimension) return std::nullopt;
    d += *s.dimension;
  }
  return d;
}

bool CochainSpace::has_basis() const {
  return std::all_of(summands_.begin(), summands_.end(),
                     [](const CochainSummand& s) { return s.dimension && s.basis.size() == *s.dimension; });
}

std::vector<WedgeVector> CochainSpace::basis() const {
  std::vector<WedgeVector> out;
  for (const auto& s : summands_) out.insert(out.end(), s.basis.begin(), s.basis.end());
  return out;
}

std::optional<std::uint64_t> crystal_trivial_count(const SpaceSpec& s) {
  const int n = s.rank();
  IrrepDecomposition acc(n);
  acc.add(Partition::trivial(n));
  for (const auto& b : s.blocks()) {
    if (b.p != 1) return std::nullopt;
    IrrepDecomposition f(n);
    f.add(Partition({b.q}, n));
    acc = tensor_product(acc, f);
  }
  return acc.multiplicity(Partition::trivial(n));
}

namespace {

void report(const ComplexOptions& opts, const std::string& msg) {
  if (opts.progress) opts.progress(msg);
}

std::vector<WedgeVector> cached_maximal(const SpaceSpec& s, const Weight& lambda, const ComplexOptions& opts) {
  const std::string key = Cache::key("maxvec", s.rank(), s.to_string(), lambda);
  if (opts.cache) {
    if (auto hit = opts.cache->load_vectors(key)) return *hit;
  }
  auto v = maximal_vectors(s, lambda, RootSet::Simple, LinalgOptions{opts.threads});
  if (opts.cache) opts.cache->store_vectors(key, v);
  return v;
}

std::vector<RootVector> simple_raise_and_lower(int n) {
  auto roots = simple_roots(n);
  const std::size_t k = roots.size();
  for (std::size_t i = 0; i < k; ++i) roots.push_back(roots[i].opposite());
  return roots;
}

std::vector<WedgeVector> pairing_basis(const SpaceSpec& s, const ComplexOptions& opts) {
  const int n = s.rank();
  const SpaceSpec head = s.head();
  const SpaceSpec tail = s.tail();
  std::vector<Weight> support;
  if (tail.blocks().front().p == 1) {
    support.push_back(Partition({tail.blocks().front().q}, n).parts());
  } else {
    DecomposeOptions d;
    d.threads = opts.threads;
    const auto tail_irreps = decompose_space(tail, d);
    for (const auto& [lambda, mult] : tail_irreps.entries())
      if (mult > 0) support.push_back(lambda.parts());
  }
  std::vector<WedgeVector> all;
  for (const auto& lambda : support) {
    const auto mh = cached_maximal(head, lambda, opts);
    if (mh.empty()) continue;
    const auto mt = cached_maximal(tail, lambda, opts);
    if (mt.empty()) continue;
    report(opts, "pairing " + head.to_string() + " with " + tail.to_string() + " at " + Partition(lambda, n).to_string());
    const auto x = isotypic_span(mh, lambda);
    const auto y = isotypic_span(mt, lambda);
    auto p = invariant_pairings(x, y, LinalgOptions{opts.threads});
    all.insert(all.end(), p.begin(), p.end());
  }
  return rref(all);
}

CochainSummand build_summand(int n, const CochainType& type, const ComplexOptions& opts) {
  CochainSummand out;
  out.type = type;
  const SpaceSpec s = type.space(n);
  const Weight zero(n, 0);
  const auto wm = weight_multiplicities(s);
  auto it = wm.find(zero);
  out.weight_zero_monomials = it == wm.end() ? 0 : it->second;
  if (out.weight_zero_monomials == 0) {
    out.dimension = 0;
    out.method = "empty";
    return out;
  }
  const bool single = s.blocks().size() == 1;
  if (single || opts.direct) {
    if (out.weight_zero_monomials > kDirectLimit && !opts.extended) {
      out.method = "skipped";
      return out;
    }
    report(opts, "solving " + s.to_string() + " at weight 0 (" + std::to_string(out.weight_zero_monomials) + " unknowns)");
    out.basis = rref(cached_maximal(s, zero, opts));
    out.method = single ? "maximal" : "direct";
  } else {
    const std::string key = Cache::key("pairing", n, s.to_string(), zero);
    std::optional<std::vector<WedgeVector>> hit;
    if (opts.cache) hit = opts.cache->load_vectors(key);
    if (hit) {
      out.basis = std::move(*hit);
    } else {
      out.basis = pairing_basis(s, opts);
      if (opts.cache) opts.cache->store_vectors(key, out.basis);
    }
    out.method = "pairing";
  }
  out.dimension = out.basis.size();
  if (!annihilated_by(out.basis, simple_raise_and_lower(n)))
    throw std::logic_error("cochain basis of " + s.to_string() + " is not sp-invariant");
  if (auto c = crystal_trivial_count(s); c && *c != out.basis.size())
    throw DimensionAuditError("crystal count " + std::to_string(*c) + " disagrees with " + std::to_string(out.basis.size()) +
                              " invariants of " + s.to_string());
  return out;
}

}  // namespace

CochainSpace build_relative_cochain_space(int n, int w, int m, const ComplexOptions& opts) {
  CochainSpace space(n, w, m);
  for (const auto& t : enumerate_cochain_types(w, m)) space.summands().push_back(build_summand(n, t, opts));
  return space;
}

const std::vector<CoboundaryTerm>& generator_coboundary(int n, GenId a) {
  static std::mutex mutex;
  static std::unordered_map<std::uint64_t, std::vector<CoboundaryTerm>> memo;
  const std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) | a;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }

  const auto& table = MonomialTable::get(n);
  const Exponents& A = table.exponents(a);
  const int h = table.degree(a);
  const int vars = 2 * n;
  std::map<std::pair<GenId, GenId>, std::int64_t> acc;
  if (h >= 4) {
    // Coefficient of x^A/A! in {x^B/B!, x^C/C!} over B = P + e_t, C = A − P + e_t̄.
    Exponents P(vars, 0);
    auto binom = [](int a, int b) {
      std::int64_t r = 1;
      for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
      return r;
    };
    auto visit = [&](auto&& self, int j, int size) -> void {
      if (j == vars) {
        if (size < 2 || size > h - 2) return;
        std::int64_t weight = 1;
        for (int v = 0; v < vars; ++v) weight *= binom(A[v], P[v]);
        for (int t = 0; t < vars; ++t) {
          Exponents B = P;
          Exponents C(vars);
          for (int v = 0; v < vars; ++v) C[v] = A[v] - P[v];
          ++B[t];
          ++C[vars - 1 - t];
          const GenId b = table.id(B), c = table.id(C);
          if (b >= c) continue;
          const std::int64_t s = t < n ? 1 : -1;
          acc[{b, c}] -= s * weight;
        }
        return;
      }
      for (int p = 0; p <= A[j]; ++p) {
        P[j] = p;
        self(self, j + 1, size + p);
      }
      P[j] = 0;
    };
    visit(visit, 0, 0);
  }
  std::vector<CoboundaryTerm> terms;
  for (const auto& [bc, c] : acc)
    if (c != 0) terms.push_back({bc.first, bc.second, c});

  std::lock_guard lock(mutex);
  return memo.try_emplace(key, std::move(terms)).first->second;
}

WedgeVector coboundary(const WedgeVector& v) {
  if (v.symmetric_degrees() != 0) throw std::invalid_argument("coboundary needs an exterior vector");
  const int n = v.rank();
  const auto& table = MonomialTable::get(n);
  WedgeAccumulator acc(n);
  for (const auto& [m, c] : v.terms()) {
    if (m.size + 1 > static_cast<int>(kMaxFactors)) throw std::length_error("too many factors");
    for (std::uint8_t k = 0; k < m.size; ++k) {
      const auto& terms = generator_coboundary(n, m.f[k]);
      const int base = (k % 2 == 0) ? 1 : -1;
      for (const auto& t : terms) {
        WedgeMonomial out;
        for (std::uint8_t i = 0; i < k; ++i) out.push_back(m.f[i]);
        out.push_back(t.b);
        out.push_back(t.c);
        for (std::uint8_t i = k + 1; i < m.size; ++i) out.push_back(m.f[i]);
        const int sign = canonicalize(out, table);
        if (sign == 0) continue;
        acc.add(out, c * Rational(base * sign * t.coefficient));
      }
    }
  }
  return acc.finish();
}

SparseRationalMatrix coboundary_matrix(const CochainSpace& src, const CochainSpace& dst) {
  if (dst.degree() != src.degree() + 1 || dst.weight() != src.weight()) throw std::invalid_argument("spaces are not consecutive");
  if (!src.has_basis() || !dst.has_basis()) throw std::invalid_argument("coboundary_matrix needs explicit bases");
  const auto sb = src.basis();
  const auto db = dst.basis();
  std::map<WedgeMonomial, std::size_t> pivot;
  for (std::size_t i = 0; i < db.size(); ++i) pivot.emplace(db[i].terms().front().first, i);

  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows(db.size());
  for (std::size_t j = 0; j < sb.size(); ++j) {
    const WedgeVector img = coboundary(sb[j]);
    WedgeVector rebuilt(img.rank());
    for (const auto& [m, c] : img.terms()) {
      auto it = pivot.find(m);
      if (it == pivot.end()) continue;
      rows[it->second].emplace_back(static_cast<std::uint32_t>(j), c);
      rebuilt += c * db[it->second];
    }
    if (!(rebuilt == img)) throw std::logic_error("coboundary image leaves the target span");
  }
  SparseRationalMatrix out(0, sb.size());
  for (auto& r : rows) out.add_row(std::move(r));
  return out;
}

std::size_t coboundary_rank(const std::vector<WedgeVector>& basis, const LinalgOptions& opts) {
  std::map<WedgeMonomial, std::uint32_t> column;
  std::vector<WedgeVector> images;
  for (const auto& v : basis) {
    images.push_back(coboundary(v));
    for (const auto& [m, c] : images.back().terms()) column.emplace(m, 0);
  }
  if (column.empty()) return 0;
  std::uint32_t next = 0;
  for (auto& [m, idx] : column) idx = next++;
  SparseRationalMatrix mat(0, column.size());
  for (const auto& img : images) {
    std::vector<std::pair<std::uint32_t, Rational>> row;
    for (const auto& [m, c] : img.terms()) row.emplace_back(column.at(m), c);
    mat.add_row(std::move(row));
  }
  return rank(mat, opts);
}

ComplexReport betti_numbers(int n, int w, const ComplexOptions& opts) {
  if (w < 0 || w % 2 != 0) throw std::invalid_argument("weight must be even and non-negative");
  ComplexReport r;
  r.n = n;
  r.w = w;
  r.strict_grading = opts.strict_grading;
  const int top = w;
  r.dims.assign(top + 1, std::nullopt);
  r.ranks.assign(top + 1, std::nullopt);
  r.betti.assign(top + 1, std::nullopt);
  r.spaces.resize(top + 1);
  r.dims[0] = (opts.strict_grading && w > 0) ? 0 : 1;
  r.spaces[0] = CochainSpace(n, w, 0);
  for (int j = 1; j <= top; ++j) {
    report(opts, "building C^" + std::to_string(j) + " at weight " + std::to_string(w));
    r.spaces[j] = build_relative_cochain_space(n, w, j, opts);
    r.dims[j] = r.spaces[j].dimension();
  }

  // d₀ vanishes on constants and C^{w+1} is zero.
  r.ranks[0] = 0;
  for (int j = 1; j <= top; ++j) {
    if (r.dims[j] == std::size_t{0}) {
      r.ranks[j] = 0;
      continue;
    }
    if (j == top) {
      r.ranks[j] = 0;
      continue;
    }
    if (!r.spaces[j].has_basis()) continue;
    report(opts, "rank of d_" + std::to_string(j));
    const std::size_t rk = coboundary_rank(r.spaces[j].basis(), LinalgOptions{opts.threads});
    if (r.dims[j + 1] == std::size_t{0} && rk != 0) throw std::logic_error("coboundary maps into a zero cochain space");
    if (r.dims[j + 1] && rk > *r.dims[j + 1]) throw std::logic_error("coboundary rank exceeds the target dimension");
    r.ranks[j] = rk;
  }

  for (int j = 0; j <= top; ++j) {
    const std::optional<std::size_t> prev = j == 0 ? std::optional<std::size_t>(0) : r.ranks[j - 1];
    if (r.dims[j] && r.ranks[j] && prev)
      r.betti[j] = static_cast<long>(*r.dims[j]) - static_cast<long>(*r.ranks[j]) - static_cast<long>(*prev);
  }

  long e = 0, ed = 0;
  bool ok_b = true, ok_d = true;
  for (int j = 1; j <= top; ++j) {
    const long sign = j % 2 == 0 ? 1 : -1;
    if (r.betti[j]) e += sign * *r.betti[j];
    else ok_b = false;
    if (r.dims[j]) ed += sign * static_cast<long>(*r.dims[j]);
    else ok_d = false;
  }
  if (ok_b) r.euler = e;
  if (ok_d) r.euler_from_dims = ed;
  if (r.euler && r.euler_from_dims && *r.euler != *r.euler_from_dims) throw std::logic_error("Euler characteristics disagree");
  return r;
}

std::optional<long> euler_characteristic(int n, int w, const ComplexOptions& opts) { return betti_numbers(n, w, opts).euler; }

}  // namespace gkf
