#include "gkf/poly_dual.hpp"

#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gkf {

namespace {

void monomials_of_degree(int vars, int degree, Exponents& cur, std::vector<Exponents>& out) {
  const int pos = static_cast<int>(cur.size());
  if (pos == vars - 1) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= degree; ++a) {
    cur.push_back(a);
    monomials_of_degree(vars, degree - a, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Weight monomial_weight(std::span<const int> a) {
  const std::size_t n = a.size() / 2;
  Weight w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = a[i] - a[2 * n - 1 - i];
  return w;
}

MonomialTable::MonomialTable(int n, int max_degree) : n_(n), max_degree_(max_degree) {
  if (n < 1 || 2 * n > 16) throw std::invalid_argument("unsupported rank");
  if (max_degree > 15) throw std::invalid_argument("degree too large for the monomial table");
  for (int d = 0; d <= max_degree; ++d) {
    degree_start_.push_back(static_cast<GenId>(exps_.size()));
    std::vector<Exponents> level;
    Exponents cur;
    monomials_of_degree(2 * n, d, cur, level);
    std::sort(level.begin(), level.end());
    for (auto& a : level) {
      index_.emplace(key(a), static_cast<GenId>(exps_.size()));
      weight_.push_back(monomial_weight(a));
      degree_.push_back(d);
      exps_.push_back(std::move(a));
    }
  }
  degree_start_.push_back(static_cast<GenId>(exps_.size()));
}

const MonomialTable& MonomialTable::get(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<MonomialTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[n];
  if (!slot) slot = std::make_unique<MonomialTable>(n, n <= 3 ? 12 : 8);
  return *slot;
}

std::uint64_t MonomialTable::key(std::span<const int> a) const {
  std::uint64_t k = 0;
  for (int x : a) k = (k << 4) | static_cast<std::uint64_t>(x);
  return k;
}

bool MonomialTable::contains(std::span<const int> a) const {
  if (a.size() != static_cast<std::size_t>(2 * n_)) return false;
  int d = 0;
  for (int x : a) {
    if (x < 0) return false;
    d += x;
  }
  return d <= max_degree_;
}

GenId MonomialTable::id(std::span<const int> a) const {
  if (!contains(a)) throw std::out_of_range("monomial outside the table");
  return index_.at(key(a));
}

GenId MonomialTable::begin_of(int d) const {
  if (d < 0 || d > max_degree_) throw std::out_of_range("degree outside the table");
  return degree_start_[static_cast<std::size_t>(d)];
}

GenId MonomialTable::end_of(int d) const {
  if (d < 0 || d > max_degree_) throw std::out_of_range("degree outside the table");
  return degree_start_[static_cast<std::size_t>(d) + 1];
}

std::string MonomialTable::format(GenId g) const {
  const auto& a = exps_[g];
  const bool wide = std::any_of(a.begin(), a.end(), [](int x) { return x > 9; });
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (wide && i) s += '.';
    s += std::to_string(a[i]);
  }
  return s;
}

GenId MonomialTable::parse(std::string_view text) const {
  Exponents a;
  if (text.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t dot = text.find('.', start);
      const auto item = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
      int v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || ptr != item.data() + item.size()) throw std::invalid_argument("bad monomial");
      a.push_back(v);
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad monomial '" + std::string(text) + "'");
      a.push_back(c - '0');
    }
  }
  if (a.size() != static_cast<std::size_t>(2 * n_)) throw std::invalid_argument("monomial has the wrong length");
  return id(a);
}

WedgeMonomial::WedgeMonomial(std::initializer_list<GenId> ids) {
  for (GenId g : ids) push_back(g);
}

WedgeMonomial WedgeMonomial::from(std::span<const GenId> ids) {
  WedgeMonomial m;
  for (GenId g : ids) m.push_back(g);
  return m;
}

void WedgeMonomial::push_back(GenId g) {
  if (size >= kMaxFactors) throw std::length_error("too many wedge factors");
  f[size++] = g;
}

std::size_t WedgeMonomialHash::operator()(const WedgeMonomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < m.size; ++i) {
    h ^= m.f[i];
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

int canonicalize(WedgeMonomial& m, const MonomialTable& table, std::uint32_t symmetric_degrees) {
  auto exterior = [&](GenId g) { return ((symmetric_degrees >> table.degree(g)) & 1U) == 0; };
  int sign = 1;
  for (std::size_t i = 1; i < m.size; ++i) {
    const GenId x = m.f[i];
    std::size_t j = i;
    while (j > 0 && m.f[j - 1] > x) {
      if (exterior(x) && exterior(m.f[j - 1])) sign = -sign;
      m.f[j] = m.f[j - 1];
      --j;
    }
    m.f[j] = x;
  }
  for (std::size_t i = 1; i < m.size; ++i)
    if (m.f[i] == m.f[i - 1] && exterior(m.f[i])) return 0;
  return sign;
}

Weight torus_weight(const WedgeMonomial& m, const MonomialTable& table) {
  Weight w(static_cast<std::size_t>(table.rank()), 0);
  for (GenId g : m.factors()) {
    const auto& wg = table.weight(g);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += wg[i];
  }
  return w;
}

int gkf_weight(const WedgeMonomial& m, const MonomialTable& table) {
  int w = 0;
  for (GenId g : m.factors()) w += table.degree(g) - 2;
  return w;
}

Rational WedgeVector::coefficient(const WedgeMonomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const WedgeMonomial& k) { return t.first < k; });
  if (it == terms_.end() || !(it->first == m)) return 0;
  return it->second;
}

WedgeVector WedgeVector::from_sorted(int n, std::uint32_t symmetric_degrees, std::vector<Term> terms) {
  WedgeVector v(n, symmetric_degrees);
  v.terms_ = std::move(terms);
  return v;
}

namespace {

std::vector<WedgeVector::Term> merge_terms(const std::vector<WedgeVector::Term>& a, const std::vector<WedgeVector::Term>& b, int sign) {
  std::vector<WedgeVector::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, sign > 0 ? Rational(b[j].second) : Rational(-b[j].second));
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(a[i].second + b[j].second) : Rational(a[i].second - b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

WedgeVector& WedgeVector::operator+=(const WedgeVector& other) {
  if (terms_.empty()) {
    n_ = other.n_;
    symmetric_ = other.symmetric_;
  }
  terms_ = merge_terms(terms_, other.terms_, 1);
  return *this;
}

WedgeVector& WedgeVector::operator-=(const WedgeVector& other) {
  if (terms_.empty()) {
    n_ = other.n_;
    symmetric_ = other.symmetric_;
  }
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

WedgeVector& WedgeVector::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

void WedgeVector::normalize_leading() {
  if (terms_.empty()) return;
  const Rational inv = 1 / terms_.front().second;
  *this *= inv;
}

std::string WedgeVector::to_string() const {
  if (terms_.empty()) return "0";
  const auto& table = MonomialTable::get(n_);
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const Rational a = abs(c);
    if (a != 1) s += gkf::to_string(a) + "*";
    s += "w(";
    for (std::size_t i = 0; i < m.size; ++i) {
      if (i) s += ',';
      s += table.format(m.f[i]);
    }
    s += ")";
  }
  return s;
}

void WedgeAccumulator::add(const WedgeMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void WedgeAccumulator::add_raw(WedgeMonomial m, const Rational& c, const MonomialTable& table) {
  const int sign = canonicalize(m, table, symmetric_);
  if (sign == 0 || c == 0) return;
  add(m, sign > 0 ? c : Rational(-c));
}

WedgeVector WedgeAccumulator::finish() {
  std::vector<WedgeVector::Term> terms;
  terms.reserve(acc_.size());
  for (auto& [m, c] : acc_)
    if (c != 0) terms.emplace_back(m, std::move(c));
  acc_.clear();
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return WedgeVector::from_sorted(n_, symmetric_, std::move(terms));
}

WedgeVector wedge(const WedgeVector& a, const WedgeVector& b) {
  if (a.rank() != b.rank() && !a.is_zero() && !b.is_zero()) throw std::invalid_argument("rank mismatch in wedge");
  const int n = a.is_zero() ? b.rank() : a.rank();
  const auto& table = MonomialTable::get(n);
  WedgeAccumulator acc(n, a.symmetric_degrees() | b.symmetric_degrees());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      WedgeMonomial m = ma;
      for (GenId g : mb.factors()) m.push_back(g);
      acc.add_raw(m, ca * cb, table);
    }
  return acc.finish();
}

Polynomial monomial_poly(const Exponents& a, const Rational& c) {
  Polynomial p;
  if (c != 0) p.emplace(a, c);
  return p;
}

Polynomial divided_power(const Exponents& a) {
  Integer fact = 1;
  for (int x : a)
    for (int k = 2; k <= x; ++k) fact *= k;
  return monomial_poly(a, Rational(1, 1) / Rational(fact));
}

namespace {

Polynomial partial(const Polynomial& f, std::size_t var) {
  Polynomial out;
  for (const auto& [a, c] : f) {
    if (a[var] == 0) continue;
    Exponents b = a;
    --b[var];
    out[b] += c * a[var];
  }
  return out;
}

void add_product(Polynomial& out, const Polynomial& f, const Polynomial& g, int sign) {
  for (const auto& [a, ca] : f)
    for (const auto& [b, cb] : g) {
      Exponents e(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) e[k] = a[k] + b[k];
      Rational term = ca * cb;
      if (sign < 0) term = -term;
      auto& slot = out[e];
      slot += term;
    }
}

}  // namespace

Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g, int n) {
  Polynomial out;
  const std::size_t vars = static_cast<std::size_t>(2 * n);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    const std::size_t ib = vars - 1 - i;
    add_product(out, partial(f, i), partial(g, ib), 1);
    add_product(out, partial(f, ib), partial(g, i), -1);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Weight RootVector::root(int n) const {
  Weight w(static_cast<std::size_t>(n), 0);
  const int s = raising ? 1 : -1;
  switch (kind) {
    case Kind::Difference:
      w[static_cast<std::size_t>(i - 1)] += s;
      w[static_cast<std::size_t>(j - 1)] -= s;
      break;
    case Kind::Sum:
      w[static_cast<std::size_t>(i - 1)] += s;
      w[static_cast<std::size_t>(j - 1)] += s;
      break;
    case Kind::Long:
      w[static_cast<std::size_t>(i - 1)] += 2 * s;
      break;
  }
  return w;
}

std::string RootVector::name() const {
  std::string s = raising ? "+" : "-";
  switch (kind) {
    case Kind::Difference:
      return s + "(e" + std::to_string(i) + "-e" + std::to_string(j) + ")";
    case Kind::Sum:
      return s + "(e" + std::to_string(i) + "+e" + std::to_string(j) + ")";
    case Kind::Long:
      return s + "2e" + std::to_string(i);
  }
  return s;
}

std::vector<RootVector> positive_roots(int n) {
  std::vector<RootVector> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back({RootVector::Kind::Difference, i, j, true});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back({RootVector::Kind::Sum, i, j, true});
  for (int i = 1; i <= n; ++i) out.push_back({RootVector::Kind::Long, i, i, true});
  return out;
}

std::vector<RootVector> negative_roots(int n) {
  auto out = positive_roots(n);
  for (auto& r : out) r = r.opposite();
  return out;
}

std::vector<RootVector> simple_roots(int n) {
  std::vector<RootVector> out;
  for (int i = 1; i < n; ++i) out.push_back({RootVector::Kind::Difference, i, i + 1, true});
  out.push_back({RootVector::Kind::Long, n, n, true});
  return out;
}

Polynomial momentum_quadratic(const RootVector& rho, int n) {
  // The dual action of x_p x_q shifts the weight of z_A by −(ε_p + ε_q),
  // where ε_p = e_p for p ≤ n and ε_p = −e_{p̄} otherwise.
  auto var = [&](int k, bool barred) { return barred ? 2 * n + 1 - k : k; };
  const bool up = rho.raising;
  Exponents a(static_cast<std::size_t>(2 * n), 0);
  Rational c = 1;
  switch (rho.kind) {
    case RootVector::Kind::Difference:
      ++a[static_cast<std::size_t>(var(rho.j, !up) - 1)];
      ++a[static_cast<std::size_t>(var(rho.i, up) - 1)];
      break;
    case RootVector::Kind::Sum:
      ++a[static_cast<std::size_t>(var(rho.i, up) - 1)];
      ++a[static_cast<std::size_t>(var(rho.j, up) - 1)];
      break;
    case RootVector::Kind::Long:
      a[static_cast<std::size_t>(var(rho.i, up) - 1)] = 2;
      c = Rational(1, 2);
      break;
  }
  return monomial_poly(a, c);
}

std::vector<std::pair<GenId, std::int64_t>> quadratic_action_on_generator(const Polynomial& q, GenId g,
                                                                          const MonomialTable& table) {
  // For a term q_M x^M with M = e_k + e_i (differentiating x_i away),
  // {x^M, x^B/B!} contributes s_i m_i a_k x^A/A! with B = A − e_k + e_ī.
  const int n = table.rank();
  const std::size_t vars = static_cast<std::size_t>(2 * n);
  const Exponents& a = table.exponents(g);
  std::map<GenId, Rational> acc;
  for (const auto& [m, qm] : q) {
    int deg = 0;
    for (int x : m) deg += x;
    if (deg != 2) throw std::invalid_argument("quadratic_action_on_generator expects a quadratic");
    for (std::size_t i = 0; i < vars; ++i) {
      if (m[i] == 0) continue;
      Exponents rest = m;
      --rest[i];
      const std::size_t k = static_cast<std::size_t>(std::find(rest.begin(), rest.end(), 1) - rest.begin());
      if (a[k] == 0) continue;
      Exponents b = a;
      --b[k];
      ++b[vars - 1 - i];
      const int s = i < static_cast<std::size_t>(n) ? 1 : -1;
      acc[table.id(b)] -= qm * (s * m[i] * a[k]);
    }
  }
  std::vector<std::pair<GenId, std::int64_t>> out;
  for (const auto& [b, c] : acc) {
    if (c == 0) continue;
    if (c.get_den() != 1 || !c.get_num().fits_slong_p()) throw std::logic_error("non-integral root action coefficient");
    out.emplace_back(b, c.get_num().get_si());
  }
  return out;
}

namespace {

using ActionTable = std::vector<std::vector<std::pair<GenId, std::int64_t>>>;

const ActionTable& action_table(const RootVector& rho, const MonomialTable& table) {
  static std::mutex mutex;
  static std::map<std::pair<int, RootVector>, std::unique_ptr<ActionTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{table.rank(), rho}];
  if (!slot) {
    slot = std::make_unique<ActionTable>(table.size());
    const Polynomial q = momentum_quadratic(rho, table.rank());
    for (GenId g = 0; g < table.size(); ++g) (*slot)[g] = quadratic_action_on_generator(q, g, table);
  }
  return *slot;
}

}  // namespace

const std::vector<std::pair<GenId, std::int64_t>>& root_action_on_generator(const RootVector& rho, GenId a,
                                                                            const MonomialTable& table) {
  return action_table(rho, table)[a];
}

WedgeVector root_action(const RootVector& rho, const WedgeVector& v) {
  if (v.is_zero()) return v;
  const auto& table = MonomialTable::get(v.rank());
  const auto& act = action_table(rho, table);
  WedgeAccumulator acc(v.rank(), v.symmetric_degrees());
  for (const auto& [m, c] : v.terms()) {
    for (std::size_t k = 0; k < m.size; ++k) {
      for (const auto& [b, coef] : act[m.f[k]]) {
        WedgeMonomial m2 = m;
        m2.f[k] = b;
        acc.add_raw(m2, c * coef, table);
      }
    }
  }
  return acc.finish();
}

void root_action_terms(const RootVector& rho, const WedgeMonomial& m, const MonomialTable& table,
                       std::uint32_t symmetric_degrees, std::vector<std::pair<WedgeMonomial, std::int64_t>>& out) {
  const auto& act = action_table(rho, table);
  for (std::size_t k = 0; k < m.size; ++k) {
    for (const auto& [b, coef] : act[m.f[k]]) {
      WedgeMonomial m2 = m;
      m2.f[k] = b;
      const int sign = canonicalize(m2, table, symmetric_degrees);
      if (sign != 0) out.emplace_back(m2, sign * coef);
    }
  }
}

WedgeVector torus_action(int i, const WedgeVector& v) {
  const auto& table = MonomialTable::get(v.rank());
  std::vector<WedgeVector::Term> terms;
  for (const auto& [m, c] : v.terms()) {
    const int w = torus_weight(m, table)[static_cast<std::size_t>(i - 1)];
    if (w != 0) terms.emplace_back(m, c * w);
  }
  return WedgeVector::from_sorted(v.rank(), v.symmetric_degrees(), std::move(terms));
}

WedgeVector generator_vector(int n, GenId g) { return monomial_vector(n, WedgeMonomial{g}); }

WedgeVector monomial_vector(int n, const WedgeMonomial& m, const Rational& c, std::uint32_t symmetric_degrees) {
  WedgeAccumulator acc(n, symmetric_degrees);
  acc.add_raw(m, c, MonomialTable::get(n));
  return acc.finish();
}

}  // namespace gkf
