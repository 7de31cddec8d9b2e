#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gkf/rational.hpp"

namespace gkf {

using Weight = std::vector<int>;
using GenId = std::uint32_t;
using Exponents = std::vector<int>;

/// All monomials x^A in 2n variables up to a fixed degree, numbered
/// degree-major and then lexicographically ascending on A. Id `g` stands for
/// the dual generator z_A, the functional dual to x^A/A!.
class MonomialTable {
 public:
  /// Shared table for rank n (built once, immutable afterwards).
  static const MonomialTable& get(int n);

  explicit MonomialTable(int n, int max_degree);

  int rank() const { return n_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return exps_.size(); }

  GenId id(std::span<const int> a) const;
  bool contains(std::span<const int> a) const;
  const Exponents& exponents(GenId g) const { return exps_[g]; }
  int degree(GenId g) const { return degree_[g]; }
  const Weight& weight(GenId g) const { return weight_[g]; }

  /// Ids of degree d form the half-open range [begin_of(d), end_of(d)).
  GenId begin_of(int d) const;
  GenId end_of(int d) const;

  /// "100101" (digits) or "1.0.10.0.1.1" when some exponent exceeds 9.
  std::string format(GenId g) const;
  GenId parse(std::string_view text) const;

 private:
  std::uint64_t key(std::span<const int> a) const;

  int n_;
  int max_degree_;
  std::vector<Exponents> exps_;
  std::vector<int> degree_;
  std::vector<Weight> weight_;
  std::vector<GenId> degree_start_;
  std::unordered_map<std::uint64_t, GenId> index_;
};

/// Torus weight of z_A: (a_1 − a_{2n}, a_2 − a_{2n−1}, …, a_n − a_{n+1}).
Weight monomial_weight(std::span<const int> a);

inline constexpr std::size_t kMaxFactors = 12;

/// Canonically ordered product of dual generators (ascending ids).
struct WedgeMonomial {
  std::array<GenId, kMaxFactors> f{};
  std::uint8_t size = 0;

  WedgeMonomial() = default;
  WedgeMonomial(std::initializer_list<GenId> ids);
  static WedgeMonomial from(std::span<const GenId> ids);

  std::span<const GenId> factors() const { return {f.data(), size}; }
  void push_back(GenId g);

  friend bool operator==(const WedgeMonomial& a, const WedgeMonomial& b) {
    return a.size == b.size && std::equal(a.f.begin(), a.f.begin() + a.size, b.f.begin());
  }
  friend bool operator<(const WedgeMonomial& a, const WedgeMonomial& b) {
    return std::lexicographical_compare(a.f.begin(), a.f.begin() + a.size, b.f.begin(), b.f.begin() + b.size);
  }
};

struct WedgeMonomialHash {
  std::size_t operator()(const WedgeMonomial& m) const noexcept;
};

/// Sorts the factors into canonical order. Returns the sign of the
/// permutation counted over exterior factors, or 0 when an exterior factor
/// repeats. Factors whose degree bit is set in `symmetric_degrees` commute.
int canonicalize(WedgeMonomial& m, const MonomialTable& table, std::uint32_t symmetric_degrees = 0);

Weight torus_weight(const WedgeMonomial& m, const MonomialTable& table);
int gkf_weight(const WedgeMonomial& m, const MonomialTable& table);

/// Sparse exact linear combination of wedge monomials, terms sorted ascending
/// with no zero coefficients.
class WedgeVector {
 public:
  using Term = std::pair<WedgeMonomial, Rational>;

  WedgeVector() = default;
  explicit WedgeVector(int n, std::uint32_t symmetric_degrees = 0) : n_(n), symmetric_(symmetric_degrees) {}

  int rank() const { return n_; }
  std::uint32_t symmetric_degrees() const { return symmetric_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a canonical monomial.
  Rational coefficient(const WedgeMonomial& m) const;

  /// Terms must already be canonical, sorted and nonzero.
  static WedgeVector from_sorted(int n, std::uint32_t symmetric_degrees, std::vector<Term> terms);

  WedgeVector& operator+=(const WedgeVector& other);
  WedgeVector& operator-=(const WedgeVector& other);
  WedgeVector& operator*=(const Rational& c);
  friend WedgeVector operator+(WedgeVector a, const WedgeVector& b) { return a += b; }
  friend WedgeVector operator-(WedgeVector a, const WedgeVector& b) { return a -= b; }
  friend WedgeVector operator*(const Rational& c, WedgeVector a) { return a *= c; }
  bool operator==(const WedgeVector& other) const { return terms_ == other.terms_; }

  /// Scales so the first coefficient is 1 (no-op on zero).
  void normalize_leading();

  /// "c*w(100101,000102,202000) + …".
  std::string to_string() const;

 private:
  int n_ = 0;
  std::uint32_t symmetric_ = 0;
  std::vector<Term> terms_;
};

/// Hash-based accumulator producing a canonical WedgeVector.
class WedgeAccumulator {
 public:
  explicit WedgeAccumulator(int n, std::uint32_t symmetric_degrees = 0) : n_(n), symmetric_(symmetric_degrees) {}

  /// Adds sign·c·m where m is already canonical.
  void add(const WedgeMonomial& m, const Rational& c);
  /// Canonicalizes m first.
  void add_raw(WedgeMonomial m, const Rational& c, const MonomialTable& table);
  WedgeVector finish();

 private:
  int n_;
  std::uint32_t symmetric_;
  std::unordered_map<WedgeMonomial, Rational, WedgeMonomialHash> acc_;
};

/// Wedge product with sign; both inputs must share rank and symmetric mask.
WedgeVector wedge(const WedgeVector& a, const WedgeVector& b);

/// Ordinary polynomial in x_1..x_{2n}: monomial exponents → coefficient.
using Polynomial = std::map<Exponents, Rational>;

/// {f,g} = Σ_{i≤n} (∂_i f ∂_{ī} g − ∂_{ī} f ∂_i g) with ī = 2n+1−i.
Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g, int n);
Polynomial monomial_poly(const Exponents& a, const Rational& c = 1);
/// x^A / A!.
Polynomial divided_power(const Exponents& a);

/// Root vectors of sp(2n): e_i − e_j (i<j), e_i + e_j (i<j), 2e_i, with a sign.
struct RootVector {
  enum class Kind { Difference, Sum, Long };
  Kind kind;
  int i;  // 1-based
  int j;  // 1-based, unused for Long
  bool raising;

  /// The root as an n-vector (negated for lowering vectors).
  Weight root(int n) const;
  RootVector opposite() const { return {kind, i, j, !raising}; }
  std::string name() const;
  auto operator<=>(const RootVector&) const = default;
};

std::vector<RootVector> positive_roots(int n);
std::vector<RootVector> negative_roots(int n);
/// e_1 − e_2, …, e_{n−1} − e_n, 2e_n.
std::vector<RootVector> simple_roots(int n);

/// Quadratic whose dual action on z_A shifts the torus weight by root(ρ).
Polynomial momentum_quadratic(const RootVector& rho, int n);

/// ξ·z_A = −Σ_B ⟨z_A, {Q, x^B/B!}⟩ z_B for a quadratic Q.
std::vector<std::pair<GenId, std::int64_t>> quadratic_action_on_generator(const Polynomial& q, GenId a,
                                                                          const MonomialTable& table);

/// Cached action of a root vector on every dual generator.
const std::vector<std::pair<GenId, std::int64_t>>& root_action_on_generator(const RootVector& rho, GenId a,
                                                                            const MonomialTable& table);

/// Action on a wedge vector extended as a degree-0 derivation.
WedgeVector root_action(const RootVector& rho, const WedgeVector& v);

/// Action on one canonical monomial: appends (canonical image, coefficient)
/// pairs, unmerged.
void root_action_terms(const RootVector& rho, const WedgeMonomial& m, const MonomialTable& table,
                       std::uint32_t symmetric_degrees, std::vector<std::pair<WedgeMonomial, std::int64_t>>& out);

/// Torus element h_i acts on z_A by the scalar weight_i.
WedgeVector torus_action(int i, const WedgeVector& v);

/// Single-generator vector z_A.
WedgeVector generator_vector(int n, GenId g);
WedgeVector monomial_vector(int n, const WedgeMonomial& m, const Rational& c = 1, std::uint32_t symmetric_degrees = 0);

}  // namespace gkf
