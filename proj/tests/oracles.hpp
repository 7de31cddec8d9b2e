#pragma once

// Independent reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "gkf/rational.hpp"

namespace oracle {

using gkf::Integer;
using gkf::Rational;
using Weight = std::vector<int>;

/// All exponent vectors of length `parts` summing to `total`.
inline std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, total);
  return out;
}

inline Weight exponent_weight(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size()) / 2;
  Weight w(n);
  for (int i = 0; i < n; ++i) w[i] = a[i] - a[2 * n - 1 - i];
  return w;
}

/// Weyl dimension from the product over positive roots of C_n.
inline Integer weyl_dim_product(int n, std::vector<int> lambda) {
  lambda.resize(n, 0);
  std::vector<Rational> l(n), r(n);
  for (int i = 0; i < n; ++i) {
    r[i] = n - i;
    l[i] = lambda[i] + r[i];
  }
  Rational num = 1, den = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      num *= (l[i] - l[j]) * (l[i] + l[j]);
      den *= (r[i] - r[j]) * (r[i] + r[j]);
    }
    num *= 2 * l[i];
    den *= 2 * r[i];
  }
  Rational q = num / den;
  return q.get_num();
}

using Character = std::map<Weight, std::int64_t>;

inline Character add_weights(const Character& a, const Character& b) {
  Character out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Weight w(wa.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = wa[i] + wb[i];
      out[w] += ca * cb;
    }
  return out;
}

/// Weight multiset of Λ^p S_q (or Sym^p S_q) by brute force over subsets.
inline Character power_character(int n, int q, int p, bool symmetric = false) {
  std::vector<Weight> gens;
  for (const auto& a : compositions(q, 2 * n)) gens.push_back(exponent_weight(a));
  Character out;
  Weight acc(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    if (left == 0) {
      ++out[acc];
      return;
    }
    for (std::size_t g = start; g < gens.size(); ++g) {
      for (int i = 0; i < n; ++i) acc[i] += gens[g][i];
      rec(symmetric ? g : g + 1, left - 1);
      for (int i = 0; i < n; ++i) acc[i] -= gens[g][i];
    }
  };
  rec(0, p);
  return out;
}

/// Multiplicity of each V_λ in a character: n_λ = Σ_w ε(w) m(λ + ρ − wρ)
/// over the signed permutations w.
inline std::map<Weight, std::int64_t> decompose_character(int n, const Character& chi) {
  std::vector<std::pair<Weight, int>> w_rho;  // (wρ, ε(w))
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Weight v(n);
      int sign = inv % 2 ? -1 : 1;
      for (int i = 0; i < n; ++i) {
        v[i] = n - perm[i];
        if (mask & (1 << i)) {
          v[i] = -v[i];
          sign = -sign;
        }
      }
      w_rho.emplace_back(v, sign);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::map<Weight, std::int64_t> out;
  for (const auto& [lambda, m] : chi) {
    bool dominant = lambda.back() >= 0;
    for (int i = 0; i + 1 < n; ++i) dominant = dominant && lambda[i] >= lambda[i + 1];
    if (!dominant) continue;
    std::int64_t total = 0;
    for (const auto& [v, sign] : w_rho) {
      Weight mu(n);
      for (int i = 0; i < n; ++i) mu[i] = lambda[i] + (n - i) - v[i];
      auto it = chi.find(mu);
      if (it != chi.end()) total += sign * it->second;
    }
    if (total != 0) out[lambda] = total;
  }
  return out;
}

/// Rank over Q by fraction-free (Bareiss) elimination on a dense copy.
inline std::size_t bareiss_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<Integer>> a(rows.size(), std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Integer l = 1;
    for (const auto& x : rows[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      Rational s = rows[i][j] * l;
      a[i][j] = s.get_num();
    }
  }
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

/// Random rational in [-range, range] with denominators up to `den`.
inline Rational random_rational(std::mt19937& rng, int range, int den, double zero_probability = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < zero_probability) return 0;
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> d(1, den);
  Rational q(num(rng), d(rng));
  q.canonicalize();
  return q;
}

/// Random partition with at most n parts and |μ| ≤ max_size.
inline std::vector<int> random_partition(std::mt19937& rng, int n, int max_size) {
  std::uniform_int_distribution<int> size_dist(0, max_size);
  int left = size_dist(rng);
  std::vector<int> parts;
  int cap = left;
  while (left > 0 && static_cast<int>(parts.size()) < n) {
    std::uniform_int_distribution<int> d(1, std::min(cap, left));
    const int p = d(rng);
    parts.push_back(p);
    left -= p;
    cap = p;
  }
  parts.resize(n, 0);
  return parts;
}

}  // namespace oracle
