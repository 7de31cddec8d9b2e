#include "gkf/exact_linalg.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <thread>

namespace gkf {

SparseRationalMatrix::SparseRationalMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

SparseRationalMatrix SparseRationalMatrix::identity(std::size_t k) {
  SparseRationalMatrix m(0, k);
  for (std::size_t i = 0; i < k; ++i) m.add_row({{static_cast<std::uint32_t>(i), Rational(1)}});
  return m;
}

SparseRationalMatrix SparseRationalMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  SparseRationalMatrix m(0, rows.empty() ? 0 : rows.front().size());
  for (const auto& r : rows) {
    if (r.size() != m.cols_) throw std::invalid_argument("ragged dense matrix");
    std::vector<std::pair<std::uint32_t, Rational>> e;
    for (std::size_t c = 0; c < r.size(); ++c)
      if (r[c] != 0) e.emplace_back(static_cast<std::uint32_t>(c), r[c]);
    m.add_row(std::move(e));
  }
  return m;
}

std::size_t SparseRationalMatrix::nnz() const {
  std::size_t s = 0;
  for (const auto& r : rows_) s += r.size();
  return s;
}

void SparseRationalMatrix::add_row(std::vector<std::pair<std::uint32_t, Rational>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector row;
  for (auto& [c, v] : entries) {
    if (c >= cols_) throw std::out_of_range("column index out of range");
    if (!row.empty() && row.back().first == c)
      row.back().second += v;
    else
      row.emplace_back(c, std::move(v));
    if (row.back().second == 0) row.pop_back();
  }
  rows_.push_back(std::move(row));
}

Rational SparseRationalMatrix::entry(std::size_t r, std::size_t c) const {
  for (const auto& [col, v] : rows_.at(r))
    if (col == c) return v;
  return 0;
}

SparseRationalMatrix SparseRationalMatrix::transpose() const {
  SparseRationalMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(static_cast<std::uint32_t>(r), v);
  return t;
}

std::vector<Rational> SparseRationalMatrix::multiply(const SparseVector& v) const {
  std::vector<Rational> dense(cols_);
  for (const auto& [c, x] : v) dense.at(c) = x;
  std::vector<Rational> out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, a] : rows_[r])
      if (dense[c] != 0) out[r] += a * dense[c];
  return out;
}

void SparseRationalMatrix::write_text(std::ostream& out) const {
  out << rows_.size() << ' ' << cols_ << ' ' << nnz() << '\n';
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) out << r << ' ' << c << ' ' << v.get_num() << '/' << v.get_den() << '\n';
}

SparseRationalMatrix SparseRationalMatrix::read_text(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(in >> rows >> cols >> nnz)) throw std::invalid_argument("bad matrix header");
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> entries(rows);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0, c = 0;
    std::string value;
    if (!(in >> r >> c >> value)) throw std::invalid_argument("truncated matrix body");
    if (r >= rows || c >= cols) throw std::out_of_range("matrix entry out of range");
    entries[r].emplace_back(static_cast<std::uint32_t>(c), parse_rational(value));
  }
  SparseRationalMatrix m(0, cols);
  for (auto& e : entries) m.add_row(std::move(e));
  return m;
}

namespace {

bool is_prime_u32(std::uint32_t x) {
  if (x < 2) return false;
  for (std::uint32_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

}  // namespace

std::uint32_t nth_prime(std::size_t index) {
  static std::mutex mutex;
  static std::vector<std::uint32_t> primes;
  std::lock_guard lock(mutex);
  std::uint32_t x = primes.empty() ? (1U << 31) - 1 : primes.back() - 2;
  while (primes.size() <= index) {
    while (!is_prime_u32(x)) x -= 2;
    primes.push_back(x);
    x -= 2;
  }
  return primes[index];
}

std::uint32_t inverse_mod(std::uint32_t x, std::uint32_t p) {
  std::int64_t a = x % p, m = p, u = 1, v = 0;
  if (a == 0) throw std::domain_error("zero has no inverse");
  while (a != 0) {
    const std::int64_t q = m / a;
    std::int64_t t = m - q * a;
    m = a;
    a = t;
    t = v - q * u;
    v = u;
    u = t;
  }
  if (m != 1) throw std::domain_error("not invertible");
  v %= static_cast<std::int64_t>(p);
  if (v < 0) v += p;
  return static_cast<std::uint32_t>(v);
}

std::uint32_t reduce_mod(const Rational& q, std::uint32_t p) {
  const std::uint32_t den = static_cast<std::uint32_t>(mpz_fdiv_ui(q.get_den_mpz_t(), p));
  if (den == 0) throw std::domain_error("prime divides a denominator");
  const std::uint32_t num = static_cast<std::uint32_t>(mpz_fdiv_ui(q.get_num_mpz_t(), p));
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(num) * inverse_mod(den, p) % p);
}

bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out) {
  Integer bound;
  mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  Integer r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, s1);
  out.canonicalize();
  return true;
}

ModularEchelon::ModularEchelon(std::uint32_t prime, std::size_t cols, std::vector<std::uint32_t> column_counts)
    : p_(prime),
      cols_(cols),
      colcount_(std::move(column_counts)),
      pivot_row_(cols, -1),
      acc_(cols, 0),
      touched_(cols, 0),
      queued_(cols, 0) {
  if (colcount_.empty()) colcount_.assign(cols, 0);
}

bool ModularEchelon::insert(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& row) {
  using Item = std::pair<std::int32_t, std::uint32_t>;  // (pivot row index, column)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<std::uint32_t> touched;
  auto touch = [&](std::uint32_t c) {
    if (!touched_[c]) {
      touched_[c] = 1;
      touched.push_back(c);
    }
    if (pivot_row_[c] >= 0 && !queued_[c]) {
      queued_[c] = 1;
      heap.emplace(pivot_row_[c], c);
    }
  };
  for (const auto& [c, v] : row) {
    if (v % p_ == 0) continue;
    acc_[c] = (acc_[c] + v) % p_;
    touch(c);
  }
  while (!heap.empty()) {
    const auto [ri, c] = heap.top();
    heap.pop();
    const std::uint64_t factor = acc_[c];
    if (factor == 0) continue;
    const std::uint64_t neg = p_ - factor;
    for (const auto& [c2, v2] : rows_[static_cast<std::size_t>(ri)].entries) {
      acc_[c2] = (acc_[c2] + neg * v2) % p_;
      touch(c2);
    }
  }
  std::uint32_t best = 0;
  bool found = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t c : touched) {
    if (pivot_row_[c] < 0 && acc_[c] != 0) {
      out.emplace_back(c, static_cast<std::uint32_t>(acc_[c]));
      if (!found || colcount_[c] < colcount_[best] || (colcount_[c] == colcount_[best] && c < best)) {
        best = c;
        found = true;
      }
    }
    acc_[c] = 0;
    touched_[c] = 0;
    queued_[c] = 0;
  }
  if (!found) return false;
  std::sort(out.begin(), out.end());
  std::uint32_t pivot_value = 0;
  for (const auto& [c, v] : out)
    if (c == best) pivot_value = v;
  const std::uint64_t inv = inverse_mod(pivot_value, p_);
  for (auto& e : out) e.second = static_cast<std::uint32_t>(e.second * inv % p_);
  pivot_row_[best] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back({best, std::move(out)});
  return true;
}

std::vector<std::uint32_t> ModularEchelon::free_columns() const {
  std::vector<std::uint32_t> out;
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_row_[c] < 0) out.push_back(static_cast<std::uint32_t>(c));
  return out;
}

std::vector<std::vector<std::uint32_t>> ModularEchelon::kernel_rref() const {
  const auto free = free_columns();
  std::vector<std::vector<std::uint32_t>> basis;
  basis.reserve(free.size());
  for (std::uint32_t f : free) {
    std::vector<std::uint32_t> x(cols_, 0);
    x[f] = 1;
    for (std::size_t r = rows_.size(); r-- > 0;) {
      std::uint64_t s = 0;
      for (const auto& [c, v] : rows_[r].entries)
        if (c != rows_[r].pivot && x[c] != 0) s = (s + static_cast<std::uint64_t>(v) * x[c]) % p_;
      x[rows_[r].pivot] = static_cast<std::uint32_t>((p_ - s) % p_);
    }
    basis.push_back(std::move(x));
  }
  // Canonical reduced row echelon form of the kernel.
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols_ && lead < basis.size(); ++c) {
    std::size_t sel = lead;
    while (sel < basis.size() && basis[sel][c] == 0) ++sel;
    if (sel == basis.size()) continue;
    std::swap(basis[lead], basis[sel]);
    const std::uint64_t inv = inverse_mod(basis[lead][c], p_);
    for (auto& x : basis[lead]) x = static_cast<std::uint32_t>(x * inv % p_);
    for (std::size_t r = 0; r < basis.size(); ++r) {
      if (r == lead || basis[r][c] == 0) continue;
      const std::uint64_t f = p_ - basis[r][c];
      for (std::size_t k = c; k < cols_; ++k)
        if (basis[lead][k] != 0) basis[r][k] = static_cast<std::uint32_t>((basis[r][k] + f * basis[lead][k]) % p_);
    }
    ++lead;
  }
  return basis;
}

namespace {

std::vector<std::size_t> row_order(const SparseRationalMatrix& m) {
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });
  return order;
}

std::vector<std::uint32_t> column_counts(const SparseRationalMatrix& m) {
  std::vector<std::uint32_t> counts(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r)) ++counts[e.first];
  return counts;
}

ModularEchelon eliminate(const SparseRationalMatrix& m, std::uint32_t p, const std::vector<std::size_t>& order,
                         const std::vector<std::uint32_t>& counts) {
  ModularEchelon ech(p, m.cols(), counts);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> row;
  for (std::size_t r : order) {
    row.clear();
    for (const auto& [c, v] : m.row(r)) row.emplace_back(c, reduce_mod(v, p));
    ech.insert(row);
    if (ech.rank() == m.cols()) break;
  }
  return ech;
}

struct PrimeKernel {
  std::uint32_t prime = 0;
  bool ok = false;
  std::vector<std::vector<std::uint32_t>> kernel;
};

std::vector<std::uint32_t> leading_columns(const std::vector<std::vector<std::uint32_t>>& k) {
  std::vector<std::uint32_t> lead;
  for (const auto& v : k) {
    auto it = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
    lead.push_back(static_cast<std::uint32_t>(it - v.begin()));
  }
  return lead;
}

}  // namespace

std::size_t modular_nullity(const SparseRationalMatrix& m, std::uint32_t prime) {
  const auto ech = eliminate(m, prime, row_order(m), column_counts(m));
  return m.cols() - ech.rank();
}

bool is_in_kernel(const SparseRationalMatrix& m, const SparseVector& v) {
  if (v.empty()) return true;
  Integer lcm = 1;
  for (const auto& [c, x] : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> dense(m.cols());
  for (const auto& [c, x] : v) dense.at(c) = x.get_num() * (lcm / x.get_den());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer row_lcm = 1;
    for (const auto& [c, a] : m.row(r))
      if (dense[c] != 0) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), a.get_den_mpz_t());
    Integer s = 0;
    for (const auto& [c, a] : m.row(r))
      if (dense[c] != 0) s += a.get_num() * (row_lcm / a.get_den()) * dense[c];
    if (s != 0) return false;
  }
  return true;
}

std::vector<SparseVector> nullspace_basis(const SparseRationalMatrix& m, const LinalgOptions& opts) {
  const std::size_t cols = m.cols();
  if (cols == 0) return {};
  const auto order = row_order(m);
  const auto counts = column_counts(m);
  const unsigned threads = std::max(1U, opts.threads);

  std::vector<std::uint32_t> pattern;
  std::vector<std::vector<Integer>> residue;
  Integer modulus = 1;
  std::size_t used_primes = 0;
  std::size_t next_prime = 0;

  while (static_cast<int>(used_primes) < opts.max_primes) {
    std::vector<PrimeKernel> batch(threads);
    for (auto& b : batch) b.prime = nth_prime(next_prime++);
    auto work = [&](PrimeKernel& b) {
      try {
        b.kernel = eliminate(m, b.prime, order, counts).kernel_rref();
        b.ok = true;
      } catch (const std::domain_error&) {
        b.ok = false;
      }
    };
    if (threads == 1) {
      work(batch[0]);
    } else {
      std::vector<std::thread> pool;
      for (auto& b : batch) pool.emplace_back(work, std::ref(b));
      for (auto& t : pool) t.join();
    }
    for (auto& b : batch) {
      if (!b.ok) continue;
      ++used_primes;
      const auto lead = leading_columns(b.kernel);
      const bool reset = residue.empty() && modulus == 1;
      if (!reset && lead != pattern) {
        // Unlucky prime: a larger kernel or a different leading pattern.
        if (lead.size() > pattern.size()) continue;
        modulus = 1;
        residue.clear();
      }
      if (modulus == 1) {
        pattern = lead;
        residue.assign(b.kernel.size(), std::vector<Integer>(cols));
        for (std::size_t i = 0; i < b.kernel.size(); ++i)
          for (std::size_t c = 0; c < cols; ++c) residue[i][c] = b.kernel[i][c];
        modulus = b.prime;
        continue;
      }
      // CRT: x ≡ residue (mod modulus), x ≡ r (mod p).
      const std::uint32_t p = b.prime;
      const std::uint64_t inv = inverse_mod(static_cast<std::uint32_t>(mpz_fdiv_ui(modulus.get_mpz_t(), p)), p);
      for (std::size_t i = 0; i < b.kernel.size(); ++i)
        for (std::size_t c = 0; c < cols; ++c) {
          Integer& x = residue[i][c];
          const std::uint64_t xr = mpz_fdiv_ui(x.get_mpz_t(), p);
          const std::uint64_t delta = (b.kernel[i][c] + p - xr) % p * inv % p;
          if (delta != 0) x += modulus * static_cast<unsigned long>(delta);
        }
      modulus *= p;
    }
    if (modulus == 1) continue;

    std::vector<SparseVector> candidate;
    bool reconstructed = true;
    for (std::size_t i = 0; i < residue.size() && reconstructed; ++i) {
      SparseVector v;
      for (std::size_t c = 0; c < cols; ++c) {
        if (residue[i][c] == 0) continue;
        Rational q;
        if (!rational_reconstruct(residue[i][c], modulus, q)) {
          reconstructed = false;
          break;
        }
        v.emplace_back(static_cast<std::uint32_t>(c), std::move(q));
      }
      candidate.push_back(std::move(v));
    }
    if (!reconstructed) continue;
    bool verified = true;
    for (const auto& v : candidate)
      if (!is_in_kernel(m, v)) {
        verified = false;
        break;
      }
    if (verified) return candidate;
  }
  throw std::runtime_error("nullspace lift did not converge");
}

std::size_t rank(const SparseRationalMatrix& m, const LinalgOptions& opts) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.rows() < m.cols()) {
    const auto t = m.transpose();
    return t.cols() - nullspace_basis(t, opts).size();
  }
  return m.cols() - nullspace_basis(m, opts).size();
}

}  // namespace gkf
