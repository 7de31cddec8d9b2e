#include <doctest.h>

#include <random>

#include "gkf/crystal.hpp"
#include "gkf/tensor_decomp.hpp"
#include "oracles.hpp"

using namespace gkf;

namespace {

IrrepDecomposition from_list(int n, std::initializer_list<std::pair<std::vector<int>, std::uint64_t>> items) {
  IrrepDecomposition d(n);
  for (const auto& [p, m] : items) d.add(Partition(p, n), m);
  return d;
}

IrrepDecomposition from_oracle(int n, const std::map<oracle::Weight, std::int64_t>& m) {
  IrrepDecomposition d(n);
  for (const auto& [w, k] : m) {
    REQUIRE(k > 0);
    d.add(Partition(w, n), static_cast<std::uint64_t>(k));
  }
  return d;
}

}  // namespace

TEST_CASE("apply_letter") {
  CHECK_FALSE(apply_letter({3, 1, 0}, bar(3, 3), 3).has_value());
  CHECK(apply_letter({1, 1, 0}, 3, 3) == std::vector<int>{1, 1, 1});
  CHECK_FALSE(apply_letter({1, 0, 0}, bar(3, 2), 3).has_value());
  CHECK(apply_letter({1, 1, 0}, bar(3, 2), 3) == std::vector<int>{1, 0, 0});
}

TEST_CASE("apply_tableau") {
  CHECK(apply_tableau(Tableau::from_rows(3, {{1, 1}, {2}}), Partition({1, 1}, 3)) == Partition({3, 2}, 3));
  CHECK(apply_tableau(Tableau::from_rows(3, {{1, 3}, {bar(3, 3)}}), Partition({1, 1}, 3)) == Partition({2, 1}, 3));
  const Tableau hat(2, {{bar(2, 2), bar(2, 1)}, {bar(2, 1)}});
  CHECK(apply_tableau(hat, Partition({2, 1}, 2)) == Partition::trivial(2));
}

TEST_CASE("S3 tensor S4 for n = 3") {
  const auto d = tensor_decompose(3, Partition({3}, 3), Partition({4}, 3));
  const auto want = from_list(3, {{{1}, 1}, {{2, 1}, 1}, {{3}, 1}, {{3, 2}, 1}, {{4, 1}, 1},
                                  {{4, 3}, 1}, {{5}, 1}, {{5, 2}, 1}, {{6, 1}, 1}, {{7}, 1}});
  CHECK(d == want);
  CHECK(d.summand_count() == 10);
}

TEST_CASE("trivial factor is the identity") {
  for (const auto& p : partitions_up_to(3, 4)) {
    IrrepDecomposition want(3);
    want.add(p);
    CHECK(tensor_decompose(3, Partition::trivial(3), p) == want);
  }
}

TEST_CASE("V[1] tensor V[1] matches character peeling") {
  const auto c = oracle::power_character(3, 1, 1);
  const auto square = oracle::add_weights(c, c);
  const auto want = from_oracle(3, oracle::decompose_character(3, square));
  CHECK(tensor_decompose(3, Partition({1}, 3), Partition({1}, 3)) == want);
  CHECK(want == from_list(3, {{{2}, 1}, {{1, 1}, 1}, {{}, 1}}));
}

TEST_CASE("S3 tensor S4 matches character peeling") {
  const auto c = oracle::add_weights(oracle::power_character(3, 3, 1), oracle::power_character(3, 4, 1));
  CHECK(tensor_decompose(3, Partition({3}, 3), Partition({4}, 3)) == from_oracle(3, oracle::decompose_character(3, c)));
}

TEST_CASE("dimension bookkeeping and commutativity on random pairs") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const Partition a(oracle::random_partition(rng, n, 4), n);
    const Partition b(oracle::random_partition(rng, n, 4), n);
    CAPTURE(a.to_string());
    CAPTURE(b.to_string());
    const auto ab = tensor_decompose(n, a, b);
    CHECK(ab.dimension() == weyl_dim(n, a) * weyl_dim(n, b));
    CHECK(ab == tensor_decompose(n, b, a));
  }
}

TEST_CASE("canonical tableaux for (4,2,1)") {
  const Partition mu({4, 2, 1}, 3);
  const Tableau t = canonical_tableau_T(mu);
  CHECK(t.rows() == std::vector<std::vector<int>>{{1, 1, 1, 1}, {2, 2}, {3}});
  const Tableau th = canonical_tableau_That(mu);
  const int b1 = bar(3, 1), b2 = bar(3, 2), b3 = bar(3, 3);
  CHECK(th.rows() == std::vector<std::vector<int>>{{b3, b2, b1, b1}, {b2, b1}, {b1}});
  CHECK(is_admissible(t));
  CHECK(is_admissible(th));
  CHECK(apply_tableau(th, mu) == Partition::trivial(3));
  CHECK(apply_tableau(t, Partition::trivial(3)) == mu);
}

TEST_CASE("trivial shape gives empty canonical tableaux") {
  CHECK(canonical_tableau_T(Partition::trivial(3)).cell_count() == 0);
  CHECK(canonical_tableau_That(Partition::trivial(3)).cell_count() == 0);
}

TEST_CASE("T-hat is the unique trivializer and T the unique identity") {
  for (int n = 2; n <= 3; ++n)
    for (const auto& mu : partitions_up_to(n, 5)) {
      CAPTURE(mu.to_string());
      int to_triv = 0, from_triv = 0;
      for (const auto& t : enumerate_crystal_base(n, mu)) {
        if (apply_tableau(t, mu) == Partition::trivial(n)) {
          ++to_triv;
          CHECK(t == canonical_tableau_That(mu));
        }
        if (apply_tableau(t, Partition::trivial(n)) == mu) {
          ++from_triv;
          CHECK(t == canonical_tableau_T(mu));
        }
      }
      CHECK(to_triv == 1);
      CHECK(from_triv == 1);
    }
}

TEST_CASE("trivial multiplicities") {
  const auto l2s3 = from_list(3, {{{}, 1}, {{1, 1}, 1}, {{2, 2}, 1}, {{3, 3}, 1}, {{4}, 1}, {{5, 1}, 1}});
  const auto l2s4 = from_list(3, {{{2}, 1}, {{3, 1}, 1}, {{4, 2}, 1}, {{5, 3}, 1}, {{6}, 1}, {{7, 1}, 1}});
  CHECK(trivial_multiplicity(l2s3, l2s4) == 0);
  CHECK(trivial_multiplicity(l2s3, l2s3) == 6);
  IrrepDecomposition triv(3);
  triv.add(Partition::trivial(3));
  CHECK(trivial_multiplicity(l2s3, triv) == 1);
  CHECK(trivial_multiplicity_with_S(l2s3, 4) == 1);
  const auto l3s3 = from_list(3, {{{2, 1}, 1}, {{3}, 3}, {{3, 1, 1}, 2}, {{3, 2}, 1}, {{3, 2, 2}, 1}, {{3, 3, 3}, 1},
                                  {{4, 1}, 2}, {{4, 2, 1}, 1}, {{4, 3}, 1}, {{5, 2}, 2}, {{5, 3, 1}, 1}, {{6, 1}, 1},
                                  {{6, 3}, 1}, {{7}, 1}, {{7, 1, 1}, 1}});
  CHECK(trivial_multiplicity_with_S(l3s3, 5) == 0);
  CHECK(trivial_multiplicity_with_S(l3s3, 9) == 0);
}

TEST_CASE("trivial multiplicity of a triple product equals tensoring through") {
  IrrepDecomposition s3(3), s4(3), s5(3);
  s3.add(Partition({3}, 3));
  s4.add(Partition({4}, 3));
  s5.add(Partition({5}, 3));
  CHECK(trivial_multiplicity(tensor_product(s3, s4), s5) == 1);
  CHECK(trivial_multiplicity_with_S(tensor_product(s3, s4), 5) == 1);
}

TEST_CASE("tensor powers") {
  const auto sq = tensor_power(3, Partition({3}, 3), 2);
  CHECK(sq.dimension() == 56 * 56);
  CHECK(sq == tensor_decompose(3, Partition({3}, 3), Partition({3}, 3)));
}

TEST_CASE("decomposition text and json") {
  const auto d = from_list(3, {{{}, 1}, {{4}, 2}});
  CHECK(d.to_string() == "2 V[4,0,0] + V[0,0,0]");
  CHECK(IrrepDecomposition::from_json(d.to_json()) == d);
  CHECK(d.dimension() == 2 * 126 + 1);
}
