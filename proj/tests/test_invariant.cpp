#include <doctest.h>

#include "gkf/invariant_split.hpp"
#include "oracles.hpp"

using namespace gkf;

namespace {

IrrepDecomposition parse_list(int n, std::initializer_list<std::pair<std::vector<int>, std::uint64_t>> items) {
  IrrepDecomposition d(n);
  for (const auto& [p, m] : items) d.add(Partition(p, n), m);
  return d;
}

IrrepDecomposition character_oracle(int n, int q, int p, bool symmetric = false) {
  IrrepDecomposition d(n);
  for (const auto& [w, k] : oracle::decompose_character(n, oracle::power_character(n, q, p, symmetric))) {
    REQUIRE(k > 0);
    d.add(Partition(w, n), static_cast<std::uint64_t>(k));
  }
  return d;
}

const Weight kZero{0, 0, 0};

}  // namespace

TEST_CASE("space spec grammar") {
  const auto s = SpaceSpec::parse("L1 S4 * L2 S3", 3);
  CHECK(s.to_string() == "L2 S3 * L1 S4");
  CHECK(s.degree() == 3);
  CHECK(s.gkf_weight() == 4);
  CHECK(s.dimension() == Integer(1540 * 126));
  CHECK(SpaceSpec::parse("S5", 3).to_string() == "L1 S5");
  CHECK(SpaceSpec::parse("L2S3*L1S4", 3) == s);
  CHECK(SpaceSpec::parse("Sym2 S3", 3).symmetric_mask() == (1U << 3));
  CHECK(SpaceSpec::parse("Sym2 S3", 3).dimension() == Integer(56 * 57 / 2));
  CHECK_THROWS_AS(SpaceSpec::parse("L2 S3 * L1 S3", 3), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::parse("L0 S3", 3), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::parse("Q2 S3", 3), std::invalid_argument);
  CHECK(s.head().to_string() == "L2 S3");
  CHECK(s.tail().to_string() == "L1 S4");
}

TEST_CASE("weight subspaces") {
  CHECK(weight_subspace_basis(SpaceSpec::parse("L2 S5", 3), kZero).size() == 330);
  CHECK(weight_subspace_basis(SpaceSpec::parse("L2 S3", 3), {6, 2, 0}).empty());
  CHECK(oracle::power_character(3, 3, 2).count({6, 2, 0}) == 0);
  CHECK(oracle::power_character(3, 3, 2).at({5, 1, 0}) == 1);
}

TEST_CASE("weight multiplicities agree with brute-force enumeration") {
  for (const auto& [text, q, p, sym] : std::vector<std::tuple<std::string, int, int, bool>>{
           {"L2 S3", 3, 2, false}, {"L3 S3", 3, 3, false}, {"L2 S4", 4, 2, false}, {"Sym2 S3", 3, 2, true}}) {
    const auto s = SpaceSpec::parse(text, 3);
    const auto got = weight_multiplicities(s);
    const auto want = oracle::power_character(3, q, p, sym);
    REQUIRE(got.size() == want.size());
    for (const auto& [w, m] : want) CHECK(got.at(w) == static_cast<std::uint64_t>(m));
    for (const Weight& w : {Weight{0, 0, 0}, Weight{2, 1, 0}})
      if (want.count(w)) CHECK(weight_subspace_basis(s, w).size() == static_cast<std::size_t>(want.at(w)));
  }
}

TEST_CASE("invariance system of L2 S5 at weight zero has nullity 1") {
  const auto s = SpaceSpec::parse("L2 S5", 3);
  const auto sys = invariance_system(s, kZero);
  CHECK(sys.matrix.cols() == 330);
  CHECK(nullspace_basis(sys.matrix).size() == 1);
  const auto all = invariance_system(s, kZero, RootSet::All);
  CHECK(nullspace_basis(all.matrix).size() == 1);
  CHECK(rank(all.matrix) + 1 == all.matrix.cols());
}

TEST_CASE("maximal vectors") {
  const auto v = maximal_vectors(SpaceSpec::parse("L2 S5", 3), kZero);
  REQUIRE(v.size() == 1);
  CHECK(annihilated_by(v, positive_roots(3)));
  CHECK(annihilated_by(v, negative_roots(3)));
  const auto span = irreducible_span(v.front(), kZero);
  REQUIRE(span.size() == 1);
  CHECK(span.front() == v.front());
  CHECK(maximal_vectors(SpaceSpec::parse("L2 S4", 3), kZero).empty());
  CHECK(maximal_vectors(SpaceSpec::parse("L2 S5", 3), kZero, RootSet::All) == v);
}

TEST_CASE("four [4,0,0] maximal vectors in L4 S3, each spanning 126 dimensions") {
  const Weight lambda{4, 0, 0};
  const auto v = maximal_vectors(SpaceSpec::parse("L4 S3", 3), lambda);
  REQUIRE(v.size() == 4);
  for (const auto& x : v) CHECK(irreducible_span(x, lambda).size() == 126);
  CHECK(isotypic_span(v, lambda).dimension() == 4 * 126);
}

TEST_CASE("second-exterior-power decompositions") {
  CHECK(decompose_space(SpaceSpec::parse("L2 S3", 3)) ==
        parse_list(3, {{{}, 1}, {{1, 1}, 1}, {{2, 2}, 1}, {{3, 3}, 1}, {{4}, 1}, {{5, 1}, 1}}));
  CHECK(decompose_space(SpaceSpec::parse("L2 S4", 3)) ==
        parse_list(3, {{{2}, 1}, {{3, 1}, 1}, {{4, 2}, 1}, {{5, 3}, 1}, {{6}, 1}, {{7, 1}, 1}}));
  CHECK(decompose_space(SpaceSpec::parse("L2 S5", 3)) ==
        parse_list(3, {{{}, 1}, {{1, 1}, 1}, {{2, 2}, 1}, {{3, 3}, 1}, {{4}, 1}, {{4, 4}, 1}, {{5, 1}, 1}, {{5, 5}, 1},
                       {{6, 2}, 1}, {{7, 3}, 1}, {{8}, 1}, {{9, 1}, 1}}));
}

TEST_CASE("decompositions agree with the Weyl character oracle") {
  CHECK(decompose_space(SpaceSpec::parse("L2 S3", 3)) == character_oracle(3, 3, 2));
  CHECK(decompose_space(SpaceSpec::parse("L2 S5", 3)) == character_oracle(3, 5, 2));
  CHECK(decompose_space(SpaceSpec::parse("L3 S3", 3)) == character_oracle(3, 3, 3));
  CHECK(decompose_space(SpaceSpec::parse("L2 S3", 2)) == character_oracle(2, 3, 2));
  CHECK(decompose_space(SpaceSpec::parse("L3 S2", 2)) == character_oracle(2, 2, 3));
}

TEST_CASE("third exterior power of S3") {
  DecomposeStats st;
  const auto d = decompose_space(SpaceSpec::parse("L3 S3", 3), {}, &st);
  CHECK(d == parse_list(3, {{{2, 1}, 1}, {{3}, 3}, {{3, 1, 1}, 2}, {{3, 2}, 1}, {{3, 2, 2}, 1}, {{3, 3, 3}, 1},
                            {{4, 1}, 2}, {{4, 2, 1}, 1}, {{4, 3}, 1}, {{5, 2}, 2}, {{5, 3, 1}, 1}, {{6, 1}, 1},
                            {{6, 3}, 1}, {{7}, 1}, {{7, 1, 1}, 1}}));
  CHECK(st.candidates <= st.dominant_weights);
  CHECK(st.systems_solved >= st.candidates);
}

TEST_CASE("S3 tensor S4 by maximal vectors equals the crystal decomposition") {
  CHECK(decompose_space(SpaceSpec::parse("L1 S3 * L1 S4", 3)) == tensor_decompose(3, Partition({3}, 3), Partition({4}, 3)));
}

TEST_CASE("exterior plus symmetric square equals the tensor square") {
  for (int q = 1; q <= 4; ++q) {
    CAPTURE(q);
    const auto l = decompose_space(SpaceSpec::parse("L2 S" + std::to_string(q), 3));
    const auto s = decompose_space(SpaceSpec::parse("Sym2 S" + std::to_string(q), 3));
    IrrepDecomposition sum = l;
    for (const auto& [lambda, m] : s.entries()) sum.add(lambda, m);
    CHECK(sum == tensor_decompose(3, Partition({q}, 3), Partition({q}, 3)));
  }
}

TEST_CASE("exact and modular decompositions agree and do not depend on threads") {
  const auto s = SpaceSpec::parse("L3 S3", 3);
  DecomposeOptions exact;
  exact.exact = true;
  DecomposeOptions threaded;
  threaded.threads = 3;
  const auto base = decompose_space(s);
  CHECK(decompose_space(s, exact) == base);
  CHECK(decompose_space(s, threaded) == base);
}

TEST_CASE("tensor power envelope contains the decomposition") {
  const auto s = SpaceSpec::parse("L3 S3", 3);
  const auto env = tensor_power_envelope(s);
  const auto d = decompose_space(s);
  for (const auto& [lambda, m] : d.entries()) CHECK(env.multiplicity(lambda) >= m);
  const auto dom = dominant_weights(s);
  CHECK(std::is_sorted(dom.rbegin(), dom.rend()));
  for (const auto& w : dom) CHECK(is_dominant(w));
}

TEST_CASE("pairing route equals the direct route on L2 S3 * L1 S4") {
  const auto s = SpaceSpec::parse("L2 S3 * L1 S4", 3);
  const Weight lambda{4, 0, 0};
  const auto x = isotypic_span(maximal_vectors(s.head(), lambda), lambda);
  const auto y = isotypic_span(maximal_vectors(s.tail(), lambda), lambda);
  const auto pairing = invariant_pairings(x, y);
  REQUIRE(pairing.size() == 1);
  CHECK(pairing == rref(maximal_vectors(s, kZero)));
  CHECK(annihilated_by(pairing, negative_roots(3)));
}

TEST_CASE("weighted span coordinates") {
  const Weight lambda{4, 0, 0};
  const auto span = isotypic_span(maximal_vectors(SpaceSpec::parse("L4 S3", 3), lambda), lambda);
  const auto& b = span.at(kZero);
  REQUIRE(!b.empty());
  WedgeVector v = Rational(3) * b.front();
  if (b.size() > 1) v += Rational(-2, 5) * b.back();
  const auto c = span.coordinates(v, kZero);
  CHECK(c.front() == 3);
  if (b.size() > 1) CHECK(c.back() == Rational(-2, 5));
  const auto& t = MonomialTable::get(3);
  WedgeVector outside = monomial_vector(3, WedgeMonomial{t.begin_of(4), t.end_of(4) - 1});
  CHECK_THROWS(span.coordinates(outside, kZero));
}

TEST_CASE("rref is canonical") {
  const auto v = maximal_vectors(SpaceSpec::parse("L4 S3", 3), {4, 0, 0});
  std::vector<WedgeVector> mixed;
  for (std::size_t i = 0; i < v.size(); ++i) {
    WedgeVector w = v[i];
    for (std::size_t j = 0; j < v.size(); ++j)
      if (j != i) w += Rational(static_cast<long>(i + 2 * j + 1)) / 3 * v[j];
    mixed.push_back(w);
  }
  CHECK(rref(mixed) == rref(v));
}
