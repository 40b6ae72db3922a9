#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uaforge/analysis.hpp"
#include "uaforge/catalog.hpp"
#include "uaforge/error.hpp"
#include "uaforge/io.hpp"

using namespace uaforge;
namespace cat = uaforge::catalog;

TEST_CASE("partition canonical form and lattice operations") {
  auto p = Partition::from_blocks(5, {{3, 1}, {4}, {0}, {2}});
  CHECK(p.rep(3) == 1);
  CHECK(p.block_count() == 4);
  CHECK(p.blocks() == std::vector<std::vector<Element>>{{0}, {1, 3}, {2}, {4}});
  for (Element i = 0; i < 5; ++i) {
    CHECK(p.rep(p.rep(i)) == p.rep(i));
    CHECK(p.rep(i) <= i);
  }
  auto q = Partition::from_blocks(5, {{0, 1}, {2}, {3}, {4}});
  CHECK(p.join(q).blocks() == std::vector<std::vector<Element>>{{0, 1, 3}, {2}, {4}});
  CHECK(p.meet(q).is_identity());
  CHECK(p.refines(p.join(q)));
  CHECK_FALSE(q.refines(p));
  CHECK(Partition::full(3).is_full());
  CHECK(Partition::identity(3).refines(Partition::full(3)));
  // unlisted elements become singletons
  CHECK(Partition::from_blocks(3, {{0, 1}}).blocks() == std::vector<std::vector<Element>>{{0, 1}, {2}});
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 3}}), Error);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}, {1, 2}}), Error);
}

TEST_CASE("union-find agrees with block construction") {
  std::mt19937 rng(11);
  for (int round = 0; round < 50; ++round) {
    std::size_t                                n = 1 + rng() % 9;
    UnionFind                                  uf(n);
    std::vector<Element>                       label(n);
    for (Element i = 0; i < n; ++i) {
      label[i] = i;
    }
    for (int k = 0; k < 4; ++k) {
      Element a = rng() % n, b = rng() % n;
      uf.unite(a, b);
      Element from = label[b], to = label[a];
      for (auto& l : label) {
        if (l == from) {
          l = to;
        }
      }
    }
    CHECK(uf.partition() == Partition::from_labels(label));
  }
}

TEST_CASE("constructor rejects malformed tables") {
  Signature sig({{"f", 2}});
  CHECK_THROWS_AS(FiniteAlgebra("X", sig, 2, {{0, 1, 1}}), Error);
  CHECK_THROWS_AS(FiniteAlgebra("X", sig, 2, {{0, 1, 1, 2}}), Error);
  CHECK_THROWS_AS(FiniteAlgebra("X", sig, 2, {}), Error);
  // big algebras can be built, but the exhaustive searches refuse them
  FiniteAlgebra big("X", sig, kSizeGuard + 1, {std::vector<Element>((kSizeGuard + 1) * (kSizeGuard + 1), 0)});
  CHECK_THROWS_AS(all_subuniverses(big), GuardError);
  CHECK_THROWS_AS(homs(big, big), GuardError);
}

TEST_CASE("sg closure matches brute force on random algebras") {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    auto alg = testing::random_algebra(rng, 2 + rng() % 5, round % 2 == 0);
    for (int g = 0; g < 5; ++g) {
      std::vector<Element> gens;
      for (std::size_t i = 0, k = rng() % 3; i < k; ++i) {
        gens.push_back(rng() % alg.size());
      }
      auto s = sg_closure(alg, gens);
      CHECK(s.elements == testing::brute_sg(alg, gens));
      for (Element x : gens) {
        CHECK(s.contains(x));
      }
      auto again = sg_closure(alg, s.elements);
      CHECK(again.elements == s.elements);
    }
    auto subs = all_subuniverses(alg);
    std::set<std::vector<Element>> got;
    for (auto const& s : subs) {
      got.insert(s.elements);
    }
    CHECK(got.size() == subs.size());
    CHECK(got == testing::brute_subuniverses(alg));
  }
}

TEST_CASE("subuniverses of catalog algebras") {
  auto A   = cat::section2_A();
  auto sg0 = sg_closure(A, {});
  CHECK(sg0.elements == std::vector<Element>{0, 1, 2, 3, 5, 6, 7});
  CHECK(sg0.elements == testing::brute_sg(A, {}));

  for (auto const& alg : {A, cat::An(3), cat::Bn(3)}) {
    auto subs = all_subuniverses(alg);
    std::set<std::vector<Element>> got;
    for (auto const& s : subs) {
      got.insert(s.elements);
    }
    CHECK(got == testing::brute_subuniverses(alg));
    // intersections stay in the list
    for (auto const& s : subs) {
      for (auto const& t : subs) {
        std::vector<Element> both;
        std::set_intersection(s.elements.begin(), s.elements.end(), t.elements.begin(),
                              t.elements.end(), std::back_inserter(both));
        CHECK(got.count(both) == 1);
      }
    }
  }
  CHECK(all_subuniverses(A).size() == 2);
}

TEST_CASE("quotient map is a surjective homomorphism") {
  std::mt19937 rng(5);
  for (int round = 0; round < 30; ++round) {
    auto alg = testing::random_algebra(rng, 2 + rng() % 4, true);
    for (auto const& label : testing::brute_congruences(alg)) {
      auto q = quotient(alg, Partition::from_labels(label));
      CHECK(is_homomorphism(alg, q.algebra, q.block_of));
      std::set<Element> image(q.block_of.begin(), q.block_of.end());
      CHECK(image.size() == q.algebra.size());
    }
  }
  auto B = cat::section2_B();
  CHECK(B.algebra.size() == 6);
  CHECK(is_homomorphism(cat::section2_A_minus_a4().algebra, B.algebra, B.block_of));
  CHECK(B.algebra.element_name(5) == "{a6,1}");
}

TEST_CASE("quotient rejects a non-congruence") {
  auto A = cat::section2_A();
  CHECK_THROWS_AS(quotient(A, Partition::from_blocks(8, {{0, 1}, {2}, {3}, {4}, {5}, {6}, {7}})),
                  Error);
}

TEST_CASE("subalgebra embedding is a homomorphism") {
  auto A  = cat::section2_A();
  auto S  = cat::section2_A_minus_a4();
  CHECK(S.embedding == std::vector<Element>{0, 1, 2, 3, 5, 6, 7});
  CHECK(is_homomorphism(S.algebra, A, S.embedding));
  CHECK_THROWS_AS(subalgebra(A, SubuniverseResult{{0, 7}, true}), Error);
}

TEST_CASE("heyting residuation on catalog algebras") {
  std::vector<FiniteAlgebra> algs{cat::section2_A().reduct({"meet", "join", "imp", "zero", "one"}),
                                  cat::section2_A_minus_a4().algebra.reduct(
                                      {"meet", "join", "imp", "zero", "one"}),
                                  cat::section2_B().algebra.reduct({"meet", "join", "imp", "zero", "one"})};
  for (std::size_t n = 0; n <= 4; ++n) {
    algs.push_back(cat::An(n));
  }
  for (auto const& alg : algs) {
    CAPTURE(alg.name());
    std::size_t meet = alg.signature().index_of("meet");
    std::size_t imp  = alg.signature().index_of("imp");
    for (Element a = 0; a < alg.size(); ++a) {
      for (Element b = 0; b < alg.size(); ++b) {
        for (Element c = 0; c < alg.size(); ++c) {
          CHECK(testing::leq(alg, alg.apply(meet, a, c), b) == testing::leq(alg, c, alg.apply(imp, a, b)));
        }
      }
    }
  }
}

TEST_CASE("chain order on the eight-element algebra") {
  auto A = cat::section2_A();
  for (Element x = 0; x < 8; ++x) {
    for (Element y = 0; y < 8; ++y) {
      CHECK(testing::leq(A, x, y) == (x <= y));
    }
  }
  CHECK(A.constant("a5") == cat::kA5);
  CHECK(A.parse_element("a3") == Element{3});
  CHECK(A.parse_element("7") == Element{7});
  CHECK_FALSE(A.parse_element("a9").has_value());
}

TEST_CASE("direct product and trivial algebra") {
  auto A0 = cat::An(0);
  CHECK(A0.size() == 2);
  std::vector<FiniteAlgebra> f{A0, A0};
  auto                       P = direct_product(A0.signature(), f);
  CHECK(P.size() == 4);
  auto T = trivial_algebra(A0.signature());
  CHECK(T.size() == 1);
  // projections are homomorphisms
  std::vector<Element> p0, p1;
  for (Element x = 0; x < 4; ++x) {
    p0.push_back(x / 2);
    p1.push_back(x % 2);
  }
  CHECK(is_homomorphism(P, A0, p0));
  CHECK(is_homomorphism(P, A0, p1));
}

TEST_CASE("algebra json round trip is byte-stable") {
  std::mt19937 rng(3);
  std::vector<FiniteAlgebra> algs{cat::section2_A(), cat::section2_B().algebra, cat::Bn(3)};
  for (int i = 0; i < 10; ++i) {
    algs.push_back(testing::random_algebra(rng, 1 + rng() % 5, i % 2));
  }
  for (auto const& alg : algs) {
    auto text = algebra_to_json(alg);
    auto back = algebra_from_json(text);
    CHECK(back.same_structure(alg));
    CHECK(back.name() == alg.name());
    CHECK(algebra_to_json(back) == text);
  }
}

TEST_CASE("algebra json rejects bad input") {
  CHECK_THROWS_AS(algebra_from_json("{"), Error);
  CHECK_THROWS_AS(algebra_from_json(R"({"name":"x","size":0,"operations":[]})"), Error);
  CHECK_THROWS_AS(
      algebra_from_json(R"({"name":"x","size":2,"operations":[{"symbol":"f","arity":1,"table":[0,5]}]})"),
      Error);
  CHECK_THROWS_AS(
      algebra_from_json(R"({"name":"x","size":2,"operations":[{"symbol":"f","arity":1,"table":[0]}]})"),
      Error);
}

TEST_CASE("partition json") {
  auto theta = cat::section2_theta();
  CHECK(partition_to_json(theta) == "[[0],[1],[2],[3],[4],[5,6]]");
  CHECK(partition_from_json(partition_to_json(theta), 7) == theta);
  CHECK_THROWS_AS(partition_from_json("[[0],[0]]", 2), Error);
  CHECK_THROWS_AS(partition_from_json("nope", 2), Error);
}
