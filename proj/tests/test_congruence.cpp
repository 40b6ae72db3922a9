#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uaforge/catalog.hpp"
#include "uaforge/congruence.hpp"

using namespace uaforge;
namespace cat = uaforge::catalog;

namespace {

  std::set<Partition> as_set(std::vector<std::vector<Element>> const& labels) {
    std::set<Partition> out;
    for (auto const& l : labels) {
      out.insert(Partition::from_labels(l));
    }
    return out;
  }

  void check_against_brute_force(FiniteAlgebra const& alg) {
    CAPTURE(alg.name());
    auto brute = as_set(testing::brute_congruences(alg));
    auto lat   = congruence_lattice(alg);
    std::set<Partition> got(lat.congruences.begin(), lat.congruences.end());
    CHECK(got == brute);
    CHECK(lat.congruences[lat.bottom()].is_identity());
    CHECK(lat.congruences[lat.top()].is_full());
    for (Element a = 0; a < alg.size(); ++a) {
      for (Element b = 0; b < alg.size(); ++b) {
        auto cg = principal_congruence(alg, a, b);
        // least congruence containing (a,b)
        std::optional<Partition> least;
        for (auto const& p : brute) {
          if (p.related(a, b) && (!least || p.refines(*least))) {
            least = p;
          }
        }
        REQUIRE(least);
        CHECK(cg == *least);
        for (auto const& p : brute) {
          if (p.related(a, b)) {
            CHECK(cg.refines(p));
          }
        }
      }
    }
  }

}  // namespace

TEST_CASE("congruences match partition enumeration on random algebras") {
  std::mt19937 rng(19);
  for (int round = 0; round < 40; ++round) {
    check_against_brute_force(testing::random_algebra(rng, 1 + rng() % 6, round % 3 == 0));
  }
}

TEST_CASE("congruences match partition enumeration on catalog algebras") {
  check_against_brute_force(cat::section2_A());
  check_against_brute_force(cat::section2_A_minus_a4().algebra);
  check_against_brute_force(cat::section2_B().algebra);
  check_against_brute_force(cat::An(3));  // Bell(9) partitions
}

TEST_CASE("lattice closure under join and meet") {
  for (auto const& alg : {cat::An(3), cat::Bn(3), cat::section2_A_minus_a4().algebra}) {
    auto lat = congruence_lattice(alg);
    for (auto const& p : lat.congruences) {
      for (auto const& q : lat.congruences) {
        CHECK(lat.index_of(p.join(q)).has_value());
        CHECK(lat.index_of(p.meet(q)).has_value());
        CHECK(is_congruence(alg, p.join(q)));
      }
    }
    for (std::size_t i = 0; i < lat.size(); ++i) {
      for (std::size_t j = 0; j < lat.size(); ++j) {
        CHECK((lat.leq[i][j] != 0) == lat.congruences[i].refines(lat.congruences[j]));
      }
    }
  }
}

TEST_CASE("parallel and serial principal kernels agree") {
  std::mt19937 rng(23);
  std::vector<FiniteAlgebra> algs{cat::Bn(3), cat::section2_A(), cat::An(4)};
  for (int i = 0; i < 5; ++i) {
    algs.push_back(testing::random_algebra(rng, 3 + rng() % 5, true));
  }
  for (auto const& alg : algs) {
    auto s = all_principal_congruences_serial(alg);
    auto p = all_principal_congruences_parallel(alg);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].a == p[i].a);
      CHECK(s[i].b == p[i].b);
      CHECK(s[i].congruence == p[i].congruence);
    }
  }
}

TEST_CASE("eight-element chain and its subalgebra") {
  auto A = cat::section2_A();
  CHECK(congruence_lattice(A).size() == 2);
  CHECK(is_simple(A));
  CHECK(is_si(A));

  auto S   = cat::section2_A_minus_a4().algebra;
  auto lat = congruence_lattice(S);
  REQUIRE(lat.size() == 3);
  CHECK(lat.congruences[1] == cat::section2_theta());
  CHECK(monolith(lat) == cat::section2_theta());
  CHECK(is_si(S));
  CHECK_FALSE(is_simple(S));

  // monolith = Cg(second largest, top) for each chain
  for (auto const& C : {A, S, cat::section2_B().algebra}) {
    CAPTURE(C.name());
    auto mono = monolith(congruence_lattice(C));
    REQUIRE(mono);
    Element top = static_cast<Element>(C.size() - 1);
    CHECK(*mono == principal_congruence(C, top - 1, top));
  }
}

TEST_CASE("con of A3 is dual to A3 via filters") {
  auto A3  = cat::An(3);
  auto lat = congruence_lattice(A3);
  CHECK(lat.size() == 9);
  Element top = cat::an_top(3);
  std::set<Partition> filters;
  for (Element a = 0; a < A3.size(); ++a) {
    for (Element b = 0; b < A3.size(); ++b) {
      auto ca = principal_congruence(A3, a, top);
      auto cb = principal_congruence(A3, b, top);
      CHECK(cb.refines(ca) == testing::leq(A3, a, b));
    }
    filters.insert(principal_congruence(A3, a, top));
  }
  CHECK(filters.size() == 9);
}

TEST_CASE("si and fsi on small cases") {
  CHECK_FALSE(is_si(trivial_algebra(cat::An(0).signature())));
  CHECK_FALSE(is_fsi(trivial_algebra(cat::An(0).signature())));
  CHECK(is_si(cat::An(0)));
  CHECK(is_fsi(cat::An(2)));
  CHECK_FALSE(is_fsi(cat::An(2).reduct({"meet", "join", "zero", "one"})));

  auto                       A0 = cat::An(0);
  std::vector<FiniteAlgebra> f{A0, A0};
  auto                       P   = direct_product(A0.signature(), f);
  auto                       lat = congruence_lattice(P);
  CHECK(lat.size() == 4);
  CHECK_FALSE(monolith(lat).has_value());
  CHECK_FALSE(is_si(P));
  CHECK_FALSE(is_fsi(P));
}

TEST_CASE("con of Bn equals con of its heyting reduct on subalgebras") {
  auto B3 = cat::Bn(3);
  for (auto const& s : all_subuniverses(B3)) {
    auto C  = subalgebra(B3, s).algebra;
    auto CL = C.reduct({"meet", "join", "imp", "zero", "one"});
    CHECK(congruence_lattice(C).congruences == congruence_lattice(CL).congruences);
  }
}
