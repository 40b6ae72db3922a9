#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uaforge/analysis.hpp"
#include "uaforge/catalog.hpp"
#include "uaforge/congruence.hpp"

using namespace uaforge;
namespace cat = uaforge::catalog;

namespace {

  // Copy of alg with element x renamed to pi[x].
  FiniteAlgebra permuted(FiniteAlgebra const& alg, std::vector<Element> const& pi) {
    std::vector<std::vector<Element>> tables;
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      std::size_t          arity = alg.signature()[op].arity;
      std::vector<Element> t(table_length(alg.size(), arity));
      testing::for_each_tuple(alg.size(), arity, [&](std::vector<Element> const& args) {
        std::size_t r = 0;
        for (Element x : args) {
          r = r * alg.size() + pi[x];
        }
        t[r] = pi[alg.apply(op, args)];
      });
      tables.push_back(std::move(t));
    }
    return FiniteAlgebra(alg.name() + "'", alg.signature(), alg.size(), std::move(tables));
  }

  std::vector<Map> identity_list(FiniteAlgebra const& a) {
    Map id(a.size());
    for (Element x = 0; x < a.size(); ++x) {
      id[x] = x;
    }
    return {id};
  }

}  // namespace

TEST_CASE("homs match exhaustive map enumeration") {
  std::mt19937 rng(61);
  for (int round = 0; round < 60; ++round) {
    auto a = testing::random_algebra(rng, 1 + rng() % 4, round % 2 == 0);
    auto b = testing::random_algebra(rng, 1 + rng() % 4, round % 2 == 0);
    auto brute = testing::brute_homs(a, b);
    std::sort(brute.begin(), brute.end());
    CHECK(homs(a, b).maps == brute);
    std::vector<Map> inj, bij;
    for (auto const& m : brute) {
      std::set<Element> img(m.begin(), m.end());
      if (img.size() == a.size()) {
        inj.push_back(m);
        if (a.size() == b.size()) {
          bij.push_back(m);
        }
      }
    }
    CHECK(homs(a, b, HomKind::Injective).maps == inj);
    CHECK(homs(a, b, HomKind::Bijective).maps == bij);
  }
}

TEST_CASE("homs between catalog algebras match enumeration") {
  auto S = cat::section2_A_minus_a4().algebra;
  auto B = cat::section2_B().algebra;
  for (auto const& [x, y] : std::vector<std::pair<FiniteAlgebra, FiniteAlgebra>>{{B, B}, {B, S}, {S, B}}) {
    auto brute = testing::brute_homs(x, y);
    std::sort(brute.begin(), brute.end());
    CHECK(homs(x, y).maps == brute);
  }
  auto A = cat::section2_A();
  for (auto const& m : homs(S, A).maps) {
    CHECK(testing::brute_is_hom(S, A, m));
  }
  CHECK(homs(S, A, HomKind::Injective).maps.size() == 1);
}

TEST_CASE("isomorphism search finds hidden permutations") {
  std::mt19937 rng(67);
  for (int round = 0; round < 40; ++round) {
    auto                 a = testing::random_algebra(rng, 2 + rng() % 6, true);
    std::vector<Element> pi(a.size());
    for (Element i = 0; i < a.size(); ++i) {
      pi[i] = i;
    }
    std::shuffle(pi.begin(), pi.end(), rng);
    auto b   = permuted(a, pi);
    auto iso = find_isomorphism(a, b);
    REQUIRE(iso);
    CHECK(testing::brute_is_hom(a, b, *iso));
  }
  CHECK_FALSE(is_isomorphic(cat::An(2), cat::section2_B().algebra.reduct({"meet", "join", "imp", "zero", "one"})));
  CHECK_FALSE(is_isomorphic(cat::An(1), cat::An(2)));
}

TEST_CASE("homomorphism defect reports the failing operation") {
  auto A  = cat::An(2);
  Map  id = identity_list(A)[0];
  CHECK_FALSE(homomorphism_defect(A, A, id).has_value());
  Map bad = id;
  std::swap(bad[0], bad[1]);
  auto d = homomorphism_defect(A, A, bad);
  REQUIRE(d);
  CHECK_FALSE(d->empty());
  CHECK_THROWS_AS(homomorphism_defect(A, A, Map{0, 1}), Error);
  CHECK_THROWS_AS(homomorphism_defect(A, cat::section2_A(), id), Error);
}

TEST_CASE("automorphism groups of A3 and B3") {
  for (auto const& alg : {cat::An(3), cat::Bn(3)}) {
    CAPTURE(alg.name());
    auto brute = testing::brute_automorphisms(alg);  // all 9! permutations
    auto aut   = homs(alg, alg, HomKind::Bijective).maps;
    std::sort(brute.begin(), brute.end());
    CHECK(aut == brute);
    CHECK(aut.size() == 6);
    std::set<Map> group(aut.begin(), aut.end());
    CHECK(group.count(identity_list(alg)[0]) == 1);
    for (auto const& g : aut) {
      for (auto const& h : aut) {
        CHECK(group.count(compose(g, h)) == 1);
      }
      Map inv(g.size());
      for (Element x = 0; x < g.size(); ++x) {
        inv[g[x]] = x;
      }
      CHECK(group.count(inv) == 1);
    }
  }
}

TEST_CASE("atom permutations induce automorphisms") {
  auto B3 = cat::Bn(3);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto                     A = cat::An(n);
    std::vector<std::size_t> sigma(n);
    for (std::size_t i = 0; i < n; ++i) {
      sigma[i] = i;
    }
    do {
      auto r = atom_permutation_automorphism(A, sigma);
      CHECK(r.is_automorphism);
      CHECK(testing::brute_is_hom(A, A, r.map));
      if (n == 3) {
        auto rb = atom_permutation_automorphism(B3, sigma);
        CHECK(rb.is_automorphism);
        CHECK(testing::brute_is_hom(B3, B3, rb.map));
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  CHECK_THROWS_AS(atom_permutation_automorphism(cat::An(3), {0, 0, 1}), Error);
}

TEST_CASE("embeddings into B3 differ by an automorphism") {
  auto B3  = cat::Bn(3);
  auto aut = homs(B3, B3, HomKind::Bijective).maps;
  for (auto const& s : all_subuniverses(B3)) {
    auto sub  = subalgebra(B3, s).algebra;
    auto embs = homs(sub, B3, HomKind::Injective).maps;
    CHECK_FALSE(embs.empty());
    for (auto const& g : embs) {
      for (auto const& h : embs) {
        bool found = std::any_of(aut.begin(), aut.end(), [&](Map const& i) { return compose(i, h) == g; });
        CHECK(found);
      }
    }
  }
}

TEST_CASE("automorphisms fixing a subalgebra move everything outside it except e") {
  auto B3  = cat::Bn(3);
  auto aut = homs(B3, B3, HomKind::Bijective).maps;
  for (auto const& s : all_subuniverses(B3)) {
    for (Element b = 0; b < B3.size(); ++b) {
      if (s.contains(b) || b == cat::an_e(3)) {
        continue;
      }
      bool found = std::any_of(aut.begin(), aut.end(), [&](Map const& h) {
        return h[b] != b && std::all_of(s.elements.begin(), s.elements.end(),
                                        [&](Element a) { return h[a] == a; });
      });
      CHECK(found);
    }
  }
}

TEST_CASE("hs classification of the chain algebra") {
  auto hs = hs_classify(cat::section2_A());
  auto si = hs.si_classes();
  REQUIRE(si.size() == 3);
  std::vector<FiniteAlgebra> want{cat::section2_A(), cat::section2_A_minus_a4().algebra,
                                  cat::section2_B().algebra};
  for (auto const& w : want) {
    CHECK(std::count_if(si.begin(), si.end(), [&](std::size_t c) {
            return is_isomorphic(hs.classes[c], w);
          }) == 1);
  }
  for (auto const& m : hs.members) {
    CHECK(m.si == is_si(m.algebra));
    CHECK(m.fsi == is_fsi(m.algebra));
  }
}

TEST_CASE("fsi members of HS(A3) are A0..A3") {
  auto hs  = hs_classify(cat::An(3));
  auto fsi = hs.fsi_classes();
  CHECK(fsi.size() == 4);
  for (std::size_t n = 0; n <= 3; ++n) {
    CHECK(std::count_if(fsi.begin(), fsi.end(), [&](std::size_t c) {
            return is_isomorphic(hs.classes[c], cat::An(n));
          }) == 1);
  }
}

TEST_CASE("fsi members of HS(B3) are the subalgebras of B3") {
  auto B3   = cat::Bn(3);
  auto hs   = hs_classify(B3);
  auto subs = subalgebra_classes(B3);
  auto fsi  = hs.fsi_classes();
  CHECK(fsi.size() == subs.size());
  for (auto const& s : subs) {
    CHECK(std::count_if(fsi.begin(), fsi.end(), [&](std::size_t c) {
            return is_isomorphic(hs.classes[c], s);
          }) == 1);
  }
}

TEST_CASE("spans of embeddings among subalgebras of B3 amalgamate") {
  auto                       B3      = cat::Bn(3);
  auto                       members = subalgebra_classes(B3);
  members.push_back(trivial_algebra(B3.signature()));
  std::vector<FiniteAlgebra> targets{B3, trivial_algebra(B3.signature())};
  auto                       report = check_amalgamation(members, targets);
  CHECK(report.failures() == 0);
  CHECK_FALSE(report.spans.empty());
  for (auto const& s : report.spans) {
    REQUIRE(s.target);
    auto const& D = targets[*s.target];
    auto const& L = members[s.left];
    auto const& R = members[s.right];
    CHECK(testing::brute_is_hom(L, D, s.p));
    CHECK(testing::brute_is_hom(R, D, s.q));
    CHECK(compose(s.p, s.f) == compose(s.q, s.g));
    CHECK(std::set<Element>(s.p.begin(), s.p.end()).size() == L.size());
    CHECK(std::set<Element>(s.q.begin(), s.q.end()).size() == R.size());
  }
}

TEST_CASE("amalgamation reports a failing span") {
  // Two-element lattices with no common target: the only target is trivial,
  // into which nothing nontrivial embeds.
  auto                       A0 = cat::An(0);
  std::vector<FiniteAlgebra> members{A0};
  std::vector<FiniteAlgebra> targets{trivial_algebra(A0.signature())};
  auto                       report = check_amalgamation(members, targets);
  CHECK(report.failures() == report.spans.size());
  CHECK(report.failures() > 0);
}

TEST_CASE("no proper subalgebra of B3 is epic") {
  auto B3    = cat::Bn(3);
  auto cases = check_epic_subalgebras(B3);
  CHECK_FALSE(cases.empty());
  auto ends = homs(B3, B3).maps;
  for (auto const& c : cases) {
    REQUIRE(c.witness);
    auto const& w = *c.witness;
    CHECK(testing::brute_is_hom(B3, B3, w));
    for (Element a : c.inner) {
      CHECK(w[a] == a);
    }
    CHECK(std::binary_search(c.outer.begin(), c.outer.end(), c.moved));
    CHECK(w[c.moved] != c.moved);
  }
}

TEST_CASE("atom swap on the subalgebra generated by an atom") {
  auto    B3  = cat::Bn(3);
  Element a   = 1;
  auto    neg = [&](Element x) { return B3.apply(B3.signature().index_of("imp"), x, Element{0}); };
  auto    s   = sg_closure(B3, std::vector<Element>{a});
  CHECK(s.elements == std::vector<Element>{0, a, neg(a), cat::an_e(3), cat::an_top(3)});
  auto    C  = subalgebra(B3, s);
  auto    f1 = B3.signature().index_of("f1");
  CHECK(B3.apply(f1, a) == cat::an_top(3));
  CHECK(B3.apply(f1, neg(a)) == cat::an_e(3));
  // swap a and not-a inside C
  Map swap(C.algebra.size());
  for (Element i = 0; i < swap.size(); ++i) {
    Element x = C.embedding[i];
    Element y = x == a ? neg(a) : x == neg(a) ? a : x;
    swap[i]   = static_cast<Element>(std::find(C.embedding.begin(), C.embedding.end(), y) - C.embedding.begin());
  }
  auto reduct = C.algebra.reduct({"meet", "join", "imp", "zero", "one"});
  CHECK(is_homomorphism(reduct, reduct, swap));
  CHECK_FALSE(is_homomorphism(C.algebra, C.algebra, swap));
}
