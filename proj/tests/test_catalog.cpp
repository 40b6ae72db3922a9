#include <doctest.h>

#include <bit>

#include "support.hpp"
#include "uaforge/analysis.hpp"
#include "uaforge/catalog.hpp"
#include "uaforge/congruence.hpp"
#include "uaforge/error.hpp"
#include "uaforge/evaluator.hpp"
#include "uaforge/io.hpp"
#include "uaforge/parser.hpp"

using namespace uaforge;
namespace cat = uaforge::catalog;

namespace {

  // Three-case value of f_{k,n}, written out from scratch.
  Element expected_fkn(std::size_t n, std::size_t k, Element a) {
    Element top = static_cast<Element>(1U << n);
    Element e   = top - 1;
    if (a == 0 || a == e || a == top) {
      return top;
    }
    return static_cast<std::size_t>(std::popcount(a)) <= k ? top : e;
  }

}  // namespace

TEST_CASE("eight-element chain tables") {
  auto A = cat::section2_A();
  CHECK(A.size() == 8);
  CHECK(A.signature().size() == 10);
  auto phi = cat::section2_phi();
  auto f   = induced_partial_function(A, phi, 1);
  CHECK(f.is_total(8));
  for (Element a = 0; a < 8; ++a) {
    CHECK(f.at({a}) == (a == 0 ? cat::kA3 : cat::kA1));
  }
}

TEST_CASE("phi on the subalgebra and quotient") {
  auto S  = cat::section2_A_minus_a4().algebra;
  auto fs = induced_partial_function(S, cat::section2_phi(), 1);
  // defined everywhere except at 0, where no witness exists in the subalgebra
  CHECK_FALSE(fs.is_total(S.size()));
  CHECK(fs.values.size() == S.size() - 1);
  CHECK_FALSE(fs.at({0}).has_value());
  auto B  = cat::section2_B().algebra;
  auto fb = induced_partial_function(B, cat::section2_phi(), 1);
  CHECK(fb.is_total(B.size()));
}

TEST_CASE("expanded algebra and the quasi-identity") {
  auto Aexp = cat::section2_A_exp();
  CHECK(Aexp.signature().contains("g"));
  CHECK(Aexp.reduct({"meet", "join", "imp", "zero", "one", "a5", "plus", "ast", "box", "dia"})
            .same_structure(cat::section2_A()));

  auto C = cat::section2_C();
  CHECK(C.algebra.size() == 7);
  CHECK(is_congruence(C.algebra, cat::section2_theta()));
  auto CT  = cat::section2_C_mod_theta().algebra;
  auto g   = CT.signature().index_of("g");
  auto phi = cat::section2_phi();
  CHECK(CT.apply(g, 0) == CT.parse_element("a3"));
  CHECK(eval_formula(CT, phi, {{"x", 0}, {"y", *CT.parse_element("{a6,1}")}}));
  CHECK(CT.apply(g, 0) != *CT.parse_element("{a6,1}"));

  std::size_t gc = C.algebra.signature().index_of("g");
  for (Element x = 0; x < C.algebra.size(); ++x) {
    for (Element y = 0; y < C.algebra.size(); ++y) {
      if (eval_formula(C.algebra, phi, {{"x", x}, {"y", y}})) {
        CHECK(C.algebra.apply(gc, x) == y);
      }
    }
  }
}

TEST_CASE("powerset algebras") {
  CHECK(cat::An(0).size() == 2);
  CHECK(cat::An(3).size() == 9);
  CHECK(cat::an_element_name(3, 0) == "0");
  CHECK(cat::an_element_name(3, 7) == "e");
  CHECK(cat::an_element_name(3, 8) == "1");
  CHECK(cat::an_element_name(3, 3) == "{0,1}");
  CHECK_THROWS_AS(cat::An(cat::kMaxN + 1), GuardError);

  // A0, A1, A2 have 2, 3, 5 elements and the expected shape
  CHECK(cat::An(1).size() == 3);
  CHECK(cat::An(2).size() == 5);
  for (std::size_t n = 0; n <= 2; ++n) {
    auto A = cat::An(n);
    // the new top has exactly one lower cover, e
    for (Element x = 0; x < A.size(); ++x) {
      CHECK(testing::leq(A, x, cat::an_top(n)));
      if (x != cat::an_top(n)) {
        CHECK(testing::leq(A, x, cat::an_e(n)));
      }
    }
  }
  CHECK(is_isomorphic(cat::An(0), cat::An(0).renamed("copy")));
}

TEST_CASE("equations on powerset algebras") {
  for (std::size_t n = 0; n <= 4; ++n) {
    auto    A    = cat::An(n);
    auto    join = A.signature().index_of("join");
    auto    imp  = A.signature().index_of("imp");
    Element top  = cat::an_top(n);
    Element e    = cat::an_e(n);
    auto    neg  = [&](Element a) { return A.apply(imp, a, Element{0}); };
    std::set<Element> literal_failures;
    for (Element a = 0; a < A.size(); ++a) {
      for (Element b = 0; b < A.size(); ++b) {
        CHECK((A.apply(join, a, b) == top) == (a == top || b == top));
      }
      CHECK((A.apply(join, a, neg(a)) == e) == (a != 0 && a != top && testing::leq(A, a, e)));
      bool in_set = a == 0 || a == e || a == top;
      if (in_set != (neg(neg(a)) == top)) {
        literal_failures.insert(a);
      }
      CHECK(((a == e && a != 0) || a == top) == (neg(neg(a)) == top));
    }
    // the three-element version is wrong exactly at 0
    CHECK(literal_failures == std::set<Element>{0});
  }
}

TEST_CASE("phi(k,n) induces f(k,n)") {
  for (std::size_t n = 3; n <= 4; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      auto t = cat::fkn_table(n, k);
      for (Element a = 0; a <= cat::an_top(n); ++a) {
        CHECK(t.at({a}) == expected_fkn(n, k, a));
      }
      if (n == 3) {
        CHECK(induced_partial_function(cat::An(n), cat::phi(k, n), 1) == t);
      }
    }
  }
  CHECK_THROWS_AS(cat::phi(0, 3), Error);
  CHECK_THROWS_AS(cat::phi(3, 3), Error);
  CHECK_THROWS_AS(cat::phi(1, 2), Error);
  CHECK(bound_variable_count(cat::phi(2, 3).formula) == 10);
  CHECK(cat::phi(1, 3).variables[2] == "z_1_1");
}

TEST_CASE("Bn from formulas equals Bn from tables") {
  auto B3 = cat::Bn(3);
  CHECK(B3.same_structure(cat::Bn_from_tables(3)));
  CHECK(cat::Bn_extra_symbols(3) == std::vector<std::string>{"f1", "f2"});
  CHECK(B3.reduct({"meet", "join", "imp", "zero", "one"}).same_structure(cat::An(3)));
}

TEST_CASE("pp expansion rejects partial formulas") {
  auto                     S = cat::section2_A_minus_a4().algebra;
  std::vector<cat::PpOperation> ops{{"g", cat::section2_phi(), 1}};
  CHECK_THROWS_WITH_AS(cat::pp_expand(S, ops), doctest::Contains("not total"), Error);
  auto A2 = cat::An(2);
  std::vector<cat::PpOperation> bad{{"h", parse_formula("meet(x,y) = x", A2.signature()), 1}};
  CHECK_THROWS_AS(cat::pp_expand(A2, bad), FunctionalityError);
}

TEST_CASE("catalog ids build deterministically") {
  for (auto id : cat::known_ids()) {
    for (auto& c : id) {
      c = c == 'N' ? '3' : c == 'K' ? '1' : c;
    }
    CAPTURE(id);
    auto a = cat::build(id).to_json();
    auto b = cat::build(id).to_json();
    CHECK(a == b);
    CHECK_FALSE(a.empty());
  }
  CHECK(cat::build("An?n=2").algebra->same_structure(cat::An(2)));
  CHECK(cat::build("phi?k=2&n=3").formula == cat::phi(2, 3));
  CHECK(cat::build("sec2.theta").partition == cat::section2_theta());
  CHECK_THROWS_AS(cat::build("nope"), Error);
  CHECK_THROWS_AS(cat::build("An?n=9"), GuardError);
  CHECK_THROWS_AS(cat::build("An?m=3"), Error);

  auto text = cat::build("Bn?n=3").to_json();
  CHECK(algebra_from_json(text).same_structure(cat::Bn(3)));
}
