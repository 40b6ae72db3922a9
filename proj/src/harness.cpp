#include "uaforge/harness.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uaforge/analysis.hpp"
#include "uaforge/catalog.hpp"
#include "uaforge/congruence.hpp"
#include "uaforge/error.hpp"
#include "uaforge/evaluator.hpp"
#include "uaforge/parser.hpp"

namespace uaforge::harness {

  namespace {

    // Collects the outcome of one claim.
    struct Ctx {
      std::size_t              n;
      std::vector<std::string> failures;
      std::vector<std::string> notes;
      std::uint64_t            instances = 0;

      void require(bool ok, std::string const& what) {
        if (!ok) {
          failures.push_back(what);
        }
      }
      void note(std::string s) {
        notes.push_back(std::move(s));
      }
    };

    std::string render(FiniteAlgebra const& alg, std::span<Element const> xs) {
      std::string s = "{";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? "," : "") + alg.element_name(xs[i]);
      }
      return s + "}";
    }

    std::vector<std::string> const kHeyting{"meet", "join", "imp", "zero", "one"};

    bool leq(FiniteAlgebra const& alg, Element x, Element y) {
      return alg.apply(alg.signature().index_of("meet"), x, y) == x;
    }

    Element heyting_neg(FiniteAlgebra const& alg, Element x) {
      return alg.apply(alg.signature().index_of("imp"), x, alg.constant("zero"));
    }

    // Largest element below the top in a chain.
    Element second_largest(FiniteAlgebra const& alg) {
      Element top  = alg.constant("one");
      Element best = alg.constant("zero");
      for (Element x = 0; x < alg.size(); ++x) {
        if (x != top && leq(alg, best, x)) {
          best = x;
        }
      }
      return best;
    }

    ////////////////////////////////////////////////////////////////////////
    // The chain algebra
    ////////////////////////////////////////////////////////////////////////

    void sg_empty(Ctx& c) {
      auto A = catalog::section2_A();
      auto s = sg_closure(A, {});
      std::vector<Element> expected{0, 1, 2, 3, 5, 6, 7};
      c.require(s.elements == expected, "Sg(empty) = " + render(A, s.elements));
      auto with_a4 = sg_closure(A, std::vector<Element>{catalog::kA4});
      c.require(with_a4.elements.size() == A.size(),
                "Sg({a4}) = " + render(A, with_a4.elements));
      c.instances = 2;
      c.note("Sg(empty) = " + render(A, s.elements));
    }

    void subalgs(Ctx& c) {
      auto A    = catalog::section2_A();
      auto subs = all_subuniverses(A);
      c.require(subs.size() == 2, std::to_string(subs.size()) + " subuniverses");
      if (subs.size() == 2) {
        c.require(subs[0].elements == std::vector<Element>{0, 1, 2, 3, 5, 6, 7},
                  "smaller subuniverse " + render(A, subs[0].elements));
        c.require(subs[1].elements.size() == 8, "larger subuniverse is not A");
      }
      c.instances = subs.size();
      c.note(std::to_string(subs.size()) + " subuniverses: A-{a4}, A");
    }

    void theta_cong(Ctx& c) {
      auto A     = catalog::section2_A();
      auto sub   = catalog::section2_A_minus_a4();
      auto theta = catalog::section2_theta();
      c.require(is_congruence(sub.algebra, theta), "theta is not a congruence of A-a4");
      c.require(principal_congruence(sub.algebra, 5, 6) == theta, "Cg(a6,1) != theta in A-a4");
      auto glue = Partition::from_blocks(A.size(), {{catalog::kA6, catalog::kTop}});
      c.require(!is_congruence(A, glue), "gluing a6 and 1 is compatible in A");
      c.require(principal_congruence(A, catalog::kA6, catalog::kTop).is_full(),
                "Cg^A(a6,1) is not full");
      c.instances = 4;
      c.note("theta = " + theta.to_string() + " on A-a4; Cg^A(a6,1) = A x A");
    }

    void simple_a(Ctx& c) {
      auto A   = catalog::section2_A();
      auto lat = congruence_lattice(A);
      c.require(lat.size() == 2, "|Con(A)| = " + std::to_string(lat.size()));
      c.require(is_simple(A), "A is not simple");
      c.instances = lat.size();
      c.note("|Con(A)| = " + std::to_string(lat.size()));
    }

    void con_a4(Ctx& c) {
      auto sub   = catalog::section2_A_minus_a4().algebra;
      auto lat   = congruence_lattice(sub);
      auto theta = catalog::section2_theta();
      c.require(lat.size() == 3, "|Con(A-a4)| = " + std::to_string(lat.size()));
      c.require(lat.index_of(theta).has_value(), "theta missing from Con(A-a4)");
      std::size_t nontrivial = 0;
      for (auto const& p : lat.congruences) {
        if (!p.is_full()) {
          auto q = quotient(sub, p);
          ++nontrivial;
          bool known = is_isomorphic(q.algebra, sub)
                       || is_isomorphic(q.algebra, catalog::section2_B().algebra);
          c.require(known, "unexpected image of size " + std::to_string(q.algebra.size()));
        }
      }
      c.instances = lat.size();
      c.note("Con(A-a4) = {id, theta, full}; nontrivial images: "
             + std::to_string(nontrivial));
    }

    void chain_si(Ctx& c) {
      std::vector<FiniteAlgebra> chains{catalog::section2_A(),
                                        catalog::section2_A_minus_a4().algebra,
                                        catalog::section2_B().algebra};
      std::string evidence;
      for (auto const& C : chains) {
        auto    lat  = congruence_lattice(C);
        auto    mono = monolith(lat);
        Element s    = second_largest(C);
        auto    cg   = principal_congruence(C, s, C.constant("one"));
        c.require(is_si(lat), C.name() + " is not SI");
        c.require(mono && *mono == cg, C.name() + ": monolith differs from Cg(second, 1)");
        evidence += (evidence.empty() ? "" : "; ") + C.name() + ": monolith Cg("
                    + C.element_name(s) + ",1) = " + cg.to_string();
        ++c.instances;
      }
      c.note(evidence);
    }

    void si_list(Ctx& c) {
      auto                       A  = catalog::section2_A();
      auto                       hs = hs_classify(A);
      std::vector<FiniteAlgebra> expected{
          A, catalog::section2_A_minus_a4().algebra, catalog::section2_B().algebra};
      auto                     si = hs.si_classes();
      for (auto const& e : expected) {
        std::size_t hits = 0;
        for (std::size_t cls : si) {
          if (is_isomorphic(hs.classes[cls], e)) {
            ++hits;
          }
        }
        c.require(hits == 1, e.name() + " matches " + std::to_string(hits) + " SI classes");
      }
      c.require(si.size() == 3, std::to_string(si.size()) + " SI classes in HS(A)");
      c.instances = hs.members.size();
      std::string sizes;
      for (std::size_t cls : si) {
        sizes += (sizes.empty() ? "" : ",") + std::to_string(hs.classes[cls].size());
      }
      c.note(std::to_string(hs.members.size()) + " members of HS(A); SI classes of sizes "
             + sizes);
    }

    void phi_func(Ctx& c) {
      std::vector<FiniteAlgebra> algs{catalog::section2_A(),
                                      catalog::section2_A_minus_a4().algebra,
                                      catalog::section2_B().algebra};
      auto phi = catalog::section2_phi();
      auto v   = find_functionality_violation(algs, phi, 1);
      c.require(!v, v ? "two values in " + v->algebra : "");
      std::string domains;
      for (auto const& alg : algs) {
        auto t = induced_partial_function(alg, phi, 1);
        c.instances += alg.size() * alg.size();
        std::vector<Element> missing;
        for (Element x = 0; x < alg.size(); ++x) {
          if (!t.at({x})) {
            missing.push_back(x);
          }
        }
        // Total on A and B. On A-a4 nothing plus 0 lies in the image of dia,
        // so 0 is outside the domain there.
        bool expect_total = alg.name() != "A-a4";
        c.require(expect_total ? missing.empty() : missing == std::vector<Element>{0},
                  "domain of phi on " + alg.name() + " misses " + render(alg, missing));
        domains += (domains.empty() ? "" : ", ") + alg.name() + " "
                   + (missing.empty() ? "total" : "undefined at " + render(alg, missing));
      }
      c.require(is_pp(phi.formula), "phi is not pp");
      c.note("functional on A, A-a4, B (" + std::to_string(c.instances) + " pairs); " + domains);
    }

    void phi_table(Ctx& c) {
      auto A   = catalog::section2_A();
      auto phi = catalog::section2_phi();
      auto t   = induced_partial_function(A, phi, 1);
      for (Element a = 0; a < A.size(); ++a) {
        Element want = a == 0 ? catalog::kA3 : catalog::kA1;
        auto    got  = t.at({a});
        c.require(got && *got == want, "f^A(" + A.element_name(a) + ")");
        ++c.instances;
      }
      auto B  = catalog::section2_B().algebra;
      auto tb = induced_partial_function(B, phi, 1);
      for (Element a = 0; a < B.size(); ++a) {
        Element want = a == 0 ? B.constant("one") : Element{1};
        auto    got  = tb.at({a});
        c.require(got && *got == want, "f^B(" + B.element_name(a) + ")");
        ++c.instances;
      }
      c.note("f^A(0) = a3, f^A(x) = a1 otherwise; f^B(0) = " + B.element_name(B.constant("one"))
             + ", f^B(x) = a1 otherwise");
    }

    void h_fail(Ctx& c) {
      auto C     = catalog::section2_C().algebra;
      auto Q     = catalog::section2_C_mod_theta();
      auto theta = catalog::section2_theta();
      c.require(is_congruence(C, theta), "theta is not a congruence of C");
      auto qi = parse_formula("(exists z. plus(x,y) = dia(z)) -> g(x) = y", C.signature());
      auto holds = [&](FiniteAlgebra const& alg, Element x, Element y) {
        return eval_formula(alg, qi, {{"x", x}, {"y", y}});
      };
      for (Element x = 0; x < C.size(); ++x) {
        for (Element y = 0; y < C.size(); ++y) {
          c.require(holds(C, x, y), "quasi-identity fails in C at x = " + C.element_name(x));
          ++c.instances;
        }
      }
      FiniteAlgebra const& D   = Q.algebra;
      Element              one = D.constant("one");
      std::vector<std::string> failing;
      for (Element x = 0; x < D.size(); ++x) {
        for (Element y = 0; y < D.size(); ++y) {
          if (!holds(D, x, y)) {
            failing.push_back("(" + D.element_name(x) + "," + D.element_name(y) + ")");
          }
          ++c.instances;
        }
      }
      c.require(!holds(D, 0, one), "quasi-identity holds in C/theta at (0, 1)");
      Element g0 = D.apply(D.signature().index_of("g"), Element{0});
      c.require(g0 == 3 && g0 != one, "g(0) = " + D.element_name(g0) + " in C/theta");
      std::string list;
      for (auto const& f : failing) {
        list += (list.empty() ? "" : " ") + f;
      }
      c.note("holds on all of C; fails in C/theta at " + list + "; g(0) = "
             + D.element_name(g0) + " != " + D.element_name(one));
    }

    ////////////////////////////////////////////////////////////////////////
    // Powerset algebras
    ////////////////////////////////////////////////////////////////////////

    void heyting(Ctx& c) {
      std::vector<FiniteAlgebra> algs{catalog::section2_A(),
                                      catalog::section2_A_minus_a4().algebra,
                                      catalog::section2_B().algebra};
      for (std::size_t i = 0; i <= c.n; ++i) {
        algs.push_back(catalog::An(i));
      }
      for (auto const& H : algs) {
        std::size_t meet = H.signature().index_of("meet");
        std::size_t imp  = H.signature().index_of("imp");
        for (Element a = 0; a < H.size(); ++a) {
          for (Element b = 0; b < H.size(); ++b) {
            for (Element x = 0; x < H.size(); ++x) {
              bool lhs = leq(H, H.apply(meet, a, x), b);
              bool rhs = leq(H, x, H.apply(imp, a, b));
              c.require(lhs == rhs, "residuation fails in " + H.name());
              ++c.instances;
            }
          }
        }
      }
      c.note("a /\\ c <= b iff c <= a -> b on A, A-a4, B, A0..A" + std::to_string(c.n) + " ("
             + std::to_string(c.instances) + " triples)");
    }

    void eq1_8(Ctx& c) {
      std::string literal_eq3;
      for (std::size_t n = 0; n <= c.n; ++n) {
        auto    A    = catalog::An(n);
        auto    meet = A.signature().index_of("meet");
        auto    join = A.signature().index_of("join");
        auto    imp  = A.signature().index_of("imp");
        Element one  = A.constant("one");
        Element zero = A.constant("zero");
        Element e    = catalog::an_e(n);
        auto    neg  = [&](Element x) { return heyting_neg(A, x); };
        auto    tag  = [&](char const* eq, Element a) {
          return std::string(eq) + " fails in " + A.name() + " at " + A.element_name(a);
        };
        std::vector<std::string> eq3_fail;
        for (Element a = 0; a < A.size(); ++a) {
          for (Element b = 0; b < A.size(); ++b) {
            c.require((A.apply(join, a, b) == one) == (a == one || b == one), tag("join = 1 iff a side is 1", a));
            c.require(leq(A, a, b) == (A.apply(imp, a, b) == one), tag("a <= b iff a -> b = 1", a));
            if (leq(A, a, b)) {
              c.require(leq(A, neg(neg(a)), neg(neg(b))), tag("not-not is monotone", a));
            }
            c.instances += 3;
          }
          bool in_range = a != zero && leq(A, a, e);
          c.require(in_range == (A.apply(join, a, neg(a)) == e), tag("a \\/ not a = e iff 0 < a <= e", a));
          bool special = a == zero || a == e || a == one;
          if (special != (neg(neg(a)) == one)) {
            eq3_fail.push_back(A.element_name(a));
          }
          // The statement that holds: only e and 1 have double negation 1
          // (in A0, where e = 0, only 1).
          c.require(((a == e && a != zero) || a == one) == (neg(neg(a)) == one),
                    tag("not-not a = 1 iff a in {e,1}, a != 0", a));
          c.require((a != e || a == zero) == (neg(neg(a)) == a), tag("not-not a = a off e", a));
          c.instances += 4;
        }
        // "a in {0,e,1} iff not-not a = 1" fails exactly at 0, where
        // not-not 0 = 0.
        c.require(eq3_fail == std::vector<std::string>{"0"},
                  "\"a in {0,e,1} iff not-not a = 1\" fails in " + A.name() + " on an unexpected set");
        literal_eq3 = eq3_fail.empty() ? "" : eq3_fail.front();

        // Meets of up to three negations, where the enumeration stays small.
        for (std::size_t m = 1; m <= 3; ++m) {
          if (table_length(A.size(), m) > 5000) {
            break;
          }
          std::vector<Element> xs(m, 0);
          while (true) {
            Element acc      = one;
            bool    all_zero = true;
            for (Element x : xs) {
              acc      = A.apply(meet, acc, neg(x));
              all_zero = all_zero && x == zero;
            }
            c.require((acc == one) == all_zero, tag("meet of negations = 1 iff all are 0", xs[0]));
            ++c.instances;
            std::size_t i = m;
            while (i > 0 && ++xs[i - 1] == A.size()) {
              xs[--i] = 0;
            }
            if (i == 0) {
              break;
            }
          }
        }

        // Atom decomposition on every subalgebra.
        for (auto const& s : all_subuniverses(A)) {
          std::vector<Element> atoms;
          for (Element b : s.elements) {
            if (b == zero) {
              continue;
            }
            bool minimal = std::none_of(s.elements.begin(), s.elements.end(), [&](Element x) {
              return x != zero && x != b && leq(A, x, b);
            });
            if (minimal) {
              atoms.push_back(b);
            }
          }
          for (Element a : s.elements) {
            if (a != one) {
              Element acc = zero;
              for (Element b : atoms) {
                if (leq(A, b, a)) {
                  acc = A.apply(join, acc, b);
                }
              }
              c.require(acc == a, tag("a is the join of its atoms", a));
            }
            for (Element b : atoms) {
              bool below     = leq(A, b, a);
              bool below_neg = leq(A, b, neg(a));
              c.require((below && !below_neg) || (!below && below_neg), tag("atom below exactly one of a, not a", a));
            }
            c.instances += 1 + atoms.size();
          }
        }
      }
      c.note("join, negation, atom and order identities hold on A0..A" + std::to_string(c.n)
             + "; \"a in {0,e,1} iff not-not a = 1\" fails only at a = " + literal_eq3
             + " (not-not 0 = 0), while a in {e,1} iff not-not a = 1 holds");
    }

    bool phi_relation(std::size_t n, std::size_t k, Element a, Element b) {
      Element e   = catalog::an_e(n);
      Element top = catalog::an_top(n);
      if (a == 0 || a == e || a == top) {
        return b == top;
      }
      std::size_t atoms = catalog::atom_count(a);
      return atoms <= k ? b == top : b == e;
    }

    void phi_char(Ctx& c) {
      auto A = catalog::An(c.n);
      for (std::size_t k = 1; k + 1 <= c.n; ++k) {
        auto phi   = catalog::phi(k, c.n);
        auto sig   = designate(phi, 1);
        auto table = solution_table_parallel(A, phi, sig);
        c.require(is_pp(phi.formula), "phi is not pp");
        c.require(bound_variable_count(phi.formula) == k * (c.n + 2),
                  "unexpected bound variable count");
        for (Element a = 0; a < A.size(); ++a) {
          for (Element b = 0; b < A.size(); ++b) {
            bool got = std::binary_search(table[a].begin(), table[a].end(), b);
            c.require(got == phi_relation(c.n, k, a, b),
                      "phi(" + std::to_string(k) + "," + std::to_string(c.n) + ") at ("
                          + A.element_name(a) + "," + A.element_name(b) + ")");
            ++c.instances;
          }
        }
      }
      // Naive cross-check where the full enumeration of the bound variables
      // is affordable.
      auto        phi1  = catalog::phi(1, c.n);
      std::size_t naive = 0;
      long double work  = 1;
      for (std::size_t i = 0; i < bound_variable_count(phi1.formula); ++i) {
        work *= static_cast<long double>(A.size());
      }
      if (work <= 1e5L) {
        auto x = phi1.variable("x");
        auto y = phi1.variable("y");
        for (Element a = 0; a < A.size(); ++a) {
          for (Element b = 0; b < A.size(); ++b) {
            std::vector<Element> env(phi1.variables.size(), kUnassigned);
            env[x] = a;
            env[y] = b;
            c.require(eval_formula(A, phi1.formula, env)
                          == eval_exists_decomposed(A, phi1.formula, env),
                      "naive and decomposed evaluation disagree");
            ++naive;
          }
        }
      }
      c.instances += naive;
      c.note("characterization holds on all pairs for k = 1.." + std::to_string(c.n - 1)
             + (naive ? "; decomposed = naive on " + std::to_string(naive) + " pairs of phi(1,"
                            + std::to_string(c.n) + ")"
                      : "; naive cross-check skipped (enumeration too large)"));
    }

    void fkn(Ctx& c) {
      auto A = catalog::An(c.n);
      for (std::size_t k = 1; k + 1 <= c.n; ++k) {
        auto got  = induced_partial_function(A, catalog::phi(k, c.n), 1);
        auto want = catalog::fkn_table(c.n, k);
        c.require(got.is_total(A.size()), "f(" + std::to_string(k) + ") is not total");
        c.require(got == want, "f(" + std::to_string(k) + ") differs from the expected table");
        c.instances += A.size();
      }
      c.note("phi(k," + std::to_string(c.n) + ") induces the expected total table for k = 1.."
             + std::to_string(c.n - 1));
    }

    void fsi_an(Ctx& c) {
      auto A   = catalog::An(c.n);
      auto hs  = hs_classify(A);
      auto fsi = hs.fsi_classes();
      c.require(fsi.size() == c.n + 1, std::to_string(fsi.size()) + " FSI classes");
      for (std::size_t i = 0; i <= c.n; ++i) {
        auto        Ai   = catalog::An(i);
        std::size_t hits = 0;
        for (std::size_t cls : fsi) {
          hits += hs.classes[cls].size() == Ai.size() && is_isomorphic(hs.classes[cls], Ai);
        }
        c.require(hits == 1, Ai.name() + " matches " + std::to_string(hits) + " FSI classes");
      }
      c.instances = hs.members.size();
      c.note(std::to_string(hs.members.size()) + " members of HS(" + A.name() + "), "
             + std::to_string(fsi.size()) + " FSI classes = A0..A" + std::to_string(c.n));
    }

    void con_pres(Ctx& c) {
      auto B = catalog::Bn(c.n);
      for (auto const& s : all_subuniverses(B)) {
        auto sub = subalgebra(B, s).algebra;
        auto l1  = congruence_lattice(sub).congruences;
        auto l2  = congruence_lattice(sub.reduct(kHeyting)).congruences;
        std::sort(l1.begin(), l1.end());
        std::sort(l2.begin(), l2.end());
        c.require(l1 == l2, "Con differs on " + render(B, s.elements));
        ++c.instances;
      }
      c.note("Con(C) = Con(C|L) for all " + std::to_string(c.instances) + " subalgebras of "
             + B.name());
    }

    void fsi_bn(Ctx& c) {
      auto B   = catalog::Bn(c.n);
      auto hs  = hs_classify(B);
      auto fsi = hs.fsi_classes();
      std::set<std::size_t> sub_classes;
      for (auto const& s : all_subuniverses(B)) {
        auto sub = subalgebra(B, s).algebra;
        c.require(is_fsi(sub), "subalgebra " + render(B, s.elements) + " is not FSI");
        for (std::size_t i = 0; i < hs.classes.size(); ++i) {
          if (is_isomorphic(hs.classes[i], sub)) {
            sub_classes.insert(i);
            break;
          }
        }
      }
      c.require(std::set<std::size_t>(fsi.begin(), fsi.end()) == sub_classes,
                "FSI classes of HS(" + B.name() + ") differ from IS(" + B.name() + ")");
      c.instances = hs.members.size();
      c.note(std::to_string(hs.members.size()) + " members of HS(" + B.name() + "), "
             + std::to_string(fsi.size()) + " FSI classes, all in IS(" + B.name() + ")");
    }

    bool is_group(std::vector<Map> const& g) {
      std::set<Map> set(g.begin(), g.end());
      if (g.empty()) {
        return false;
      }
      Map id(g.front().size());
      std::iota(id.begin(), id.end(), Element{0});
      if (!set.count(id)) {
        return false;
      }
      for (auto const& a : g) {
        bool has_inverse = false;
        for (auto const& b : g) {
          if (!set.count(compose(a, b))) {
            return false;
          }
          has_inverse = has_inverse || compose(a, b) == id;
        }
        if (!has_inverse) {
          return false;
        }
      }
      return true;
    }

    void aut_sigma(Ctx& c) {
      auto A     = catalog::An(c.n);
      auto B     = catalog::Bn(c.n);
      auto aut_a = homs(A, A, HomKind::Bijective).maps;
      auto aut_b = homs(B, B, HomKind::Bijective).maps;
      std::vector<std::size_t> sigma(c.n);
      std::iota(sigma.begin(), sigma.end(), std::size_t{0});
      std::set<Map> induced;
      std::size_t   perms = 0;
      do {
        auto ra = atom_permutation_automorphism(A, sigma);
        auto rb = atom_permutation_automorphism(B, sigma);
        c.require(ra.is_automorphism, "sigma* is not an automorphism of " + A.name());
        c.require(rb.is_automorphism, "sigma* is not an automorphism of " + B.name());
        induced.insert(ra.map);
        ++perms;
      } while (std::next_permutation(sigma.begin(), sigma.end()));
      c.require(std::set<Map>(aut_a.begin(), aut_a.end()) == induced,
                "aut(" + A.name() + ") is not the set of sigma*");
      c.require(std::set<Map>(aut_b.begin(), aut_b.end()) == induced,
                "aut(" + B.name() + ") is not the set of sigma*");
      c.require(is_group(aut_a) && is_group(aut_b), "aut is not a group");
      c.instances = perms;
      c.note("|aut(" + A.name() + ")| = " + std::to_string(aut_a.size()) + ", |aut(" + B.name()
             + ")| = " + std::to_string(aut_b.size()) + ", all " + std::to_string(perms)
             + " sigma* are automorphisms");
    }

    void aut_fix(Ctx& c) {
      auto    B   = catalog::Bn(c.n);
      auto    aut = homs(B, B, HomKind::Bijective).maps;
      Element e   = catalog::an_e(c.n);
      for (auto const& s : all_subuniverses(B)) {
        for (Element b = 0; b < B.size(); ++b) {
          if (b == e || s.contains(b)) {
            continue;
          }
          bool found = std::any_of(aut.begin(), aut.end(), [&](Map const& h) {
            return h[b] != b
                   && std::all_of(s.elements.begin(), s.elements.end(),
                                  [&](Element a) { return h[a] == a; });
          });
          c.require(found, "no automorphism fixes " + render(B, s.elements) + " and moves "
                               + B.element_name(b));
          ++c.instances;
        }
      }
      c.note(std::to_string(c.instances) + " (subalgebra, element) pairs, each with a fixing "
             "automorphism that moves the element");
    }

    void aut_rigid(Ctx& c) {
      auto B   = catalog::Bn(c.n);
      auto aut = homs(B, B, HomKind::Bijective).maps;
      for (auto const& s : all_subuniverses(B)) {
        auto sub  = subalgebra(B, s).algebra;
        auto embs = homs(sub, B, HomKind::Injective).maps;
        for (auto const& g : embs) {
          for (auto const& h : embs) {
            bool found = std::any_of(
                aut.begin(), aut.end(), [&](Map const& i) { return compose(i, h) == g; });
            c.require(found, "embeddings of " + render(B, s.elements) + " not related by aut");
            ++c.instances;
          }
        }
      }
      c.note(std::to_string(c.instances) + " pairs of embeddings, each related by an "
             "automorphism");
    }

    void amalg(Ctx& c) {
      auto B       = catalog::Bn(c.n);
      auto members = subalgebra_classes(B);
      auto trivial = trivial_algebra(B.signature());
      members.push_back(trivial);
      std::vector<FiniteAlgebra> targets{B, trivial};
      auto                       report = check_amalgamation(members, targets);
      c.require(report.failures() == 0,
                std::to_string(report.failures()) + " spans without an amalgam");
      c.instances = report.spans.size();
      std::size_t into_b = std::count_if(report.spans.begin(), report.spans.end(),
                                         [](auto const& s) { return s.target == 0; });
      c.note(std::to_string(report.spans.size()) + " spans over "
             + std::to_string(members.size()) + " iso classes; "
             + std::to_string(into_b) + " amalgamated in " + B.name() + ", the rest in the "
             "trivial algebra");
    }

    void epic(Ctx& c) {
      auto B     = catalog::Bn(c.n);
      auto cases = check_epic_subalgebras(B);
      for (auto const& ec : cases) {
        c.require(ec.witness.has_value(), render(B, ec.inner) + " is epic in "
                                              + render(B, ec.outer));
      }
      c.instances = cases.size();
      c.note(std::to_string(cases.size()) + " proper inclusions, each separated by an "
             "endomorphism");
    }

    void noneq(Ctx& c) {
      auto    B    = catalog::Bn(c.n);
      Element a    = 1;  // the atom {0}
      Element na   = heyting_neg(B, a);
      Element e    = catalog::an_e(c.n);
      Element top  = catalog::an_top(c.n);
      auto    s    = sg_closure(B, std::vector<Element>{a});
      std::vector<Element> expected{0, a, na, e, top};
      std::sort(expected.begin(), expected.end());
      c.require(s.elements == expected, "Sg(a) = " + render(B, s.elements));
      auto f1 = B.signature().index_of("f1");
      c.require(B.apply(f1, a) == top, "f1(a) = " + B.element_name(B.apply(f1, a)));
      c.require(B.apply(f1, na) == e, "f1(not a) = " + B.element_name(B.apply(f1, na)));
      auto sub     = subalgebra(B, s);
      auto reduct  = sub.algebra.reduct(kHeyting);
      c.require(is_isomorphic(reduct, catalog::An(2)), "Heyting reduct of Sg(a) is not A2");
      Map swap(sub.algebra.size());
      for (Element i = 0; i < swap.size(); ++i) {
        Element x = sub.embedding[i];
        Element y = x == a ? na : x == na ? a : x;
        swap[i]   = static_cast<Element>(
            std::find(sub.embedding.begin(), sub.embedding.end(), y) - sub.embedding.begin());
      }
      c.require(is_homomorphism(reduct, reduct, swap), "swap is not an automorphism of C|L");
      auto defect = homomorphism_defect(sub.algebra, sub.algebra, swap);
      c.require(defect.has_value(), "swap is a homomorphism of C");
      c.instances = 5;
      c.note("Sg(a) = " + render(B, s.elements) + "; f1(a) = 1, f1(not a) = e; swap fails: "
             + defect.value_or(""));
    }

    struct Claim {
      ClaimInfo                info;
      std::function<void(Ctx&)> run;
    };

    std::vector<Claim> const& claims() {
      static std::vector<Claim> const all{
          {{"S2.SG-EMPTY", "chain algebra A: subalgebra generated by the empty set", false},
           sg_empty},
          {{"S2.SUBALGS", "chain algebra A: its two subalgebras", false}, subalgs},
          {{"S2.THETA-CONG", "chain algebra A: theta gluing a6 and 1 on A-a4", false},
           theta_cong},
          {{"S2.SIMPLE-A", "chain algebra A: simplicity", false}, simple_a},
          {{"S2.CON-A4", "chain algebra A: homomorphic images of A-a4", false}, con_a4},
          {{"S2.CHAIN-SI", "chain algebra A: chains are SI with monolith Cg(second, 1)", false},
           chain_si},
          {{"S2.SI-LIST", "chain algebra A: SI members of the variety", false}, si_list},
          {{"S2.PHI-FUNC", "chain algebra A: phi defines an implicit operation", false},
           phi_func},
          {{"S2.PHI-TABLE", "chain algebra A: table of the defined operation", false},
           phi_table},
          {{"S2.H-FAIL", "chain algebra A: expansion not closed under H", false}, h_fail},
          {{"S3.HEYTING", "Heyting residuation on every catalog algebra", true}, heyting},
          {{"S3.EQ1-8", "powerset algebras: elementary identities", true}, eq1_8},
          {{"S3.PHI-CHAR", "powerset algebras: relation defined by phi(k,n)", true}, phi_char},
          {{"S3.FKN", "powerset algebras: f(k,n) is total", true}, fkn},
          {{"S3.FSI-AN", "powerset algebras: FSI members of HS(An)", true}, fsi_an},
          {{"S3.CON-PRES", "expansion Bn: congruences agree with the Heyting reduct", true},
           con_pres},
          {{"S3.FSI-BN", "expansion Bn: FSI members are IS(Bn)", true}, fsi_bn},
          {{"S3.AUT-SIGMA", "expansion Bn: atom permutations are automorphisms", true},
           aut_sigma},
          {{"S3.AUT-FIX", "expansion Bn: automorphisms fixing a subalgebra", true}, aut_fix},
          {{"S3.AUT-RIGID", "expansion Bn: embeddings agree up to automorphism", true},
           aut_rigid},
          {{"S3.AMALG", "expansion Bn: amalgamation among FSI members", true}, amalg},
          {{"S3.EPIC", "expansion Bn: no proper epic subalgebras", true}, epic},
          {{"S3.NONEQ", "expansion Bn: atom swap on Sg(atom) breaks f1", true}, noneq},
      };
      return all;
    }

    std::pair<std::string, std::optional<std::size_t>> split_id(std::string_view id) {
      auto q = id.find('?');
      if (q == std::string_view::npos) {
        return {std::string(id), std::nullopt};
      }
      auto rest = id.substr(q + 1);
      if (rest.substr(0, 2) != "n=") {
        throw Error("unsupported claim parameter in '" + std::string(id) + "'");
      }
      std::size_t n      = 0;
      auto        digits = rest.substr(2);
      auto [p, ec]       = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc() || p != digits.data() + digits.size()) {
        throw Error("bad parameter in claim id '" + std::string(id) + "'");
      }
      return {std::string(id.substr(0, q)), n};
    }

  }  // namespace

  std::string_view to_string(Status s) {
    switch (s) {
      case Status::Pass:
        return "pass";
      case Status::Fail:
        return "fail";
      default:
        return "skipped";
    }
  }

  std::vector<ClaimInfo> const& registry() {
    static std::vector<ClaimInfo> const infos = [] {
      std::vector<ClaimInfo> out;
      for (auto const& c : claims()) {
        out.push_back(c.info);
      }
      return out;
    }();
    return infos;
  }

  ClaimResult run_claim(std::string_view id, std::size_t n) {
    auto [base, override_n] = split_id(id);
    if (override_n) {
      n = *override_n;
    }
    if (n < 3 || n > kMaxHarnessN) {
      throw GuardError("n = " + std::to_string(n) + " is outside the supported range 3.."
                       + std::to_string(kMaxHarnessN) + " (size guard)");
    }
    auto it = std::find_if(
        claims().begin(), claims().end(), [&](Claim const& c) { return c.info.id == base; });
    if (it == claims().end()) {
      throw Error("unknown claim id '" + base + "'");
    }
    ClaimResult r;
    r.id             = it->info.parametric ? base + "?n=" + std::to_string(n) : base;
    r.paper_location = it->info.location;
    Ctx  ctx{n, {}, {}, 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
      it->run(ctx);
    } catch (std::exception const& e) {
      ctx.failures.push_back(std::string("exception: ") + e.what());
    }
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    r.instances = ctx.instances;
    if (ctx.failures.empty()) {
      r.status = Status::Pass;
      for (auto const& s : ctx.notes) {
        r.evidence += (r.evidence.empty() ? "" : "; ") + s;
      }
    } else {
      r.status = Status::Fail;
      for (std::size_t i = 0; i < ctx.failures.size() && i < 5; ++i) {
        r.evidence += (i ? "; " : "") + ctx.failures[i];
      }
      if (ctx.failures.size() > 5) {
        r.evidence += "; and " + std::to_string(ctx.failures.size() - 5) + " more";
      }
    }
    return r;
  }

  std::vector<ClaimResult> run_all(std::string_view filter, std::size_t n) {
    std::vector<std::string> ids;
    for (auto const& info : registry()) {
      if (info.id.starts_with(filter)) {
        ids.push_back(info.id);
      }
    }
    if (n < 3 || n > kMaxHarnessN) {
      throw GuardError("n = " + std::to_string(n) + " is outside the supported range 3.."
                       + std::to_string(kMaxHarnessN) + " (size guard)");
    }
    // Warm the shared expansion once rather than in every thread.
    if (std::any_of(ids.begin(), ids.end(), [](auto const& id) { return id.starts_with("S3."); })) {
      catalog::Bn(n);
    }
    std::vector<ClaimResult> out(ids.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ids.size()); ++i) {
      out[static_cast<std::size_t>(i)] = run_claim(ids[static_cast<std::size_t>(i)], n);
    }
    return out;
  }

  std::string report_json(std::vector<ClaimResult> const& results) {
    nlohmann::json claims = nlohmann::json::array();
    std::size_t    pass = 0, fail = 0;
    for (auto const& r : results) {
      claims.push_back({{"id", r.id},
                        {"paper_location", r.paper_location},
                        {"status", to_string(r.status)},
                        {"evidence", r.evidence},
                        {"elapsed_ms", r.elapsed_ms},
                        {"instances", r.instances}});
      pass += r.status == Status::Pass;
      fail += r.status == Status::Fail;
    }
    nlohmann::json j{{"claims", claims}, {"summary", {{"pass", pass}, {"fail", fail}}}};
    return j.dump(2) + "\n";
  }

  std::string report_text(std::vector<ClaimResult> const& results) {
    std::ostringstream out;
    std::size_t        pass = 0;
    for (auto const& r : results) {
      out << (r.status == Status::Pass ? "PASS " : "FAIL ") << r.id << " (" << r.elapsed_ms
          << " ms, " << r.instances << " instances): " << r.evidence << "\n";
      pass += r.status == Status::Pass;
    }
    out << pass << "/" << results.size() << " claims pass\n";
    return out.str();
  }

}  // namespace uaforge::harness
