// Shared helpers for the unit tests: a seeded generator of small random
// algebras and brute-force oracles that only read operation tables.

#ifndef UAFORGE_TESTS_SUPPORT_HPP_
#define UAFORGE_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "uaforge/algebra.hpp"
#include "uaforge/partition.hpp"

namespace testing {

  using uaforge::Element;
  using uaforge::FiniteAlgebra;

  // Signature f/2, u/1, c/0 (the constant is optional so that the empty set
  // can be a subuniverse).
  inline FiniteAlgebra random_algebra(std::mt19937& rng, std::size_t size, bool constant) {
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(size - 1));
    std::vector<uaforge::OperationSymbol> symbols{{"f", 2}, {"u", 1}};
    std::vector<std::vector<Element>>     tables(2);
    for (std::size_t i = 0; i < size * size; ++i) {
      tables[0].push_back(pick(rng));
    }
    for (std::size_t i = 0; i < size; ++i) {
      tables[1].push_back(pick(rng));
    }
    if (constant) {
      symbols.push_back({"c", 0});
      tables.push_back({pick(rng)});
    }
    return FiniteAlgebra("R" + std::to_string(size),
                         uaforge::Signature(std::move(symbols)),
                         size,
                         std::move(tables));
  }

  // Calls visit(args) for every tuple in {0..size-1}^arity, row-major.
  inline void for_each_tuple(std::size_t                                      size,
                             std::size_t                                      arity,
                             std::function<void(std::vector<Element> const&)> visit) {
    std::vector<Element> args(arity, 0);
    while (true) {
      visit(args);
      std::size_t i = arity;
      while (i > 0) {
        if (++args[i - 1] < size) {
          break;
        }
        args[i - 1] = 0;
        --i;
      }
      if (i == 0) {
        return;
      }
    }
  }

  inline bool closed(FiniteAlgebra const& alg, std::vector<char> const& in) {
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      std::size_t arity = alg.signature()[op].arity;
      bool        ok    = true;
      std::vector<Element> args(arity, 0);
      for_each_tuple(alg.size(), arity, [&](std::vector<Element> const& t) {
        if (!ok) {
          return;
        }
        for (Element x : t) {
          if (!in[x]) {
            return;
          }
        }
        ok = in[alg.apply(op, t)] != 0;
      });
      if (!ok) {
        return false;
      }
    }
    return true;
  }

  // Every nonempty subset closed under all operations, as sorted vectors.
  inline std::set<std::vector<Element>> brute_subuniverses(FiniteAlgebra const& alg) {
    std::set<std::vector<Element>> out;
    std::size_t const              n = alg.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<char> in(n);
      for (std::size_t i = 0; i < n; ++i) {
        in[i] = (mask >> i & 1U) != 0;
      }
      if (closed(alg, in)) {
        std::vector<Element> s;
        for (Element i = 0; i < n; ++i) {
          if (in[i]) {
            s.push_back(i);
          }
        }
        out.insert(s);
      }
    }
    return out;
  }

  // Least closed superset of gens, as the intersection of all closed
  // supersets.
  inline std::vector<Element> brute_sg(FiniteAlgebra const& alg, std::vector<Element> const& gens) {
    std::vector<char> keep(alg.size(), 1);
    bool              any = false;
    std::size_t const n   = alg.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<char> in(n);
      for (std::size_t i = 0; i < n; ++i) {
        in[i] = (mask >> i & 1U) != 0;
      }
      if (!std::all_of(gens.begin(), gens.end(), [&](Element g) { return in[g] != 0; })) {
        continue;
      }
      if (!closed(alg, in)) {
        continue;
      }
      any = true;
      for (std::size_t i = 0; i < n; ++i) {
        keep[i] = keep[i] && in[i];
      }
    }
    std::vector<Element> out;
    for (Element i = 0; any && i < n; ++i) {
      if (keep[i]) {
        out.push_back(i);
      }
    }
    return out;
  }

  inline bool compatible(FiniteAlgebra const& alg, std::vector<Element> const& label) {
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      std::size_t arity = alg.signature()[op].arity;
      bool        ok    = true;
      // Checking one changed coordinate at a time is enough.
      for_each_tuple(alg.size(), arity, [&](std::vector<Element> const& t) {
        if (!ok) {
          return;
        }
        for (std::size_t i = 0; i < arity && ok; ++i) {
          for (Element y = 0; y < alg.size(); ++y) {
            if (label[y] != label[t[i]]) {
              continue;
            }
            auto s = t;
            s[i]   = y;
            ok     = label[alg.apply(op, t)] == label[alg.apply(op, s)];
            if (!ok) {
              break;
            }
          }
        }
      });
      if (!ok) {
        return false;
      }
    }
    return true;
  }

  // All congruences by enumerating restricted growth strings.
  inline std::vector<std::vector<Element>> brute_congruences(FiniteAlgebra const& alg) {
    std::vector<std::vector<Element>> out;
    std::size_t const                 n = alg.size();
    std::vector<Element>              label(n, 0);
    std::function<void(std::size_t, Element)> rec = [&](std::size_t i, Element used) {
      if (i == n) {
        if (compatible(alg, label)) {
          out.push_back(label);
        }
        return;
      }
      for (Element b = 0; b <= used; ++b) {
        label[i] = b;
        rec(i + 1, std::max<Element>(used, b + 1));
      }
    };
    if (n > 0) {
      label[0] = 0;
      rec(1, 1);
    }
    return out;
  }

  inline bool brute_is_hom(FiniteAlgebra const& a, FiniteAlgebra const& b, std::vector<Element> const& m) {
    for (std::size_t op = 0; op < a.signature().size(); ++op) {
      std::size_t opb   = b.signature().index_of(a.signature()[op].name);
      std::size_t arity = a.signature()[op].arity;
      bool        ok    = true;
      for_each_tuple(a.size(), arity, [&](std::vector<Element> const& t) {
        if (!ok) {
          return;
        }
        std::vector<Element> img(arity);
        for (std::size_t i = 0; i < arity; ++i) {
          img[i] = m[t[i]];
        }
        ok = m[a.apply(op, t)] == b.apply(opb, img);
      });
      if (!ok) {
        return false;
      }
    }
    return true;
  }

  // Every homomorphism a -> b by trying all |b|^|a| maps.
  inline std::vector<std::vector<Element>> brute_homs(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    std::vector<std::vector<Element>> out;
    for_each_tuple(b.size(), a.size(), [&](std::vector<Element> const& m) {
      if (brute_is_hom(a, b, m)) {
        out.push_back(m);
      }
    });
    return out;
  }

  // Automorphisms by trying all permutations.
  inline std::vector<std::vector<Element>> brute_automorphisms(FiniteAlgebra const& a) {
    std::vector<std::vector<Element>> out;
    std::vector<Element>              p(a.size());
    for (Element i = 0; i < a.size(); ++i) {
      p[i] = i;
    }
    do {
      if (brute_is_hom(a, a, p)) {
        out.push_back(p);
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }

  inline bool leq(FiniteAlgebra const& alg, Element x, Element y) {
    std::size_t meet = alg.signature().index_of("meet");
    return alg.apply(meet, x, y) == x;
  }

}  // namespace testing

#endif  // UAFORGE_TESTS_SUPPORT_HPP_
