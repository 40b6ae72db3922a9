#include "uaforge/congruence.hpp"

#include <algorithm>
#include <unordered_set>

#include "uaforge/error.hpp"

namespace uaforge {

  namespace {

    bool next_tuple(std::vector<Element>& digits, std::size_t base) {
      for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < base) {
          return true;
        }
        digits[i] = 0;
      }
      return false;
    }

    // Processes the worklist of merged pairs to a fixpoint.
    void close_congruence(FiniteAlgebra const&                       alg,
                          UnionFind&                                 uf,
                          std::vector<std::pair<Element, Element>>& work) {
      Signature const&     sig = alg.signature();
      std::size_t const    n   = alg.size();
      std::vector<Element> args;
      while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        for (std::size_t op = 0; op < sig.size(); ++op) {
          std::size_t const r = sig[op].arity;
          if (r == 0) {
            continue;
          }
          std::vector<Element> const& table = alg.table(op);
          // Position p varies, the other r-1 arguments range over A.
          for (std::size_t p = 0; p < r; ++p) {
            args.assign(r, 0);
            do {
              if (args[p] != 0) {
                continue;  // position p is overwritten below; visit each frame once
              }
              std::size_t ix = 0;
              std::size_t iy = 0;
              for (std::size_t k = 0; k < r; ++k) {
                Element vx = k == p ? x : args[k];
                Element vy = k == p ? y : args[k];
                ix         = ix * n + vx;
                iy         = iy * n + vy;
              }
              Element u = table[ix];
              Element v = table[iy];
              if (uf.unite(u, v)) {
                work.emplace_back(u, v);
              }
            } while (next_tuple(args, n));
          }
        }
      }
    }

  }  // namespace

  bool is_congruence(FiniteAlgebra const& alg, Partition const& part) {
    if (part.size() != alg.size()) {
      throw Error("is_congruence: partition size " + std::to_string(part.size())
                  + " does not match algebra size " + std::to_string(alg.size()));
    }
    // Compatibility with every basic translation is equivalent to
    // compatibility with the operations, and it is enough to test each
    // element against its block representative.
    Signature const&     sig = alg.signature();
    std::size_t const    n   = alg.size();
    std::vector<Element> args;
    for (Element x = 0; x < n; ++x) {
      Element y = part.rep(x);
      if (x == y) {
        continue;
      }
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t const r = sig[op].arity;
        for (std::size_t p = 0; p < r; ++p) {
          args.assign(r, 0);
          do {
            if (args[p] != 0) {
              continue;
            }
            args[p]   = x;
            Element u = alg.apply(op, args);
            args[p]   = y;
            Element v = alg.apply(op, args);
            args[p]   = 0;
            if (!part.related(u, v)) {
              return false;
            }
          } while (next_tuple(args, n));
        }
      }
    }
    return true;
  }

  Partition principal_congruence(FiniteAlgebra const& alg, Element a, Element b) {
    if (a >= alg.size() || b >= alg.size()) {
      throw Error("principal_congruence: element out of range for '" + alg.name()
                  + "'");
    }
    UnionFind                                uf(alg.size());
    std::vector<std::pair<Element, Element>> work;
    if (uf.unite(a, b)) {
      work.emplace_back(a, b);
    }
    close_congruence(alg, uf, work);
    return uf.partition();
  }

  Partition congruence_generated(FiniteAlgebra const&                            alg,
                                 Partition const&                                start,
                                 std::vector<std::pair<Element, Element>> const& pairs) {
    if (start.size() != alg.size()) {
      throw Error("congruence_generated: size mismatch");
    }
    UnionFind                                uf(alg.size());
    std::vector<std::pair<Element, Element>> work;
    for (Element x = 0; x < alg.size(); ++x) {
      if (uf.unite(x, start.rep(x))) {
        work.emplace_back(x, start.rep(x));
      }
    }
    for (auto [x, y] : pairs) {
      if (x >= alg.size() || y >= alg.size()) {
        throw Error("congruence_generated: element out of range");
      }
      if (uf.unite(x, y)) {
        work.emplace_back(x, y);
      }
    }
    close_congruence(alg, uf, work);
    return uf.partition();
  }

  std::vector<PrincipalCongruence> all_principal_congruences_serial(
      FiniteAlgebra const& alg) {
    std::vector<PrincipalCongruence> out;
    std::size_t const                n = alg.size();
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        out.push_back({a, b, principal_congruence(alg, a, b)});
      }
    }
    return out;
  }

  std::vector<PrincipalCongruence> all_principal_congruences_parallel(
      FiniteAlgebra const& alg) {
    std::size_t const                  n = alg.size();
    std::vector<std::pair<Element, Element>> pairs;
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        pairs.emplace_back(a, b);
      }
    }
    std::vector<Partition> results(pairs.size());
    long const             count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      results[i] = principal_congruence(alg, pairs[i].first, pairs[i].second);
    }
    std::vector<PrincipalCongruence> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out.push_back({pairs[i].first, pairs[i].second, std::move(results[i])});
    }
    return out;
  }

  std::optional<std::size_t> CongruenceLattice::index_of(Partition const& p) const {
    for (std::size_t i = 0; i < congruences.size(); ++i) {
      if (congruences[i] == p) {
        return i;
      }
    }
    return std::nullopt;
  }

  CongruenceLattice congruence_lattice(FiniteAlgebra const& alg) {
    std::size_t const n = alg.size();
    if (n > kSizeGuard) {
      throw GuardError("congruence_lattice: algebra '" + alg.name() + "' has "
                       + std::to_string(n) + " elements, guard is "
                       + std::to_string(kSizeGuard));
    }
    std::unordered_set<Partition, PartitionHash> seen;
    std::vector<Partition>                       principals;
    for (auto& pc : all_principal_congruences_parallel(alg)) {
      if (seen.insert(pc.congruence).second) {
        principals.push_back(std::move(pc.congruence));
      }
    }
    std::vector<Partition> all;
    Partition              id = Partition::identity(n);
    seen.insert(id);
    all.push_back(id);
    all.insert(all.end(), principals.begin(), principals.end());
    // Every congruence of a finite algebra is a join of principal ones, and
    // the join of congruences is their equivalence join.
    for (std::size_t head = 1; head < all.size(); ++head) {
      for (auto const& p : principals) {
        Partition j = all[head].join(p);
        if (seen.insert(j).second) {
          all.push_back(std::move(j));
        }
      }
    }
    std::sort(all.begin(), all.end(), [](Partition const& x, Partition const& y) {
      std::size_t bx = x.block_count();
      std::size_t by = y.block_count();
      if (bx != by) {
        return bx > by;
      }
      return x < y;
    });
    CongruenceLattice lat;
    lat.congruences = std::move(all);
    std::size_t const m = lat.congruences.size();
    lat.leq.assign(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        lat.leq[i][j] = lat.congruences[i].refines(lat.congruences[j]);
      }
    }
    return lat;
  }

  std::optional<Partition> monolith(CongruenceLattice const& lat) {
    if (lat.size() < 2) {
      return std::nullopt;
    }
    // Candidate: the atoms of the lattice. A monolith exists iff there is
    // exactly one.
    std::optional<std::size_t> atom;
    for (std::size_t i = 1; i < lat.size(); ++i) {
      bool is_atom = true;
      for (std::size_t j = 1; j < lat.size(); ++j) {
        if (j != i && lat.leq[j][i]) {
          is_atom = false;
          break;
        }
      }
      if (is_atom) {
        if (atom) {
          return std::nullopt;
        }
        atom = i;
      }
    }
    return lat.congruences[*atom];
  }

  bool is_si(CongruenceLattice const& lat) {
    return monolith(lat).has_value();
  }

  bool is_fsi(CongruenceLattice const& lat) {
    if (lat.size() < 2) {
      return false;
    }
    Partition const& id = lat.congruences[lat.bottom()];
    for (std::size_t i = 1; i < lat.size(); ++i) {
      for (std::size_t j = i; j < lat.size(); ++j) {
        if (lat.congruences[i].meet(lat.congruences[j]) == id) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_simple(FiniteAlgebra const& alg) {
    return congruence_lattice(alg).size() == 2;
  }

  bool is_si(FiniteAlgebra const& alg) {
    return is_si(congruence_lattice(alg));
  }

  bool is_fsi(FiniteAlgebra const& alg) {
    return is_fsi(congruence_lattice(alg));
  }

}  // namespace uaforge
