#include "uaforge/analysis.hpp"

#include <algorithm>

#include "uaforge/congruence.hpp"
#include "uaforge/error.hpp"

namespace uaforge {

  namespace {

    void require_same_signature(FiniteAlgebra const& a, FiniteAlgebra const& b) {
      if (!(a.signature() == b.signature())) {
        throw Error("algebras " + a.name() + " and " + b.name() + " have different signatures");
      }
    }

    // Calls visit(args) for every tuple over pool of length arity that uses
    // at least one index >= lo.
    template <typename Visit>
    bool for_tuples(std::size_t                    arity,
                    std::span<Element const>       pool,
                    std::size_t                    lo,
                    Visit&&                        visit) {
      std::vector<std::size_t> idx(arity, 0);
      std::vector<Element>     args(arity);
      std::size_t const        hi = pool.size();
      if (arity == 0) {
        return lo == 0 ? visit(args) : true;
      }
      if (hi == 0) {
        return true;
      }
      while (true) {
        bool fresh = false;
        for (std::size_t i = 0; i < arity; ++i) {
          args[i] = pool[idx[i]];
          fresh   = fresh || idx[i] >= lo;
        }
        if (fresh && !visit(args)) {
          return false;
        }
        std::size_t i = arity;
        while (i > 0) {
          --i;
          if (++idx[i] < hi) {
            break;
          }
          idx[i] = 0;
          if (i == 0) {
            return true;
          }
        }
      }
    }

    // Per-element invariants preserved by isomorphisms.
    std::vector<std::vector<std::size_t>> profiles(FiniteAlgebra const& alg) {
      std::size_t const                     n = alg.size();
      std::vector<std::vector<std::size_t>> out(n);
      for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        std::size_t arity = alg.signature()[op].arity;
        for (Element x = 0; x < n; ++x) {
          auto& p = out[x];
          if (arity == 0) {
            p.push_back(alg.apply(op) == x);
          } else if (arity == 1) {
            p.push_back(alg.apply(op, x) == x);
            p.push_back(alg.apply(op, alg.apply(op, x)) == x);
            std::size_t pre = 0;
            for (Element y = 0; y < n; ++y) {
              pre += alg.apply(op, y) == x;
            }
            p.push_back(pre);
          } else if (arity == 2) {
            p.push_back(alg.apply(op, x, x) == x);
            std::size_t left = 0, right = 0, absorbs = 0, image = 0;
            for (Element y = 0; y < n; ++y) {
              left += alg.apply(op, x, y) == x;
              right += alg.apply(op, y, x) == x;
              absorbs += alg.apply(op, x, y) == y;
              for (Element z = 0; z < n; ++z) {
                image += alg.apply(op, y, z) == x;
              }
            }
            p.insert(p.end(), {left, right, absorbs, image});
          }
        }
      }
      return out;
    }

    class HomSearch {
     public:
      HomSearch(FiniteAlgebra const& a, FiniteAlgebra const& b, HomKind kind, std::size_t limit)
          : a_(a), b_(b), kind_(kind), limit_(limit), map_(a.size(), kUnassigned),
            used_(b.size(), false) {
        // Greedy generating set in closure discovery order.
        std::vector<Element> closed = sg_closure(a, {}).elements;
        std::vector<bool>    in(a.size(), false);
        for (Element x : closed) {
          in[x] = true;
        }
        std::vector<Element> gens;
        for (Element x = 0; x < a.size(); ++x) {
          if (!in[x]) {
            gens_.push_back(x);
            gens.push_back(x);
            for (Element y : sg_closure(a, gens).elements) {
              in[y] = true;
            }
          }
        }
        if (kind == HomKind::Bijective) {
          prof_a_ = profiles(a);
          prof_b_ = profiles(b);
        }
      }

      std::vector<Map> run() {
        if (kind_ != HomKind::All && a_.size() > b_.size()) {
          return {};
        }
        if (kind_ == HomKind::Bijective && a_.size() != b_.size()) {
          return {};
        }
        if (propagate(0)) {
          search(0);
        }
        std::sort(found_.begin(), found_.end());
        return std::move(found_);
      }

     private:
      bool assign(Element x, Element v) {
        if (map_[x] != kUnassigned) {
          return map_[x] == v;
        }
        if (kind_ != HomKind::All && used_[v]) {
          return false;
        }
        if (!prof_a_.empty() && prof_a_[x] != prof_b_[v]) {
          return false;
        }
        map_[x]  = v;
        used_[v] = true;
        trail_.push_back(x);
        return true;
      }

      void undo(std::size_t mark) {
        while (trail_.size() > mark) {
          Element x = trail_.back();
          trail_.pop_back();
          // Injective maps never share images, so clearing is exact there;
          // for plain homomorphisms used_ is not consulted.
          used_[map_[x]] = false;
          map_[x]        = kUnassigned;
        }
        if (kind_ == HomKind::All) {
          std::fill(used_.begin(), used_.end(), false);
        }
      }

      // Closes the partial map under the operations, starting from the
      // elements assigned at or after position lo of the trail.
      bool propagate(std::size_t lo) {
        std::vector<Element> image_args;
        while (true) {
          std::size_t hi = trail_.size();
          if (lo == hi && lo != 0) {
            return true;
          }
          std::vector<Element> pool(trail_.begin(), trail_.end());
          for (std::size_t op = 0; op < a_.signature().size(); ++op) {
            bool ok = for_tuples(a_.signature()[op].arity, pool, lo, [&](auto const& args) {
              image_args.resize(args.size());
              for (std::size_t i = 0; i < args.size(); ++i) {
                image_args[i] = map_[args[i]];
              }
              return assign(a_.apply(op, args), b_.apply(op, image_args));
            });
            if (!ok) {
              return false;
            }
          }
          if (trail_.size() == hi) {
            return true;
          }
          lo = hi;
        }
      }

      void search(std::size_t gi) {
        if (limit_ && found_.size() >= limit_) {
          return;
        }
        if (gi == gens_.size()) {
          found_.push_back(map_);
          return;
        }
        Element g = gens_[gi];
        if (map_[g] != kUnassigned) {
          search(gi + 1);
          return;
        }
        for (Element v = 0; v < b_.size(); ++v) {
          std::size_t mark = trail_.size();
          if (assign(g, v) && propagate(mark)) {
            search(gi + 1);
          }
          undo(mark);
          if (limit_ && found_.size() >= limit_) {
            return;
          }
        }
      }

      FiniteAlgebra const&                  a_;
      FiniteAlgebra const&                  b_;
      HomKind                               kind_;
      std::size_t                           limit_;
      Map                                   map_;
      std::vector<bool>                     used_;
      std::vector<Element>                  trail_;
      std::vector<Element>                  gens_;
      std::vector<Map>                      found_;
      std::vector<std::vector<std::size_t>> prof_a_;
      std::vector<std::vector<std::size_t>> prof_b_;
    };

    std::vector<Map> search_homs(FiniteAlgebra const& a,
                                 FiniteAlgebra const& b,
                                 HomKind              kind,
                                 std::size_t          limit) {
      require_same_signature(a, b);
      if (a.size() > kSizeGuard || b.size() > kSizeGuard) {
        throw GuardError("homomorphism search is limited to algebras of size <= "
                         + std::to_string(kSizeGuard));
      }
      return HomSearch(a, b, kind, limit).run();
    }

  }  // namespace

  std::optional<std::string> homomorphism_defect(FiniteAlgebra const& a,
                                                 FiniteAlgebra const& b,
                                                 Map const&           map) {
    require_same_signature(a, b);
    if (map.size() != a.size()) {
      throw Error("map has " + std::to_string(map.size()) + " entries, expected "
                  + std::to_string(a.size()));
    }
    for (Element v : map) {
      if (v >= b.size()) {
        throw Error("map sends an element outside " + b.name());
      }
    }
    std::vector<Element> all(a.size());
    for (Element x = 0; x < a.size(); ++x) {
      all[x] = x;
    }
    std::optional<std::string> defect;
    std::vector<Element>       image_args;
    for (std::size_t op = 0; op < a.signature().size() && !defect; ++op) {
      for_tuples(a.signature()[op].arity, all, 0, [&](auto const& args) {
        image_args.resize(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) {
          image_args[i] = map[args[i]];
        }
        Element lhs = map[a.apply(op, args)];
        Element rhs = b.apply(op, image_args);
        if (lhs == rhs) {
          return true;
        }
        std::string rendered = a.signature()[op].name + "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
          rendered += (i ? "," : "") + a.element_name(args[i]);
        }
        defect = rendered + ") maps to " + b.element_name(lhs) + " but "
                 + a.signature()[op].name + " of the images is " + b.element_name(rhs);
        return false;
      });
    }
    return defect;
  }

  bool is_homomorphism(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& map) {
    return !homomorphism_defect(a, b, map).has_value();
  }

  HomSet homs(FiniteAlgebra const& a, FiniteAlgebra const& b, HomKind kind) {
    return HomSet{a.name(), b.name(), kind, search_homs(a, b, kind, 0)};
  }

  std::optional<Map> find_isomorphism(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    if (a.size() != b.size()) {
      require_same_signature(a, b);
      return std::nullopt;
    }
    auto found = search_homs(a, b, HomKind::Bijective, 1);
    if (found.empty()) {
      return std::nullopt;
    }
    return found.front();
  }

  bool is_isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    return find_isomorphism(a, b).has_value();
  }

  Map compose(Map const& g, Map const& h) {
    Map out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      out[i] = g.at(h[i]);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::size_t bucket(std::vector<FiniteAlgebra>& classes, FiniteAlgebra const& alg) {
      for (std::size_t i = 0; i < classes.size(); ++i) {
        if (is_isomorphic(classes[i], alg)) {
          return i;
        }
      }
      classes.push_back(alg);
      return classes.size() - 1;
    }

  }  // namespace

  std::vector<std::size_t> HsClassification::fsi_classes() const {
    std::vector<std::size_t> out;
    for (auto const& m : members) {
      if (m.fsi) {
        out.push_back(m.iso_class);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<std::size_t> HsClassification::si_classes() const {
    std::vector<std::size_t> out;
    for (auto const& m : members) {
      if (m.si) {
        out.push_back(m.iso_class);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  HsClassification hs_classify(FiniteAlgebra const& alg) {
    HsClassification out;
    for (auto const& s : all_subuniverses(alg)) {
      auto sub = subalgebra(alg, s);
      auto lat = congruence_lattice(sub.algebra);
      for (auto const& theta : lat.congruences) {
        auto     q = quotient(sub.algebra, theta);
        auto     qlat = congruence_lattice(q.algebra);
        HsMember m{s.elements, theta, q.algebra, is_fsi(qlat), is_si(qlat), 0};
        m.iso_class = bucket(out.classes, q.algebra);
        out.members.push_back(std::move(m));
      }
    }
    return out;
  }

  std::vector<FiniteAlgebra> subalgebra_classes(FiniteAlgebra const& alg) {
    std::vector<FiniteAlgebra> classes;
    for (auto const& s : all_subuniverses(alg)) {
      bucket(classes, subalgebra(alg, s).algebra);
    }
    return classes;
  }

  ////////////////////////////////////////////////////////////////////////

  std::size_t AmalgamationReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(spans.begin(), spans.end(), [](auto const& s) { return !s.target; }));
  }

  AmalgamationReport check_amalgamation(std::span<FiniteAlgebra const> members,
                                        std::span<FiniteAlgebra const> targets) {
    std::size_t const             m = members.size();
    std::vector<std::vector<Map>> between(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        between[i * m + j] = homs(members[i], members[j], HomKind::Injective).maps;
      }
    }
    std::vector<std::vector<Map>> into(m * targets.size());
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t t = 0; t < targets.size(); ++t) {
        into[i * targets.size() + t] = homs(members[i], targets[t], HomKind::Injective).maps;
      }
    }

    AmalgamationReport report;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t l = 0; l < m; ++l) {
        for (std::size_t r = 0; r < m; ++r) {
          for (auto const& f : between[a * m + l]) {
            for (auto const& g : between[a * m + r]) {
              report.spans.push_back(SpanResult{a, l, r, f, g, std::nullopt, {}, {}});
            }
          }
        }
      }
    }

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(report.spans.size()); ++s) {
      SpanResult& span = report.spans[static_cast<std::size_t>(s)];
      for (std::size_t t = 0; t < targets.size() && !span.target; ++t) {
        for (auto const& p : into[span.left * targets.size() + t]) {
          if (span.target) {
            break;
          }
          Map pf = compose(p, span.f);
          for (auto const& q : into[span.right * targets.size() + t]) {
            if (compose(q, span.g) == pf) {
              span.target = t;
              span.p      = p;
              span.q      = q;
              break;
            }
          }
        }
      }
    }
    return report;
  }

  std::vector<EpicCase> check_epic_subalgebras(FiniteAlgebra const& big) {
    auto subs  = all_subuniverses(big);
    auto endos = homs(big, big, HomKind::All).maps;
    std::vector<EpicCase> out;
    for (auto const& c : subs) {
      for (auto const& a : subs) {
        if (a.elements.size() >= c.elements.size()
            || !std::includes(c.elements.begin(), c.elements.end(), a.elements.begin(),
                              a.elements.end())) {
          continue;
        }
        EpicCase ec{c.elements, a.elements, std::nullopt, 0};
        for (auto const& h : endos) {
          bool fixes = std::all_of(
              a.elements.begin(), a.elements.end(), [&](Element x) { return h[x] == x; });
          if (!fixes) {
            continue;
          }
          auto moved = std::find_if(
              c.elements.begin(), c.elements.end(), [&](Element x) { return h[x] != x; });
          if (moved != c.elements.end()) {
            ec.witness = h;
            ec.moved   = *moved;
            break;
          }
        }
        out.push_back(std::move(ec));
      }
    }
    return out;
  }

  AtomPermutationResult atom_permutation_automorphism(FiniteAlgebra const&            alg,
                                                      std::vector<std::size_t> const& sigma) {
    std::size_t const n = sigma.size();
    if (n >= 32 || alg.size() != (std::size_t{1} << n) + 1) {
      throw Error("atom permutation of " + std::to_string(n) + " atoms does not fit "
                  + alg.name());
    }
    std::vector<bool> seen(n, false);
    for (std::size_t s : sigma) {
      if (s >= n || seen[s]) {
        throw Error("sigma is not a permutation");
      }
      seen[s] = true;
    }
    AtomPermutationResult out;
    out.map.resize(alg.size());
    Element const top = static_cast<Element>(std::size_t{1} << n);
    out.map[top]      = top;
    for (Element x = 0; x < top; ++x) {
      Element y = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (x >> i & 1U) {
          y |= Element{1} << sigma[i];
        }
      }
      out.map[x] = y;
    }
    out.defect          = homomorphism_defect(alg, alg, out.map);
    out.is_automorphism = !out.defect;
    return out;
  }

}  // namespace uaforge
