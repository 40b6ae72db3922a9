#include "uaforge/evaluator.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <unordered_set>

namespace uaforge {

  namespace {

    // Formula resolved against one algebra.
    struct Node {
      Formula::Kind      kind = Formula::Kind::Eq;
      CompiledTerm       lhs;
      CompiledTerm       rhs;
      std::vector<Node>  children;
      std::vector<VarId> bound;
    };

    Node compile(FiniteAlgebra const& alg, Formula const& f) {
      Node n;
      n.kind = f.kind;
      if (f.kind == Formula::Kind::Eq) {
        n.lhs = CompiledTerm(alg, f.lhs);
        n.rhs = CompiledTerm(alg, f.rhs);
        return n;
      }
      n.bound = f.bound;
      for (auto const& c : f.children) {
        n.children.push_back(compile(alg, c));
      }
      return n;
    }

    VarId max_var(Formula const& f) {
      VarId              m = 0;
      std::vector<VarId> vs;
      if (f.kind == Formula::Kind::Eq) {
        collect_variables(f.lhs, vs);
        collect_variables(f.rhs, vs);
      }
      vs.insert(vs.end(), f.bound.begin(), f.bound.end());
      for (VarId v : vs) {
        m = std::max(m, v + 1);
      }
      for (auto const& c : f.children) {
        m = std::max(m, max_var(c));
      }
      return m;
    }

    bool eval_node(Node const& n, std::vector<Element>& env, std::size_t size) {
      switch (n.kind) {
        case Formula::Kind::Eq:
          return n.lhs.eval(env) == n.rhs.eval(env);
        case Formula::Kind::And:
          for (auto const& c : n.children) {
            if (!eval_node(c, env, size)) {
              return false;
            }
          }
          return true;
        case Formula::Kind::Or:
          for (auto const& c : n.children) {
            if (eval_node(c, env, size)) {
              return true;
            }
          }
          return false;
        case Formula::Kind::Implies:
          return !eval_node(n.children[0], env, size) || eval_node(n.children[1], env, size);
        case Formula::Kind::Not:
          return !eval_node(n.children[0], env, size);
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
          bool const           want = n.kind == Formula::Kind::Exists;
          std::vector<Element> saved;
          for (VarId v : n.bound) {
            saved.push_back(env[v]);
            env[v] = 0;
          }
          bool result = !want;
          if (size > 0) {
            while (true) {
              if (eval_node(n.children[0], env, size) == want) {
                result = want;
                break;
              }
              std::size_t i = n.bound.size();
              while (i > 0) {
                --i;
                if (++env[n.bound[i]] < size) {
                  break;
                }
                env[n.bound[i]] = 0;
                if (i == 0) {
                  i = n.bound.size() + 1;
                  break;
                }
              }
              if (i == n.bound.size() + 1) {
                break;
              }
            }
          }
          for (std::size_t i = 0; i < n.bound.size(); ++i) {
            env[n.bound[i]] = saved[i];
          }
          return result;
        }
      }
      return false;
    }

    std::vector<Element> prepared_env(Formula const& f, std::span<Element const> env) {
      std::vector<Element> work(std::max<std::size_t>(max_var(f), env.size()), kUnassigned);
      std::copy(env.begin(), env.end(), work.begin());
      for (VarId v : free_variables(f)) {
        if (work[v] == kUnassigned) {
          throw Error("free variable " + std::to_string(v) + " is unassigned");
        }
      }
      return work;
    }

    void check_range(FiniteAlgebra const& alg, std::span<Element const> env) {
      for (Element x : env) {
        if (x != kUnassigned && x >= alg.size()) {
          throw Error("assignment uses element " + std::to_string(x)
                      + " outside the universe");
        }
      }
    }

    ////////////////////////////////////////////////////////////////////////
    // Variable elimination for primitive positive formulas
    ////////////////////////////////////////////////////////////////////////

    struct Relation {
      std::vector<VarId>           scope;  // sorted
      std::vector<Element>         flat;   // tuples, row-major
      std::unordered_set<uint64_t> keys;

      std::size_t count() const {
        return scope.empty() ? keys.size() : flat.size() / scope.size();
      }
    };

    struct Constraint {
      std::vector<VarId>        scope;  // sorted, solver variables only
      Node const*               atom = nullptr;
      std::shared_ptr<Relation> rel;
      // Set for equations with a bare solver variable on one side.
      std::optional<VarId> defines;
      CompiledTerm const*  definer = nullptr;
    };

    class Solver {
     public:
      Solver(FiniteAlgebra const& alg, std::vector<Element> env, DecompositionStats* stats)
          : size_(alg.size()), env_(std::move(env)), stats_(stats) {}

      // Relation over `kept` (sorted) of the values for which the conjunction
      // of atoms has a witness for the bound variables.
      Relation solve(std::vector<Node const*> const& atoms,
                     std::vector<VarId> const&       solver_vars,
                     std::vector<VarId> const&       kept) {
        for (VarId v : solver_vars) {
          env_[v] = kUnassigned;
        }
        is_solver_.assign(env_.size(), false);
        for (VarId v : solver_vars) {
          is_solver_[v] = true;
        }
        domain_.assign(env_.size(), {});
        for (VarId v : solver_vars) {
          domain_[v].resize(size_);
          std::iota(domain_[v].begin(), domain_[v].end(), Element{0});
        }

        std::vector<Constraint> pool;
        for (Node const* a : atoms) {
          Constraint c;
          c.atom = a;
          for (VarId v : a->lhs.variables()) {
            if (is_solver_[v]) {
              c.scope.push_back(v);
            }
          }
          for (VarId v : a->rhs.variables()) {
            if (is_solver_[v]) {
              c.scope.push_back(v);
            }
          }
          std::sort(c.scope.begin(), c.scope.end());
          c.scope.erase(std::unique(c.scope.begin(), c.scope.end()), c.scope.end());
          if (c.scope.empty()) {
            if (!eval_atom(*a)) {
              unsat_ = true;
            }
            continue;
          }
          if (c.scope.size() == 1) {
            // Unary constraints become domain filters.
            VarId                v = c.scope[0];
            std::vector<Element> keep;
            for (Element x : domain_[v]) {
              env_[v] = x;
              if (eval_atom(*a)) {
                keep.push_back(x);
              }
            }
            env_[v]    = kUnassigned;
            domain_[v] = std::move(keep);
            if (domain_[v].empty()) {
              unsat_ = true;
            }
            continue;
          }
          if (auto v = a->lhs.as_variable(); v && is_solver_[*v]) {
            c.defines = *v;
            c.definer = &a->rhs;
          } else if (auto w = a->rhs.as_variable(); w && is_solver_[*w]) {
            c.defines = *w;
            c.definer = &a->lhs;
          }
          pool.push_back(std::move(c));
        }

        Relation out;
        out.scope = kept;
        if (unsat_) {
          return out;
        }

        std::vector<VarId> to_eliminate;
        for (VarId v : solver_vars) {
          if (!std::binary_search(kept.begin(), kept.end(), v)) {
            to_eliminate.push_back(v);
          }
        }

        while (!to_eliminate.empty()) {
          // Smallest joined scope first.
          std::size_t best = 0;
          std::size_t best_width = SIZE_MAX;
          bool        best_used = false;
          for (std::size_t i = 0; i < to_eliminate.size(); ++i) {
            std::vector<VarId> u;
            bool               used = false;
            for (auto const& c : pool) {
              if (std::binary_search(c.scope.begin(), c.scope.end(), to_eliminate[i])) {
                u.insert(u.end(), c.scope.begin(), c.scope.end());
                used = true;
              }
            }
            std::sort(u.begin(), u.end());
            u.erase(std::unique(u.begin(), u.end()), u.end());
            if (u.size() < best_width) {
              best       = i;
              best_width = u.size();
              best_used  = used;
            }
          }
          VarId v = to_eliminate[best];
          to_eliminate.erase(to_eliminate.begin() + static_cast<std::ptrdiff_t>(best));
          if (!best_used) {
            // Unconstrained apart from its domain.
            if (domain_[v].empty()) {
              return out;
            }
            continue;
          }
          if (stats_) {
            ++stats_->eliminations;
          }

          std::vector<VarId> joined;
          for (auto const& c : pool) {
            if (std::binary_search(c.scope.begin(), c.scope.end(), v)) {
              joined.insert(joined.end(), c.scope.begin(), c.scope.end());
            }
          }
          std::sort(joined.begin(), joined.end());
          joined.erase(std::unique(joined.begin(), joined.end()), joined.end());

          std::vector<Constraint> take;
          std::vector<Constraint> rest;
          for (auto& c : pool) {
            if (std::includes(joined.begin(), joined.end(), c.scope.begin(), c.scope.end())) {
              take.push_back(std::move(c));
            } else {
              rest.push_back(std::move(c));
            }
          }
          std::vector<VarId> projected;
          for (VarId u : joined) {
            if (u != v) {
              projected.push_back(u);
            }
          }
          auto rel = std::make_shared<Relation>(join(take, joined, projected));
          if (rel->count() == 0) {
            return out;
          }
          pool = std::move(rest);
          if (!projected.empty()) {
            Constraint c;
            c.scope = projected;
            c.rel   = std::move(rel);
            pool.push_back(std::move(c));
          }
        }

        std::vector<VarId> all_kept = kept;
        Relation           r        = join(pool, all_kept, kept);
        r.scope                     = kept;
        return r;
      }

      bool unsat() const {
        return unsat_;
      }

     private:
      bool eval_atom(Node const& a) const {
        return a.lhs.eval(env_) == a.rhs.eval(env_);
      }

      uint64_t key_of(std::vector<VarId> const& scope) const {
        uint64_t k = 0;
        for (VarId u : scope) {
          k = k * size_ + env_[u];
        }
        return k;
      }

      bool holds(Constraint const& c) const {
        if (c.rel) {
          return c.rel->keys.count(key_of(c.scope)) > 0;
        }
        return eval_atom(*c.atom);
      }

      struct Step {
        VarId                          var;
        CompiledTerm const*            definer = nullptr;
        std::vector<Constraint const*> checks;
      };

      Relation join(std::vector<Constraint> const& cs,
                    std::vector<VarId> const&      vars,
                    std::vector<VarId> const&      projected) {
        check_key_width(projected.size());
        if (stats_) {
          stats_->max_join_width = std::max(stats_->max_join_width, vars.size());
        }
        Relation out;
        out.scope = projected;

        // Seed with the smallest materialized relation.
        Constraint const* seed = nullptr;
        for (auto const& c : cs) {
          if (c.rel && (!seed || c.rel->count() < seed->rel->count())) {
            seed = &c;
          }
        }
        std::vector<VarId> placed;
        if (seed) {
          placed = seed->scope;
        }
        std::vector<Step>              steps;
        std::vector<Constraint const*> used_as_definer;
        auto is_placed = [&](VarId u) {
          return std::find(placed.begin(), placed.end(), u) != placed.end();
        };
        std::vector<bool> defined_target(env_.size(), false);
        for (auto const& c : cs) {
          if (c.defines) {
            defined_target[*c.defines] = true;
          }
        }
        while (placed.size() < vars.size()) {
          Step step{};
          bool found = false;
          for (auto const& c : cs) {
            if (c.defines && !is_placed(*c.defines)
                && std::all_of(c.definer->variables().begin(),
                               c.definer->variables().end(),
                               [&](VarId u) { return !is_solver_[u] || is_placed(u); })) {
              step.var     = *c.defines;
              step.definer = c.definer;
              used_as_definer.push_back(&c);
              found = true;
              break;
            }
          }
          if (!found) {
            std::optional<VarId> pick;
            for (VarId u : vars) {
              if (!is_placed(u) && !defined_target[u]) {
                pick = u;
                break;
              }
            }
            if (!pick) {
              for (VarId u : vars) {
                if (!is_placed(u)) {
                  pick = u;
                  break;
                }
              }
            }
            step.var = *pick;
          }
          placed.push_back(step.var);
          steps.push_back(std::move(step));
        }

        // Attach every other constraint to the step completing its scope.
        std::vector<Constraint const*> seed_checks;
        for (auto const& c : cs) {
          if (&c == seed
              || std::find(used_as_definer.begin(), used_as_definer.end(), &c)
                     != used_as_definer.end()) {
            continue;
          }
          std::size_t last = 0;
          bool        any  = false;
          for (VarId u : c.scope) {
            for (std::size_t i = 0; i < steps.size(); ++i) {
              if (steps[i].var == u) {
                last = std::max(last, i);
                any  = true;
              }
            }
          }
          if (any) {
            steps[last].checks.push_back(&c);
          } else {
            seed_checks.push_back(&c);
          }
        }

        auto emit = [&] {
          uint64_t k = key_of(projected);
          if (out.keys.insert(k).second) {
            for (VarId u : projected) {
              out.flat.push_back(env_[u]);
            }
          }
        };

        auto run_steps = [&](auto&& self, std::size_t depth) -> void {
          if (depth == steps.size()) {
            emit();
            return;
          }
          Step const& s = steps[depth];
          auto        try_value = [&](Element x) {
            env_[s.var] = x;
            if (stats_) {
              ++stats_->tuples_visited;
            }
            for (Constraint const* c : s.checks) {
              if (!holds(*c)) {
                return;
              }
            }
            self(self, depth + 1);
          };
          if (s.definer) {
            Element x = s.definer->eval(env_);
            if (std::binary_search(domain_[s.var].begin(), domain_[s.var].end(), x)) {
              try_value(x);
            }
          } else {
            for (Element x : domain_[s.var]) {
              try_value(x);
            }
          }
          env_[s.var] = kUnassigned;
        };

        auto after_seed = [&] {
          for (Constraint const* c : seed_checks) {
            if (!holds(*c)) {
              return;
            }
          }
          run_steps(run_steps, 0);
        };

        if (seed) {
          std::size_t w = seed->scope.size();
          for (std::size_t t = 0; t < seed->rel->count(); ++t) {
            bool in_domain = true;
            for (std::size_t j = 0; j < w; ++j) {
              Element x        = seed->rel->flat[t * w + j];
              env_[seed->scope[j]] = x;
              in_domain = in_domain
                          && std::binary_search(
                              domain_[seed->scope[j]].begin(), domain_[seed->scope[j]].end(), x);
            }
            if (in_domain) {
              after_seed();
            }
          }
          for (VarId u : seed->scope) {
            env_[u] = kUnassigned;
          }
        } else {
          after_seed();
        }
        return out;
      }

      void check_key_width(std::size_t width) const {
        long double bound = 1;
        for (std::size_t i = 0; i < width; ++i) {
          bound *= static_cast<long double>(size_);
        }
        if (bound > static_cast<long double>(UINT64_MAX / 2)) {
          throw GuardError("relation over " + std::to_string(width)
                           + " variables exceeds the key encoding");
        }
      }

      std::size_t                       size_;
      std::vector<Element>              env_;
      DecompositionStats*               stats_;
      std::vector<bool>                 is_solver_;
      std::vector<std::vector<Element>> domain_;
      bool                              unsat_ = false;
    };

    // Collects the equations of an existential conjunction. Fails on other
    // connectives and on bound variables that are rebound or also free.
    bool flatten(Formula const&               f,
                 Node const&                  n,
                 std::vector<VarId> const&    free,
                 std::vector<VarId>&          bound,
                 std::vector<Node const*>&    atoms) {
      if (f.kind == Formula::Kind::Exists) {
        for (VarId v : f.bound) {
          if (std::find(bound.begin(), bound.end(), v) != bound.end()
              || std::find(free.begin(), free.end(), v) != free.end()) {
            return false;
          }
          bound.push_back(v);
        }
        return flatten(f.children[0], n.children[0], free, bound, atoms);
      }
      if (f.kind == Formula::Kind::And) {
        for (std::size_t i = 0; i < f.children.size(); ++i) {
          if (!flatten(f.children[i], n.children[i], free, bound, atoms)) {
            return false;
          }
        }
        return true;
      }
      if (f.kind != Formula::Kind::Eq) {
        return false;
      }
      atoms.push_back(&n);
      return true;
    }

    // Connected components of the atoms, linked through shared solver
    // variables.
    std::vector<std::vector<std::size_t>> components(std::vector<Node const*> const& atoms,
                                                     std::vector<bool> const&        is_solver,
                                                     std::size_t                     nvars) {
      std::vector<std::size_t> parent(atoms.size());
      std::iota(parent.begin(), parent.end(), std::size_t{0});
      auto find = [&](std::size_t i) {
        while (parent[i] != i) {
          parent[i] = parent[parent[i]];
          i         = parent[i];
        }
        return i;
      };
      std::vector<std::size_t> owner(nvars, SIZE_MAX);
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (auto const* t : {&atoms[i]->lhs, &atoms[i]->rhs}) {
          for (VarId v : t->variables()) {
            if (!is_solver[v]) {
              continue;
            }
            if (owner[v] == SIZE_MAX) {
              owner[v] = i;
            } else {
              parent[find(i)] = find(owner[v]);
            }
          }
        }
      }
      std::vector<std::vector<std::size_t>> groups;
      std::vector<std::size_t>              index(atoms.size(), SIZE_MAX);
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        std::size_t r = find(i);
        if (index[r] == SIZE_MAX) {
          index[r] = groups.size();
          groups.emplace_back();
        }
        groups[index[r]].push_back(i);
      }
      return groups;
    }

    // Values of `kept` (empty or a single variable) satisfying the pp formula,
    // or nullopt if the formula is not of the supported shape.
    std::optional<std::vector<Element>> decomposed(FiniteAlgebra const&     alg,
                                                   Formula const&           f,
                                                   Node const&              n,
                                                   std::vector<Element>     env,
                                                   std::optional<VarId>     kept,
                                                   DecompositionStats*      stats) {
      std::vector<VarId>       bound;
      std::vector<Node const*> atoms;
      if (!flatten(f, n, free_variables(f), bound, atoms)) {
        return std::nullopt;
      }
      if (kept && std::find(bound.begin(), bound.end(), *kept) != bound.end()) {
        return std::nullopt;
      }
      for (VarId v : bound) {
        env[v] = kUnassigned;
      }
      if (kept) {
        env[*kept] = kUnassigned;
      }
      std::vector<bool> is_solver(env.size(), false);
      for (VarId v : bound) {
        is_solver[v] = true;
      }
      if (kept) {
        is_solver[*kept] = true;
      }
      auto groups = components(atoms, is_solver, env.size());
      if (stats) {
        stats->components += groups.size();
      }

      std::vector<Element> result;
      if (kept) {
        result.resize(alg.size());
        std::iota(result.begin(), result.end(), Element{0});
      }
      // Components without the kept variable first: any failure decides.
      std::stable_sort(groups.begin(), groups.end(), [&](auto const& a, auto const& b) {
        auto mentions = [&](std::vector<std::size_t> const& g) {
          if (!kept) {
            return false;
          }
          for (std::size_t i : g) {
            for (auto const* t : {&atoms[i]->lhs, &atoms[i]->rhs}) {
              auto const& vs = t->variables();
              if (std::find(vs.begin(), vs.end(), *kept) != vs.end()) {
                return true;
              }
            }
          }
          return false;
        };
        return !mentions(a) && mentions(b);
      });
      for (auto const& g : groups) {
        std::vector<Node const*> part;
        std::vector<VarId>       vars;
        bool                     has_kept = false;
        for (std::size_t i : g) {
          part.push_back(atoms[i]);
          for (auto const* t : {&atoms[i]->lhs, &atoms[i]->rhs}) {
            for (VarId v : t->variables()) {
              if (is_solver[v]) {
                vars.push_back(v);
                has_kept = has_kept || (kept && v == *kept);
              }
            }
          }
        }
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        std::vector<VarId> keep;
        if (has_kept) {
          keep.push_back(*kept);
        }
        Solver   s(alg, env, stats);
        Relation r = s.solve(part, vars, keep);
        if (s.unsat() || r.count() == 0) {
          return std::vector<Element>{};
        }
        if (has_kept) {
          std::vector<Element> vals(r.flat.begin(), r.flat.end());
          std::sort(vals.begin(), vals.end());
          std::vector<Element> both;
          std::set_intersection(
              result.begin(), result.end(), vals.begin(), vals.end(), std::back_inserter(both));
          result = std::move(both);
        }
      }
      if (!kept) {
        // Nonempty universe: an existential over no constraints holds.
        return std::vector<Element>{0};
      }
      return result;
    }

  }  // namespace

  bool eval_formula(FiniteAlgebra const& alg, Formula const& f, std::span<Element const> env) {
    check_range(alg, env);
    std::vector<Element> work = prepared_env(f, env);
    Node                 n    = compile(alg, f);
    return eval_node(n, work, alg.size());
  }

  std::vector<Element> make_env(NamedFormula const&                                 f,
                                std::vector<std::pair<std::string, Element>> const& assignment) {
    std::vector<Element> env(f.variables.size(), kUnassigned);
    for (auto const& [name, value] : assignment) {
      env[f.variable(name)] = value;
    }
    return env;
  }

  bool eval_formula(FiniteAlgebra const&                                alg,
                    NamedFormula const&                                 f,
                    std::vector<std::pair<std::string, Element>> const& assignment) {
    std::vector<Element> env = make_env(f, assignment);
    for (VarId v : free_variables(f.formula)) {
      if (env[v] == kUnassigned) {
        throw Error("free variable '" + f.variables[v] + "' is unassigned");
      }
    }
    return eval_formula(alg, f.formula, env);
  }

  bool eval_exists_decomposed(FiniteAlgebra const&     alg,
                              Formula const&           f,
                              std::span<Element const> env,
                              DecompositionStats*      stats) {
    check_range(alg, env);
    std::vector<Element> work = prepared_env(f, env);
    Node                 n    = compile(alg, f);
    if (alg.size() > 0) {
      if (auto r = decomposed(alg, f, n, work, std::nullopt, stats)) {
        return !r->empty();
      }
    }
    if (stats) {
      stats->used_naive = true;
    }
    return eval_node(n, work, alg.size());
  }

  std::vector<Element> solutions(FiniteAlgebra const&     alg,
                                 Formula const&           f,
                                 std::span<Element const> env,
                                 VarId                    output,
                                 DecompositionStats*      stats) {
    check_range(alg, env);
    std::vector<Element> base(std::max<std::size_t>({max_var(f), env.size(), output + 1}),
                              kUnassigned);
    std::copy(env.begin(), env.end(), base.begin());
    base[output] = 0;
    std::vector<Element> work = prepared_env(f, base);
    work[output]              = kUnassigned;
    Node n                    = compile(alg, f);
    if (alg.size() > 0) {
      if (auto r = decomposed(alg, f, n, work, output, stats)) {
        return *r;
      }
    }
    if (stats) {
      stats->used_naive = true;
    }
    std::vector<Element> out;
    for (Element y = 0; y < alg.size(); ++y) {
      work[output] = y;
      if (eval_node(n, work, alg.size())) {
        out.push_back(y);
      }
    }
    return out;
  }

  FunctionalSignature designate(NamedFormula const& f, std::size_t arity) {
    if (arity == 0) {
      throw Error("functional formulas need at least one argument");
    }
    FunctionalSignature sig;
    std::size_t         next = f.variables.size();
    auto                id   = [&](std::string const& name) {
      if (auto v = f.find_variable(name)) {
        return *v;
      }
      return next++;
    };
    std::vector<std::string> names;
    if (arity == 1) {
      names.push_back("x");
    } else {
      for (std::size_t i = 1; i <= arity; ++i) {
        names.push_back("x" + std::to_string(i));
      }
    }
    for (auto const& name : names) {
      sig.inputs.push_back(id(name));
    }
    sig.output = id("y");
    for (VarId v : free_variables(f.formula)) {
      if (v != sig.output
          && std::find(sig.inputs.begin(), sig.inputs.end(), v) == sig.inputs.end()) {
        throw Error("free variable '" + f.variables[v]
                    + "' is neither an argument nor the result y");
      }
    }
    sig.env_size = next;
    return sig;
  }

  namespace {

    std::size_t row_count(std::size_t size, std::size_t arity) {
      return table_length(size, arity);
    }

    std::vector<Element> row_args(std::size_t row, std::size_t size, std::size_t arity) {
      std::vector<Element> args(arity);
      for (std::size_t i = arity; i > 0; --i) {
        args[i - 1] = static_cast<Element>(row % size);
        row /= size;
      }
      return args;
    }

    std::vector<Element> row_solutions(FiniteAlgebra const&       alg,
                                       NamedFormula const&        f,
                                       FunctionalSignature const& sig,
                                       std::size_t                row) {
      std::vector<Element> env(sig.env_size, kUnassigned);
      auto                 args = row_args(row, alg.size(), sig.inputs.size());
      for (std::size_t i = 0; i < args.size(); ++i) {
        env[sig.inputs[i]] = args[i];
      }
      return solutions(alg, f.formula, env, sig.output);
    }

  }  // namespace

  std::vector<std::vector<Element>> solution_table_serial(FiniteAlgebra const&       alg,
                                                          NamedFormula const&        f,
                                                          FunctionalSignature const& sig) {
    std::size_t                       rows = row_count(alg.size(), sig.inputs.size());
    std::vector<std::vector<Element>> out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      out[r] = row_solutions(alg, f, sig, r);
    }
    return out;
  }

  std::vector<std::vector<Element>> solution_table_parallel(
      FiniteAlgebra const&       alg,
      NamedFormula const&        f,
      FunctionalSignature const& sig) {
    std::size_t                       rows = row_count(alg.size(), sig.inputs.size());
    std::vector<std::vector<Element>> out(rows);
    std::exception_ptr                error;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
      try {
        out[static_cast<std::size_t>(r)] = row_solutions(alg, f, sig, static_cast<std::size_t>(r));
      } catch (...) {
#pragma omp critical(uaforge_solution_table)
        if (!error) {
          error = std::current_exception();
        }
      }
    }
    if (error) {
      std::rethrow_exception(error);
    }
    return out;
  }

  bool PartialFunctionTable::is_total(std::size_t universe_size) const {
    return values.size() == table_length(universe_size, arity);
  }

  std::optional<Element> PartialFunctionTable::at(std::vector<Element> const& args) const {
    auto it = values.find(args);
    if (it == values.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  FunctionalityError::FunctionalityError(std::string const&   algebra,
                                         std::vector<Element> args,
                                         Element              first,
                                         Element              second,
                                         std::string const&   rendered)
      : Error("formula is not functional in " + algebra + ": arguments " + rendered
              + " have two results"),
        args_(std::move(args)),
        first_(first),
        second_(second) {}

  std::optional<FunctionalityViolation> find_functionality_violation(
      std::span<FiniteAlgebra const> algs,
      NamedFormula const&            f,
      std::size_t                    arity) {
    FunctionalSignature sig = designate(f, arity);
    for (auto const& alg : algs) {
      auto table = solution_table_parallel(alg, f, sig);
      for (std::size_t r = 0; r < table.size(); ++r) {
        if (table[r].size() >= 2) {
          return FunctionalityViolation{
              alg.name(), row_args(r, alg.size(), arity), table[r][0], table[r][1]};
        }
      }
    }
    return std::nullopt;
  }

  bool check_functional(std::span<FiniteAlgebra const> algs,
                        NamedFormula const&            f,
                        std::size_t                    arity) {
    return !find_functionality_violation(algs, f, arity).has_value();
  }

  PartialFunctionTable induced_partial_function(FiniteAlgebra const& alg,
                                                NamedFormula const&  f,
                                                std::size_t          arity) {
    FunctionalSignature  sig   = designate(f, arity);
    auto                 table = solution_table_parallel(alg, f, sig);
    PartialFunctionTable out;
    out.algebra = alg.name();
    out.arity   = arity;
    for (std::size_t r = 0; r < table.size(); ++r) {
      auto args = row_args(r, alg.size(), arity);
      if (table[r].size() >= 2) {
        std::string rendered = "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
          rendered += (i ? "," : "") + alg.element_name(args[i]);
        }
        rendered += ")";
        throw FunctionalityError(alg.name(), args, table[r][0], table[r][1], rendered);
      }
      if (table[r].size() == 1) {
        out.values.emplace(std::move(args), table[r][0]);
      }
    }
    return out;
  }

}  // namespace uaforge
