#include "uaforge/formula.hpp"

#include <algorithm>

#include "uaforge/error.hpp"

namespace uaforge {

  Formula Formula::eq(Term lhs, Term rhs) {
    Formula f;
    f.kind = Kind::Eq;
    f.lhs  = std::move(lhs);
    f.rhs  = std::move(rhs);
    return f;
  }

  Formula Formula::conj(std::vector<Formula> parts) {
    if (parts.empty()) {
      throw Error("empty conjunction");
    }
    if (parts.size() == 1) {
      return std::move(parts[0]);
    }
    Formula f;
    f.kind     = Kind::And;
    f.children = std::move(parts);
    return f;
  }

  Formula Formula::disj(std::vector<Formula> parts) {
    if (parts.empty()) {
      throw Error("empty disjunction");
    }
    if (parts.size() == 1) {
      return std::move(parts[0]);
    }
    Formula f;
    f.kind     = Kind::Or;
    f.children = std::move(parts);
    return f;
  }

  Formula Formula::implies(Formula premise, Formula conclusion) {
    Formula f;
    f.kind = Kind::Implies;
    f.children.push_back(std::move(premise));
    f.children.push_back(std::move(conclusion));
    return f;
  }

  Formula Formula::negation(Formula g) {
    Formula f;
    f.kind = Kind::Not;
    f.children.push_back(std::move(g));
    return f;
  }

  Formula Formula::exists(std::vector<VarId> vars, Formula body) {
    if (vars.empty()) {
      return body;
    }
    Formula f;
    f.kind  = Kind::Exists;
    f.bound = std::move(vars);
    f.children.push_back(std::move(body));
    return f;
  }

  Formula Formula::forall(std::vector<VarId> vars, Formula body) {
    if (vars.empty()) {
      return body;
    }
    Formula f;
    f.kind  = Kind::Forall;
    f.bound = std::move(vars);
    f.children.push_back(std::move(body));
    return f;
  }

  std::optional<VarId> NamedFormula::find_variable(std::string_view name) const {
    for (VarId i = 0; i < variables.size(); ++i) {
      if (variables[i] == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  VarId NamedFormula::variable(std::string_view name) const {
    if (auto v = find_variable(name)) {
      return *v;
    }
    throw Error("formula has no variable named '" + std::string(name) + "'");
  }

  VarId FormulaBuilder::var(std::string const& name) {
    for (VarId i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) {
        return i;
      }
    }
    names_.push_back(name);
    return names_.size() - 1;
  }

  namespace {

    void free_vars_rec(Formula const&      f,
                       std::vector<VarId>& bound,
                       std::vector<VarId>& out) {
      auto add = [&](Term const& t) {
        std::vector<VarId> vs;
        collect_variables(t, vs);
        for (VarId v : vs) {
          if (std::find(bound.begin(), bound.end(), v) == bound.end()
              && std::find(out.begin(), out.end(), v) == out.end()) {
            out.push_back(v);
          }
        }
      };
      switch (f.kind) {
        case Formula::Kind::Eq:
          add(f.lhs);
          add(f.rhs);
          return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
          std::size_t mark = bound.size();
          bound.insert(bound.end(), f.bound.begin(), f.bound.end());
          free_vars_rec(f.children[0], bound, out);
          bound.resize(mark);
          return;
        }
        default:
          for (auto const& c : f.children) {
            free_vars_rec(c, bound, out);
          }
      }
    }

    void check_term(Term const& t, Signature const& sig) {
      if (t.kind == Term::Kind::Variable) {
        return;
      }
      std::size_t op = sig.index_of(t.symbol);
      if (sig[op].arity != t.args.size()) {
        throw Error("symbol '" + t.symbol + "' has arity "
                    + std::to_string(sig[op].arity) + " but is applied to "
                    + std::to_string(t.args.size()) + " arguments");
      }
      for (auto const& a : t.args) {
        check_term(a, sig);
      }
    }

    bool is_atomic_for_printing(Formula const& f) {
      return f.kind == Formula::Kind::Eq || f.kind == Formula::Kind::Not;
    }

    void print(Formula const& f, std::vector<std::string> const& names, std::string& out);

    void print_operand(Formula const&                  f,
                       std::vector<std::string> const& names,
                       std::string&                    out) {
      if (is_atomic_for_printing(f)) {
        print(f, names, out);
      } else {
        out += "(";
        print(f, names, out);
        out += ")";
      }
    }

    void print(Formula const& f, std::vector<std::string> const& names, std::string& out) {
      switch (f.kind) {
        case Formula::Kind::Eq:
          out += to_string(f.lhs, names) + " = " + to_string(f.rhs, names);
          return;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
          char const* sep = f.kind == Formula::Kind::And ? " /\\ " : " \\/ ";
          for (std::size_t i = 0; i < f.children.size(); ++i) {
            if (i) {
              out += sep;
            }
            print_operand(f.children[i], names, out);
          }
          return;
        }
        case Formula::Kind::Implies:
          print_operand(f.children[0], names, out);
          out += " -> ";
          print_operand(f.children[1], names, out);
          return;
        case Formula::Kind::Not:
          out += "!";
          print_operand(f.children[0], names, out);
          return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
          out += f.kind == Formula::Kind::Exists ? "exists" : "forall";
          for (VarId v : f.bound) {
            out += " " + names.at(v);
          }
          out += ". ";
          print(f.children[0], names, out);
          return;
      }
    }

  }  // namespace

  std::vector<VarId> free_variables(Formula const& f) {
    std::vector<VarId> bound;
    std::vector<VarId> out;
    free_vars_rec(f, bound, out);
    return out;
  }

  std::size_t bound_variable_count(Formula const& f) {
    std::size_t n = f.bound.size();
    for (auto const& c : f.children) {
      n += bound_variable_count(c);
    }
    return n;
  }

  bool is_pp(Formula const& f) {
    switch (f.kind) {
      case Formula::Kind::Eq:
        return true;
      case Formula::Kind::And:
      case Formula::Kind::Exists:
        return std::all_of(
            f.children.begin(), f.children.end(), [](auto const& c) { return is_pp(c); });
      default:
        return false;
    }
  }

  void check_well_formed(Formula const& f, Signature const& sig) {
    if (f.kind == Formula::Kind::Eq) {
      check_term(f.lhs, sig);
      check_term(f.rhs, sig);
      return;
    }
    for (auto const& c : f.children) {
      check_well_formed(c, sig);
    }
  }

  std::string to_string(Term const& t, std::vector<std::string> const& names) {
    if (t.kind == Term::Kind::Variable) {
      return t.var < names.size() ? names[t.var] : "v" + std::to_string(t.var);
    }
    if (t.args.empty()) {
      return t.symbol;
    }
    std::string out = t.symbol + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      out += (i ? "," : "") + to_string(t.args[i], names);
    }
    return out + ")";
  }

  std::string to_string(NamedFormula const& f) {
    std::string out;
    print(f.formula, f.variables, out);
    return out;
  }

}  // namespace uaforge
