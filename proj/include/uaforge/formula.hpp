#ifndef UAFORGE_FORMULA_HPP_
#define UAFORGE_FORMULA_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uaforge/algebra.hpp"

namespace uaforge {

  // First-order formula over equations. Variables are indices into the
  // variable table of the owning NamedFormula.
  struct Formula {
    enum class Kind { Eq, And, Or, Implies, Not, Exists, Forall };

    Kind                 kind = Kind::Eq;
    Term                 lhs;
    Term                 rhs;
    std::vector<Formula> children;  // And/Or: n >= 1; Implies: 2; Not, quantifiers: 1
    std::vector<VarId>   bound;     // quantifiers only

    static Formula eq(Term lhs, Term rhs);
    static Formula conj(std::vector<Formula> parts);
    static Formula disj(std::vector<Formula> parts);
    static Formula implies(Formula premise, Formula conclusion);
    static Formula negation(Formula f);
    static Formula exists(std::vector<VarId> vars, Formula body);
    static Formula forall(std::vector<VarId> vars, Formula body);

    bool operator==(Formula const&) const = default;
  };

  struct NamedFormula {
    Formula                  formula;
    std::vector<std::string> variables;  // variables[id] is the display name

    std::optional<VarId> find_variable(std::string_view name) const;
    // Throws Error if absent.
    VarId variable(std::string_view name) const;

    bool operator==(NamedFormula const&) const = default;
  };

  // Builds formulas with names interned on first use.
  class FormulaBuilder {
   public:
    VarId var(std::string const& name);
    Term  v(std::string const& name) {
      return Term::variable(var(name));
    }
    NamedFormula finish(Formula f) const {
      return NamedFormula{std::move(f), names_};
    }

   private:
    std::vector<std::string> names_;
  };

  // Free variables in order of first occurrence.
  std::vector<VarId> free_variables(Formula const& f);

  std::size_t bound_variable_count(Formula const& f);

  // Equations combined with conjunction and existential quantification only.
  bool is_pp(Formula const& f);

  // Checks every symbol application against the signature; throws Error.
  void check_well_formed(Formula const& f, Signature const& sig);

  // Renders in the text syntax accepted by parse_formula.
  std::string to_string(NamedFormula const& f);
  std::string to_string(Term const& t, std::vector<std::string> const& names);

}  // namespace uaforge

#endif  // UAFORGE_FORMULA_HPP_
