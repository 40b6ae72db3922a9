#ifndef UAFORGE_EVALUATOR_HPP_
#define UAFORGE_EVALUATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uaforge/algebra.hpp"
#include "uaforge/error.hpp"
#include "uaforge/formula.hpp"

namespace uaforge {

  // env[v] is the value of variable v, or kUnassigned. Quantifiers range over
  // the whole universe. Throws Error if a free variable is unassigned.
  bool eval_formula(FiniteAlgebra const&     alg,
                    Formula const&           f,
                    std::span<Element const> env);

  // Convenience: assignment by variable name, e.g. {{"x", 0}, {"y", 3}}.
  bool eval_formula(FiniteAlgebra const&                           alg,
                    NamedFormula const&                            f,
                    std::vector<std::pair<std::string, Element>> const& assignment);

  std::vector<Element> make_env(NamedFormula const&                                 f,
                                std::vector<std::pair<std::string, Element>> const& assignment);

  struct DecompositionStats {
    std::size_t   components      = 0;
    std::size_t   eliminations    = 0;
    std::size_t   max_join_width  = 0;  // variables in the widest join
    std::uint64_t tuples_visited  = 0;
    bool          used_naive      = false;
  };

  // Same truth value as eval_formula. For an existential formula over a
  // conjunction, the conjuncts are split into connected components of the
  // variable co-occurrence graph (assigned variables count as constants) and
  // each component is solved by variable elimination: the constraints that
  // mention a variable are joined, the variable is projected out, and the
  // result replaces them. Anything else falls back to naive evaluation.
  bool eval_exists_decomposed(FiniteAlgebra const&     alg,
                              Formula const&           f,
                              std::span<Element const> env,
                              DecompositionStats*      stats = nullptr);

  // Every value of `output` for which f holds, given env for the other free
  // variables, ascending. Uses the decomposition when f is pp.
  std::vector<Element> solutions(FiniteAlgebra const&     alg,
                                 Formula const&           f,
                                 std::span<Element const> env,
                                 VarId                    output,
                                 DecompositionStats*      stats = nullptr);

  // Argument and result variables of a formula read as a function:
  // inputs are x (arity 1) or x1, ..., xn and the result is y.
  struct FunctionalSignature {
    std::vector<VarId> inputs;
    VarId              output = 0;
    std::size_t        env_size = 0;
  };

  // Throws Error if the formula has free variables other than the designated
  // ones. Designated variables absent from the formula get fresh ids.
  FunctionalSignature designate(NamedFormula const& f, std::size_t arity);

  // Row r lists the outputs for the r-th input tuple in row-major order. The
  // serial kernel is the reference for the parallel one.
  std::vector<std::vector<Element>> solution_table_serial(FiniteAlgebra const&       alg,
                                                          NamedFormula const&        f,
                                                          FunctionalSignature const& sig);
  std::vector<std::vector<Element>> solution_table_parallel(
      FiniteAlgebra const&       alg,
      NamedFormula const&        f,
      FunctionalSignature const& sig);

  struct PartialFunctionTable {
    std::string                             algebra;
    std::size_t                             arity = 0;
    std::map<std::vector<Element>, Element> values;  // keys form the domain

    bool                   is_total(std::size_t universe_size) const;
    std::optional<Element> at(std::vector<Element> const& args) const;

    bool operator==(PartialFunctionTable const& other) const {
      return arity == other.arity && values == other.values;
    }
  };

  class FunctionalityError : public Error {
   public:
    FunctionalityError(std::string const&   algebra,
                       std::vector<Element> args,
                       Element              first,
                       Element              second,
                       std::string const&   rendered);

    std::vector<Element> const& args() const noexcept {
      return args_;
    }
    Element first() const noexcept {
      return first_;
    }
    Element second() const noexcept {
      return second_;
    }

   private:
    std::vector<Element> args_;
    Element              first_;
    Element              second_;
  };

  struct FunctionalityViolation {
    std::string          algebra;
    std::vector<Element> args;
    Element              first  = 0;
    Element              second = 0;
  };

  // First lexicographic violation over the listed algebras, if any.
  std::optional<FunctionalityViolation> find_functionality_violation(
      std::span<FiniteAlgebra const> algs,
      NamedFormula const&            f,
      std::size_t                    arity);

  bool check_functional(std::span<FiniteAlgebra const> algs,
                        NamedFormula const&            f,
                        std::size_t                    arity);

  // Throws FunctionalityError at the first lexicographic input tuple with two
  // witnesses.
  PartialFunctionTable induced_partial_function(FiniteAlgebra const& alg,
                                                NamedFormula const&  f,
                                                std::size_t          arity);

}  // namespace uaforge

#endif  // UAFORGE_EVALUATOR_HPP_
