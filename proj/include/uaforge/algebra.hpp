#ifndef UAFORGE_ALGEBRA_HPP_
#define UAFORGE_ALGEBRA_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uaforge/partition.hpp"

namespace uaforge {

  inline constexpr Element kUnassigned = std::numeric_limits<Element>::max();

  // Enumerations over all subsets / all pairs are refused above this size.
  inline constexpr std::size_t kSizeGuard = 24;

  struct OperationSymbol {
    std::string name;
    std::size_t arity = 0;

    bool operator==(OperationSymbol const&) const = default;
  };

  class Signature {
   public:
    Signature() = default;
    // Throws Error on duplicate names.
    explicit Signature(std::vector<OperationSymbol> symbols);

    std::size_t size() const noexcept {
      return symbols_.size();
    }
    OperationSymbol const& operator[](std::size_t i) const {
      return symbols_[i];
    }
    std::vector<OperationSymbol> const& symbols() const noexcept {
      return symbols_;
    }

    std::optional<std::size_t> find(std::string_view name) const;
    // Throws Error if absent.
    std::size_t index_of(std::string_view name) const;
    bool contains(std::string_view name) const {
      return find(name).has_value();
    }

    bool operator==(Signature const&) const = default;

   private:
    std::vector<OperationSymbol> symbols_;
  };

  // An algebra on the universe {0, ..., size-1}. Each operation is a dense
  // row-major table: arguments (x0, ..., x{r-1}) live at index
  // ((x0 * size + x1) * size + ...) + x{r-1}. Immutable once built.
  class FiniteAlgebra {
   public:
    FiniteAlgebra() = default;
    // Validates table lengths and entries; throws Error on violation.
    FiniteAlgebra(std::string                       name,
                  Signature                         signature,
                  std::size_t                       size,
                  std::vector<std::vector<Element>> tables,
                  std::vector<std::string>          element_names = {});

    std::string const& name() const noexcept {
      return name_;
    }
    Signature const& signature() const noexcept {
      return signature_;
    }
    std::size_t size() const noexcept {
      return size_;
    }
    std::vector<Element> const& table(std::size_t op) const {
      return tables_[op];
    }
    std::vector<std::vector<Element>> const& tables() const noexcept {
      return tables_;
    }
    std::vector<std::string> const& element_names() const noexcept {
      return element_names_;
    }

    Element apply(std::size_t op, std::span<Element const> args) const;

    Element apply(std::size_t op) const {
      return tables_[op][0];
    }
    Element apply(std::size_t op, Element x) const {
      return tables_[op][x];
    }
    Element apply(std::size_t op, Element x, Element y) const {
      return tables_[op][x * size_ + y];
    }

    // Value of the nullary symbol `symbol`; throws if absent or not nullary.
    Element constant(std::string_view symbol) const;

    // Display name: element_names()[x] when present, else the decimal index.
    std::string element_name(Element x) const;

    // Accepts a display name or a decimal index.
    std::optional<Element> parse_element(std::string_view text) const;

    FiniteAlgebra renamed(std::string name) const;

    // Keeps only the listed symbols, in signature order.
    FiniteAlgebra reduct(std::vector<std::string> const& keep) const;

    // Same universe, extra operations appended to the signature.
    FiniteAlgebra expanded(std::vector<OperationSymbol>     symbols,
                           std::vector<std::vector<Element>> tables) const;

    // Structural equality of signature, size and tables; names are ignored.
    bool same_structure(FiniteAlgebra const& other) const;

   private:
    std::string                       name_;
    Signature                         signature_;
    std::size_t                       size_ = 0;
    std::vector<std::vector<Element>> tables_;
    std::vector<std::string>          element_names_;
  };

  // size^arity, throwing GuardError when it would not fit.
  std::size_t table_length(std::size_t size, std::size_t arity);

  using VarId = std::size_t;

  struct Term {
    enum class Kind { Variable, Apply };

    Kind              kind = Kind::Variable;
    VarId             var  = 0;
    std::string       symbol;
    std::vector<Term> args;

    static Term variable(VarId v);
    static Term apply(std::string symbol, std::vector<Term> args = {});

    bool operator==(Term const&) const = default;
  };

  void collect_variables(Term const& t, std::vector<VarId>& out);

  // Throws Error on an unknown symbol, an arity mismatch, or a variable that is
  // out of range of env or mapped to kUnassigned.
  Element eval_term(FiniteAlgebra const&     alg,
                    Term const&              t,
                    std::span<Element const> env);

  // A term resolved against one algebra into a postfix program. The algebra
  // must outlive the compiled term.
  class CompiledTerm {
   public:
    CompiledTerm() = default;
    CompiledTerm(FiniteAlgebra const& alg, Term const& t);

    Element eval(std::span<Element const> env) const;

    // Set if the term is a bare variable.
    std::optional<VarId> as_variable() const;

    std::vector<VarId> const& variables() const noexcept {
      return vars_;
    }

   private:
    struct Instr {
      bool           is_var;
      std::size_t    arity;  // operations only
      std::size_t    value;  // variable id or operation index
      Element const* table;
    };

    std::vector<Instr> code_;
    std::vector<VarId> vars_;
    std::size_t        size_      = 0;
    std::size_t        max_stack_ = 0;
  };

  struct SubuniverseResult {
    std::vector<Element> elements;  // sorted ascending
    bool                 closed = true;

    bool contains(Element x) const;
    bool operator==(SubuniverseResult const&) const = default;
  };

  // Least subuniverse containing generators and every constant.
  SubuniverseResult sg_closure(FiniteAlgebra const&     alg,
                               std::span<Element const> generators);

  // Checks closure of an arbitrary element set under every operation.
  bool is_subuniverse(FiniteAlgebra const& alg, std::span<Element const> elements);

  struct Subalgebra {
    FiniteAlgebra        algebra;
    std::vector<Element> embedding;  // new index -> old element
  };

  // Induced algebra on a closed set; new indices follow the sorted order of
  // elements. Throws Error if the set is not closed.
  Subalgebra subalgebra(FiniteAlgebra const& alg, SubuniverseResult const& sub);

  // Every nonempty subuniverse exactly once, sorted by size and then
  // lexicographically. Throws GuardError above kSizeGuard.
  std::vector<SubuniverseResult> all_subuniverses(FiniteAlgebra const& alg);

  // Componentwise product; the universe is the row-major product index.
  // The empty product is the one-element algebra over `signature`.
  FiniteAlgebra direct_product(Signature const&                sig,
                               std::span<FiniteAlgebra const> factors);

  FiniteAlgebra trivial_algebra(Signature const& sig, std::string name = "trivial");

  struct Quotient {
    FiniteAlgebra        algebra;
    std::vector<Element> block_of;  // old element -> block index
  };

  // Blocks are ordered by least representative. Throws Error when the
  // partition is not compatible with the operations.
  Quotient quotient(FiniteAlgebra const& alg, Partition const& part);

}  // namespace uaforge

#endif  // UAFORGE_ALGEBRA_HPP_
