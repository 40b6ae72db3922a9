#ifndef UAFORGE_CATALOG_HPP_
#define UAFORGE_CATALOG_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uaforge/algebra.hpp"
#include "uaforge/evaluator.hpp"
#include "uaforge/formula.hpp"
#include "uaforge/partition.hpp"

namespace uaforge::catalog {

  ////////////////////////////////////////////////////////////////////////
  // The eight-element chain algebra and its relatives
  ////////////////////////////////////////////////////////////////////////

  // Chain 0 < a1 < ... < a6 < 1 on indices 0..7, signature
  // meet, join, imp, zero, one, a5, plus, ast, box, dia.
  inline constexpr Element kA1  = 1;
  inline constexpr Element kA2  = 2;
  inline constexpr Element kA3  = 3;
  inline constexpr Element kA4  = 4;
  inline constexpr Element kA5  = 5;
  inline constexpr Element kA6  = 6;
  inline constexpr Element kTop = 7;

  FiniteAlgebra section2_A();

  // The subalgebra on everything but a4; embedding maps 0..6 to
  // 0, a1, a2, a3, a5, a6, 1.
  Subalgebra section2_A_minus_a4();

  // Glues a6 and 1 in A-a4 (indices 5 and 6).
  Partition section2_theta();

  // (A-a4)/theta, six elements.
  Quotient section2_B();

  // exists z. plus(x,y) = dia(z)
  NamedFormula section2_phi();

  // A with the unary symbol g interpreted by the operation phi defines.
  FiniteAlgebra section2_A_exp();

  // The subalgebra of A-exp on A-a4, and its quotient by theta.
  Subalgebra section2_C();
  Quotient   section2_C_mod_theta();

  ////////////////////////////////////////////////////////////////////////
  // Powerset lattices with a new top
  ////////////////////////////////////////////////////////////////////////

  inline constexpr std::size_t kMaxN = 5;

  // Universe: subsets of {0..n-1} as bitmasks 0..2^n-1, then the new top at
  // index 2^n. Signature meet, join, imp, zero, one. Throws GuardError for
  // n > kMaxN.
  FiniteAlgebra An(std::size_t n);

  inline Element an_top(std::size_t n) {
    return static_cast<Element>(std::size_t{1} << n);
  }
  inline Element an_e(std::size_t n) {
    return static_cast<Element>((std::size_t{1} << n) - 1);
  }
  // Number of atoms below an element that is not the top.
  std::size_t atom_count(Element a);

  std::string an_element_name(std::size_t n, Element x);

  // psi_{m,n}(x, y, z_m_1, ..., z_m_{n+1}); requires 1 <= m <= n-1.
  NamedFormula psi(std::size_t m, std::size_t n);

  // exists z_1_1 ... z_k_{n+1} w_1 ... w_k. gamma_{k,n}, free in x and y;
  // requires n >= 3 and 1 <= k <= n-1.
  NamedFormula phi(std::size_t k, std::size_t n);

  // The expected operation defined by phi(k, n) on An(n).
  PartialFunctionTable fkn_table(std::size_t n, std::size_t k);

  struct PpOperation {
    std::string  symbol;
    NamedFormula formula;
    std::size_t  arity = 1;
  };

  // Appends one operation per entry, interpreted by the function the formula
  // induces. Throws FunctionalityError or Error (with the first tuple lacking
  // a value) unless each formula is functional and total.
  FiniteAlgebra pp_expand(FiniteAlgebra const& alg, std::span<PpOperation const> ops);

  // An(n) expanded by f1, ..., f{n-1}, where fk is induced by phi(k, n).
  FiniteAlgebra Bn(std::size_t n);

  // Same algebra as Bn(n) with the tables written down from fkn_table
  // instead of evaluating the formulas.
  FiniteAlgebra Bn_from_tables(std::size_t n);

  std::vector<std::string> Bn_extra_symbols(std::size_t n);

  ////////////////////////////////////////////////////////////////////////
  // Named entries
  ////////////////////////////////////////////////////////////////////////

  struct Entry {
    std::optional<FiniteAlgebra> algebra;
    std::optional<Partition>     partition;
    std::optional<NamedFormula>  formula;
    std::string                  carrier;  // algebra a partition lives on

    // The algebra file format for algebras; otherwise a small JSON object.
    std::string to_json() const;
  };

  // Ids: sec2.A, sec2.A-minus-a4, sec2.theta, sec2.B, sec2.phi, sec2.A-exp,
  // sec2.C, sec2.C-mod-theta, An?n=N, phi?k=K&n=N, Bn?n=N.
  Entry build(std::string_view id);

  std::vector<std::string> known_ids();

}  // namespace uaforge::catalog

#endif  // UAFORGE_CATALOG_HPP_
