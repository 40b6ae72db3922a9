#ifndef UAFORGE_CONGRUENCE_HPP_
#define UAFORGE_CONGRUENCE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "uaforge/algebra.hpp"
#include "uaforge/partition.hpp"

namespace uaforge {

  // True iff every operation maps blockwise-related argument tuples to related
  // results. Throws Error on size mismatch.
  bool is_congruence(FiniteAlgebra const& alg, Partition const& part);

  // Least congruence containing (a, b), by union-find with closure under the
  // basic translations x -> f(c1, ..., x, ..., cr).
  Partition principal_congruence(FiniteAlgebra const& alg, Element a, Element b);

  // Least congruence containing `start` and every pair in `pairs`.
  Partition congruence_generated(FiniteAlgebra const&                         alg,
                                 Partition const&                             start,
                                 std::vector<std::pair<Element, Element>> const& pairs);

  struct PrincipalCongruence {
    Element   a;
    Element   b;
    Partition congruence;
  };

  // Cg(a, b) for every a < b, in lexicographic pair order. The serial kernel
  // is the reference; the parallel one distributes pairs over OpenMP threads
  // and must return an identical list.
  std::vector<PrincipalCongruence> all_principal_congruences_serial(
      FiniteAlgebra const& alg);
  std::vector<PrincipalCongruence> all_principal_congruences_parallel(
      FiniteAlgebra const& alg);

  struct CongruenceLattice {
    // Deduplicated; sorted by descending block count, then rep array, which
    // extends the refinement order.
    std::vector<Partition>         congruences;
    std::vector<std::vector<char>> leq;  // leq[i][j]: congruences[i] refines [j]

    std::size_t size() const noexcept {
      return congruences.size();
    }
    std::size_t bottom() const noexcept {
      return 0;
    }
    std::size_t top() const noexcept {
      return congruences.size() - 1;
    }
    std::optional<std::size_t> index_of(Partition const& p) const;
  };

  // Join-closure of the principal congruences. Throws GuardError above
  // kSizeGuard.
  CongruenceLattice congruence_lattice(FiniteAlgebra const& alg);

  // The least element of Con \ {id} if it exists.
  std::optional<Partition> monolith(CongruenceLattice const& lat);

  // Trivial algebras are neither simple, SI nor FSI.
  bool is_simple(FiniteAlgebra const& alg);
  bool is_si(FiniteAlgebra const& alg);
  bool is_fsi(FiniteAlgebra const& alg);

  bool is_si(CongruenceLattice const& lat);
  bool is_fsi(CongruenceLattice const& lat);

}  // namespace uaforge

#endif  // UAFORGE_CONGRUENCE_HPP_
