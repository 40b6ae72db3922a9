#ifndef UAFORGE_ANALYSIS_HPP_
#define UAFORGE_ANALYSIS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uaforge/algebra.hpp"
#include "uaforge/partition.hpp"

namespace uaforge {

  using Map = std::vector<Element>;  // map[x] is the image of x

  enum class HomKind { All, Injective, Bijective };

  struct HomSet {
    std::string      source;
    std::string      target;
    HomKind          kind = HomKind::All;
    std::vector<Map> maps;  // ascending lexicographic order
  };

  // First operation and argument tuple where map fails to commute, rendered
  // with element names, or nullopt for a homomorphism. Throws Error when the
  // signatures differ or the map has the wrong length or range.
  std::optional<std::string> homomorphism_defect(FiniteAlgebra const& a,
                                                 FiniteAlgebra const& b,
                                                 Map const&           map);

  bool is_homomorphism(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& map);

  // Every homomorphism of the requested kind. The search assigns images to a
  // generating set of a and propagates through the tables. Throws GuardError
  // above kSizeGuard.
  HomSet homs(FiniteAlgebra const& a, FiniteAlgebra const& b, HomKind kind = HomKind::All);

  std::optional<Map> find_isomorphism(FiniteAlgebra const& a, FiniteAlgebra const& b);
  bool               is_isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b);

  // g after h.
  Map compose(Map const& g, Map const& h);

  ////////////////////////////////////////////////////////////////////////

  struct HsMember {
    std::vector<Element> subuniverse;
    Partition            congruence;
    FiniteAlgebra        algebra;  // subalgebra modulo congruence
    bool                 fsi       = false;
    bool                 si        = false;
    std::size_t          iso_class = 0;
  };

  struct HsClassification {
    std::vector<HsMember>      members;
    std::vector<FiniteAlgebra> classes;  // one representative per iso class

    std::vector<std::size_t> fsi_classes() const;
    std::vector<std::size_t> si_classes() const;
  };

  // Every quotient of every subalgebra, bucketed up to isomorphism.
  HsClassification hs_classify(FiniteAlgebra const& alg);

  // Representatives of the subalgebras of alg up to isomorphism, smallest
  // first.
  std::vector<FiniteAlgebra> subalgebra_classes(FiniteAlgebra const& alg);

  ////////////////////////////////////////////////////////////////////////

  struct SpanResult {
    std::size_t apex = 0, left = 0, right = 0;  // indices into the members
    Map         f, g;                           // apex -> left, apex -> right
    std::optional<std::size_t> target;          // index into the targets
    Map                        p, q;            // left -> target, right -> target
  };

  struct AmalgamationReport {
    std::vector<SpanResult> spans;

    std::size_t failures() const;
  };

  // Every span of embeddings among members, each searched for an amalgam with
  // apex in targets.
  AmalgamationReport check_amalgamation(std::span<FiniteAlgebra const> members,
                                        std::span<FiniteAlgebra const> targets);

  struct EpicCase {
    std::vector<Element> outer;  // C, a subuniverse of the big algebra
    std::vector<Element> inner;  // a proper subuniverse of C
    std::optional<Map>   witness;  // endomorphism fixing inner, moving some of outer
    Element              moved = 0;
  };

  // For each proper inclusion of subuniverses A < C of big, looks for an
  // endomorphism of big that is the identity on A and moves an element of C.
  std::vector<EpicCase> check_epic_subalgebras(FiniteAlgebra const& big);

  ////////////////////////////////////////////////////////////////////////

  struct AtomPermutationResult {
    Map                        map;
    bool                       is_automorphism = false;
    std::optional<std::string> defect;
  };

  // alg must have the powerset-plus-top shape of size 2^n + 1. sigma permutes
  // {0..n-1}; the induced map sends a subset to its image and fixes the top.
  AtomPermutationResult atom_permutation_automorphism(FiniteAlgebra const&       alg,
                                                      std::vector<std::size_t> const& sigma);

}  // namespace uaforge

#endif  // UAFORGE_ANALYSIS_HPP_
