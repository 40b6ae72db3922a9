#ifndef UAFORGE_PARTITION_HPP_
#define UAFORGE_PARTITION_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace uaforge {

  using Element = std::uint32_t;

  // An equivalence relation on {0, ..., size-1} in canonical form:
  // rep(i) is the least element of the block of i, so rep(rep(i)) == rep(i)
  // and rep(i) <= i. Two partitions are equal iff their rep arrays are.
  class Partition {
   public:
    Partition() = default;

    static Partition identity(std::size_t size);
    static Partition full(std::size_t size);

    // Canonicalises an arbitrary labelling: i ~ j iff labels[i] == labels[j].
    static Partition from_labels(std::span<Element const> labels);

    // Throws Error if a block mentions an element twice, or an element is
    // out of range. Elements not mentioned become singletons.
    static Partition from_blocks(std::size_t                             size,
                                 std::vector<std::vector<Element>> const& blocks);

    std::size_t size() const noexcept {
      return rep_.size();
    }

    Element rep(Element x) const {
      return rep_.at(x);
    }

    bool related(Element x, Element y) const {
      return rep_.at(x) == rep_.at(y);
    }

    std::span<Element const> reps() const noexcept {
      return rep_;
    }

    std::size_t block_count() const noexcept;

    // Blocks sorted by least element, each block sorted ascending.
    std::vector<std::vector<Element>> blocks() const;

    // Index of the block containing each element, blocks numbered by least
    // representative.
    std::vector<Element> block_index() const;

    bool is_identity() const noexcept;
    bool is_full() const noexcept;

    // True iff every block of *this lies inside a block of other.
    bool refines(Partition const& other) const;

    Partition join(Partition const& other) const;
    Partition meet(Partition const& other) const;

    // JSON block list, e.g. [[0],[1,2]].
    std::string to_string() const;

    std::size_t hash() const noexcept;

    bool operator==(Partition const&) const = default;
    auto operator<=>(Partition const&) const = default;

   private:
    friend class UnionFind;

    explicit Partition(std::vector<Element> rep) : rep_(std::move(rep)) {}

    std::vector<Element> rep_;
  };

  struct PartitionHash {
    std::size_t operator()(Partition const& p) const noexcept {
      return p.hash();
    }
  };

  // Dense union-find over {0, ..., n-1}.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n);
    explicit UnionFind(Partition const& start);

    Element find(Element x);

    // Returns false if x and y were already in the same block.
    bool unite(Element x, Element y);

    Partition partition();

   private:
    std::vector<Element> parent_;
  };

}  // namespace uaforge

#endif  // UAFORGE_PARTITION_HPP_
