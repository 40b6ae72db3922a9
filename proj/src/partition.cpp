#include "uaforge/partition.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "uaforge/error.hpp"

namespace uaforge {

  namespace {
    constexpr Element kNoLabel = static_cast<Element>(-1);
  }

  Partition Partition::identity(std::size_t size) {
    std::vector<Element> rep(size);
    std::iota(rep.begin(), rep.end(), Element{0});
    return Partition(std::move(rep));
  }

  Partition Partition::full(std::size_t size) {
    return Partition(std::vector<Element>(size, 0));
  }

  Partition Partition::from_labels(std::span<Element const> labels) {
    std::unordered_map<Element, Element> first;
    std::vector<Element>                 rep(labels.size());
    for (Element i = 0; i < labels.size(); ++i) {
      auto [it, inserted] = first.emplace(labels[i], i);
      rep[i]              = it->second;
    }
    return Partition(std::move(rep));
  }

  Partition Partition::from_blocks(std::size_t                              size,
                                   std::vector<std::vector<Element>> const& blocks) {
    std::vector<Element> label(size, kNoLabel);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (Element x : blocks[b]) {
        if (x >= size) {
          throw Error("partition element " + std::to_string(x)
                      + " out of range for size " + std::to_string(size));
        }
        if (label[x] != kNoLabel) {
          throw Error("element " + std::to_string(x)
                      + " appears in more than one block");
        }
        label[x] = static_cast<Element>(b);
      }
    }
    for (Element x = 0; x < size; ++x) {
      if (label[x] == kNoLabel) {
        label[x] = static_cast<Element>(blocks.size() + x);
      }
    }
    return from_labels(label);
  }

  std::size_t Partition::block_count() const noexcept {
    std::size_t n = 0;
    for (Element i = 0; i < rep_.size(); ++i) {
      n += (rep_[i] == i);
    }
    return n;
  }

  std::vector<std::vector<Element>> Partition::blocks() const {
    std::vector<std::vector<Element>> out;
    std::vector<Element>              index = block_index();
    out.resize(block_count());
    for (Element i = 0; i < rep_.size(); ++i) {
      out[index[i]].push_back(i);
    }
    return out;
  }

  std::vector<Element> Partition::block_index() const {
    std::vector<Element> index(rep_.size());
    Element              next = 0;
    for (Element i = 0; i < rep_.size(); ++i) {
      index[i] = rep_[i] == i ? next++ : index[rep_[i]];
    }
    return index;
  }

  bool Partition::is_identity() const noexcept {
    for (Element i = 0; i < rep_.size(); ++i) {
      if (rep_[i] != i) {
        return false;
      }
    }
    return true;
  }

  bool Partition::is_full() const noexcept {
    return std::all_of(
        rep_.begin(), rep_.end(), [](Element r) { return r == 0; });
  }

  bool Partition::refines(Partition const& other) const {
    if (other.size() != size()) {
      throw Error("partition size mismatch");
    }
    // Each block is connected to its least element, so checking i ~ rep(i)
    // in other suffices.
    for (Element i = 0; i < rep_.size(); ++i) {
      if (!other.related(i, rep_[i])) {
        return false;
      }
    }
    return true;
  }

  Partition Partition::join(Partition const& other) const {
    if (other.size() != size()) {
      throw Error("partition size mismatch");
    }
    UnionFind uf(*this);
    for (Element i = 0; i < rep_.size(); ++i) {
      uf.unite(i, other.rep_[i]);
    }
    return uf.partition();
  }

  Partition Partition::meet(Partition const& other) const {
    if (other.size() != size()) {
      throw Error("partition size mismatch");
    }
    std::vector<Element> label(size());
    for (Element i = 0; i < rep_.size(); ++i) {
      label[i] = static_cast<Element>(rep_[i] * size() + other.rep_[i]);
    }
    return from_labels(label);
  }

  std::string Partition::to_string() const {
    std::string out = "[";
    bool        first_block = true;
    for (auto const& block : blocks()) {
      out += first_block ? "[" : ",[";
      first_block = false;
      for (std::size_t j = 0; j < block.size(); ++j) {
        out += (j ? "," : "") + std::to_string(block[j]);
      }
      out += "]";
    }
    return out + "]";
  }

  std::size_t Partition::hash() const noexcept {
    std::size_t h = rep_.size();
    for (Element r : rep_) {
      h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  UnionFind::UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Element{0});
  }

  UnionFind::UnionFind(Partition const& start)
      : parent_(start.reps().begin(), start.reps().end()) {}

  Element UnionFind::find(Element x) {
    Element root = x;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[x] != root) {
      Element next = parent_[x];
      parent_[x]   = root;
      x            = next;
    }
    return root;
  }

  bool UnionFind::unite(Element x, Element y) {
    x = find(x);
    y = find(y);
    if (x == y) {
      return false;
    }
    // Keep the smaller index as root so the canonical form falls out directly.
    if (y < x) {
      std::swap(x, y);
    }
    parent_[y] = x;
    return true;
  }

  Partition UnionFind::partition() {
    std::vector<Element> rep(parent_.size());
    for (Element i = 0; i < parent_.size(); ++i) {
      rep[i] = find(i);
    }
    return Partition(std::move(rep));
  }

}  // namespace uaforge
