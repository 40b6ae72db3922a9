#include "uaforge/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <unordered_set>

#include "uaforge/error.hpp"

namespace uaforge {

  namespace {

    // Advances an odometer over {0..base-1}^digits. Returns false on wrap.
    bool next_tuple(std::vector<Element>& digits, std::size_t base) {
      for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < base) {
          return true;
        }
        digits[i] = 0;
      }
      return false;
    }

    // Same, but digits index into a list of `base` allowed values held in
    // positions; `values` is kept in sync.
    bool next_tuple_over(std::vector<std::size_t>&  positions,
                         std::vector<Element>&      values,
                         std::vector<Element> const& pool,
                         std::size_t                limit) {
      for (std::size_t i = positions.size(); i-- > 0;) {
        if (++positions[i] < limit) {
          values[i] = pool[positions[i]];
          return true;
        }
        positions[i] = 0;
        values[i]    = pool[0];
      }
      return false;
    }

    std::size_t flat_index(std::span<Element const> args, std::size_t size) {
      std::size_t idx = 0;
      for (Element a : args) {
        idx = idx * size + a;
      }
      return idx;
    }

    // Semi-naive closure: `members` grows in discovery order and `in` tracks
    // membership. Every tuple over the members is evaluated exactly once.
    void close_in_place(FiniteAlgebra const&  alg,
                        std::vector<Element>& members,
                        std::vector<char>&    in,
                        std::size_t           processed) {
      Signature const& sig = alg.signature();
      for (std::size_t op = 0; op < sig.size(); ++op) {
        if (sig[op].arity == 0) {
          Element c = alg.apply(op);
          if (!in[c]) {
            in[c] = 1;
            members.push_back(c);
          }
        }
      }
      std::vector<std::size_t> pos;
      std::vector<Element>     args;
      while (processed < members.size()) {
        std::size_t const frontier = processed++;
        // Tuples drawn from members[0..frontier] that use members[frontier]
        // at least once.
        for (std::size_t op = 0; op < sig.size(); ++op) {
          std::size_t const r = sig[op].arity;
          if (r == 0) {
            continue;
          }
          std::size_t const limit = frontier + 1;
          pos.assign(r, 0);
          args.assign(r, members[0]);
          do {
            bool uses_frontier = false;
            for (std::size_t p : pos) {
              uses_frontier |= (p == frontier);
            }
            if (!uses_frontier) {
              continue;
            }
            Element v = alg.table(op)[flat_index(args, alg.size())];
            if (!in[v]) {
              in[v] = 1;
              members.push_back(v);
            }
          } while (next_tuple_over(pos, args, members, limit));
        }
      }
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Signature
  ////////////////////////////////////////////////////////////////////////

  Signature::Signature(std::vector<OperationSymbol> symbols)
      : symbols_(std::move(symbols)) {
    std::set<std::string_view> seen;
    for (auto const& s : symbols_) {
      if (s.name.empty()) {
        throw Error("empty operation symbol name");
      }
      if (!seen.insert(s.name).second) {
        throw Error("duplicate operation symbol '" + s.name + "'");
      }
    }
  }

  std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t Signature::index_of(std::string_view name) const {
    if (auto i = find(name)) {
      return *i;
    }
    throw Error("unknown operation symbol '" + std::string(name) + "'");
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteAlgebra
  ////////////////////////////////////////////////////////////////////////

  std::size_t table_length(std::size_t size, std::size_t arity) {
    std::size_t len = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (size != 0 && len > (std::size_t{1} << 32) / size) {
        throw GuardError("operation table of arity " + std::to_string(arity)
                         + " over " + std::to_string(size)
                         + " elements is too large");
      }
      len *= size;
    }
    return len;
  }

  FiniteAlgebra::FiniteAlgebra(std::string                       name,
                               Signature                         signature,
                               std::size_t                       size,
                               std::vector<std::vector<Element>> tables,
                               std::vector<std::string>          element_names)
      : name_(std::move(name)),
        signature_(std::move(signature)),
        size_(size),
        tables_(std::move(tables)),
        element_names_(std::move(element_names)) {
    if (size_ == 0) {
      throw Error("algebra '" + name_ + "' has an empty universe");
    }
    if (tables_.size() != signature_.size()) {
      throw Error("algebra '" + name_ + "' has " + std::to_string(tables_.size())
                  + " tables for " + std::to_string(signature_.size())
                  + " symbols");
    }
    for (std::size_t op = 0; op < tables_.size(); ++op) {
      std::size_t expected = table_length(size_, signature_[op].arity);
      if (tables_[op].size() != expected) {
        throw Error("table for '" + signature_[op].name + "' has length "
                    + std::to_string(tables_[op].size()) + ", expected "
                    + std::to_string(expected));
      }
      for (Element v : tables_[op]) {
        if (v >= size_) {
          throw Error("table for '" + signature_[op].name + "' contains "
                      + std::to_string(v) + " outside the universe");
        }
      }
    }
    if (!element_names_.empty() && element_names_.size() != size_) {
      throw Error("algebra '" + name_ + "' has "
                  + std::to_string(element_names_.size())
                  + " element names for " + std::to_string(size_)
                  + " elements");
    }
  }

  Element FiniteAlgebra::apply(std::size_t op, std::span<Element const> args) const {
    return tables_[op][flat_index(args, size_)];
  }

  Element FiniteAlgebra::constant(std::string_view symbol) const {
    std::size_t op = signature_.index_of(symbol);
    if (signature_[op].arity != 0) {
      throw Error("symbol '" + std::string(symbol) + "' is not a constant");
    }
    return tables_[op][0];
  }

  std::string FiniteAlgebra::element_name(Element x) const {
    if (!element_names_.empty() && x < element_names_.size()) {
      return element_names_[x];
    }
    return std::to_string(x);
  }

  std::optional<Element> FiniteAlgebra::parse_element(std::string_view text) const {
    for (Element i = 0; i < element_names_.size(); ++i) {
      if (element_names_[i] == text) {
        return i;
      }
    }
    Element value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value < size_) {
      return value;
    }
    return std::nullopt;
  }

  FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
    FiniteAlgebra copy = *this;
    copy.name_         = std::move(name);
    return copy;
  }

  FiniteAlgebra FiniteAlgebra::reduct(std::vector<std::string> const& keep) const {
    std::vector<OperationSymbol>      symbols;
    std::vector<std::vector<Element>> tables;
    for (auto const& k : keep) {
      signature_.index_of(k);  // reject unknown names
    }
    for (std::size_t op = 0; op < signature_.size(); ++op) {
      if (std::find(keep.begin(), keep.end(), signature_[op].name) != keep.end()) {
        symbols.push_back(signature_[op]);
        tables.push_back(tables_[op]);
      }
    }
    return FiniteAlgebra(name_, Signature(std::move(symbols)), size_,
                         std::move(tables), element_names_);
  }

  FiniteAlgebra FiniteAlgebra::expanded(std::vector<OperationSymbol>      symbols,
                                        std::vector<std::vector<Element>> tables) const {
    std::vector<OperationSymbol> all = signature_.symbols();
    all.insert(all.end(), symbols.begin(), symbols.end());
    std::vector<std::vector<Element>> all_tables = tables_;
    for (auto& t : tables) {
      all_tables.push_back(std::move(t));
    }
    return FiniteAlgebra(name_, Signature(std::move(all)), size_,
                         std::move(all_tables), element_names_);
  }

  bool FiniteAlgebra::same_structure(FiniteAlgebra const& other) const {
    return size_ == other.size_ && signature_ == other.signature_
           && tables_ == other.tables_;
  }

  ////////////////////////////////////////////////////////////////////////
  // Terms
  ////////////////////////////////////////////////////////////////////////

  Term Term::variable(VarId v) {
    Term t;
    t.kind = Kind::Variable;
    t.var  = v;
    return t;
  }

  Term Term::apply(std::string symbol, std::vector<Term> args) {
    Term t;
    t.kind   = Kind::Apply;
    t.symbol = std::move(symbol);
    t.args   = std::move(args);
    return t;
  }

  void collect_variables(Term const& t, std::vector<VarId>& out) {
    if (t.kind == Term::Kind::Variable) {
      if (std::find(out.begin(), out.end(), t.var) == out.end()) {
        out.push_back(t.var);
      }
      return;
    }
    for (auto const& a : t.args) {
      collect_variables(a, out);
    }
  }

  Element eval_term(FiniteAlgebra const&     alg,
                    Term const&              t,
                    std::span<Element const> env) {
    if (t.kind == Term::Kind::Variable) {
      if (t.var >= env.size() || env[t.var] == kUnassigned) {
        throw Error("unassigned variable " + std::to_string(t.var));
      }
      if (env[t.var] >= alg.size()) {
        throw Error("variable " + std::to_string(t.var)
                    + " is assigned an element outside the universe");
      }
      return env[t.var];
    }
    std::size_t op = alg.signature().index_of(t.symbol);
    if (alg.signature()[op].arity != t.args.size()) {
      throw Error("symbol '" + t.symbol + "' has arity "
                  + std::to_string(alg.signature()[op].arity) + " but is applied to "
                  + std::to_string(t.args.size()) + " arguments");
    }
    std::vector<Element> args;
    args.reserve(t.args.size());
    for (auto const& a : t.args) {
      args.push_back(eval_term(alg, a, env));
    }
    return alg.apply(op, args);
  }

  CompiledTerm::CompiledTerm(FiniteAlgebra const& alg, Term const& t)
      : size_(alg.size()) {
    std::size_t depth = 0;
    auto        emit  = [&](auto&& self, Term const& u) -> void {
      if (u.kind == Term::Kind::Variable) {
        code_.push_back({true, 0, u.var, nullptr});
        if (std::find(vars_.begin(), vars_.end(), u.var) == vars_.end()) {
          vars_.push_back(u.var);
        }
        max_stack_ = std::max(max_stack_, ++depth);
        return;
      }
      std::size_t op = alg.signature().index_of(u.symbol);
      std::size_t r  = alg.signature()[op].arity;
      if (r != u.args.size()) {
        throw Error("symbol '" + u.symbol + "' has arity " + std::to_string(r)
                    + " but is applied to " + std::to_string(u.args.size())
                    + " arguments");
      }
      for (auto const& a : u.args) {
        self(self, a);
      }
      code_.push_back({false, r, op, alg.table(op).data()});
      depth -= r;
      max_stack_ = std::max(max_stack_, ++depth);
    };
    emit(emit, t);
  }

  Element CompiledTerm::eval(std::span<Element const> env) const {
    // Terms in this library are shallow; a fixed buffer avoids allocation on
    // the hot path and falls back to the heap for deep ones.
    Element              buffer[64];
    std::vector<Element> heap;
    Element*             stack = buffer;
    if (max_stack_ > 64) {
      heap.resize(max_stack_);
      stack = heap.data();
    }
    std::size_t sp = 0;
    for (Instr const& in : code_) {
      if (in.is_var) {
        Element v = in.value < env.size() ? env[in.value] : kUnassigned;
        if (v == kUnassigned) {
          throw Error("unassigned variable " + std::to_string(in.value));
        }
        stack[sp++] = v;
        continue;
      }
      std::size_t idx = 0;
      for (std::size_t k = sp - in.arity; k < sp; ++k) {
        idx = idx * size_ + stack[k];
      }
      sp -= in.arity;
      stack[sp++] = in.table[idx];
    }
    return stack[0];
  }

  std::optional<VarId> CompiledTerm::as_variable() const {
    if (code_.size() == 1 && code_[0].is_var) {
      return code_[0].value;
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subuniverses
  ////////////////////////////////////////////////////////////////////////

  bool SubuniverseResult::contains(Element x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }

  SubuniverseResult sg_closure(FiniteAlgebra const&     alg,
                               std::span<Element const> generators) {
    std::vector<char>    in(alg.size(), 0);
    std::vector<Element> members;
    for (Element g : generators) {
      if (g >= alg.size()) {
        throw Error("generator " + std::to_string(g) + " out of range for '"
                    + alg.name() + "'");
      }
      if (!in[g]) {
        in[g] = 1;
        members.push_back(g);
      }
    }
    close_in_place(alg, members, in, 0);
    std::sort(members.begin(), members.end());
    return SubuniverseResult{std::move(members), true};
  }

  bool is_subuniverse(FiniteAlgebra const& alg, std::span<Element const> elements) {
    std::vector<char> in(alg.size(), 0);
    for (Element x : elements) {
      if (x >= alg.size()) {
        return false;
      }
      in[x] = 1;
    }
    std::vector<Element> pool(elements.begin(), elements.end());
    Signature const&     sig = alg.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t r = sig[op].arity;
      if (r == 0) {
        if (!in[alg.apply(op)]) {
          return false;
        }
        continue;
      }
      if (pool.empty()) {
        continue;
      }
      std::vector<std::size_t> pos(r, 0);
      std::vector<Element>     args(r, pool[0]);
      do {
        if (!in[alg.apply(op, args)]) {
          return false;
        }
      } while (next_tuple_over(pos, args, pool, pool.size()));
    }
    return true;
  }

  Subalgebra subalgebra(FiniteAlgebra const& alg, SubuniverseResult const& sub) {
    if (sub.elements.empty()) {
      throw Error("cannot form a subalgebra on the empty set");
    }
    if (!is_subuniverse(alg, sub.elements)) {
      throw Error("element set is not closed under the operations of '"
                  + alg.name() + "'");
    }
    std::vector<Element> const& emb = sub.elements;
    std::vector<Element>        back(alg.size(), kUnassigned);
    for (Element i = 0; i < emb.size(); ++i) {
      back[emb[i]] = i;
    }
    std::size_t const                 m   = emb.size();
    Signature const&                  sig = alg.signature();
    std::vector<std::vector<Element>> tables(sig.size());
    std::vector<Element>              local;
    std::vector<Element>              global;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t r = sig[op].arity;
      tables[op].resize(table_length(m, r));
      local.assign(r, 0);
      global.resize(r);
      std::size_t idx = 0;
      do {
        for (std::size_t k = 0; k < r; ++k) {
          global[k] = emb[local[k]];
        }
        tables[op][idx++] = back[alg.apply(op, global)];
      } while (next_tuple(local, m));
    }
    std::vector<std::string> names;
    if (!alg.element_names().empty()) {
      for (Element x : emb) {
        names.push_back(alg.element_names()[x]);
      }
    }
    return Subalgebra{FiniteAlgebra(alg.name() + "|sub", sig, m, std::move(tables),
                                    std::move(names)),
                      emb};
  }

  std::vector<SubuniverseResult> all_subuniverses(FiniteAlgebra const& alg) {
    std::size_t const n = alg.size();
    if (n > kSizeGuard) {
      throw GuardError("all_subuniverses: algebra '" + alg.name() + "' has "
                       + std::to_string(n) + " elements, guard is "
                       + std::to_string(kSizeGuard));
    }
    using Mask = std::uint32_t;
    auto to_mask = [](std::vector<Element> const& xs) {
      Mask m = 0;
      for (Element x : xs) {
        m |= Mask{1} << x;
      }
      return m;
    };

    std::unordered_set<Mask> seen;
    std::vector<Mask>        queue;
    std::vector<Element>     members;
    std::vector<char>        in(n);

    // Extends the closed set `base` (given as members/in) by x and closes.
    auto extend = [&](Mask base, Element x) {
      members.clear();
      std::fill(in.begin(), in.end(), 0);
      for (Element y = 0; y < n; ++y) {
        if (base >> y & 1) {
          in[y] = 1;
          members.push_back(y);
        }
      }
      std::size_t processed = members.size();
      // The base is already closed: only tuples touching new elements matter,
      // but close_in_place requires every member at or after `processed` to be
      // new, so x goes last.
      if (!in[x]) {
        in[x] = 1;
        members.push_back(x);
      }
      close_in_place(alg, members, in, processed);
      return to_mask(members);
    };

    SubuniverseResult bottom = sg_closure(alg, {});
    if (!bottom.elements.empty()) {
      Mask m = to_mask(bottom.elements);
      seen.insert(m);
      queue.push_back(m);
    } else {
      for (Element x = 0; x < n; ++x) {
        Mask m = to_mask(sg_closure(alg, std::vector<Element>{x}).elements);
        if (seen.insert(m).second) {
          queue.push_back(m);
        }
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Mask base = queue[head];
      for (Element x = 0; x < n; ++x) {
        if (base >> x & 1) {
          continue;
        }
        Mask next = extend(base, x);
        if (seen.insert(next).second) {
          queue.push_back(next);
        }
      }
    }

    std::vector<SubuniverseResult> out;
    out.reserve(queue.size());
    for (Mask m : queue) {
      SubuniverseResult r;
      for (Element x = 0; x < n; ++x) {
        if (m >> x & 1) {
          r.elements.push_back(x);
        }
      }
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
      if (a.elements.size() != b.elements.size()) {
        return a.elements.size() < b.elements.size();
      }
      return a.elements < b.elements;
    });
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Products and quotients
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra direct_product(Signature const&               sig,
                               std::span<FiniteAlgebra const> factors) {
    std::size_t size = 1;
    std::string name;
    for (auto const& f : factors) {
      if (!(f.signature() == sig)) {
        throw Error("direct_product: '" + f.name() + "' has a different signature");
      }
      if (size > (std::size_t{1} << 20) / f.size()) {
        throw GuardError("direct_product: product too large");
      }
      size *= f.size();
      name += (name.empty() ? "" : "x") + f.name();
    }
    if (factors.empty()) {
      name = "trivial";
    }
    std::size_t const k = factors.size();
    // Component decomposition of each product index.
    std::vector<std::vector<Element>> comp(size, std::vector<Element>(k));
    for (std::size_t idx = 0; idx < size; ++idx) {
      std::size_t rest = idx;
      for (std::size_t j = k; j-- > 0;) {
        comp[idx][j] = static_cast<Element>(rest % factors[j].size());
        rest /= factors[j].size();
      }
    }
    auto encode = [&](std::vector<Element> const& c) {
      std::size_t idx = 0;
      for (std::size_t j = 0; j < k; ++j) {
        idx = idx * factors[j].size() + c[j];
      }
      return static_cast<Element>(idx);
    };

    std::vector<std::vector<Element>> tables(sig.size());
    std::vector<Element>              args;
    std::vector<Element>              fargs;
    std::vector<Element>              result(k);
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t r = sig[op].arity;
      tables[op].resize(table_length(size, r));
      args.assign(r, 0);
      fargs.resize(r);
      std::size_t idx = 0;
      do {
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t p = 0; p < r; ++p) {
            fargs[p] = comp[args[p]][j];
          }
          result[j] = factors[j].apply(op, fargs);
        }
        tables[op][idx++] = encode(result);
      } while (next_tuple(args, size));
    }
    std::vector<std::string> names;
    bool named = std::all_of(factors.begin(), factors.end(), [](auto const& f) {
      return !f.element_names().empty();
    });
    if (named && k > 0) {
      for (std::size_t idx = 0; idx < size; ++idx) {
        std::string s = "(";
        for (std::size_t j = 0; j < k; ++j) {
          s += (j ? "," : "") + factors[j].element_name(comp[idx][j]);
        }
        names.push_back(s + ")");
      }
    }
    return FiniteAlgebra(name, sig, size, std::move(tables), std::move(names));
  }

  FiniteAlgebra trivial_algebra(Signature const& sig, std::string name) {
    std::vector<std::vector<Element>> tables(sig.size(), std::vector<Element>{0});
    return FiniteAlgebra(std::move(name), sig, 1, std::move(tables));
  }

  Quotient quotient(FiniteAlgebra const& alg, Partition const& part) {
    if (part.size() != alg.size()) {
      throw Error("quotient: partition size " + std::to_string(part.size())
                  + " does not match algebra size " + std::to_string(alg.size()));
    }
    std::vector<Element> block_of = part.block_index();
    std::size_t const    m        = part.block_count();
    Signature const&     sig      = alg.signature();

    std::vector<std::vector<Element>> tables(sig.size());
    std::vector<Element>              args;
    std::vector<Element>              blocks;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t r = sig[op].arity;
      tables[op].assign(table_length(m, r), kUnassigned);
      args.assign(r, 0);
      blocks.resize(r);
      do {
        for (std::size_t p = 0; p < r; ++p) {
          blocks[p] = block_of[args[p]];
        }
        Element  v    = block_of[alg.apply(op, args)];
        Element& slot = tables[op][flat_index(blocks, m)];
        if (slot == kUnassigned) {
          slot = v;
        } else if (slot != v) {
          throw Error("quotient: partition " + part.to_string()
                      + " is not a congruence of '" + alg.name()
                      + "' (operation '" + sig[op].name + "')");
        }
      } while (next_tuple(args, alg.size()));
    }

    std::vector<std::string> names;
    if (!alg.element_names().empty()) {
      for (auto const& block : part.blocks()) {
        if (block.size() == 1) {
          names.push_back(alg.element_names()[block[0]]);
          continue;
        }
        std::string s = "{";
        for (std::size_t j = 0; j < block.size(); ++j) {
          s += (j ? "," : "") + alg.element_names()[block[j]];
        }
        names.push_back(s + "}");
      }
    }
    return Quotient{FiniteAlgebra(alg.name() + "/~", sig, m, std::move(tables),
                                  std::move(names)),
                    std::move(block_of)};
  }

}  // namespace uaforge
