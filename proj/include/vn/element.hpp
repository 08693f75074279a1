// Elements of the Higman-Thompson group V_n as reduced prefix-replacement
// tables, with exact group arithmetic and the action on Cantor space.
//
// Products follow the functional convention: in g * h the right factor acts
// first, so (g * h)(x) = g(h(x)).

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vn/error.hpp"
#include "vn/words.hpp"

namespace vn {

  //! One row of a prefix-replacement table: from.xi -> to.xi.
  struct Leaf {
    Word from;
    Word to;

    friend bool operator==(Leaf const&, Leaf const&)  = default;
    friend auto operator<=>(Leaf const&, Leaf const&) = default;
  };

  using Table = std::vector<Leaf>;

  namespace detail {
    inline bool same_parent(Word const& a, Word const& b) {
      return a.size() == b.size() && !a.empty()
             && std::equal(a.begin(), a.end() - 1, b.begin());
    }

    // Merges caret pairs u.1..u.n -> v.1..v.n until none remains. Input must
    // be sorted by `from`; the output stays sorted.
    inline Table reduce(Table leaves, int n) {
      auto const span = static_cast<std::size_t>(n);
      bool       changed = true;
      while (changed) {
        changed = false;
        Table out;
        out.reserve(leaves.size());
        std::size_t i = 0;
        while (i < leaves.size()) {
          bool merge = i + span <= leaves.size() && !leaves[i].from.empty()
                       && !leaves[i].to.empty();
          for (std::size_t j = 0; merge && j < span; ++j) {
            auto const& lf = leaves[i + j];
            merge = same_parent(lf.from, leaves[i].from)
                    && same_parent(lf.to, leaves[i].to)
                    && lf.from.back() == j + 1 && lf.to.back() == j + 1;
          }
          if (merge) {
            out.push_back({leaves[i].from.parent(), leaves[i].to.parent()});
            i += span;
            changed = true;
          } else {
            out.push_back(std::move(leaves[i]));
            ++i;
          }
        }
        leaves = std::move(out);
      }
      return leaves;
    }

    inline std::vector<Word> froms(Table const& t) {
      std::vector<Word> out;
      out.reserve(t.size());
      for (auto const& lf : t) {
        out.push_back(lf.from);
      }
      return out;
    }

    inline std::vector<Word> tos(Table const& t) {
      std::vector<Word> out;
      out.reserve(t.size());
      for (auto const& lf : t) {
        out.push_back(lf.to);
      }
      return out;
    }
  }  // namespace detail

  //! An element of V_n in canonical (fully reduced) form.
  class Element {
   public:
    static Element identity(Alphabet a) {
      return Element(a, {{Word(), Word()}});
    }

    //! Validates a (possibly unreduced) bijection table and reduces it.
    static Element from_table(Alphabet a, Table leaves) {
      for (auto const& lf : leaves) {
        validate_word(lf.from, a);
        validate_word(lf.to, a);
      }
      if (!is_partition_set(detail::froms(leaves), a)) {
        throw Error(Errc::not_a_partition,
                    "domain words do not form a partition set");
      }
      if (!is_partition_set(detail::tos(leaves), a)) {
        throw Error(Errc::not_a_bijection,
                    "image words do not form a partition set");
      }
      return from_valid_table(a, std::move(leaves));
    }

    //! Reduces a table already known to be a bijection of partition sets.
    static Element from_valid_table(Alphabet a, Table leaves) {
      std::sort(leaves.begin(), leaves.end());
      return Element(a, detail::reduce(std::move(leaves), a.degree()));
    }

    Alphabet alphabet() const noexcept {
      return _alphabet;
    }
    int degree() const noexcept {
      return _alphabet.degree();
    }

    //! Canonical leaves sorted by domain word.
    Table const& leaves() const noexcept {
      return _leaves;
    }

    std::size_t size() const noexcept {
      return _leaves.size();
    }

    bool is_identity() const noexcept {
      return _leaves.size() == 1 && _leaves[0].from.empty();
    }

    PartitionSet domain() const {
      return PartitionSet::make(detail::froms(_leaves), _alphabet);
    }

    PartitionSet range() const {
      return PartitionSet::make(detail::tos(_leaves), _alphabet);
    }

    //! Longest word on either side of the canonical table.
    std::size_t depth() const noexcept {
      std::size_t m = 0;
      for (auto const& lf : _leaves) {
        m = std::max({m, lf.from.size(), lf.to.size()});
      }
      return m;
    }

    Location locate(Word const& w) const {
      return vn::locate(
          _leaves, w, [](Leaf const& lf) -> Word const& { return lf.from; });
    }

    friend bool operator==(Element const&, Element const&) = default;
    friend auto operator<=>(Element const& x, Element const& y) {
      if (auto c = x._alphabet.degree() <=> y._alphabet.degree(); c != 0) {
        return c;
      }
      return x._leaves <=> y._leaves;
    }

   private:
    Element(Alphabet a, Table leaves)
        : _alphabet(a), _leaves(std::move(leaves)) {}

    Alphabet _alphabet;
    Table    _leaves;
  };

  struct ElementHash {
    std::size_t operator()(Element const& g) const noexcept {
      WordHash    wh;
      std::size_t h = static_cast<std::size_t>(g.degree());
      for (auto const& lf : g.leaves()) {
        h ^= wh(lf.from) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= wh(lf.to) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

  inline void require_same_alphabet(Element const& g, Element const& h) {
    if (g.alphabet() != h.alphabet()) {
      throw Error(Errc::alphabet_mismatch,
                  "elements of V_" + std::to_string(g.degree()) + " and V_"
                      + std::to_string(h.degree()) + " cannot be combined");
    }
  }

  //! The element with canonical domain `domain` sending its i-th word to
  //! images[i].
  inline Element make_element(PartitionSet const& domain,
                              std::vector<Word>   images) {
    if (images.size() != domain.size()) {
      throw Error(Errc::arity,
                  "domain has " + std::to_string(domain.size())
                      + " words but " + std::to_string(images.size())
                      + " images were given");
    }
    Table t;
    t.reserve(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      t.push_back({domain.words()[i], std::move(images[i])});
    }
    return Element::from_table(domain.alphabet(), std::move(t));
  }

  inline Element canonicalize(Alphabet a, Table raw) {
    return Element::from_table(a, std::move(raw));
  }

  //! The table of `g` rewritten over a refinement of its canonical domain.
  inline Table table_over(Element const& g, PartitionSet const& domain) {
    Table out;
    out.reserve(domain.size());
    for (auto const& w : domain.words()) {
      auto loc = g.locate(w);
      if (!loc.has_prefix) {
        throw Error(Errc::precondition,
                    "partition does not refine the element's domain");
      }
      auto const& lf = g.leaves()[loc.first];
      out.push_back({w, lf.to + w.suffix(lf.from.size())});
    }
    return out;
  }

  //! g * h, i.e. x -> g(h(x)).
  inline Element compose(Element const& g, Element const& h) {
    require_same_alphabet(g, h);
    Table out;
    out.reserve(g.size() + h.size());
    for (auto const& [d, r] : h.leaves()) {
      auto loc = g.locate(r);
      if (loc.has_prefix) {
        auto const& lf = g.leaves()[loc.first];
        out.push_back({d, lf.to + r.suffix(lf.from.size())});
      } else {
        for (auto i = loc.first; i < loc.last; ++i) {
          auto const& lf = g.leaves()[i];
          out.push_back({d + lf.from.suffix(r.size()), lf.to});
        }
      }
    }
    return Element::from_valid_table(g.alphabet(), std::move(out));
  }

  inline Element operator*(Element const& g, Element const& h) {
    return compose(g, h);
  }

  inline Element invert(Element const& g) {
    Table out;
    out.reserve(g.size());
    for (auto const& [d, r] : g.leaves()) {
      out.push_back({r, d});
    }
    return Element::from_valid_table(g.alphabet(), std::move(out));
  }

  //! g^h = h^-1 g h
  inline Element conjugate(Element const& g, Element const& h) {
    return invert(h) * g * h;
  }

  //! [g, h] = g h g^-1 h^-1
  inline Element commutator(Element const& g, Element const& h) {
    return g * h * invert(g) * invert(h);
  }

  inline Element power(Element const& g, long long k) {
    Element base   = k < 0 ? invert(g) : g;
    auto    e      = k < 0 ? -static_cast<unsigned long long>(k)
                           : static_cast<unsigned long long>(k);
    Element result = Element::identity(g.alphabet());
    while (e > 0) {
      if (e & 1U) {
        result = result * base;
      }
      e >>= 1U;
      if (e > 0) {
        base = base * base;
      }
    }
    return result;
  }

  inline bool equals(Element const& g, Element const& h) {
    require_same_alphabet(g, h);
    return g == h;
  }

  //! Image of a finite word whose cone lies inside one domain cone.
  inline Word apply_word(Element const& g, Word const& w) {
    validate_word(w, g.alphabet());
    auto loc = g.locate(w);
    if (!loc.has_prefix) {
      throw Error(Errc::needs_longer_word,
                  "word " + to_string(w)
                      + " is shorter than the domain cones it meets");
    }
    auto const& lf = g.leaves()[loc.first];
    return lf.to + w.suffix(lf.from.size());
  }

  inline RationalPoint apply_point(Element const& g, RationalPoint const& p) {
    auto const depth = g.depth();
    auto const head  = p.prefix(depth);
    auto       loc   = g.locate(head);
    // every infinite word has a unique prefix in a complete antichain
    auto const& lf   = g.leaves()[loc.first];
    return p.drop(lf.from.size()).prepend(lf.to);
  }

  //! Least k <= bound with g^k = id.
  inline std::optional<int> order_bounded(Element const& g, int bound = 64) {
    if (bound < 1) {
      throw Error(Errc::precondition, "order bound must be at least 1");
    }
    Element p = g;
    for (int k = 1; k <= bound; ++k) {
      if (p.is_identity()) {
        return k;
      }
      p = p * g;
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Support
  ////////////////////////////////////////////////////////////////////////

  enum class ConeStatus { fixed, moved, boundary };

  struct SupportCone {
    Word                         cone;
    ConeStatus                   status;
    std::optional<RationalPoint> fixed_point;  // set iff boundary
  };

  struct SupportReport {
    std::vector<SupportCone> cones;

    bool trivial() const {
      return std::all_of(cones.begin(), cones.end(), [](auto const& c) {
        return c.status == ConeStatus::fixed;
      });
    }
  };

  //! Classifies every canonical domain cone: fixed pointwise, containing no
  //! fixed point, or containing exactly one (attracting or repelling) point.
  inline SupportReport support(Element const& g) {
    SupportReport report;
    for (auto const& [d, r] : g.leaves()) {
      if (d == r) {
        report.cones.push_back({d, ConeStatus::fixed, std::nullopt});
      } else if (d.is_prefix_of(r)) {
        report.cones.push_back(
            {d,
             ConeStatus::boundary,
             RationalPoint::make(d, r.suffix(d.size()))});
      } else if (r.is_prefix_of(d)) {
        report.cones.push_back(
            {d,
             ConeStatus::boundary,
             RationalPoint::make(r, d.suffix(r.size()))});
      } else {
        report.cones.push_back({d, ConeStatus::moved, std::nullopt});
      }
    }
    return report;
  }

  //! Does every canonical domain cone keep its uniform measure?
  inline bool is_volume_preserving(Element const& g) {
    return std::all_of(g.leaves().begin(), g.leaves().end(), [](auto& lf) {
      return lf.from.size() == lf.to.size();
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Sign
  ////////////////////////////////////////////////////////////////////////

  //! Parity of the permutation matching the lexicographically listed domain
  //! words to the positions of their images in the lexicographically listed
  //! range. Meaningful for any table; only representation-independent for
  //! odd n.
  inline int table_parity(Table leaves) {
    std::sort(leaves.begin(), leaves.end());
    std::vector<Word> images = detail::tos(leaves);
    std::sort(images.begin(), images.end());
    std::vector<std::size_t> perm(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      perm[i] = static_cast<std::size_t>(
          std::lower_bound(images.begin(), images.end(), leaves[i].to)
          - images.begin());
    }
    std::vector<bool> seen(perm.size(), false);
    std::size_t       transpositions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        ++len;
      }
      if (len > 0) {
        transpositions += len - 1;
      }
    }
    return transpositions % 2 == 0 ? 1 : -1;
  }

  inline int sign(Element const& g) {
    if (g.degree() % 2 == 0) {
      throw Error(Errc::sign_undefined, "sign undefined for even n");
    }
    return table_parity(g.leaves());
  }

  //! Replaces leaf `index` by its n children on both sides.
  inline Table split_leaf(Table const& t, std::size_t index, int n) {
    Table out;
    out.reserve(t.size() + static_cast<std::size_t>(n) - 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i != index) {
        out.push_back(t[i]);
        continue;
      }
      for (int x = 1; x <= n; ++x) {
        out.push_back({t[i].from + static_cast<Letter>(x),
                       t[i].to + static_cast<Letter>(x)});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  struct ProbeResult {
    bool                 well_defined;
    int                  canonical_parity;
    std::optional<Table> witness;  // a refinement with the other parity
    int                  witness_parity = 0;
  };

  //! Recomputes the table parity after `trials` random refinements of the
  //! canonical table.
  inline ProbeResult sign_refinement_probe(Element const& g,
                                           int            trials,
                                           std::uint64_t  seed = 0) {
    int const       base = table_parity(g.leaves());
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
      Table t     = g.leaves();
      int   steps = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int s = 0; s < steps; ++s) {
        std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
        t = split_leaf(t, pick(rng), g.degree());
      }
      int p = table_parity(t);
      if (p != base) {
        return {false, base, std::move(t), p};
      }
    }
    return {true, base, std::nullopt, 0};
  }

  //! Tries every table reachable by at most `rounds` leaf splits.
  inline ProbeResult sign_refinement_probe_exhaustive(Element const& g,
                                                      int            rounds) {
    int const       base = table_parity(g.leaves());
    std::set<Table> frontier{g.leaves()};
    std::set<Table> seen = frontier;
    for (int r = 0; r < rounds; ++r) {
      std::set<Table> next;
      for (auto const& t : frontier) {
        for (std::size_t i = 0; i < t.size(); ++i) {
          Table u = split_leaf(t, i, g.degree());
          if (!seen.insert(u).second) {
            continue;
          }
          if (int p = table_parity(u); p != base) {
            return {false, base, std::move(u), p};
          }
          next.insert(std::move(u));
        }
      }
      frontier = std::move(next);
    }
    return {true, base, std::nullopt, 0};
  }

}  // namespace vn
