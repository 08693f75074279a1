// Named elements and generating data: level-1 permutation lifts, tau, the
// translation t, cone embeddings, spinal involutions s_alpha, Sidon sets and
// alpha-sequence planning.

#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vn/element.hpp"
#include "vn/error.hpp"
#include "vn/io.hpp"
#include "vn/words.hpp"

namespace vn {

  ////////////////////////////////////////////////////////////////////////
  // Permutations of the alphabet
  ////////////////////////////////////////////////////////////////////////

  //! A bijection of {1..n}.
  class Permutation {
   public:
    static Permutation identity(Alphabet a) {
      std::vector<Letter> img(static_cast<std::size_t>(a.degree()));
      std::iota(img.begin(), img.end(), Letter{1});
      return Permutation(a, std::move(img));
    }

    static Permutation from_images(Alphabet a, std::vector<Letter> images) {
      if (images.size() != static_cast<std::size_t>(a.degree())) {
        throw Error(Errc::arity, "permutation needs one image per letter");
      }
      std::vector<bool> hit(images.size() + 1, false);
      for (Letter x : images) {
        if (!a.contains(x) || hit[x]) {
          throw Error(Errc::not_a_bijection, "images are not a permutation");
        }
        hit[x] = true;
      }
      return Permutation(a, std::move(images));
    }

    //! Cycle notation such as `(1 2)(3 4 5)`; `()` is the identity.
    static Permutation parse_cycles(std::string_view text, Alphabet a) {
      auto              perm = identity(a);
      std::vector<bool> used(static_cast<std::size_t>(a.degree()) + 1, false);
      std::size_t       i    = 0;
      auto              skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',')) {
          ++i;
        }
      };
      auto fail = [&](std::string const& msg) {
        return Error(Errc::parse,
                     "cycle notation `" + std::string(text) + "`: " + msg);
      };
      skip();
      while (i < text.size()) {
        if (text[i] != '(') {
          throw fail("expected `(`");
        }
        ++i;
        std::vector<Letter> cycle;
        while (true) {
          skip();
          if (i >= text.size()) {
            throw fail("unterminated cycle");
          }
          if (text[i] == ')') {
            ++i;
            break;
          }
          int  value = 0;
          auto res   = std::from_chars(text.data() + i,
                                     text.data() + text.size(),
                                     value);
          if (res.ec != std::errc()) {
            throw fail("expected a letter");
          }
          i = static_cast<std::size_t>(res.ptr - text.data());
          if (!a.contains(value)) {
            throw fail("letter " + std::to_string(value) + " out of range");
          }
          if (used[static_cast<std::size_t>(value)]) {
            throw fail("letter " + std::to_string(value) + " repeated");
          }
          used[static_cast<std::size_t>(value)] = true;
          cycle.push_back(static_cast<Letter>(value));
        }
        for (std::size_t j = 0; j < cycle.size(); ++j) {
          perm._images[cycle[j] - 1u] = cycle[(j + 1) % cycle.size()];
        }
        skip();
      }
      return perm;
    }

    Alphabet alphabet() const noexcept {
      return _alphabet;
    }
    Letter operator()(Letter x) const {
      return _images[x - 1u];
    }
    std::vector<Letter> const& images() const noexcept {
      return _images;
    }

    friend bool operator==(Permutation const&, Permutation const&) = default;

   private:
    Permutation(Alphabet a, std::vector<Letter> images)
        : _alphabet(a), _images(std::move(images)) {}

    Alphabet            _alphabet;
    std::vector<Letter> _images;
  };

  //! Lift of p permuting the level-1 cones: x.xi -> p(x).xi
  inline Element dot(Permutation const& p) {
    Table t;
    for (int x = 1; x <= p.alphabet().degree(); ++x) {
      auto letter = static_cast<Letter>(x);
      t.push_back({Word{letter}, Word{p(letter)}});
    }
    return Element::from_valid_table(p.alphabet(), std::move(t));
  }

  //! The transposition (1 2) of the alphabet.
  inline Permutation sigma_permutation(Alphabet a) {
    std::vector<Letter> img(static_cast<std::size_t>(a.degree()));
    std::iota(img.begin(), img.end(), Letter{1});
    std::swap(img[0], img[1]);
    return Permutation::from_images(a, std::move(img));
  }

  inline Element make_sigma(Alphabet a) {
    return dot(sigma_permutation(a));
  }

  //! The involution exchanging the cones 1.i and i+1 for 1 <= i < n and
  //! fixing the cone 1.n pointwise.
  inline Element make_tau(Alphabet a) {
    int const n = a.degree();
    Table     t;
    for (int i = 1; i < n; ++i) {
      auto x = static_cast<Letter>(i);
      auto y = static_cast<Letter>(i + 1);
      t.push_back({Word{1, x}, Word{y}});
      t.push_back({Word{y}, Word{1, x}});
    }
    auto last = static_cast<Letter>(n);
    t.push_back({Word{1, last}, Word{1, last}});
    return Element::from_valid_table(a, std::move(t));
  }

  //! sigma * tau, which maps 1.1.xi to 1.xi.
  inline Element make_t(Alphabet a) {
    return make_sigma(a) * make_tau(a);
  }

  //! The element acting as g inside the cone w and trivially elsewhere.
  inline Element embed(Word const& w, Element const& g) {
    validate_word(w, g.alphabet());
    if (w.empty() || g.is_identity()) {
      return g;
    }
    int const n = g.degree();
    Table     t;
    t.reserve(g.size() + w.size() * static_cast<std::size_t>(n));
    for (auto const& [d, r] : g.leaves()) {
      t.push_back({w + d, w + r});
    }
    for (std::size_t depth = 0; depth < w.size(); ++depth) {
      Word stem = w.prefix(depth);
      for (int x = 1; x <= n; ++x) {
        if (x == w[depth]) {
          continue;
        }
        Word side = stem + static_cast<Letter>(x);
        t.push_back({side, side});
      }
    }
    return Element::from_valid_table(g.alphabet(), std::move(t));
  }

  ////////////////////////////////////////////////////////////////////////
  // Spinal elements
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline Alphabet alphabet_of(Alphabet a, std::span<Element const> alpha) {
      for (auto const& g : alpha) {
        if (g.alphabet() != a) {
          throw Error(Errc::alphabet_mismatch,
                      "spinal sequence mixes alphabets");
        }
      }
      return a;
    }
  }  // namespace detail

  //! s_alpha built as the product of embeddings
  //!   embed(1^(l+1), sigma) * prod_k embed(1^k.2, alpha_k).
  inline Element make_s_alpha(Alphabet a, std::span<Element const> alpha) {
    detail::alphabet_of(a, alpha);
    auto const ell = alpha.size();
    Element    s   = embed(Word::repeat(1, ell + 1), make_sigma(a));
    for (std::size_t k = 1; k <= ell; ++k) {
      s = s * embed(Word::repeat(1, k) + Letter{2}, alpha[k - 1]);
    }
    return s;
  }

  //! s_alpha built cone by cone along the spine 1^infinity: alpha_k on
  //! 1^k.2, sigma on 1^(l+1), identity on every other cone 1^k.i.
  inline Element make_s_alpha_direct(Alphabet                 a,
                                     std::span<Element const> alpha) {
    detail::alphabet_of(a, alpha);
    int const  n   = a.degree();
    auto const ell = alpha.size();
    Table      t;
    for (std::size_t k = 0; k <= ell; ++k) {
      Word spine = Word::repeat(1, k);
      for (int i = 2; i <= n; ++i) {
        Word cone = spine + static_cast<Letter>(i);
        if (k >= 1 && i == 2) {
          for (auto const& [d, r] : alpha[k - 1].leaves()) {
            t.push_back({cone + d, cone + r});
          }
        } else {
          t.push_back({cone, cone});
        }
      }
    }
    Word cap = Word::repeat(1, ell + 1);
    auto sp  = sigma_permutation(a);
    for (int x = 1; x <= n; ++x) {
      auto letter = static_cast<Letter>(x);
      t.push_back({cap + letter, cap + sp(letter)});
    }
    return Element::from_valid_table(a, std::move(t));
  }

  ////////////////////////////////////////////////////////////////////////
  // Sidon sets
  ////////////////////////////////////////////////////////////////////////

  //! Are all differences |i - j| over 2-element subsets distinct?
  inline bool is_sidon(std::span<int const> members) {
    std::vector<int> m(members.begin(), members.end());
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
      return false;
    }
    std::vector<int> diffs;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        diffs.push_back(m[j] - m[i]);
      }
    }
    std::sort(diffs.begin(), diffs.end());
    return std::adjacent_find(diffs.begin(), diffs.end()) == diffs.end();
  }

  //! A finite set of positive integers with the unique difference property.
  class SidonSet {
   public:
    SidonSet() = default;

    static SidonSet make(std::vector<int> members) {
      std::sort(members.begin(), members.end());
      if (!members.empty() && members.front() < 1) {
        throw Error(Errc::precondition, "Sidon members must be positive");
      }
      if (!is_sidon(members)) {
        throw Error(Errc::precondition,
                    "set does not have the unique difference property");
      }
      SidonSet s;
      s._members = std::move(members);
      return s;
    }

    std::vector<int> const& members() const noexcept {
      return _members;
    }
    std::size_t size() const noexcept {
      return _members.size();
    }
    bool contains(int i) const {
      return std::binary_search(_members.begin(), _members.end(), i);
    }

    //! Largest pairwise difference; 0 when there are fewer than two members.
    int max_difference() const noexcept {
      return _members.size() < 2 ? 0 : _members.back() - _members.front();
    }

    SidonSet shifted(int by) const {
      auto m = _members;
      for (auto& x : m) {
        x += by;
      }
      return make(std::move(m));
    }

    friend bool operator==(SidonSet const&, SidonSet const&) = default;

   private:
    std::vector<int> _members;
  };

  enum class SidonStrategy { powers_of_two, greedy };

  inline SidonStrategy parse_sidon_strategy(std::string_view s) {
    if (s == "powers-of-two") {
      return SidonStrategy::powers_of_two;
    }
    if (s == "greedy") {
      return SidonStrategy::greedy;
    }
    throw Error(Errc::parse,
                "unknown Sidon strategy `" + std::string(s)
                    + "` (use powers-of-two or greedy)");
  }

  //! {2, 4, ..., 2^count} or the greedy (Mian-Chowla) sequence 1, 2, 4, 8,
  //! 13, ...
  inline SidonSet sidon_generate(int count, SidonStrategy strategy) {
    if (count < 0) {
      throw Error(Errc::precondition, "count must be non-negative");
    }
    std::vector<int> out;
    if (strategy == SidonStrategy::powers_of_two) {
      if (count > 30) {
        throw Error(Errc::precondition, "powers of two overflow beyond 30");
      }
      for (int i = 1; i <= count; ++i) {
        out.push_back(1 << i);
      }
      return SidonSet::make(std::move(out));
    }
    std::vector<bool> used_diff;
    for (int candidate = 1; static_cast<int>(out.size()) < count;
         ++candidate) {
      used_diff.resize(static_cast<std::size_t>(candidate) + 1, false);
      std::vector<int> fresh;
      bool             ok = true;
      for (int x : out) {
        int d = candidate - x;
        if (used_diff[static_cast<std::size_t>(d)]
            || std::find(fresh.begin(), fresh.end(), d) != fresh.end()) {
          ok = false;
          break;
        }
        fresh.push_back(d);
      }
      if (ok) {
        for (int d : fresh) {
          used_diff[static_cast<std::size_t>(d)] = true;
        }
        out.push_back(candidate);
      }
    }
    return SidonSet::make(std::move(out));
  }

  ////////////////////////////////////////////////////////////////////////
  // Alpha plans
  ////////////////////////////////////////////////////////////////////////

  //! A spinal sequence (alpha_1, ..., alpha_l) together with its support
  //! I = {i : alpha_i != id}, N = max difference over I and i0 = max I.
  struct AlphaPlan {
    Alphabet             alphabet{2};
    std::vector<Element> entries;  // entries[i - 1] is alpha_i
    SidonSet             support;
    int                  N  = 0;
    int                  i0 = 0;

    std::size_t ell() const noexcept {
      return entries.size();
    }

    //! alpha_i for 1 <= i <= l.
    Element const& at(int i) const {
      return entries.at(static_cast<std::size_t>(i - 1));
    }
  };

  //! Builds the plan bookkeeping for a raw sequence. Throws if the support
  //! lacks the unique difference property.
  inline AlphaPlan plan_from_sequence(Alphabet a, std::vector<Element> alpha) {
    detail::alphabet_of(a, alpha);
    std::vector<int> idx;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (!alpha[i].is_identity()) {
        idx.push_back(static_cast<int>(i + 1));
      }
    }
    AlphaPlan plan{a, std::move(alpha), SidonSet::make(std::move(idx)), 0, 0};
    plan.N  = plan.support.max_difference();
    plan.i0 = plan.support.size() == 0 ? 0 : plan.support.members().back();
    return plan;
  }

  //! Names of violated checkable conditions (involutive entries, Sidon
  //! support, identity padding below N and in the last N+1 places).
  inline std::vector<std::string> plan_violations(AlphaPlan const& plan) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < plan.entries.size(); ++i) {
      auto ord = order_bounded(plan.entries[i], 2);
      if (!ord) {
        out.push_back("alpha_" + std::to_string(i + 1) + " has order > 2");
      }
    }
    if (!is_sidon(plan.support.members())) {
      out.push_back("support is not a Sidon set");
    }
    int const ell = static_cast<int>(plan.ell());
    for (int i : plan.support.members()) {
      if (i <= plan.N) {
        out.push_back("alpha_" + std::to_string(i) + " != id with i <= N");
      }
      if (i >= ell - plan.N) {
        out.push_back("alpha_" + std::to_string(i)
                      + " != id within N+1 of the end");
      }
    }
    return out;
  }

  //! Places `base` on the smallest Sidon set I (from `strategy`, shifted so
  //! that min I > N) and pads to length l = max I + N + 1.
  inline AlphaPlan plan_alpha(std::vector<Element> const& base,
                              SidonStrategy strategy = SidonStrategy::greedy) {
    if (base.empty()) {
      throw Error(Errc::precondition, "plan_alpha needs a nonempty base");
    }
    Alphabet const a = base.front().alphabet();
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i].alphabet() != a) {
        throw Error(Errc::alphabet_mismatch, "base mixes alphabets");
      }
      if (!order_bounded(base[i], 2)) {
        throw Error(Errc::order,
                    "base element " + std::to_string(i + 1)
                        + " is not an involution");
      }
    }
    SidonSet I = sidon_generate(static_cast<int>(base.size()), strategy);
    while (I.members().front() <= I.max_difference()) {
      I = I.shifted(I.max_difference() + 1 - I.members().front());
    }
    int const            N   = I.max_difference();
    int const            ell = I.members().back() + N + 1;
    std::vector<Element> entries(static_cast<std::size_t>(ell),
                                 Element::identity(a));
    for (std::size_t k = 0; k < base.size(); ++k) {
      entries[static_cast<std::size_t>(I.members()[k] - 1)] = base[k];
    }
    return AlphaPlan{a, std::move(entries), I, N, I.members().back()};
  }

  //! Plan with an explicit support set.
  inline AlphaPlan plan_alpha_on(std::vector<Element> const& base,
                                 SidonSet const&             I) {
    if (base.empty() || base.size() != I.size()) {
      throw Error(Errc::arity, "base and support sizes differ");
    }
    Alphabet const a = base.front().alphabet();
    for (auto const& b : base) {
      if (!order_bounded(b, 2)) {
        throw Error(Errc::order, "base element is not an involution");
      }
    }
    int const            N   = I.max_difference();
    int const            ell = I.members().back() + N + 1;
    std::vector<Element> entries(static_cast<std::size_t>(ell),
                                 Element::identity(a));
    for (std::size_t k = 0; k < base.size(); ++k) {
      entries[static_cast<std::size_t>(I.members()[k] - 1)] = base[k];
    }
    return AlphaPlan{a, std::move(entries), I, N, I.members().back()};
  }

  inline Element make_s_alpha(AlphaPlan const& plan) {
    return make_s_alpha(plan.alphabet, plan.entries);
  }

  ////////////////////////////////////////////////////////////////////////
  // Base involutions
  ////////////////////////////////////////////////////////////////////////

  //! Products of at most `max_len` letters over {sigma, tau}, shortest
  //! first, duplicates removed, in a fixed order.
  inline std::vector<Element> sigma_tau_words(Alphabet a, int max_len = 2) {
    std::vector<Element> letters{make_sigma(a), make_tau(a)};
    std::vector<Element> out{Element::identity(a)};
    std::vector<Element> layer{Element::identity(a)};
    for (int len = 1; len <= max_len; ++len) {
      std::vector<Element> next;
      for (auto const& w : layer) {
        for (auto const& x : letters) {
          Element g = w * x;
          if (std::find(out.begin(), out.end(), g) == out.end()) {
            out.push_back(g);
            next.push_back(g);
          }
        }
      }
      layer = std::move(next);
    }
    return out;
  }

  //! alpha0 = embed(1, sigma) * embed(2, sigma) and, for the first gamma in
  //! `gamma_candidates` with [alpha0, alpha0^gamma] != id, the involutions
  //! alpha0^g and alpha0^(gamma g) for g in `conjugators`.
  inline std::vector<Element> base_involutions(
      Alphabet                                   a,
      std::vector<Element> const&                conjugators,
      std::optional<std::vector<Element>> const& gamma_candidates
      = std::nullopt) {
    Element const sigma = make_sigma(a);
    Element const a0    = embed(Word{1}, sigma) * embed(Word{2}, sigma);
    auto const    cands = gamma_candidates ? *gamma_candidates
                                           : sigma_tau_words(a, 2);
    std::optional<Element> gamma;
    for (auto const& c : cands) {
      if (!commutator(a0, conjugate(a0, c)).is_identity()) {
        gamma = c;
        break;
      }
    }
    if (!gamma) {
      throw Error(Errc::construction_failed,
                  "no candidate gamma gives a nontrivial commutator");
    }
    std::vector<Element> out;
    for (auto const& g : conjugators) {
      out.push_back(conjugate(a0, g));
    }
    for (auto const& g : conjugators) {
      out.push_back(conjugate(a0, *gamma * g));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Alpha files
  ////////////////////////////////////////////////////////////////////////

  //! `alpha <n> <ell>` then `<index> @ <element-file>` per nonidentity
  //! entry. Relative paths resolve against `base_dir`.
  inline AlphaPlan parse_alpha(std::string_view             text,
                               std::filesystem::path const& base_dir) {
    std::istringstream in{std::string(text)};
    auto               lines = read_lines(in);
    std::size_t        i     = 0;
    while (i < lines.size() && detail::trim(lines[i]).empty()) {
      ++i;
    }
    if (i == lines.size()) {
      throw detail::parse_error(1, "missing `alpha <n> <ell>` header");
    }
    auto head = detail::split_ws(lines[i]);
    if (head.size() != 3 || head[0] != "alpha") {
      throw detail::parse_error(i + 1, "expected `alpha <n> <ell>`");
    }
    Alphabet a(detail::parse_degree(head[1], i + 1));
    int      ell = -1;
    auto     res = std::from_chars(
        head[2].data(), head[2].data() + head[2].size(), ell);
    if (res.ec != std::errc() || ell < 0) {
      throw detail::parse_error(i + 1, "bad length");
    }
    std::vector<Element> entries(static_cast<std::size_t>(ell),
                                 Element::identity(a));
    for (++i; i < lines.size(); ++i) {
      auto line = detail::trim(lines[i]);
      if (line.empty()) {
        continue;
      }
      auto parts = detail::split_ws(line);
      int  index = 0;
      if (parts.size() != 3 || parts[1] != "@"
          || std::from_chars(parts[0].data(),
                             parts[0].data() + parts[0].size(),
                             index)
                     .ec
                 != std::errc()
          || index < 1 || index > ell) {
        throw detail::parse_error(i + 1, "expected `<index> @ <file>`");
      }
      std::filesystem::path p{parts[2]};
      if (p.is_relative()) {
        p = base_dir / p;
      }
      Element g = load_element(p.string());
      if (g.alphabet() != a) {
        throw detail::parse_error(i + 1, "element alphabet differs");
      }
      entries[static_cast<std::size_t>(index - 1)] = std::move(g);
    }
    return plan_from_sequence(a, std::move(entries));
  }

  inline AlphaPlan load_alpha(std::string const& path) {
    return parse_alpha(read_file(path),
                       std::filesystem::path(path).parent_path());
  }

  //! Writes the plan and one element file per support index, named
  //! `<stem>.<index>.vn` next to `path`.
  inline void save_alpha(std::string const& path, AlphaPlan const& plan) {
    std::filesystem::path p(path);
    std::string           text = "alpha " + std::to_string(plan.alphabet.degree())
                       + " " + std::to_string(plan.ell()) + "\n";
    for (int i : plan.support.members()) {
      std::string name = p.filename().string() + "." + std::to_string(i) + ".vn";
      save_element((p.parent_path() / name).string(), plan.at(i));
      text += std::to_string(i) + " @ " + name + "\n";
    }
    write_file(path, text);
  }

}  // namespace vn
