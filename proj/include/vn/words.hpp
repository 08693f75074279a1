// Alphabets, finite words, eventually periodic points and complete prefix
// antichains (n-adic partition sets) over the letters 1..n.

#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vn/error.hpp"

namespace vn {

  using Letter = std::uint16_t;

  //! The alphabet {x_1, ..., x_n}; letters are the integers 1..n.
  class Alphabet {
   public:
    explicit Alphabet(int degree) : _degree(degree) {
      if (degree < 2) {
        throw Error(Errc::bad_alphabet,
                    "alphabet degree must be at least 2, got "
                        + std::to_string(degree));
      }
      if (degree > 0xFFFF) {
        throw Error(Errc::bad_alphabet, "alphabet degree too large");
      }
    }

    int degree() const noexcept {
      return _degree;
    }

    bool contains(int letter) const noexcept {
      return letter >= 1 && letter <= _degree;
    }

    friend bool operator==(Alphabet, Alphabet) = default;

   private:
    int _degree;
  };

  //! A finite word; the empty word names the whole Cantor space.
  //!
  //! Words compare lexicographically with a proper prefix ordered first.
  class Word {
   public:
    using const_iterator = std::vector<Letter>::const_iterator;

    Word() = default;
    Word(std::initializer_list<Letter> letters) : _letters(letters) {}
    explicit Word(std::vector<Letter> letters) : _letters(std::move(letters)) {}

    static Word repeat(Letter letter, std::size_t count) {
      return Word(std::vector<Letter>(count, letter));
    }

    std::size_t size() const noexcept {
      return _letters.size();
    }
    bool empty() const noexcept {
      return _letters.empty();
    }
    Letter operator[](std::size_t i) const {
      return _letters[i];
    }
    Letter back() const {
      return _letters.back();
    }
    const_iterator begin() const noexcept {
      return _letters.begin();
    }
    const_iterator end() const noexcept {
      return _letters.end();
    }
    std::vector<Letter> const& letters() const noexcept {
      return _letters;
    }

    bool is_prefix_of(Word const& other) const noexcept {
      return size() <= other.size()
             && std::equal(begin(), end(), other.begin());
    }

    bool comparable(Word const& other) const noexcept {
      return is_prefix_of(other) || other.is_prefix_of(*this);
    }

    Word prefix(std::size_t len) const {
      return Word(std::vector<Letter>(begin(), begin() + len));
    }

    Word suffix(std::size_t from) const {
      return Word(std::vector<Letter>(begin() + from, end()));
    }

    //! Word without its last letter; undefined on the empty word.
    Word parent() const {
      return prefix(size() - 1);
    }

    Word& operator+=(Word const& other) {
      _letters.insert(_letters.end(), other.begin(), other.end());
      return *this;
    }

    Word& push_back(Letter letter) {
      _letters.push_back(letter);
      return *this;
    }

    friend Word operator+(Word lhs, Word const& rhs) {
      lhs += rhs;
      return lhs;
    }

    friend Word operator+(Word lhs, Letter rhs) {
      lhs.push_back(rhs);
      return lhs;
    }

    friend bool operator==(Word const&, Word const&)  = default;
    friend auto operator<=>(Word const&, Word const&) = default;

   private:
    std::vector<Letter> _letters;
  };

  inline bool word_in_alphabet(Word const& w, Alphabet a) noexcept {
    return std::all_of(
        w.begin(), w.end(), [a](Letter x) { return a.contains(x); });
  }

  inline void validate_word(Word const& w, Alphabet a) {
    if (!word_in_alphabet(w, a)) {
      throw Error(Errc::malformed_word,
                  "letter out of range for alphabet of degree "
                      + std::to_string(a.degree()));
    }
  }

  //! Dot syntax: `eps` or `1.1.2`.
  inline std::string to_string(Word const& w) {
    if (w.empty()) {
      return "eps";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += '.';
      }
      out += std::to_string(w[i]);
    }
    return out;
  }

  //! Parses dot syntax; does not check letters against an alphabet.
  inline Word parse_word(std::string_view text) {
    if (text == "eps") {
      return Word();
    }
    if (text.empty()) {
      throw Error(Errc::malformed_word, "empty word text (use `eps`)");
    }
    std::vector<Letter> letters;
    std::size_t         pos = 0;
    while (true) {
      auto        dot   = text.find('.', pos);
      auto        piece = text.substr(pos, dot - pos);
      unsigned    value = 0;
      auto        first = piece.data();
      auto        last  = piece.data() + piece.size();
      auto const  res   = std::from_chars(first, last, value);
      if (piece.empty() || res.ec != std::errc() || res.ptr != last
          || value == 0 || value > 0xFFFF) {
        throw Error(Errc::malformed_word,
                    "malformed word `" + std::string(text) + "`");
      }
      letters.push_back(static_cast<Letter>(value));
      if (dot == std::string_view::npos) {
        break;
      }
      pos = dot + 1;
    }
    return Word(std::move(letters));
  }

  inline Word parse_word(std::string_view text, Alphabet a) {
    Word w = parse_word(text);
    validate_word(w, a);
    return w;
  }

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept {
      std::size_t h = 0xcbf29ce484222325ULL ^ w.size();
      for (Letter x : w) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // RationalPoint
  ////////////////////////////////////////////////////////////////////////

  //! The eventually periodic infinite word preperiod . period^infinity,
  //! held in normal form: primitive period and shortest preperiod.
  class RationalPoint {
   public:
    static RationalPoint make(Word preperiod, Word period) {
      if (period.empty()) {
        throw Error(Errc::empty_period, "rational point needs a period");
      }
      std::vector<Letter> per = period.letters();
      // primitive root
      std::size_t const len = per.size();
      for (std::size_t d = 1; d <= len; ++d) {
        if (len % d != 0) {
          continue;
        }
        bool ok = true;
        for (std::size_t i = d; i < len && ok; ++i) {
          ok = per[i] == per[i - d];
        }
        if (ok) {
          per.resize(d);
          break;
        }
      }
      // absorb trailing preperiod letters into a rotated period
      std::vector<Letter> pre = preperiod.letters();
      while (!pre.empty() && pre.back() == per.back()) {
        pre.pop_back();
        std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
      }
      return RationalPoint(Word(std::move(pre)), Word(std::move(per)));
    }

    Word const& preperiod() const noexcept {
      return _pre;
    }
    Word const& period() const noexcept {
      return _per;
    }

    Letter at(std::size_t i) const {
      if (i < _pre.size()) {
        return _pre[i];
      }
      return _per[(i - _pre.size()) % _per.size()];
    }

    //! First `len` letters.
    Word prefix(std::size_t len) const {
      std::vector<Letter> out;
      out.reserve(len);
      for (std::size_t i = 0; i < len; ++i) {
        out.push_back(at(i));
      }
      return Word(std::move(out));
    }

    //! The point with its first `len` letters removed.
    RationalPoint drop(std::size_t len) const {
      if (len <= _pre.size()) {
        return make(_pre.suffix(len), _per);
      }
      std::size_t         shift = (len - _pre.size()) % _per.size();
      std::vector<Letter> per   = _per.letters();
      std::rotate(per.begin(), per.begin() + shift, per.end());
      return make(Word(), Word(std::move(per)));
    }

    //! The point w . this.
    RationalPoint prepend(Word const& w) const {
      return make(w + _pre, _per);
    }

    friend bool operator==(RationalPoint const&, RationalPoint const&)
        = default;

   private:
    RationalPoint(Word pre, Word per)
        : _pre(std::move(pre)), _per(std::move(per)) {}

    Word _pre;
    Word _per;
  };

  inline RationalPoint point_normalize(Word preperiod, Word period) {
    return RationalPoint::make(std::move(preperiod), std::move(period));
  }

  //! `pre:per` in dot syntax, e.g. `eps:1` or `2:1.2`.
  inline std::string to_string(RationalPoint const& p) {
    return to_string(p.preperiod()) + ":" + to_string(p.period());
  }

  inline RationalPoint parse_point(std::string_view text, Alphabet a) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
      throw Error(Errc::malformed_word,
                  "point must be written <pre>:<per>, got `"
                      + std::string(text) + "`");
    }
    return RationalPoint::make(parse_word(text.substr(0, colon), a),
                               parse_word(text.substr(colon + 1), a));
  }

  ////////////////////////////////////////////////////////////////////////
  // PartitionSet
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Is the sorted range [first, last) of words, all extending a common
    // word of length `depth`, a complete prefix-free cover of that cone?
    inline bool complete_antichain(std::span<Word const> words,
                                   std::size_t           depth,
                                   int                   degree) {
      if (words.empty()) {
        return false;
      }
      if (words.front().size() == depth) {
        return words.size() == 1;
      }
      std::size_t i = 0;
      for (int x = 1; x <= degree; ++x) {
        std::size_t j = i;
        while (j < words.size() && words[j].size() > depth
               && words[j][depth] == x) {
          ++j;
        }
        if (!complete_antichain(words.subspan(i, j - i), depth + 1, degree)) {
          return false;
        }
        i = j;
      }
      return i == words.size();
    }
  }  // namespace detail

  //! True iff `words` is prefix-free and its cones cover the Cantor space.
  inline bool is_partition_set(std::vector<Word> words, Alphabet a) {
    for (auto const& w : words) {
      validate_word(w, a);
    }
    std::sort(words.begin(), words.end());
    if (std::adjacent_find(words.begin(), words.end()) != words.end()) {
      return false;
    }
    return detail::complete_antichain(words, 0, a.degree());
  }

  //! Where a word sits relative to a sorted complete antichain: either one
  //! antichain word is a prefix of it, or it is a proper prefix of a
  //! contiguous run of antichain words.
  struct Location {
    bool        has_prefix;
    std::size_t first;  // index of the prefix, or start of the run
    std::size_t last;   // one past the end of the run
  };

  template <typename Range, typename Proj>
  Location locate(Range const& sorted, Word const& w, Proj proj) {
    auto key = [&](auto const& x) -> Word const& { return proj(x); };
    auto it  = std::upper_bound(
        sorted.begin(), sorted.end(), w, [&](Word const& lhs, auto const& x) {
          return lhs < key(x);
        });
    if (it != sorted.begin() && key(*std::prev(it)).is_prefix_of(w)) {
      auto idx = static_cast<std::size_t>(std::prev(it) - sorted.begin());
      return {true, idx, idx + 1};
    }
    auto lo = std::lower_bound(
        sorted.begin(), sorted.end(), w, [&](auto const& x, Word const& rhs) {
          return key(x) < rhs;
        });
    auto hi = lo;
    while (hi != sorted.end() && w.is_prefix_of(key(*hi))) {
      ++hi;
    }
    return {false,
            static_cast<std::size_t>(lo - sorted.begin()),
            static_cast<std::size_t>(hi - sorted.begin())};
  }

  //! A complete prefix-free antichain of words (an n-adic partition set),
  //! stored sorted.
  class PartitionSet {
   public:
    static PartitionSet make(std::vector<Word> words, Alphabet a) {
      for (auto const& w : words) {
        validate_word(w, a);
      }
      std::sort(words.begin(), words.end());
      if (std::adjacent_find(words.begin(), words.end()) != words.end()
          || !detail::complete_antichain(words, 0, a.degree())) {
        throw Error(Errc::not_a_partition,
                    "words do not form a complete prefix-free antichain");
      }
      return PartitionSet(a, std::move(words));
    }

    //! {eps}
    static PartitionSet trivial(Alphabet a) {
      return PartitionSet(a, {Word()});
    }

    //! All words of length `level`.
    static PartitionSet level(Alphabet a, std::size_t level) {
      return expand(trivial(a), level);
    }

    Alphabet alphabet() const noexcept {
      return _alphabet;
    }
    std::vector<Word> const& words() const noexcept {
      return _words;
    }
    std::size_t size() const noexcept {
      return _words.size();
    }
    std::size_t max_length() const noexcept {
      std::size_t m = 0;
      for (auto const& w : _words) {
        m = std::max(m, w.size());
      }
      return m;
    }

    Location locate(Word const& w) const {
      return vn::locate(_words, w, std::identity{});
    }

    friend bool operator==(PartitionSet const&, PartitionSet const&) = default;

   private:
    friend PartitionSet expand_to_level(PartitionSet const&, std::size_t);

    PartitionSet(Alphabet a, std::vector<Word> words)
        : _alphabet(a), _words(std::move(words)) {}

    static PartitionSet expand(PartitionSet const& p, std::size_t level) {
      int const         n = p._alphabet.degree();
      std::vector<Word> out;
      for (auto const& w : p._words) {
        std::vector<Word> layer{w};
        for (std::size_t d = w.size(); d < level; ++d) {
          std::vector<Word> next;
          next.reserve(layer.size() * n);
          for (auto const& u : layer) {
            for (int x = 1; x <= n; ++x) {
              next.push_back(u + static_cast<Letter>(x));
            }
          }
          layer = std::move(next);
        }
        out.insert(out.end(), layer.begin(), layer.end());
      }
      return PartitionSet(p._alphabet, std::move(out));
    }

    Alphabet          _alphabet;
    std::vector<Word> _words;
  };

  //! Every word of `p` extended to length exactly `level`.
  inline PartitionSet expand_to_level(PartitionSet const& p,
                                      std::size_t         level) {
    if (level < p.max_length()) {
      throw Error(Errc::level_too_small,
                  "level " + std::to_string(level)
                      + " is below the longest word length "
                      + std::to_string(p.max_length()));
    }
    return PartitionSet::expand(p, level);
  }

  //! Coarsest common refinement: for every prefix-comparable pair, the
  //! longer word.
  inline PartitionSet refine(PartitionSet const& a, PartitionSet const& b) {
    if (a.alphabet() != b.alphabet()) {
      throw Error(Errc::alphabet_mismatch, "refine: alphabets differ");
    }
    std::vector<Word> out;
    for (auto const& w : a.words()) {
      auto loc = b.locate(w);
      if (loc.has_prefix) {
        out.push_back(w);
      } else {
        out.insert(out.end(),
                   b.words().begin() + loc.first,
                   b.words().begin() + loc.last);
      }
    }
    return PartitionSet::make(std::move(out), a.alphabet());
  }

}  // namespace vn
