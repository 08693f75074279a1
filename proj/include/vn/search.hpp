// Breadth-first exploration of the subgroup generated by a finite set of
// named elements, deduplicated by canonical form.

#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vn/element.hpp"
#include "vn/error.hpp"
#include "vn/io.hpp"

namespace vn {

  //! A word over generator names; the empty word is the identity. The word
  //! a b c evaluates to a * b * c.
  using NameWord = std::vector<std::string>;

  inline std::string to_string(NameWord const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += w[i];
    }
    return out;
  }

  //! Named generators. Letters available to words are the generators plus
  //! `<name>^-1` for every generator that is not an involution.
  class GeneratorSet {
   public:
    struct Generator {
      std::string name;
      Element     element;
      std::string source;  // element file it was read from, if any
    };

    GeneratorSet() = default;

    void add(std::string name, Element g, std::string source = {}) {
      if (name.empty() || name.find_first_of(" \t\n") != std::string::npos
          || name.ends_with("^-1")) {
        throw Error(Errc::parse, "bad generator name `" + name + "`");
      }
      for (auto const& x : _gens) {
        if (x.name == name) {
          throw Error(Errc::precondition,
                      "duplicate generator name `" + name + "`");
        }
        require_same_alphabet(x.element, g);
      }
      _gens.push_back({std::move(name), std::move(g), std::move(source)});
      std::sort(_gens.begin(), _gens.end(), [](auto const& x, auto const& y) {
        return x.name < y.name;
      });
    }

    std::vector<Generator> const& generators() const noexcept {
      return _gens;
    }

    bool empty() const noexcept {
      return _gens.empty();
    }

    Alphabet alphabet() const {
      if (_gens.empty()) {
        throw Error(Errc::precondition, "empty generator set");
      }
      return _gens.front().element.alphabet();
    }

    //! (name, element) for every letter, sorted by name.
    std::vector<std::pair<std::string, Element>> letters() const {
      std::vector<std::pair<std::string, Element>> out;
      for (auto const& g : _gens) {
        out.emplace_back(g.name, g.element);
        if (!(g.element * g.element).is_identity()) {
          out.emplace_back(g.name + "^-1", invert(g.element));
        }
      }
      std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
        return x.first < y.first;
      });
      return out;
    }

    Element letter(std::string_view name) const {
      bool inverse = name.ends_with("^-1");
      auto base    = inverse ? name.substr(0, name.size() - 3) : name;
      for (auto const& g : _gens) {
        if (g.name == base) {
          return inverse ? invert(g.element) : g.element;
        }
      }
      throw Error(Errc::unknown_name,
                  "unknown generator `" + std::string(name) + "`");
    }

    Element evaluate(NameWord const& w) const {
      Element out = Element::identity(alphabet());
      for (auto const& x : w) {
        out = out * letter(x);
      }
      return out;
    }

   private:
    std::vector<Generator> _gens;
  };

  //! `gen <name> <element-file>` per line; relative paths resolve against
  //! the manifest's directory.
  inline GeneratorSet load_generators(std::string const& path) {
    std::istringstream in(read_file(path));
    auto const         dir = std::filesystem::path(path).parent_path();
    GeneratorSet       out;
    std::size_t        n = 0;
    for (auto const& raw : read_lines(in)) {
      ++n;
      auto line = detail::trim(raw);
      if (line.empty() || line.front() == '#') {
        continue;
      }
      auto parts = detail::split_ws(line);
      if (parts.size() != 3 || parts[0] != "gen") {
        throw Error(Errc::parse,
                    path + ": line " + std::to_string(n)
                        + ": expected `gen <name> <element-file>`");
      }
      std::filesystem::path file{parts[2]};
      if (file.is_relative()) {
        file = dir / file;
      }
      out.add(std::string(parts[1]),
              load_element(file.string()),
              std::string(parts[2]));
    }
    if (out.empty()) {
      throw Error(Errc::parse, path + ": no generators");
    }
    return out;
  }

  struct Ball {
    GeneratorSet generators;
    int          radius    = 0;
    bool         truncated = false;
    //! sizes[r] = number of elements with word length <= r
    std::vector<std::size_t>                            sizes;
    std::unordered_map<Element, NameWord, ElementHash> elements;

    std::size_t size() const noexcept {
      return elements.size();
    }

    bool contains(Element const& g) const {
      return elements.contains(g);
    }

    //! Entries ordered by word length, then lexicographically by word.
    std::vector<std::pair<Element, NameWord>> sorted() const {
      std::vector<std::pair<Element, NameWord>> out(elements.begin(),
                                                    elements.end());
      std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
        if (x.second.size() != y.second.size()) {
          return x.second.size() < y.second.size();
        }
        return x.second < y.second;
      });
      return out;
    }
  };

  //! Level-synchronised BFS. Each level is expanded by `workers` threads over
  //! disjoint slices of the frontier, then merged by sorting, so the result
  //! does not depend on the schedule.
  class BallGrower {
   public:
    BallGrower(GeneratorSet gens, std::size_t cap, unsigned workers = 1)
        : _letters(gens.letters()), _cap(cap), _workers(std::max(1U, workers)) {
      if (cap < 1) {
        throw Error(Errc::precondition, "cap must be at least 1");
      }
      _ball.generators = std::move(gens);
      Element id       = Element::identity(_ball.generators.alphabet());
      _ball.elements.emplace(id, NameWord{});
      _ball.sizes.push_back(1);
      _frontier.emplace_back(std::move(id), NameWord{});
    }

    Ball const& ball() const noexcept {
      return _ball;
    }

    //! Adds the next sphere; returns the elements it added.
    std::vector<std::pair<Element, NameWord>> const& step() {
      using Entry = std::pair<Element, NameWord>;
      std::vector<std::vector<Entry>> found(_workers);
      auto                            work = [&](unsigned slot) {
        for (std::size_t i = slot; i < _frontier.size(); i += _workers) {
          auto const& [e, w] = _frontier[i];
          for (auto const& [name, g] : _letters) {
            Element x = e * g;
            if (!_ball.elements.contains(x)) {
              NameWord v = w;
              v.push_back(name);
              found[slot].emplace_back(std::move(x), std::move(v));
            }
          }
        }
      };
      if (_workers == 1) {
        work(0);
      } else {
        std::vector<std::jthread> pool;
        for (unsigned s = 0; s < _workers; ++s) {
          pool.emplace_back(work, s);
        }
      }
      std::vector<Entry> merged;
      for (auto& part : found) {
        std::move(part.begin(), part.end(), std::back_inserter(merged));
      }
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(),
                               merged.end(),
                               [](auto const& x, auto const& y) {
                                 return x.first == y.first;
                               }),
                   merged.end());
      std::sort(merged.begin(), merged.end(), [](auto const& x, auto const& y) {
        return x.second < y.second;
      });
      std::size_t room = _cap - std::min(_cap, _ball.elements.size());
      if (merged.size() > room) {
        merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(room),
                     merged.end());
        _ball.truncated = true;
      }
      for (auto const& [x, w] : merged) {
        _ball.elements.emplace(x, w);
      }
      _ball.radius += 1;
      _ball.sizes.push_back(_ball.elements.size());
      _frontier = std::move(merged);
      return _frontier;
    }

    Ball take() && {
      return std::move(_ball);
    }

   private:
    std::vector<std::pair<std::string, Element>> _letters;
    std::size_t                                  _cap;
    unsigned                                     _workers;
    Ball                                         _ball;
    std::vector<std::pair<Element, NameWord>>    _frontier;
  };

  //! All products of at most `radius` letters, each with its shortest and
  //! then lexicographically least word. Stops early and sets `truncated`
  //! once `cap` elements are held.
  inline Ball grow_ball(GeneratorSet const& gens,
                        int                 radius,
                        std::size_t         cap     = 1'000'000,
                        unsigned            workers = 1) {
    if (radius < 0) {
      throw Error(Errc::precondition, "radius must be non-negative");
    }
    BallGrower grower(gens, cap, workers);
    for (int r = 0; r < radius && !grower.ball().truncated; ++r) {
      grower.step();
    }
    return std::move(grower).take();
  }

  //! Shortest, then lexicographically least, word for `target` of length at
  //! most `max_radius`.
  inline std::optional<NameWord> find_element(Element const&      target,
                                              GeneratorSet const& gens,
                                              int                 max_radius,
                                              std::size_t cap = 1'000'000) {
    require_same_alphabet(target, gens.generators().front().element);
    BallGrower grower(gens, cap);
    for (int r = 0;; ++r) {
      if (auto it = grower.ball().elements.find(target);
          it != grower.ball().elements.end()) {
        return it->second;
      }
      if (r >= max_radius || grower.ball().truncated) {
        return std::nullopt;
      }
      grower.step();
    }
  }

  //! Words whose evaluation differs from the stored element.
  inline std::vector<NameWord> audit_ball(Ball const& b) {
    std::vector<NameWord> bad;
    for (auto const& [g, w] : b.sorted()) {
      if (b.generators.evaluate(w) != g
          || static_cast<int>(w.size()) > b.radius) {
        bad.push_back(w);
      }
    }
    return bad;
  }

  ////////////////////////////////////////////////////////////////////////
  // Ball files
  ////////////////////////////////////////////////////////////////////////

  inline std::string to_string(Ball const& b, std::string const& path) {
    std::string out = "ball " + std::to_string(b.generators.alphabet().degree())
                      + " " + std::to_string(b.radius) + " "
                      + std::to_string(b.size()) + " "
                      + (b.truncated ? "1" : "0") + "\n";
    for (auto const& g : b.generators.generators()) {
      std::string file = g.source.empty()
                             ? std::filesystem::path(path).filename().string()
                                   + "." + g.name + ".vn"
                             : g.source;
      out += "gen " + g.name + " " + file + "\n";
    }
    for (auto const& [g, w] : b.sorted()) {
      out += "\n";
      out += w.empty() ? "word" : "word " + to_string(w);
      out += "\n";
      out += to_string(g);
    }
    return out;
  }

  //! Writes the ball and, for generators with no source file, the element
  //! files it references.
  inline void save_ball(Ball const& b, std::string const& path) {
    auto const dir = std::filesystem::path(path).parent_path();
    for (auto const& g : b.generators.generators()) {
      if (g.source.empty()) {
        auto file = std::filesystem::path(path).filename().string() + "."
                    + g.name + ".vn";
        save_element((dir / file).string(), g.element);
      }
    }
    write_file(path, to_string(b, path));
  }

  inline Ball load_ball(std::string const& path) {
    std::istringstream in(read_file(path));
    auto const         lines = read_lines(in);
    auto const         dir   = std::filesystem::path(path).parent_path();
    auto               fail  = [&](std::size_t line, std::string const& msg) {
      return Error(Errc::parse,
                   path + ": line " + std::to_string(line) + ": " + msg);
    };
    if (lines.empty()) {
      throw fail(1, "empty file");
    }
    auto head = detail::split_ws(lines[0]);
    if (head.size() != 5 || head[0] != "ball"
        || (head[4] != "0" && head[4] != "1")) {
      throw fail(1, "expected `ball <n> <radius> <count> <truncated>`");
    }
    Ball        b;
    int         degree = 0;
    std::size_t count  = 0;
    try {
      degree   = std::stoi(std::string(head[1]));
      b.radius = std::stoi(std::string(head[2]));
      count    = std::stoull(std::string(head[3]));
    } catch (std::exception const&) {
      throw fail(1, "bad number in header");
    }
    b.truncated = head[4] == "1";
    std::size_t i = 1;
    for (; i < lines.size() && !detail::trim(lines[i]).empty(); ++i) {
      auto parts = detail::split_ws(lines[i]);
      if (parts.size() != 3 || parts[0] != "gen") {
        throw fail(i + 1, "expected `gen <name> <element-file>`");
      }
      std::filesystem::path file{parts[2]};
      if (file.is_relative()) {
        file = dir / file;
      }
      try {
        b.generators.add(std::string(parts[1]),
                         load_element(file.string()),
                         std::string(parts[2]));
      } catch (Error const& e) {
        throw fail(i + 1, e.what());
      }
    }
    if (b.generators.empty() || b.generators.alphabet().degree() != degree) {
      throw fail(1, "generators missing or of the wrong degree");
    }
    while (i < lines.size()) {
      if (detail::trim(lines[i]).empty()) {
        ++i;
        continue;
      }
      auto parts = detail::split_ws(lines[i]);
      if (parts.empty() || parts[0] != "word") {
        throw fail(i + 1, "expected `word <name>+`");
      }
      NameWord w(parts.begin() + 1, parts.end());
      try {
        for (auto const& x : w) {
          (void) b.generators.letter(x);
        }
      } catch (Error const& e) {
        throw fail(i + 1, e.what());
      }
      std::size_t              start = i + 1;
      std::vector<std::string> block;
      for (++i; i < lines.size() && !detail::trim(lines[i]).empty(); ++i) {
        block.push_back(lines[i]);
      }
      Element g = [&] {
        try {
          return parse_element_lines(block, start + 1);
        } catch (Error const& e) {
          throw Error(Errc::parse, path + ": " + e.what());
        }
      }();
      if (g.degree() != degree) {
        throw fail(start + 1, "element of the wrong degree");
      }
      if (!b.elements.emplace(std::move(g), std::move(w)).second) {
        throw fail(start, "duplicate element");
      }
    }
    if (b.elements.size() != count) {
      throw fail(1,
                 "header announces " + std::to_string(count) + " elements, "
                     + std::to_string(b.elements.size()) + " found");
    }
    b.sizes.assign(static_cast<std::size_t>(b.radius) + 1, 0);
    for (auto const& [g, w] : b.elements) {
      if (static_cast<int>(w.size()) > b.radius) {
        throw fail(1, "word longer than the radius");
      }
      for (auto r = w.size(); r < b.sizes.size(); ++r) {
        ++b.sizes[r];
      }
    }
    return b;
  }

}  // namespace vn
