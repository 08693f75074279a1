// Text formats for partition sets and elements.
//
//   vn 2
//   1.1 -> 2
//   1.2 -> 1.2
//   2 -> 1.1
//
// Lines are sorted by domain word. Parsing accepts any bijection table and
// reduces it.

#pragma once

#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vn/element.hpp"
#include "vn/error.hpp"
#include "vn/words.hpp"

namespace vn {

  namespace detail {
    inline std::string_view trim(std::string_view s) {
      auto const ws = " \t\r";
      auto       b  = s.find_first_not_of(ws);
      if (b == std::string_view::npos) {
        return {};
      }
      auto e = s.find_last_not_of(ws);
      return s.substr(b, e - b + 1);
    }

    inline std::vector<std::string_view> split_ws(std::string_view s) {
      std::vector<std::string_view> out;
      std::size_t                   i = 0;
      while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
          ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
          ++j;
        }
        if (j > i) {
          out.push_back(s.substr(i, j - i));
        }
        i = j;
      }
      return out;
    }

    inline Error parse_error(std::size_t line, std::string const& msg) {
      return Error(Errc::parse,
                   "line " + std::to_string(line) + ": " + msg);
    }

    inline int parse_degree(std::string_view s, std::size_t line) {
      int  n   = 0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), n);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size() || n < 2) {
        throw parse_error(line, "bad degree `" + std::string(s) + "`");
      }
      return n;
    }
  }  // namespace detail

  inline std::string to_string(PartitionSet const& p) {
    std::string out;
    for (auto const& w : p.words()) {
      out += to_string(w);
      out += '\n';
    }
    return out;
  }

  inline std::string to_string(Element const& g) {
    std::string out = "vn " + std::to_string(g.degree()) + "\n";
    for (auto const& [d, r] : g.leaves()) {
      out += to_string(d);
      out += " -> ";
      out += to_string(r);
      out += '\n';
    }
    return out;
  }

  //! Parses an element block from `lines`, starting at the `vn <n>` header.
  //! Stops at the first blank line or end of input. `first_line` is the
  //! 1-based number of lines[0], used in error messages.
  inline Element parse_element_lines(std::vector<std::string> const& lines,
                                     std::size_t first_line = 1) {
    std::size_t i = 0;
    while (i < lines.size() && detail::trim(lines[i]).empty()) {
      ++i;
    }
    if (i == lines.size()) {
      throw detail::parse_error(first_line, "missing `vn <n>` header");
    }
    auto head = detail::split_ws(lines[i]);
    if (head.size() != 2 || head[0] != "vn") {
      throw detail::parse_error(first_line + i, "expected `vn <n>`");
    }
    Alphabet a(detail::parse_degree(head[1], first_line + i));
    Table    t;
    for (++i; i < lines.size(); ++i) {
      auto line = detail::trim(lines[i]);
      if (line.empty()) {
        break;
      }
      auto parts = detail::split_ws(line);
      if (parts.size() != 3 || parts[1] != "->") {
        throw detail::parse_error(first_line + i,
                                  "expected `<word> -> <word>`");
      }
      try {
        t.push_back({parse_word(parts[0], a), parse_word(parts[2], a)});
      } catch (Error const& e) {
        throw detail::parse_error(first_line + i, e.what());
      }
    }
    if (t.empty()) {
      throw detail::parse_error(first_line, "element has no table rows");
    }
    return Element::from_table(a, std::move(t));
  }

  inline std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string              line;
    while (std::getline(in, line)) {
      lines.push_back(line);
    }
    return lines;
  }

  inline Element parse_element(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_element_lines(read_lines(in));
  }

  inline std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error(Errc::io, "cannot open `" + path + "`");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline void write_file(std::string const& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw Error(Errc::io, "cannot write `" + path + "`");
    }
    out << text;
  }

  inline Element load_element(std::string const& path) {
    try {
      return parse_element(read_file(path));
    } catch (Error const& e) {
      if (e.code() == Errc::parse) {
        throw Error(Errc::parse, path + ": " + e.what());
      }
      throw;
    }
  }

  inline void save_element(std::string const& path, Element const& g) {
    write_file(path, to_string(g));
  }

  //! One word per line; blank lines ignored.
  inline PartitionSet parse_partition(std::string_view text, Alphabet a) {
    std::istringstream in{std::string(text)};
    std::vector<Word>  words;
    std::size_t        n = 0;
    for (auto const& line : read_lines(in)) {
      ++n;
      auto w = detail::trim(line);
      if (w.empty()) {
        continue;
      }
      try {
        words.push_back(parse_word(w, a));
      } catch (Error const& e) {
        throw detail::parse_error(n, e.what());
      }
    }
    return PartitionSet::make(std::move(words), a);
  }

}  // namespace vn
