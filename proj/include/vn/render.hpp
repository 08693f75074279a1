// Graphviz rendering of an element as a pair of trees with dashed edges
// matching each domain leaf to its image leaf.

#pragma once

#include <set>
#include <string>

#include "vn/element.hpp"
#include "vn/words.hpp"

namespace vn {

  namespace detail {
    inline std::string dot_id(char side, Word const& w) {
      return std::string("\"") + side + ":" + to_string(w) + "\"";
    }

    inline void render_tree(std::string&          out,
                            char                  side,
                            std::string const&    label,
                            std::set<Word> const& leaves) {
      std::set<Word> nodes;
      for (auto const& w : leaves) {
        for (std::size_t k = 0; k <= w.size(); ++k) {
          nodes.insert(w.prefix(k));
        }
      }
      out += "  subgraph cluster_";
      out += label;
      out += " {\n    label=\"" + label + "\";\n";
      for (auto const& w : nodes) {
        out += "    " + dot_id(side, w);
        if (leaves.contains(w)) {
          out += " [label=\"" + to_string(w) + "\", shape=box];\n";
        } else {
          out += " [label=\"\", shape=circle, width=0.15];\n";
        }
      }
      for (auto const& w : nodes) {
        if (!w.empty()) {
          out += "    " + dot_id(side, w.parent()) + " -> " + dot_id(side, w)
                 + ";\n";
        }
      }
      out += "  }\n";
    }
  }  // namespace detail

  inline std::string render_dot(Element const& g) {
    std::set<Word> from, to;
    for (auto const& lf : g.leaves()) {
      from.insert(lf.from);
      to.insert(lf.to);
    }
    std::string out = "digraph vn" + std::to_string(g.degree()) + " {\n";
    out += "  node [fontname=\"Helvetica\"];\n";
    detail::render_tree(out, 'd', "domain", from);
    detail::render_tree(out, 'r', "range", to);
    for (auto const& lf : g.leaves()) {
      out += "  " + detail::dot_id('d', lf.from) + " -> "
             + detail::dot_id('r', lf.to)
             + " [style=dashed, constraint=false];\n";
    }
    out += "}\n";
    return out;
  }

}  // namespace vn
