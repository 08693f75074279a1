// Seeded random elements for randomized identity checks.

#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "vn/element.hpp"
#include "vn/words.hpp"

namespace vn {

  //! A random partition set made by `splits` caret expansions of leaves
  //! shorter than `max_depth` (fewer if no such leaf remains).
  template <typename Rng>
  std::vector<Word> random_antichain(Alphabet    a,
                                     std::size_t max_depth,
                                     int         splits,
                                     Rng&        rng) {
    std::vector<Word> leaves{Word()};
    for (int s = 0; s < splits; ++s) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i].size() < max_depth) {
          open.push_back(i);
        }
      }
      if (open.empty()) {
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
      Word w = leaves[open[pick(rng)]];
      std::erase(leaves, w);
      for (int x = 1; x <= a.degree(); ++x) {
        leaves.push_back(w + static_cast<Letter>(x));
      }
    }
    std::sort(leaves.begin(), leaves.end());
    return leaves;
  }

  //! A random element whose table (hence canonical form) has depth at most
  //! `max_depth`.
  template <typename Rng>
  Element random_element(Alphabet a, std::size_t max_depth, Rng& rng) {
    if (max_depth == 0) {
      return Element::identity(a);
    }
    std::uniform_int_distribution<int> split_count(0, 2 * static_cast<int>(max_depth));
    int const                          splits = split_count(rng);
    // equal split counts give equal leaf counts
    auto dom = random_antichain(a, max_depth, splits, rng);
    auto img = random_antichain(a, max_depth, splits, rng);
    while (img.size() != dom.size()) {
      img = random_antichain(a, max_depth, splits, rng);
      if (img.size() != dom.size()) {
        dom = random_antichain(a, max_depth, splits, rng);
      }
    }
    std::shuffle(img.begin(), img.end(), rng);
    Table t;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      t.push_back({dom[i], img[i]});
    }
    return Element::from_valid_table(a, std::move(t));
  }

  //! A random volume-preserving element: a permutation of level `level`.
  template <typename Rng>
  Element random_level_permutation(Alphabet a, std::size_t level, Rng& rng) {
    auto words = PartitionSet::level(a, level).words();
    auto img   = words;
    std::shuffle(img.begin(), img.end(), rng);
    Table t;
    for (std::size_t i = 0; i < words.size(); ++i) {
      t.push_back({words[i], img[i]});
    }
    return Element::from_valid_table(a, std::move(t));
  }

}  // namespace vn
