#include <numeric>
#include <random>
#include <set>

#include "catch_amalgamated.hpp"

#include "vn/io.hpp"
#include "vn/random.hpp"
#include "vn/words.hpp"

using namespace vn;

namespace {

  // Exact sum of n^-|w| as a reduced fraction.
  struct Fraction {
    long long num = 0, den = 1;

    void add_power(int n, std::size_t len) {
      long long d = 1;
      for (std::size_t i = 0; i < len; ++i) {
        d *= n;
      }
      num = num * d + den;
      den = den * d;
      auto g = std::gcd(num, den);
      num /= g;
      den /= g;
    }
  };

  bool measure_is_one(std::vector<Word> const& words, int n) {
    Fraction f;
    for (auto const& w : words) {
      f.add_power(n, w.size());
    }
    return f.num == 1 && f.den == 1;
  }

  bool prefix_free(std::vector<Word> const& words) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        if (i != j && words[i].is_prefix_of(words[j])) {
          return false;
        }
      }
    }
    return true;
  }

  // maximal words of A u B
  std::set<Word> refine_oracle(PartitionSet const& a, PartitionSet const& b) {
    std::set<Word> all(a.words().begin(), a.words().end());
    all.insert(b.words().begin(), b.words().end());
    std::set<Word> out;
    for (auto const& w : all) {
      bool maximal = true;
      for (auto const& u : all) {
        if (u != w && w.is_prefix_of(u)) {
          maximal = false;
        }
      }
      if (maximal) {
        out.insert(w);
      }
    }
    return out;
  }

  PartitionSet parts(std::initializer_list<char const*> words, int n) {
    std::vector<Word> v;
    for (auto w : words) {
      v.push_back(parse_word(w));
    }
    return PartitionSet::make(v, Alphabet(n));
  }

}  // namespace

TEST_CASE("alphabet and word syntax", "[words]") {
  REQUIRE_THROWS_AS(Alphabet(1), Error);
  REQUIRE(to_string(Word{}) == "eps");
  REQUIRE(to_string(Word{1, 1, 2}) == "1.1.2");
  REQUIRE(parse_word("12.3") == Word{12, 3});
  REQUIRE(parse_word("eps").empty());
  for (auto bad : {"", "1..2", "0", "1.a", ".1", "1."}) {
    REQUIRE_THROWS_AS(parse_word(bad), Error);
  }
  try {
    parse_word("1.3", Alphabet(2));
    FAIL("accepted letter out of range");
  } catch (Error const& e) {
    REQUIRE(e.code() == Errc::malformed_word);
  }
}

TEST_CASE("is_partition_set", "[words]") {
  Alphabet two(2);
  REQUIRE(is_partition_set({Word{1}, Word{2}}, two));
  REQUIRE(is_partition_set({Word{1, 1}, Word{1, 2}, Word{2}}, two));
  // measure 1/2 + 1/4
  REQUIRE(!measure_is_one({Word{1}, Word{2, 1}}, 2));
  REQUIRE(!is_partition_set({Word{1}, Word{2, 1}}, two));
  REQUIRE(!is_partition_set({Word{1}, Word{1, 1}, Word{2}}, two));
  REQUIRE(!is_partition_set({Word{1}, Word{1}, Word{2}}, two));
  REQUIRE(is_partition_set({Word{}}, two));
  REQUIRE_THROWS_AS(is_partition_set({Word{1}, Word{3}}, two), Error);
}

TEST_CASE("is_partition_set agrees with the measure oracle", "[words][property]") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 4}) {
    Alphabet a(n);
    for (int trial = 0; trial < 200; ++trial) {
      auto words = random_antichain(a, 4, trial % 6, rng);
      // drop or duplicate-extend a word to sometimes break completeness
      if (trial % 3 == 1 && words.size() > 1) {
        words.erase(words.begin() + static_cast<long>(trial % words.size()));
      } else if (trial % 3 == 2) {
        words.push_back(words.front() + Letter{1});
      }
      bool expected = prefix_free(words) && measure_is_one(words, n);
      REQUIRE(is_partition_set(words, a) == expected);
    }
  }
}

TEST_CASE("refine", "[words]") {
  auto a = parts({"1", "2"}, 2);
  auto b = parts({"1.1", "1.2", "2"}, 2);
  auto c = parts({"1", "2.1", "2.2"}, 2);
  REQUIRE(refine(a, b) == b);
  REQUIRE(refine(b, c) == parts({"1.1", "1.2", "2.1", "2.2"}, 2));
  REQUIRE(refine(b, b) == b);

  std::mt19937_64 rng(11);
  for (int n : {2, 3}) {
    Alphabet a3(n);
    for (int trial = 0; trial < 100; ++trial) {
      auto x = PartitionSet::make(random_antichain(a3, 4, trial % 5, rng), a3);
      auto y = PartitionSet::make(random_antichain(a3, 4, trial % 7, rng), a3);
      auto r = refine(x, y);
      REQUIRE(r == refine(y, x));
      auto oracle = refine_oracle(x, y);
      REQUIRE(std::set<Word>(r.words().begin(), r.words().end()) == oracle);
      for (auto const& w : r.words()) {
        REQUIRE(x.locate(w).has_prefix);
        REQUIRE(y.locate(w).has_prefix);
      }
    }
  }
}

TEST_CASE("expand_to_level", "[words]") {
  auto a = parts({"1", "2"}, 2);
  REQUIRE(expand_to_level(a, 2) == parts({"1.1", "1.2", "2.1", "2.2"}, 2));
  REQUIRE(expand_to_level(parts({"1.1", "1.2", "2"}, 2), 2)
          == parts({"1.1", "1.2", "2.1", "2.2"}, 2));
  REQUIRE(expand_to_level(parts({"1", "2", "3"}, 3), 3).size() == 27);
  try {
    expand_to_level(parts({"1.1", "1.2", "2"}, 2), 1);
    FAIL("accepted a level below the longest word");
  } catch (Error const& e) {
    REQUIRE(e.code() == Errc::level_too_small);
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Alphabet a3(3);
    auto     p = PartitionSet::make(random_antichain(a3, 3, trial % 4, rng), a3);
    auto     e = expand_to_level(p, 4);
    REQUIRE(is_partition_set(e.words(), a3));
    REQUIRE(e == PartitionSet::level(a3, 4));
  }
}

TEST_CASE("point_normalize", "[words]") {
  REQUIRE(point_normalize(Word{}, Word{1, 1}) == point_normalize(Word{}, Word{1}));
  auto p = point_normalize(Word{1}, Word{2, 1});
  REQUIRE(p.preperiod().empty());
  REQUIRE(p.period() == Word{1, 2});
  REQUIRE(p.prefix(20) == RationalPoint::make(Word{1}, Word{2, 1}).prefix(20));
  auto q = point_normalize(Word{2}, Word{1});
  REQUIRE(q.preperiod() == Word{2});
  REQUIRE(q.period() == Word{1});
  REQUIRE_THROWS_AS(point_normalize(Word{1}, Word{}), Error);
}

TEST_CASE("point equality agrees with the prefix oracle", "[words][property]") {
  std::mt19937_64                 rng(5);
  std::uniform_int_distribution<> len(0, 4), plen(1, 4), letter(1, 2);
  auto                            rword = [&](int k) {
    std::vector<Letter> v;
    for (int i = 0; i < k; ++i) {
      v.push_back(static_cast<Letter>(letter(rng)));
    }
    return Word(v);
  };
  for (int trial = 0; trial < 500; ++trial) {
    Word pre1 = rword(len(rng)), per1 = rword(plen(rng));
    // bias towards equal points: rewrite the same point differently
    Word pre2, per2;
    if (trial % 2 == 0) {
      pre2 = pre1 + per1;
      per2 = per1 + per1;
    } else {
      pre2 = rword(len(rng));
      per2 = rword(plen(rng));
    }
    auto x = point_normalize(pre1, per1);
    auto y = point_normalize(pre2, per2);
    REQUIRE(point_normalize(x.preperiod(), x.period()) == x);
    std::size_t K = pre1.size() + pre2.size()
                    + 2 * std::lcm(per1.size(), per2.size());
    auto brute = [&](Word const& pre, Word const& per) {
      std::vector<Letter> v;
      for (std::size_t i = 0; i < K; ++i) {
        v.push_back(i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()]);
      }
      return Word(v);
    };
    REQUIRE((x == y) == (brute(pre1, per1) == brute(pre2, per2)));
  }
}

TEST_CASE("partition text", "[words]") {
  Alphabet a(2);
  auto     p = parse_partition("1.1\n1.2\n\n2\n", a);
  REQUIRE(to_string(p) == "1.1\n1.2\n2\n");
  REQUIRE_THROWS_AS(parse_partition("1\n", a), Error);
}
