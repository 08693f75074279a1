#include <random>
#include <set>

#include "catch_amalgamated.hpp"

#include "vn/constructions.hpp"
#include "vn/random.hpp"

using namespace vn;

namespace {

  Table rows(std::initializer_list<std::pair<char const*, char const*>> r) {
    Table t;
    for (auto [d, i] : r) {
      t.push_back({parse_word(d), parse_word(i)});
    }
    return t;
  }

  // Brute-force greedy: next member is the least integer keeping all
  // pairwise differences distinct.
  std::vector<int> greedy_oracle(int count) {
    std::vector<int> out;
    for (int c = 1; static_cast<int>(out.size()) < count; ++c) {
      auto trial = out;
      trial.push_back(c);
      std::multiset<int> diffs;
      for (std::size_t i = 0; i < trial.size(); ++i) {
        for (std::size_t j = i + 1; j < trial.size(); ++j) {
          diffs.insert(trial[j] - trial[i]);
        }
      }
      if (std::set<int>(diffs.begin(), diffs.end()).size() == diffs.size()) {
        out = trial;
      }
    }
    return out;
  }

  Word random_word(int n, std::size_t len, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> letter(1, n);
    std::vector<Letter>                v;
    for (std::size_t i = 0; i < len; ++i) {
      v.push_back(static_cast<Letter>(letter(rng)));
    }
    return Word(v);
  }

}  // namespace

TEST_CASE("dot", "[constructions]") {
  Alphabet five(5);
  auto     s = dot(Permutation::parse_cycles("(1 2)", five));
  REQUIRE(s.leaves()
          == rows({{"1", "2"}, {"2", "1"}, {"3", "3"}, {"4", "4"}, {"5", "5"}}));
  REQUIRE(s == make_sigma(five));
  REQUIRE(is_volume_preserving(s));
  REQUIRE(dot(Permutation::identity(five)).is_identity());
  REQUIRE(sign(dot(Permutation::parse_cycles("(1 2)", Alphabet(3)))) == -1);
  REQUIRE(dot(Permutation::parse_cycles("(1 3)(2 4)", Alphabet(4))).size() == 4);
  REQUIRE_THROWS_AS(Permutation::parse_cycles("(1 1)", five), Error);
  REQUIRE_THROWS_AS(Permutation::parse_cycles("(1 6)", five), Error);
  REQUIRE_THROWS_AS(Permutation::from_images(five, {1, 1, 2, 3, 4}), Error);
}

TEST_CASE("tau", "[constructions]") {
  REQUIRE(make_tau(Alphabet(5)).leaves()
          == rows({{"1.1", "2"},
                   {"1.2", "3"},
                   {"1.3", "4"},
                   {"1.4", "5"},
                   {"1.5", "1.5"},
                   {"2", "1.1"},
                   {"3", "1.2"},
                   {"4", "1.3"},
                   {"5", "1.4"}}));
  REQUIRE(make_tau(Alphabet(2)).leaves()
          == rows({{"1.1", "2"}, {"1.2", "1.2"}, {"2", "1.1"}}));
  REQUIRE(order_bounded(make_tau(Alphabet(5)), 4) == 2);
  for (int n = 2; n <= 6; ++n) {
    Alphabet a(n);
    REQUIRE((make_tau(a) * make_tau(a)).is_identity());
    REQUIRE((make_sigma(a) * make_sigma(a)).is_identity());
    // the cone 1.n is fixed pointwise
    auto fixed = Word{1} + static_cast<Letter>(n);
    REQUIRE(apply_word(make_tau(a), fixed + Letter{1}) == fixed + Letter{1});
  }
}

TEST_CASE("t translates along the spine", "[constructions]") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 5}) {
    Alphabet a(n);
    auto     t = make_t(a);
    REQUIRE(t == make_sigma(a) * make_tau(a));
    for (int trial = 0; trial < 20; ++trial) {
      auto w = random_word(n, 1 + trial % 4, rng);
      REQUIRE(apply_word(t, Word{1, 1} + w) == Word{1} + w);
      auto g = random_element(a, 3, rng);
      REQUIRE(conjugate(embed(Word{1}, g), t) == embed(Word{1, 1}, g));
    }
    auto spine = RationalPoint::make(Word{}, Word{1});
    REQUIRE(apply_point(t, spine) == spine);
  }
}

TEST_CASE("embed", "[constructions]") {
  Alphabet two(2);
  REQUIRE(embed(Word{1}, make_sigma(two)).leaves()
          == rows({{"1.1", "1.2"}, {"1.2", "1.1"}, {"2", "2"}}));
  REQUIRE(embed(Word{2, 1}, Element::identity(two)).is_identity());
  REQUIRE(embed(Word{}, make_tau(two)) == make_tau(two));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    int      n = 2 + trial % 3;
    Alphabet a(n);
    auto     u = random_word(n, trial % 3, rng);
    auto     v = random_word(n, 1 + trial % 2, rng);
    auto     g = random_element(a, 3, rng);
    auto     h = random_element(a, 3, rng);
    REQUIRE(embed(u, embed(v, g)) == embed(u + v, g));
    REQUIRE(embed(v, g * h) == embed(v, g) * embed(v, h));
    for (auto const& c : support(embed(v, g)).cones) {
      if (!v.is_prefix_of(c.cone)) {
        REQUIRE(c.status == ConeStatus::fixed);
      }
    }
  }
}

TEST_CASE("spinal element", "[constructions]") {
  Alphabet             three(3);
  std::vector<Element> one_id{Element::identity(three)};
  auto                 s = make_s_alpha(three, one_id);
  REQUIRE(s.leaves()
          == rows({{"1.1.1", "1.1.2"},
                   {"1.1.2", "1.1.1"},
                   {"1.1.3", "1.1.3"},
                   {"1.2", "1.2"},
                   {"1.3", "1.3"},
                   {"2", "2"},
                   {"3", "3"}}));
  REQUIRE(s == embed(Word{1, 1}, make_sigma(three)));
  REQUIRE(make_s_alpha(three, std::vector<Element>{}) == embed(Word{1}, make_sigma(three)));

  auto plan = plan_alpha({make_tau(three)});
  REQUIRE(order_bounded(make_s_alpha(plan), 4) == 2);
}

TEST_CASE("both spinal constructors agree", "[constructions][property]") {
  std::mt19937_64 rng(13);
  int             trials = 0;
  for (int n : {2, 3, 5}) {
    Alphabet a(n);
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t          ell = static_cast<std::size_t>(trial % 7);
      std::vector<Element> alpha;
      for (std::size_t k = 0; k < ell; ++k) {
        alpha.push_back(trial % 5 == 0 ? Element::identity(a) : random_element(a, 3, rng));
      }
      REQUIRE(make_s_alpha(a, alpha) == make_s_alpha_direct(a, alpha));
      ++trials;
    }
  }
  REQUIRE(trials == 150);
}

TEST_CASE("spinal element is an involution iff every entry is", "[constructions]") {
  for (int n : {2, 3, 5}) {
    Alphabet a(n);
    auto     sigma = make_sigma(a);
    auto     tau   = make_tau(a);
    std::vector<Element> invol{Element::identity(a), sigma, tau, Element::identity(a)};
    REQUIRE(order_bounded(make_s_alpha(a, invol), 2) == 2);

    auto rho = n == 2 ? make_t(a) * make_t(a) * invert(make_t(a))  // order infinite
                      : dot(Permutation::parse_cycles("(1 2 3)", a));
    if (n > 2) {
      REQUIRE(order_bounded(rho, 3) == 3);
    }
    auto bad = invol;
    bad[1]   = rho;
    REQUIRE(!(make_s_alpha(a, bad) * make_s_alpha(a, bad)).is_identity());
  }
}

TEST_CASE("sidon sets", "[constructions]") {
  std::vector<int> pow2{2, 4, 8, 16}, bad{1, 2, 3}, none{}, single{7};
  REQUIRE(is_sidon(pow2));
  REQUIRE(!is_sidon(bad));
  REQUIRE(is_sidon(none));
  REQUIRE(is_sidon(single));
  REQUIRE_THROWS_AS(SidonSet::make({1, 2, 3}), Error);

  REQUIRE(sidon_generate(3, SidonStrategy::powers_of_two).members()
          == std::vector<int>{2, 4, 8});
  REQUIRE(sidon_generate(0, SidonStrategy::greedy).size() == 0);
  for (int c = 0; c <= 8; ++c) {
    REQUIRE(sidon_generate(c, SidonStrategy::greedy).members() == greedy_oracle(c));
  }
  REQUIRE(sidon_generate(4, SidonStrategy::greedy).members() == std::vector<int>{1, 2, 4, 8});
  REQUIRE(sidon_generate(5, SidonStrategy::greedy).members()
          == std::vector<int>{1, 2, 4, 8, 13});
  REQUIRE(parse_sidon_strategy("powers-of-two") == SidonStrategy::powers_of_two);
  REQUIRE_THROWS_AS(parse_sidon_strategy("random"), Error);
}

TEST_CASE("plan_alpha", "[constructions]") {
  Alphabet a(2);
  auto     b1 = make_sigma(a), b2 = make_tau(a), b3 = embed(Word{2}, make_sigma(a));

  auto p1 = plan_alpha({b1});
  REQUIRE(p1.support.members() == std::vector<int>{1});
  REQUIRE(p1.N == 0);
  REQUIRE(p1.ell() == 2);
  REQUIRE(p1.at(1) == b1);
  REQUIRE(p1.at(2).is_identity());

  auto p2 = plan_alpha({b1, b2});
  REQUIRE(p2.support.members() == std::vector<int>{2, 3});
  REQUIRE(p2.N == 1);
  REQUIRE(p2.ell() == 5);
  REQUIRE(p2.at(2) == b1);
  REQUIRE(p2.at(3) == b2);

  auto p3 = plan_alpha({b1, b2, b3});
  REQUIRE(p3.support.members() == std::vector<int>{4, 5, 7});
  REQUIRE(p3.N == 3);
  REQUIRE(p3.ell() == 11);
  REQUIRE(p3.i0 == 7);

  for (auto const* p : {&p1, &p2, &p3}) {
    REQUIRE(plan_violations(*p).empty());
  }
  auto pw = plan_alpha({b1, b2, b3}, SidonStrategy::powers_of_two);
  REQUIRE(plan_violations(pw).empty());

  try {
    plan_alpha({make_t(a)});
    FAIL("non-involution accepted");
  } catch (Error const& e) {
    REQUIRE(e.code() == Errc::order);
  }
  REQUIRE_THROWS_AS(plan_alpha({}), Error);

  // a raw sequence violating the padding conditions is reported
  auto raw = plan_from_sequence(a, {b1, b2, Element::identity(a)});
  REQUIRE(!plan_violations(raw).empty());
}

TEST_CASE("base involutions", "[constructions]") {
  Alphabet three(3);
  auto     conj = sigma_tau_words(three);
  auto     base = base_involutions(three, conj);
  REQUIRE(base.size() == 2 * conj.size());
  for (auto const& g : base) {
    REQUIRE(order_bounded(g, 2) == 2);
    REQUIRE(sign(g) == 1);
  }
  REQUIRE(sign(embed(Word{1}, make_sigma(three))) == -1);

  auto pair = base_involutions(three, {Element::identity(three)});
  REQUIRE(pair.size() == 2);
  auto a0 = embed(Word{1}, make_sigma(three)) * embed(Word{2}, make_sigma(three));
  REQUIRE(pair[0] == a0);
  REQUIRE(!commutator(pair[0], pair[1]).is_identity());

  try {
    base_involutions(three, {Element::identity(three)},
                     std::vector<Element>{Element::identity(three)});
    FAIL("degenerate gamma accepted");
  } catch (Error const& e) {
    REQUIRE(e.code() == Errc::construction_failed);
  }
}

TEST_CASE("alpha file round trip", "[constructions][io]") {
  auto dir = std::filesystem::temp_directory_path() / "vn_alpha_test";
  std::filesystem::create_directories(dir);
  Alphabet a(3);
  auto     plan = plan_alpha({make_sigma(a), make_tau(a)});
  auto     path = (dir / "plan.alpha").string();
  save_alpha(path, plan);
  REQUIRE(read_file(path) == "alpha 3 5\n2 @ plan.alpha.2.vn\n3 @ plan.alpha.3.vn\n");
  auto back = load_alpha(path);
  REQUIRE(back.entries == plan.entries);
  REQUIRE(back.N == 1);
  REQUIRE(make_s_alpha(back) == make_s_alpha(plan));

  REQUIRE_THROWS_AS(parse_alpha("alpha 3 5\n6 @ x.vn\n", dir), Error);
  REQUIRE_THROWS_AS(parse_alpha("alpha 3\n", dir), Error);
  std::filesystem::remove_all(dir);
}
