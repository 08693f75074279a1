// Exact machine checks of the identities behind the three-involution
// generating sets, plus the finite and membership checks they rely on.
//
// Every check compares canonical forms; there is no tolerance anywhere.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "vn/constructions.hpp"
#include "vn/element.hpp"
#include "vn/error.hpp"
#include "vn/random.hpp"
#include "vn/words.hpp"

namespace vn {

  enum class Verdict { pass, fail, precondition_violated };

  struct VerificationReport {
    VerificationReport(std::string name_, std::string params_)
        : name(std::move(name_)), params(std::move(params_)) {}

    std::string            name;
    std::string            params;
    Verdict                verdict = Verdict::pass;
    std::optional<Element> lhs;  // set on fail
    std::optional<Element> rhs;
    std::string            reason;

    bool passed() const noexcept {
      return verdict == Verdict::pass;
    }
  };

  namespace detail {
    inline VerificationReport compare(std::string    name,
                                      std::string    params,
                                      Element const& lhs,
                                      Element const& rhs) {
      VerificationReport r{std::move(name), std::move(params)};
      if (lhs != rhs) {
        r.verdict = Verdict::fail;
        r.lhs     = lhs;
        r.rhs     = rhs;
        r.reason  = "sides differ";
      }
      return r;
    }

    inline VerificationReport skipped(std::string name,
                                      std::string params,
                                      std::string reason) {
      VerificationReport r{std::move(name), std::move(params)};
      r.verdict = Verdict::precondition_violated;
      r.reason  = std::move(reason);
      return r;
    }

    inline VerificationReport failed(std::string name,
                                     std::string params,
                                     std::string reason) {
      VerificationReport r{std::move(name), std::move(params)};
      r.verdict = Verdict::fail;
      r.reason  = std::move(reason);
      return r;
    }

    inline Word ones(std::size_t k) {
      return Word::repeat(1, k);
    }

    inline std::string alpha_params(Alphabet a, std::size_t ell, int k) {
      return "n=" + std::to_string(a.degree()) + " ell="
             + std::to_string(ell) + " k=" + std::to_string(k);
    }
  }  // namespace detail

  //! (1^k gamma)^t == 1^(k+1) gamma
  inline VerificationReport verify_translation(Element const& gamma, int k) {
    std::string params
        = "n=" + std::to_string(gamma.degree()) + " k=" + std::to_string(k);
    if (k < 1) {
      return detail::skipped("eq2", params, "k must be at least 1");
    }
    auto const t   = make_t(gamma.alphabet());
    auto const k_u = static_cast<std::size_t>(k);
    return detail::compare("eq2",
                           params,
                           conjugate(embed(detail::ones(k_u), gamma), t),
                           embed(detail::ones(k_u + 1), gamma));
  }

  //! Right-hand side of the shifted spinal element:
  //!   1^(l+k+1) sigma * prod_i 1^(i+k).2 alpha_i
  inline Element shifted_spinal(Alphabet a, std::span<Element const> alpha,
                                int k) {
    auto const ell = alpha.size();
    auto const k_u = static_cast<std::size_t>(k);
    Element    rhs = embed(detail::ones(ell + k_u + 1), make_sigma(a));
    for (std::size_t i = 1; i <= ell; ++i) {
      rhs = rhs * embed(detail::ones(i + k_u) + Letter{2}, alpha[i - 1]);
    }
    return rhs;
  }

  //! s_alpha^(t^k) == 1^(l+k+1) sigma * prod_i 1^(i+k).2 alpha_i
  inline VerificationReport verify_s_alpha_conjugation(
      Alphabet a, std::span<Element const> alpha, int k) {
    auto params = detail::alpha_params(a, alpha.size(), k);
    if (k < 0) {
      return detail::skipped("eq3", params, "k must be non-negative");
    }
    Element const s   = make_s_alpha(a, alpha);
    Element const t_k = power(make_t(a), k);
    return detail::compare(
        "eq3", params, conjugate(s, t_k), shifted_spinal(a, alpha, k));
  }

  //! The right-hand side of the commutator trick:
  //!   1^(l+1) [sigma, 1^k sigma] * prod_{i=k+1}^{l} 1^i.2 [alpha_i, alpha_{i-k}]
  inline Element commutator_trick_rhs(Alphabet                 a,
                                      std::span<Element const> alpha,
                                      int                      k) {
    auto const    ell   = alpha.size();
    auto const    k_u   = static_cast<std::size_t>(k);
    Element const sigma = make_sigma(a);
    Element rhs = embed(detail::ones(ell + 1),
                        commutator(sigma, embed(detail::ones(k_u), sigma)));
    for (std::size_t i = k_u + 1; i <= ell; ++i) {
      rhs = rhs
            * embed(detail::ones(i) + Letter{2},
                    commutator(alpha[i - 1], alpha[i - k_u - 1]));
    }
    return rhs;
  }

  //! [s_alpha, s_alpha^(t^k)] against the commutator-trick product, provided
  //! the last k entries of alpha are trivial.
  inline VerificationReport verify_commutator_trick(
      Alphabet a, std::span<Element const> alpha, int k) {
    auto params = detail::alpha_params(a, alpha.size(), k);
    if (k < 0) {
      return detail::skipped("trick", params, "k must be non-negative");
    }
    int const ell = static_cast<int>(alpha.size());
    for (int i = std::max(1, ell - k + 1); i <= ell; ++i) {
      if (!alpha[static_cast<std::size_t>(i - 1)].is_identity()) {
        return detail::skipped(
            "trick",
            params,
            "alpha_" + std::to_string(i) + " != id but l-k+1 <= i <= l");
      }
    }
    Element const s   = make_s_alpha(a, alpha);
    Element const lhs = commutator(s, conjugate(s, power(make_t(a), k)));
    return detail::compare(
        "trick", params, lhs, commutator_trick_rhs(a, alpha, k));
  }

  //! [sigma, 1^d sigma], a volume-preserving element.
  inline Element isolation_gamma(Alphabet a, int d) {
    Element const sigma = make_sigma(a);
    return commutator(sigma,
                      embed(detail::ones(static_cast<std::size_t>(d)), sigma));
  }

  //! [s, s^(t^(j-i))] == 1^(l+1) gamma_ij * 1^j.2 [alpha_j, alpha_i], with
  //! gamma_ij volume preserving and the two factors commuting.
  inline VerificationReport verify_isolation(AlphaPlan const& plan,
                                             int              i,
                                             int              j) {
    std::string params = "n=" + std::to_string(plan.alphabet.degree())
                         + " ell=" + std::to_string(plan.ell())
                         + " i=" + std::to_string(i)
                         + " j=" + std::to_string(j);
    if (i >= j) {
      return detail::skipped("isolation", params, "need i < j");
    }
    if (!plan.support.contains(i) || !plan.support.contains(j)) {
      return detail::skipped("isolation", params, "i and j must lie in I");
    }
    if (auto v = plan_violations(plan); !v.empty()) {
      return detail::skipped("isolation", params, v.front());
    }
    Alphabet const a     = plan.alphabet;
    Element const  s     = make_s_alpha(plan);
    Element const  lhs   = commutator(s, conjugate(s, power(make_t(a), j - i)));
    Element const  gamma = isolation_gamma(a, j - i);
    if (!is_volume_preserving(gamma)) {
      return detail::failed(
          "isolation", params, "gamma_ij is not volume preserving");
    }
    Element const spine = embed(detail::ones(plan.ell() + 1), gamma);
    Element const local = embed(detail::ones(static_cast<std::size_t>(j))
                                    + Letter{2},
                                commutator(plan.at(j), plan.at(i)));
    if (spine * local != local * spine) {
      return detail::failed("isolation", params, "factors do not commute");
    }
    return detail::compare("isolation", params, lhs, spine * local);
  }

  //! Does g permute the level-1 cones (lie in the direct sum of the cone
  //! copies extended by the level-1 permutations)?
  inline bool in_maximal_subgroup(Element const& g) {
    if (g.is_identity()) {
      return true;
    }
    std::vector<Letter> pi(static_cast<std::size_t>(g.degree()) + 1, 0);
    for (auto const& [d, r] : g.leaves()) {
      if (d.empty() || r.empty()) {
        return false;
      }
      if (pi[d[0]] == 0) {
        pi[d[0]] = r[0];
      } else if (pi[d[0]] != r[0]) {
        return false;
      }
    }
    std::vector<Letter> targets(pi.begin() + 1, pi.end());
    std::sort(targets.begin(), targets.end());
    return std::adjacent_find(targets.begin(), targets.end()) == targets.end()
           && targets.front() != 0;
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite volume-preserving subgroups
  ////////////////////////////////////////////////////////////////////////

  struct FiniteGroup {
    std::size_t          order = 0;
    std::size_t          level = 0;
    std::vector<Element> elements;  // sorted
  };

  namespace detail {
    // (n^L)! mod m
    inline std::uint64_t factorial_mod(std::uint64_t k, std::uint64_t m) {
      if (m == 1) {
        return 0;
      }
      unsigned __int128 acc = 1;
      for (std::uint64_t i = 2; i <= k && acc != 0; ++i) {
        acc = (acc * i) % m;
      }
      return static_cast<std::uint64_t>(acc);
    }
  }  // namespace detail

  //! The finite group generated by volume-preserving elements, computed as a
  //! permutation group on the cones of a common level (at least the deepest
  //! generator word, or `level` if larger).
  inline FiniteGroup enumerate_en_group(std::vector<Element> const& gens,
                                        std::size_t level = 0) {
    if (gens.empty()) {
      throw Error(Errc::precondition, "need at least one generator");
    }
    Alphabet const a = gens.front().alphabet();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      require_same_alphabet(gens[i], gens.front());
      if (!is_volume_preserving(gens[i])) {
        throw Error(Errc::precondition,
                    "generator " + std::to_string(i + 1) + " ("
                        + std::to_string(gens[i].size())
                        + " leaves) is not volume preserving");
      }
      level = std::max(level, gens[i].depth());
    }
    auto const leaves = PartitionSet::level(a, level);
    auto const index  = [&](Word const& w) {
      return static_cast<std::uint32_t>(
          std::lower_bound(leaves.words().begin(), leaves.words().end(), w)
          - leaves.words().begin());
    };
    using Perm = std::vector<std::uint32_t>;
    std::vector<Perm> perm_gens;
    for (auto const& g : gens) {
      Perm p(leaves.size());
      for (auto const& lf : table_over(g, leaves)) {
        p[index(lf.from)] = index(lf.to);
      }
      perm_gens.push_back(std::move(p));
    }
    Perm id(leaves.size());
    std::iota(id.begin(), id.end(), 0U);
    std::set<Perm>    seen{id};
    std::vector<Perm> frontier{id};
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (auto const& x : frontier) {
        for (auto const& g : perm_gens) {
          Perm y(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = g[x[i]];
          }
          if (seen.insert(y).second) {
            next.push_back(std::move(y));
          }
        }
      }
      frontier = std::move(next);
    }
    FiniteGroup out{seen.size(), level, {}};
    if (detail::factorial_mod(leaves.size(), out.order) != 0) {
      throw Error(Errc::precondition,
                  "group order does not divide (n^L)!");
    }
    for (auto const& p : seen) {
      Table t;
      for (std::size_t i = 0; i < p.size(); ++i) {
        t.push_back({leaves.words()[i], leaves.words()[p[i]]});
      }
      out.elements.push_back(Element::from_valid_table(a, std::move(t)));
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
  }

  enum class AbelianImage { trivial, nontrivial };

  //! Image in the abelianization: detected by the sign for odd n, always
  //! trivial for even n.
  inline AbelianImage abelianization_image(Element const& g) {
    if (g.degree() % 2 == 0) {
      return AbelianImage::trivial;
    }
    return sign(g) == -1 ? AbelianImage::nontrivial : AbelianImage::trivial;
  }

  //! sigma, tau and s_alpha all square to the identity.
  inline VerificationReport verify_involution_suite(
      Alphabet a, std::span<Element const> alpha) {
    std::string params = "n=" + std::to_string(a.degree())
                         + " ell=" + std::to_string(alpha.size());
    Element const sigma = make_sigma(a);
    Element const tau   = make_tau(a);
    Element const s     = make_s_alpha(a, alpha);
    if (!(sigma * sigma).is_identity()) {
      return detail::compare(
          "involutions", params, sigma * sigma, Element::identity(a));
    }
    if (!(tau * tau).is_identity()) {
      return detail::compare(
          "involutions", params, tau * tau, Element::identity(a));
    }
    return detail::compare("involutions", params, s * s, Element::identity(a));
  }

  ////////////////////////////////////////////////////////////////////////
  // Parameter grids
  ////////////////////////////////////////////////////////////////////////

  struct GridOptions {
    std::vector<int> degrees{2, 3, 5};
    int              k_max        = 5;
    int              random_count = 200;
    std::size_t      random_depth = 4;
    std::uint64_t    seed         = 0;
  };

  //! The default base: the first `size` distinct involutions alpha0^g,
  //! alpha0^(gamma g) over words g in {sigma, tau} of length at most 2.
  inline std::vector<Element> default_base(Alphabet a, std::size_t size) {
    std::vector<Element> out;
    for (auto& g : base_involutions(a, sigma_tau_words(a, 2))) {
      if (std::find(out.begin(), out.end(), g) == out.end()) {
        out.push_back(std::move(g));
      }
    }
    if (out.size() < size) {
      throw Error(Errc::construction_failed, "not enough distinct involutions");
    }
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(size), out.end());
    return out;
  }

  //! Involution suite on the plan built from `base_size` base involutions.
  inline VerificationReport verify_involution_suite(Alphabet    a,
                                                    std::size_t base_size = 1) {
    auto plan = plan_alpha(default_base(a, base_size));
    auto r    = verify_involution_suite(a, plan.entries);
    r.params += " base=" + std::to_string(base_size);
    return r;
  }

  inline std::vector<VerificationReport> run_eq2(GridOptions const& opt) {
    std::vector<VerificationReport> out;
    for (int n : opt.degrees) {
      Alphabet        a(n);
      std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(n));
      for (int k = 1; k <= opt.k_max; ++k) {
        out.push_back(verify_translation(make_sigma(a), k));
        out.back().params += " gamma=sigma";
      }
      for (int r = 0; r < opt.random_count; ++r) {
        Element g = random_element(a, opt.random_depth, rng);
        for (int k = 1; k <= opt.k_max; ++k) {
          out.push_back(verify_translation(g, k));
          out.back().params += " gamma=random#" + std::to_string(r);
        }
      }
    }
    return out;
  }

  inline std::vector<VerificationReport> run_eq3(GridOptions const& opt) {
    std::vector<VerificationReport> out;
    for (int n : opt.degrees) {
      Alphabet a(n);
      for (std::size_t b = 1; b <= 3; ++b) {
        auto plan = plan_alpha(default_base(a, b));
        for (int k = 0; k <= opt.k_max; ++k) {
          out.push_back(verify_s_alpha_conjugation(a, plan.entries, k));
          out.back().params += " base=" + std::to_string(b);
        }
      }
    }
    return out;
  }

  inline std::vector<VerificationReport> run_trick(GridOptions const& opt) {
    std::vector<VerificationReport> out;
    for (int n : opt.degrees) {
      Alphabet a(n);
      for (std::size_t b = 1; b <= 3; ++b) {
        auto plan = plan_alpha(default_base(a, b));
        for (int k = 0; k <= opt.k_max; ++k) {
          out.push_back(verify_commutator_trick(a, plan.entries, k));
          out.back().params += " base=" + std::to_string(b);
        }
      }
    }
    return out;
  }

  inline std::vector<VerificationReport> run_isolation(
      GridOptions const& opt) {
    std::vector<VerificationReport> out;
    for (int n : opt.degrees) {
      Alphabet a(n);
      for (auto const& members :
           {std::vector<int>{2, 3}, std::vector<int>{4, 5, 7}}) {
        auto plan = plan_alpha_on(default_base(a, members.size()),
                                  SidonSet::make(members));
        for (std::size_t x = 0; x < members.size(); ++x) {
          for (std::size_t y = x + 1; y < members.size(); ++y) {
            out.push_back(verify_isolation(plan, members[x], members[y]));
          }
        }
      }
    }
    return out;
  }

  inline std::vector<VerificationReport> run_involutions(
      GridOptions const& opt) {
    std::vector<VerificationReport> out;
    for (int n : opt.degrees) {
      for (std::size_t b = 1; b <= 3; ++b) {
        out.push_back(verify_involution_suite(Alphabet(n), b));
      }
    }
    return out;
  }

  inline std::vector<VerificationReport> run_maximal(GridOptions const& opt) {
    std::vector<VerificationReport> out;
    auto check = [&](std::string what, Alphabet a, Element const& g,
                     bool expected) {
      VerificationReport r{"maximal",
                           "n=" + std::to_string(a.degree()) + " g=" + what};
      if (in_maximal_subgroup(g) != expected) {
        r.verdict = Verdict::fail;
        r.reason  = expected ? "expected inside" : "expected outside";
      }
      out.push_back(std::move(r));
    };
    for (int n : opt.degrees) {
      Alphabet        a(n);
      std::mt19937_64 rng(opt.seed);
      check("sigma", a, make_sigma(a), true);
      check("embed(1,random)", a, embed(Word{1}, random_element(a, 3, rng)),
            true);
      check("embed(2.1,random)",
            a,
            embed(Word{2, 1}, random_element(a, 3, rng)),
            true);
      check("tau", a, make_tau(a), false);
      check("t", a, make_t(a), false);
    }
    return out;
  }

  inline std::vector<VerificationReport> run_en(GridOptions const& opt) {
    std::vector<VerificationReport> out;
    for (int n : opt.degrees) {
      Alphabet    a(n);
      Element     sigma = make_sigma(a);
      auto        g1    = enumerate_en_group({sigma});
      auto        g2    = enumerate_en_group({sigma, embed(Word{1}, sigma)});
      auto        g3 = enumerate_en_group({sigma, embed(Word{1}, sigma)}, 3);
      std::string p  = "n=" + std::to_string(n);
      VerificationReport r{"en", p};
      if (g1.order != 2) {
        r.verdict = Verdict::fail;
        r.reason  = "<sigma> has order " + std::to_string(g1.order);
      } else if (g2.order != g3.order) {
        r.verdict = Verdict::fail;
        r.reason  = "order changed under expansion";
      } else if (n == 2 && g2.order != 8) {
        r.verdict = Verdict::fail;
        r.reason  = "<sigma, 1 sigma> has order " + std::to_string(g2.order);
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  inline std::vector<VerificationReport> run_abelianization(
      GridOptions const& opt) {
    std::vector<VerificationReport> out;
    for (int n : opt.degrees) {
      Alphabet           a(n);
      std::mt19937_64    rng(opt.seed + static_cast<std::uint64_t>(n));
      VerificationReport r{"abelianization", "n=" + std::to_string(n)};
      auto expected_sigma = n % 2 == 1 ? AbelianImage::nontrivial
                                       : AbelianImage::trivial;
      if (abelianization_image(make_sigma(a)) != expected_sigma) {
        r.verdict = Verdict::fail;
        r.reason  = "wrong image of sigma";
      }
      for (int i = 0; i < 100 && r.passed(); ++i) {
        auto x = random_element(a, 3, rng);
        auto y = random_element(a, 3, rng);
        if (abelianization_image(commutator(x, y)) != AbelianImage::trivial) {
          r.verdict = Verdict::fail;
          r.reason  = "commutator with nontrivial image";
        }
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  inline std::vector<VerificationReport> run_all(GridOptions const& opt) {
    std::vector<VerificationReport> out;
    for (auto part : {run_involutions(opt),
                      run_eq2(opt),
                      run_eq3(opt),
                      run_trick(opt),
                      run_isolation(opt),
                      run_maximal(opt),
                      run_en(opt),
                      run_abelianization(opt)}) {
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

}  // namespace vn
