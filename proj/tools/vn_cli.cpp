// vn: command line front end for the V_n engine.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "vn/vn.hpp"

namespace {

  enum class Format { lines, tsv };

  struct Common {
    std::optional<int>       degree;
    std::vector<std::string> defs;  // name=file
    std::string              format = "lines";

    Format fmt() const {
      return format == "tsv" ? Format::tsv : Format::lines;
    }
  };

  // -n, or the degree of the first bound file, or 2.
  vn::Environment environment(Common const& c) {
    std::vector<std::pair<std::string, vn::Element>> bound;
    for (auto const& d : c.defs) {
      auto eq = d.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw vn::Error(vn::Errc::parse, "--def expects name=file, got `" + d + "`");
      }
      bound.emplace_back(d.substr(0, eq), vn::load_element(d.substr(eq + 1)));
    }
    int n = c.degree ? *c.degree : bound.empty() ? 2 : bound.front().second.degree();
    vn::Environment env{vn::Alphabet(n), std::filesystem::current_path()};
    for (auto& [name, g] : bound) {
      env.bind(name, std::move(g));
    }
    return env;
  }

  void print_element(vn::Element const& g, Format f) {
    if (f == Format::lines) {
      std::cout << vn::to_string(g);
      return;
    }
    std::cout << "from\tto\n";
    for (auto const& lf : g.leaves()) {
      std::cout << vn::to_string(lf.from) << '\t' << vn::to_string(lf.to) << '\n';
    }
  }

  void add_common(CLI::App* sub, Common& c, bool with_expr_env = true) {
    sub->add_option("-n,--degree", c.degree, "alphabet size n >= 2");
    if (with_expr_env) {
      sub->add_option("--def", c.defs, "bind a name to an element file (name=file)");
    }
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"lines", "tsv"}));
  }

  char const* verdict_text(vn::Verdict v) {
    switch (v) {
      case vn::Verdict::pass:
        return "PASS";
      case vn::Verdict::fail:
        return "FAIL";
      default:
        return "SKIP(precondition)";
    }
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the Higman-Thompson groups V_n"};
  app.require_subcommand(1);
  Common c;

  std::string file, expr, word_text, point_text, out_path, alpha_path, gens_path,
      target_path, which, strategy = "greedy";
  int                      bound = 64, count = 0, radius = 0;
  std::size_t              cap     = 1'000'000;
  unsigned                 workers = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::string> base_files;
  std::vector<int>         degrees;
  vn::GridOptions          grid;

  auto* canon = app.add_subcommand("canon", "print the canonical form of an element file");
  canon->add_option("file", file, "element file")->required();
  add_common(canon, c, false);

  auto* eval = app.add_subcommand("eval", "evaluate an expression");
  eval->add_option("-e,--expr", expr)->required();
  add_common(eval, c);

  auto* apply = app.add_subcommand("apply", "image of a finite word");
  apply->add_option("-e,--expr", expr)->required();
  apply->add_option("-w,--word", word_text)->required();
  add_common(apply, c);

  auto* point = app.add_subcommand("point", "image of an eventually periodic point pre:per");
  point->add_option("-e,--expr", expr)->required();
  point->add_option("-p,--point", point_text)->required();
  add_common(point, c);

  auto* order = app.add_subcommand("order", "order, if at most the bound");
  order->add_option("-e,--expr", expr)->required();
  order->add_option("--bound", bound)->check(CLI::PositiveNumber);
  add_common(order, c);

  auto* sign = app.add_subcommand("sign", "sign of an element (odd n)");
  sign->add_option("-e,--expr", expr)->required();
  add_common(sign, c);

  auto* volume = app.add_subcommand("volume", "is the element volume preserving");
  volume->add_option("-e,--expr", expr)->required();
  add_common(volume, c);

  auto* supp = app.add_subcommand("support", "status of every canonical domain cone");
  supp->add_option("-e,--expr", expr)->required();
  add_common(supp, c);

  auto* make = app.add_subcommand("make", "build sigma, tau, t or s");
  make->add_option("which", which)->required()->check(CLI::IsMember({"sigma", "tau", "t", "s"}));
  make->add_option("--alpha", alpha_path, "alpha file (for s)");
  make->add_option("-o,--out", out_path);
  add_common(make, c, false);

  auto* sidon = app.add_subcommand("sidon", "generate a Sidon set");
  sidon->add_option("--count", count)->required()->check(CLI::NonNegativeNumber);
  sidon->add_option("--strategy", strategy)->check(CLI::IsMember({"greedy", "powers-of-two"}));

  auto* plan = app.add_subcommand("plan", "plan a spinal sequence over involutions");
  plan->add_option("--base", base_files)->required();
  plan->add_option("--strategy", strategy)->check(CLI::IsMember({"greedy", "powers-of-two"}));
  plan->add_option("-o,--out", out_path, "write an alpha file and its element files");

  auto* verify = app.add_subcommand("verify", "run identity checks");
  verify->add_option("which", which)
      ->required()
      ->check(CLI::IsMember({"all", "eq2", "eq3", "trick", "isolation", "involutions",
                             "maximal", "en", "abelianization"}));
  verify->add_option("-n,--degree", degrees, "degrees (repeatable)");
  verify->add_option("--kmax", grid.k_max);
  verify->add_option("--random", grid.random_count);
  verify->add_option("--depth", grid.random_depth);
  verify->add_option("--seed", grid.seed);
  verify->add_option("--format", c.format)->check(CLI::IsMember({"lines", "tsv"}));

  auto* ball = app.add_subcommand("ball", "grow a ball in the Cayley graph");
  ball->add_option("--gens", gens_path, "generator manifest")->required();
  ball->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  ball->add_option("--cap", cap);
  ball->add_option("--workers", workers);
  ball->add_option("--out", out_path);

  auto* find = app.add_subcommand("find", "shortest word for an element");
  find->add_option("--gens", gens_path, "generator manifest")->required();
  find->add_option("--target", target_path, "element file")->required();
  find->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  find->add_option("--cap", cap);

  auto* dotc = app.add_subcommand("dot", "render an element as Graphviz");
  dotc->add_option("-e,--expr", expr)->required();
  dotc->add_option("-o,--out", out_path);
  add_common(dotc, c);

  CLI11_PARSE(app, argc, argv);

  try {
    auto element = [&] { return vn::eval_expression(expr, environment(c)); };

    if (*canon) {
      print_element(vn::load_element(file), c.fmt());
    } else if (*eval) {
      print_element(element(), c.fmt());
    } else if (*apply) {
      auto g = element();
      std::cout << vn::to_string(vn::apply_word(g, vn::parse_word(word_text, g.alphabet())))
                << '\n';
    } else if (*point) {
      auto g = element();
      std::cout << vn::to_string(vn::apply_point(g, vn::parse_point(point_text, g.alphabet())))
                << '\n';
    } else if (*order) {
      auto k = vn::order_bounded(element(), bound);
      if (k) {
        std::cout << "Finite(" << *k << ")\n";
      } else {
        std::cout << "ExceedsBound(" << bound << ")\n";
      }
    } else if (*sign) {
      std::cout << (vn::sign(element()) == 1 ? "+1" : "-1") << '\n';
    } else if (*volume) {
      std::cout << (vn::is_volume_preserving(element()) ? "true" : "false") << '\n';
    } else if (*supp) {
      auto rep = vn::support(element());
      char sep = c.fmt() == Format::tsv ? '\t' : ' ';
      for (auto const& cone : rep.cones) {
        std::cout << vn::to_string(cone.cone) << sep;
        switch (cone.status) {
          case vn::ConeStatus::fixed:
            std::cout << "fixed";
            break;
          case vn::ConeStatus::moved:
            std::cout << "moved";
            break;
          case vn::ConeStatus::boundary:
            std::cout << "boundary" << sep << vn::to_string(*cone.fixed_point);
            break;
        }
        std::cout << '\n';
      }
    } else if (*make) {
      vn::Alphabet a(c.degree.value_or(2));
      vn::Element  g = vn::Element::identity(a);
      if (which == "sigma") {
        g = vn::make_sigma(a);
      } else if (which == "tau") {
        g = vn::make_tau(a);
      } else if (which == "t") {
        g = vn::make_t(a);
      } else {
        if (alpha_path.empty()) {
          throw vn::Error(vn::Errc::precondition, "make s needs --alpha <file>");
        }
        g = vn::make_s_alpha(vn::load_alpha(alpha_path));
      }
      if (out_path.empty()) {
        print_element(g, c.fmt());
      } else {
        vn::save_element(out_path, g);
      }
    } else if (*sidon) {
      auto s = vn::sidon_generate(count, vn::parse_sidon_strategy(strategy));
      for (std::size_t i = 0; i < s.members().size(); ++i) {
        std::cout << (i ? " " : "") << s.members()[i];
      }
      std::cout << '\n';
    } else if (*plan) {
      std::vector<vn::Element> base;
      for (auto const& f : base_files) {
        base.push_back(vn::load_element(f));
      }
      auto p = vn::plan_alpha(base, vn::parse_sidon_strategy(strategy));
      std::cout << "I =";
      for (int i : p.support.members()) {
        std::cout << ' ' << i;
      }
      std::cout << "\nN = " << p.N << "\nell = " << p.ell() << '\n';
      if (!out_path.empty()) {
        vn::save_alpha(out_path, p);
      }
    } else if (*verify) {
      if (!degrees.empty()) {
        grid.degrees = degrees;
      }
      std::vector<vn::VerificationReport> rs;
      if (which == "all") {
        rs = vn::run_all(grid);
      } else if (which == "eq2") {
        rs = vn::run_eq2(grid);
      } else if (which == "eq3") {
        rs = vn::run_eq3(grid);
      } else if (which == "trick") {
        rs = vn::run_trick(grid);
      } else if (which == "isolation") {
        rs = vn::run_isolation(grid);
      } else if (which == "involutions") {
        rs = vn::run_involutions(grid);
      } else if (which == "maximal") {
        rs = vn::run_maximal(grid);
      } else if (which == "en") {
        rs = vn::run_en(grid);
      } else {
        rs = vn::run_abelianization(grid);
      }
      bool failed = false;
      for (auto const& r : rs) {
        failed |= r.verdict == vn::Verdict::fail;
        if (c.fmt() == Format::tsv) {
          std::cout << r.name << '\t' << r.params << '\t' << verdict_text(r.verdict) << '\t'
                    << r.reason << '\n';
          continue;
        }
        std::cout << r.name << ' ' << r.params << ' ' << verdict_text(r.verdict) << '\n';
        if (r.verdict == vn::Verdict::fail) {
          std::cout << "  reason: " << r.reason << '\n';
          if (r.lhs && r.rhs) {
            std::cout << "  lhs:\n" << vn::to_string(*r.lhs) << "  rhs:\n" << vn::to_string(*r.rhs);
          }
        }
      }
      return failed ? 1 : 0;
    } else if (*ball) {
      auto gens = vn::load_generators(gens_path);
      auto t0   = std::chrono::steady_clock::now();
      auto b    = vn::grow_ball(gens, radius, cap, workers);
      auto ms   = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      for (std::size_t r = 0; r < b.sizes.size(); ++r) {
        std::cout << "radius " << r << ": " << b.sizes[r] << '\n';
      }
      if (b.truncated) {
        std::cout << "truncated at cap " << cap << '\n';
      }
      std::cerr << "grown in " << ms << " ms\n";
      if (!out_path.empty()) {
        vn::save_ball(b, out_path);
      }
    } else if (*find) {
      auto gens = vn::load_generators(gens_path);
      auto w    = vn::find_element(vn::load_element(target_path), gens, radius, cap);
      if (!w) {
        std::cout << "NotFound(" << radius << ")\n";
        return 1;
      }
      std::cout << (w->empty() ? std::string("id") : vn::to_string(*w)) << '\n';
    } else if (*dotc) {
      auto text = vn::render_dot(element());
      if (out_path.empty()) {
        std::cout << text;
      } else {
        vn::write_file(out_path, text);
      }
    }
  } catch (vn::Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
