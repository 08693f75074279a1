// Expressions over named elements:
//
//   expr    := term ('*' term)*
//   term    := atom postfix*
//   postfix := '^-1' | '^' integer | '^' atom
//   atom    := name | '[' expr ',' expr ']' | '(' expr ')'
//            | 'dot(' cycles ')' | 'embed(' word ',' expr ')' | 's(' path ')'
//
// `*` is the group product (right factor acts first), `g^h` is h^-1 g h and
// `[g,h]` is g h g^-1 h^-1. Postfix binds tighter than `*`.

#pragma once

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vn/constructions.hpp"
#include "vn/element.hpp"
#include "vn/error.hpp"
#include "vn/words.hpp"

namespace vn {

  struct Expr;
  using ExprPtr = std::shared_ptr<Expr const>;

  namespace ast {
    struct Name {
      std::string name;
    };
    struct Product {
      ExprPtr lhs, rhs;
    };
    struct Inverse {
      ExprPtr arg;
    };
    struct Power {
      ExprPtr   arg;
      long long exponent;
    };
    struct Conjugate {
      ExprPtr arg, by;
    };
    struct Commutator {
      ExprPtr lhs, rhs;
    };
    struct Dot {
      std::string cycles;
    };
    struct Embed {
      Word    cone;
      ExprPtr arg;
    };
    struct SAlpha {
      std::string path;
    };
  }  // namespace ast

  struct Expr {
    std::variant<ast::Name,
                 ast::Product,
                 ast::Inverse,
                 ast::Power,
                 ast::Conjugate,
                 ast::Commutator,
                 ast::Dot,
                 ast::Embed,
                 ast::SAlpha>
        node;
  };

  template <typename T>
  ExprPtr make_expr(T node) {
    return std::make_shared<Expr const>(Expr{std::move(node)});
  }

  ////////////////////////////////////////////////////////////////////////
  // Parser
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    class ExprParser {
     public:
      explicit ExprParser(std::string_view text) : _text(text) {}

      ExprPtr parse() {
        auto e = expr();
        skip();
        if (_pos != _text.size()) {
          throw error("unexpected `" + std::string(1, _text[_pos]) + "`");
        }
        return e;
      }

     private:
      Error error(std::string const& msg) const {
        return Error(Errc::parse,
                     "syntax error at position " + std::to_string(_pos) + ": "
                         + msg);
      }

      void skip() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      bool accept(char c) {
        skip();
        if (_pos < _text.size() && _text[_pos] == c) {
          ++_pos;
          return true;
        }
        return false;
      }

      void expect(char c) {
        if (!accept(c)) {
          throw error(std::string("expected `") + c + "`");
        }
      }

      bool peek_digit_or_minus() {
        skip();
        return _pos < _text.size()
               && (_text[_pos] == '-'
                   || std::isdigit(static_cast<unsigned char>(_text[_pos])));
      }

      long long integer() {
        skip();
        std::size_t start = _pos;
        if (_pos < _text.size() && _text[_pos] == '-') {
          ++_pos;
        }
        std::size_t digits = _pos;
        while (_pos < _text.size()
               && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
        if (digits == _pos) {
          throw error("expected an integer");
        }
        long long value = 0;
        auto      res   = std::from_chars(
            _text.data() + start, _text.data() + _pos, value);
        if (res.ec != std::errc()) {
          throw error("integer out of range");
        }
        return value;
      }

      std::string identifier() {
        skip();
        std::size_t start = _pos;
        while (_pos < _text.size()
               && (std::isalnum(static_cast<unsigned char>(_text[_pos]))
                   || _text[_pos] == '_')) {
          ++_pos;
        }
        if (start == _pos
            || std::isdigit(static_cast<unsigned char>(_text[start]))) {
          _pos = start;
          throw error("expected a name");
        }
        return std::string(_text.substr(start, _pos - start));
      }

      // raw text up to the parenthesis closing the one just consumed
      std::string balanced() {
        std::size_t start = _pos;
        int         depth = 1;
        while (_pos < _text.size()) {
          if (_text[_pos] == '(') {
            ++depth;
          } else if (_text[_pos] == ')' && --depth == 0) {
            auto inner = _text.substr(start, _pos - start);
            ++_pos;
            return std::string(detail::trim(inner));
          }
          ++_pos;
        }
        throw error("unbalanced parentheses");
      }

      ExprPtr expr() {
        auto lhs = term();
        while (accept('*')) {
          lhs = make_expr(ast::Product{lhs, term()});
        }
        return lhs;
      }

      ExprPtr term() {
        auto e = atom();
        while (accept('^')) {
          if (peek_digit_or_minus()) {
            long long k = integer();
            e = k == -1 ? make_expr(ast::Inverse{e})
                        : make_expr(ast::Power{e, k});
          } else {
            e = make_expr(ast::Conjugate{e, atom()});
          }
        }
        return e;
      }

      ExprPtr atom() {
        if (accept('(')) {
          auto e = expr();
          expect(')');
          return e;
        }
        if (accept('[')) {
          auto lhs = expr();
          expect(',');
          auto rhs = expr();
          expect(']');
          return make_expr(ast::Commutator{lhs, rhs});
        }
        auto name = identifier();
        if (name == "dot" && accept('(')) {
          return make_expr(ast::Dot{balanced()});
        }
        if (name == "s" && accept('(')) {
          auto path = balanced();
          if (path.empty()) {
            throw error("s(...) needs an alpha file");
          }
          return make_expr(ast::SAlpha{path});
        }
        if (name == "embed" && accept('(')) {
          skip();
          std::size_t start = _pos;
          while (_pos < _text.size() && _text[_pos] != ','
                 && !std::isspace(static_cast<unsigned char>(_text[_pos]))) {
            ++_pos;
          }
          Word cone;
          try {
            cone = parse_word(_text.substr(start, _pos - start));
          } catch (Error const& e) {
            _pos = start;
            throw error(e.what());
          }
          expect(',');
          auto arg = expr();
          expect(')');
          return make_expr(ast::Embed{cone, arg});
        }
        return make_expr(ast::Name{name});
      }

      std::string_view _text;
      std::size_t      _pos = 0;
    };
  }  // namespace detail

  inline ExprPtr parse_expression(std::string_view text) {
    return detail::ExprParser(text).parse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Printer
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline bool is_atom(Expr const& e) {
      return std::holds_alternative<ast::Name>(e.node)
             || std::holds_alternative<ast::Commutator>(e.node)
             || std::holds_alternative<ast::Dot>(e.node)
             || std::holds_alternative<ast::Embed>(e.node)
             || std::holds_alternative<ast::SAlpha>(e.node);
    }
  }  // namespace detail

  //! Minimal parenthesisation; parse(to_string(e)) rebuilds e.
  inline std::string to_string(Expr const& e) {
    auto operand = [](Expr const& x) {
      return std::holds_alternative<ast::Product>(x.node)
                 ? "(" + to_string(x) + ")"
                 : to_string(x);
    };
    auto conjugator = [](Expr const& x) {
      return detail::is_atom(x) ? to_string(x) : "(" + to_string(x) + ")";
    };
    return std::visit(
        [&](auto const& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::Name>) {
            return n.name;
          } else if constexpr (std::is_same_v<T, ast::Product>) {
            return to_string(*n.lhs) + " * " + operand(*n.rhs);
          } else if constexpr (std::is_same_v<T, ast::Inverse>) {
            return operand(*n.arg) + "^-1";
          } else if constexpr (std::is_same_v<T, ast::Power>) {
            return operand(*n.arg) + "^" + std::to_string(n.exponent);
          } else if constexpr (std::is_same_v<T, ast::Conjugate>) {
            return operand(*n.arg) + "^" + conjugator(*n.by);
          } else if constexpr (std::is_same_v<T, ast::Commutator>) {
            return "[" + to_string(*n.lhs) + ", " + to_string(*n.rhs) + "]";
          } else if constexpr (std::is_same_v<T, ast::Dot>) {
            return "dot(" + n.cycles + ")";
          } else if constexpr (std::is_same_v<T, ast::Embed>) {
            return "embed(" + vn::to_string(n.cone) + ", " + to_string(*n.arg)
                   + ")";
          } else {
            return "s(" + n.path + ")";
          }
        },
        e.node);
  }

  //! Structural equality of expression trees.
  inline bool same_expr(Expr const& x, Expr const& y) {
    if (x.node.index() != y.node.index()) {
      return false;
    }
    return std::visit(
        [&](auto const& a) -> bool {
          using T       = std::decay_t<decltype(a)>;
          auto const& b = std::get<T>(y.node);
          if constexpr (std::is_same_v<T, ast::Name>) {
            return a.name == b.name;
          } else if constexpr (std::is_same_v<T, ast::Product>
                               || std::is_same_v<T, ast::Commutator>) {
            return same_expr(*a.lhs, *b.lhs) && same_expr(*a.rhs, *b.rhs);
          } else if constexpr (std::is_same_v<T, ast::Inverse>) {
            return same_expr(*a.arg, *b.arg);
          } else if constexpr (std::is_same_v<T, ast::Power>) {
            return a.exponent == b.exponent && same_expr(*a.arg, *b.arg);
          } else if constexpr (std::is_same_v<T, ast::Conjugate>) {
            return same_expr(*a.arg, *b.arg) && same_expr(*a.by, *b.by);
          } else if constexpr (std::is_same_v<T, ast::Dot>) {
            return a.cycles == b.cycles;
          } else if constexpr (std::is_same_v<T, ast::Embed>) {
            return a.cone == b.cone && same_expr(*a.arg, *b.arg);
          } else {
            return a.path == b.path;
          }
        },
        x.node);
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  //! Names available to expressions. `sigma`, `tau`, `t` and `id` are always
  //! bound; further names (such as `s`) are added by the caller.
  class Environment {
   public:
    explicit Environment(Alphabet a, std::filesystem::path base_dir = {})
        : _alphabet(a), _base_dir(std::move(base_dir)) {
      _names.emplace("sigma", make_sigma(a));
      _names.emplace("tau", make_tau(a));
      _names.emplace("t", make_t(a));
      _names.emplace("id", Element::identity(a));
    }

    Alphabet alphabet() const noexcept {
      return _alphabet;
    }

    void bind(std::string name, Element g) {
      require_same_alphabet(g, _names.at("id"));
      _names.insert_or_assign(std::move(name), std::move(g));
    }

    Element const& lookup(std::string const& name) const {
      auto it = _names.find(name);
      if (it == _names.end()) {
        throw Error(Errc::unknown_name, "unknown name `" + name + "`");
      }
      return it->second;
    }

    std::filesystem::path resolve(std::string const& path) const {
      std::filesystem::path p(path);
      return p.is_relative() && !_base_dir.empty() ? _base_dir / p : p;
    }

   private:
    Alphabet                       _alphabet;
    std::filesystem::path          _base_dir;
    std::map<std::string, Element> _names;
  };

  inline Element eval_expression(Expr const& e, Environment const& env) {
    return std::visit(
        [&](auto const& n) -> Element {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ast::Name>) {
            return env.lookup(n.name);
          } else if constexpr (std::is_same_v<T, ast::Product>) {
            return compose(eval_expression(*n.lhs, env),
                           eval_expression(*n.rhs, env));
          } else if constexpr (std::is_same_v<T, ast::Inverse>) {
            return invert(eval_expression(*n.arg, env));
          } else if constexpr (std::is_same_v<T, ast::Power>) {
            return power(eval_expression(*n.arg, env), n.exponent);
          } else if constexpr (std::is_same_v<T, ast::Conjugate>) {
            return conjugate(eval_expression(*n.arg, env),
                             eval_expression(*n.by, env));
          } else if constexpr (std::is_same_v<T, ast::Commutator>) {
            return commutator(eval_expression(*n.lhs, env),
                              eval_expression(*n.rhs, env));
          } else if constexpr (std::is_same_v<T, ast::Dot>) {
            return dot(Permutation::parse_cycles(n.cycles, env.alphabet()));
          } else if constexpr (std::is_same_v<T, ast::Embed>) {
            return embed(n.cone, eval_expression(*n.arg, env));
          } else {
            auto plan = load_alpha(env.resolve(n.path).string());
            if (plan.alphabet != env.alphabet()) {
              throw Error(Errc::alphabet_mismatch,
                          "alpha file `" + n.path + "` has another degree");
            }
            return make_s_alpha(plan);
          }
        },
        e.node);
  }

  inline Element eval_expression(std::string_view text, Environment const& env) {
    return eval_expression(*parse_expression(text), env);
  }

}  // namespace vn
