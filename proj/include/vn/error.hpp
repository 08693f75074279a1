// Error type shared by every vn component.

#pragma once

#include <stdexcept>
#include <string>

namespace vn {

  enum class Errc {
    malformed_word,
    bad_alphabet,
    not_a_partition,
    not_a_bijection,
    arity,
    level_too_small,
    needs_longer_word,
    alphabet_mismatch,
    sign_undefined,
    empty_period,
    order,
    construction_failed,
    precondition,
    parse,
    unknown_name,
    io,
  };

  class Error : public std::runtime_error {
   public:
    Error(Errc code, std::string const& what)
        : std::runtime_error(what), _code(code) {}

    Errc code() const noexcept {
      return _code;
    }

   private:
    Errc _code;
  };

}  // namespace vn
