#ifndef UALGEO_ERROR_HPP_
#define UALGEO_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ualgeo {

  enum class ErrorKind {
    syntax_error,
    unknown_symbol,
    arity_mismatch,
    variable_out_of_range,
    signature_mismatch,
    limit_exceeded,
    entry_out_of_range,
    missing_table,
    empty_carrier,
    empty_subuniverse,
    not_a_congruence,
    bad_partition,
    algebra_mismatch,
    index_out_of_range,
    empty_family,
    context_mismatch,
    hypothesis_not_established,
    improper_filter,
    out_of_range,
    incomparable_free_algebra,
    invalid_input,
  };

  std::string_view to_string(ErrorKind kind) noexcept;

  // Every failure raised by the library carries one of the kinds above so that
  // callers (the CLI in particular) can map it onto an exit code.
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          _kind(kind) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

  [[noreturn]] inline void fail(ErrorKind kind, std::string const& what) {
    throw Error(kind, what);
  }

}  // namespace ualgeo

#endif  // UALGEO_ERROR_HPP_
