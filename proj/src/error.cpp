#include "ualgeo/error.hpp"

namespace ualgeo {

  std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::syntax_error:
        return "SyntaxError";
      case ErrorKind::unknown_symbol:
        return "UnknownSymbol";
      case ErrorKind::arity_mismatch:
        return "ArityMismatch";
      case ErrorKind::variable_out_of_range:
        return "VariableOutOfRange";
      case ErrorKind::signature_mismatch:
        return "SignatureMismatch";
      case ErrorKind::limit_exceeded:
        return "LimitExceeded";
      case ErrorKind::entry_out_of_range:
        return "EntryOutOfRange";
      case ErrorKind::missing_table:
        return "MissingTable";
      case ErrorKind::empty_carrier:
        return "EmptyCarrier";
      case ErrorKind::empty_subuniverse:
        return "EmptySubuniverse";
      case ErrorKind::not_a_congruence:
        return "NotACongruence";
      case ErrorKind::bad_partition:
        return "BadPartition";
      case ErrorKind::algebra_mismatch:
        return "AlgebraMismatch";
      case ErrorKind::index_out_of_range:
        return "IndexOutOfRange";
      case ErrorKind::empty_family:
        return "EmptyFamily";
      case ErrorKind::context_mismatch:
        return "ContextMismatch";
      case ErrorKind::hypothesis_not_established:
        return "HypothesisNotEstablished";
      case ErrorKind::improper_filter:
        return "ImproperFilter";
      case ErrorKind::out_of_range:
        return "OutOfRange";
      case ErrorKind::incomparable_free_algebra:
        return "IncomparableFreeAlgebra";
      case ErrorKind::invalid_input:
        return "InvalidInput";
    }
    return "Error";
  }

}  // namespace ualgeo
