#include "unicrit/error.hpp"

namespace unicrit {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OverflowBudget: return "OverflowBudget";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace unicrit
