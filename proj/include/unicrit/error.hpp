#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace unicrit {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  DivisionByZero,
  FieldMismatch,
  PreconditionFailed,
  BudgetExceeded,
  OverflowBudget,
  UnsupportedField,
  Undecided,
  Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Resource caps shared by the enumeration and iteration routines.
struct Budget {
  std::uint64_t candidate_cap = 10'000'000;
  std::size_t coord_bits_cap = std::size_t{1} << 20;
};

}  // namespace unicrit
