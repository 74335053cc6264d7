#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace plumb {

// Machine-readable failure: `code` is a stable identifier, `witness` is a
// short human/JSON-friendly fragment pointing at the offending datum.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, std::string witness = "")
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        witness_(std::move(witness)) {}

  const std::string& code() const { return code_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string code_;
  std::string witness_;
};

#define PLUMB_ERROR_TYPE(NAME)                                              \
  class NAME : public Error {                                               \
   public:                                                                  \
    explicit NAME(const std::string& message, std::string witness = "")    \
        : Error(#NAME, message, std::move(witness)) {}                      \
  }

PLUMB_ERROR_TYPE(SyntaxError);
PLUMB_ERROR_TYPE(NotATree);
PLUMB_ERROR_TYPE(NotNegativeDefinite);
PLUMB_ERROR_TYPE(DuplicateVertex);
PLUMB_ERROR_TYPE(UnknownVertex);
PLUMB_ERROR_TYPE(NotAnEdge);
PLUMB_ERROR_TYPE(IndexMismatch);
PLUMB_ERROR_TYPE(NotInLprime);
PLUMB_ERROR_TYPE(BoxTooLarge);
PLUMB_ERROR_TYPE(EmptyImage);
PLUMB_ERROR_TYPE(SupportTooLarge);
PLUMB_ERROR_TYPE(BlowupBudgetExceeded);
PLUMB_ERROR_TYPE(TvSearchExceeded);
PLUMB_ERROR_TYPE(AssumptionViolated);

#undef PLUMB_ERROR_TYPE

}  // namespace plumb
