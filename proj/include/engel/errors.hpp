#pragma once

#include <stdexcept>
#include <string>

namespace engel {

// Every failure raised by the library derives from Error so the CLI can map
// kinds onto exit codes in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ENGEL_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

ENGEL_DEFINE_ERROR(DivisionByZero)
ENGEL_DEFINE_ERROR(DimError)
ENGEL_DEFINE_ERROR(ContextError)
ENGEL_DEFINE_ERROR(ArityError)
ENGEL_DEFINE_ERROR(ConfigError)
ENGEL_DEFINE_ERROR(PolarizationError)
ENGEL_DEFINE_ERROR(NotAnIdeal)
ENGEL_DEFINE_ERROR(BudgetError)
ENGEL_DEFINE_ERROR(Inconclusive)
ENGEL_DEFINE_ERROR(VersionError)

#undef ENGEL_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace engel
