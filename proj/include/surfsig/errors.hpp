#pragma once

#include <set>
#include <stdexcept>
#include <string>

namespace surfsig {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SURFSIG_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

SURFSIG_DEFINE_ERROR(DimensionMismatch);
SURFSIG_DEFINE_ERROR(NotSymplectic);
SURFSIG_DEFINE_ERROR(ConventionViolation);
SURFSIG_DEFINE_ERROR(UnknownName);
SURFSIG_DEFINE_ERROR(CyclicDefinition);
SURFSIG_DEFINE_ERROR(IndexOutOfRange);
SURFSIG_DEFINE_ERROR(UnknownAtlas);
SURFSIG_DEFINE_ERROR(UnknownCurve);
SURFSIG_DEFINE_ERROR(ConstraintViolation);
SURFSIG_DEFINE_ERROR(GenusTooSmall);
SURFSIG_DEFINE_ERROR(RelatorViolation);
SURFSIG_DEFINE_ERROR(IncompatibleGrouping);
SURFSIG_DEFINE_ERROR(CombinatorialMismatch);
SURFSIG_DEFINE_ERROR(MissingZeroSection);
SURFSIG_DEFINE_ERROR(BaseMismatch);
SURFSIG_DEFINE_ERROR(FormatError);

#undef SURFSIG_DEFINE_ERROR

/// Syntax error in the word DSL or one of the line-oriented file formats.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::set<std::string> expected, const std::string& found = {})
      : Error(format(line, column, expected, found)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::set<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(int line, int column, const std::set<std::string>& expected,
                            const std::string& found) {
    std::string msg = "ParseError: " + std::to_string(line) + ":" + std::to_string(column) +
                      ": expected ";
    bool first = true;
    for (const auto& e : expected) {
      msg += (first ? "" : " | ") + e;
      first = false;
    }
    if (!found.empty()) msg += ", found " + found;
    return msg;
  }

  int line_;
  int column_;
  std::set<std::string> expected_;
};

}  // namespace surfsig
