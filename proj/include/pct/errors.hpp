#pragma once

#include <stdexcept>
#include <string>

namespace pct {

// Base type for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error while reading a netlist, AIGER, DIMACS or test-set file.
// Positions are 1-based; col == 0 means "whole line".
class ParseError : public Error {
public:
  ParseError(std::string what_arg, unsigned line, unsigned col = 0)
      : Error(format(what_arg, line, col)), line_(line), col_(col) {}

  unsigned line() const { return line_; }
  unsigned col() const { return col_; }

private:
  static std::string format(const std::string& msg, unsigned line, unsigned col) {
    std::string s = "parse error at line " + std::to_string(line);
    if (col != 0) s += ", col " + std::to_string(col);
    return s + ": " + msg;
  }
  unsigned line_;
  unsigned col_;
};

// Structural violation detected while validating a circuit, formula or cut.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A resource budget (conflicts, SSA states, search nodes) ran out.
// Never silently converted into a verdict; callers tag the stage.
class BudgetExceededError : public Error {
public:
  BudgetExceededError(std::string stage, const std::string& msg)
      : Error(stage + ": " + msg), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

  // Re-wrap with an outer stage tag while keeping the original message.
  BudgetExceededError with_stage(const std::string& outer) const {
    return BudgetExceededError(outer + "/" + stage_,
                               std::string(what()).substr(stage_.size() + 2));
  }

private:
  std::string stage_;
};

}  // namespace pct
