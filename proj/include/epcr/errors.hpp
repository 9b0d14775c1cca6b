#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace epcr {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Raised when a solver would need more cells than its configured budget.
// `required()` is the exact demand as a decimal string since it may exceed 64 bits.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(std::string required, std::string budget, const std::string& what)
      : std::runtime_error("instance too large: " + what + " needs " + required +
                           " (budget " + budget + ")"),
        required_(std::move(required)), budget_(std::move(budget)) {}

  const std::string& required() const noexcept { return required_; }
  const std::string& budget() const noexcept { return budget_; }

private:
  std::string required_;
  std::string budget_;
};

class IllegalMove : public std::runtime_error {
public:
  IllegalMove(unsigned long long round, std::string mover, const std::string& what)
      : std::runtime_error("illegal " + mover + " move in round " + std::to_string(round) +
                           ": " + what),
        round_(round), mover_(std::move(mover)) {}

  unsigned long long round() const noexcept { return round_; }
  const std::string& mover() const noexcept { return mover_; }

private:
  unsigned long long round_;
  std::string mover_;
};

}  // namespace epcr
