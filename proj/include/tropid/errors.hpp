#pragma once

#include <stdexcept>

namespace tropid {

/// An operation was called outside its stated domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed certificate contradicts a proven statement. Never expected;
/// raised so that it cannot pass unnoticed.
class FalsificationAlarm : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A search exhausted its configured budget before deciding.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tropid
