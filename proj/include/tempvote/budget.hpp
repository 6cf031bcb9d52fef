#pragma once

#include <stdexcept>
#include <string>

namespace tempvote {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& quantity, double required, double limit);

  double required() const { return required_; }
  double limit() const { return limit_; }

 private:
  double required_;
  double limit_;
};

// Guard for the exponential-size solvers. The CLI maps the TV_BUDGET
// environment variable onto this; library callers pass it explicitly.
struct Budget {
  double limit = 1e7;

  void require(const std::string& quantity, double amount) const;
};

}  // namespace tempvote
