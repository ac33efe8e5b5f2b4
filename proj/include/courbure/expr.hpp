#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace courbure {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tiny arithmetic expressions over the chart variables theta, t, rho:
// numbers, + - * / ^, parentheses, and the functions sin, cos, tan,
// sinh, cosh, tanh, sech, exp, log, sqrt, abs.
class Expr {
public:
  static Expr parse(const std::string& text);
  double eval(double theta, double t, double rho) const;

  struct Node;

private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace courbure
