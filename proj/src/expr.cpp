#include "courbure/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <vector>

namespace courbure {

struct Expr::Node {
  std::function<double(double, double, double)> fn;
};

namespace {

using EvalFn = std::function<double(double, double, double)>;

class Parser {
public:
  explicit Parser(const std::string& text) : s_(text) {}

  EvalFn parse() {
    EvalFn e = sum();
    skip_ws();
    if (pos_ != s_.size())
      throw ExprError("unexpected trailing input at position " +
                      std::to_string(pos_));
    return e;
  }

private:
  EvalFn sum() {
    EvalFn left = product();
    for (;;) {
      skip_ws();
      if (consume('+')) {
        EvalFn right = product();
        left = [left, right](double a, double b, double c) {
          return left(a, b, c) + right(a, b, c);
        };
      } else if (consume('-')) {
        EvalFn right = product();
        left = [left, right](double a, double b, double c) {
          return left(a, b, c) - right(a, b, c);
        };
      } else {
        return left;
      }
    }
  }

  EvalFn product() {
    EvalFn left = unary();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        EvalFn right = unary();
        left = [left, right](double a, double b, double c) {
          return left(a, b, c) * right(a, b, c);
        };
      } else if (consume('/')) {
        EvalFn right = unary();
        left = [left, right](double a, double b, double c) {
          return left(a, b, c) / right(a, b, c);
        };
      } else {
        return left;
      }
    }
  }

  EvalFn unary() {
    skip_ws();
    if (consume('-')) {
      EvalFn inner = unary();
      return [inner](double a, double b, double c) { return -inner(a, b, c); };
    }
    consume('+');
    return power();
  }

  EvalFn power() {
    EvalFn base = atom();
    skip_ws();
    if (consume('^')) {
      EvalFn exp = unary();
      return [base, exp](double a, double b, double c) {
        return std::pow(base(a, b, c), exp(a, b, c));
      };
    }
    return base;
  }

  EvalFn atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ExprError("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      EvalFn inner = sum();
      skip_ws();
      if (!consume(')')) throw ExprError("missing closing parenthesis");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ExprError(std::string("unexpected character '") + c + "'");
  }

  EvalFn number() {
    std::size_t end = 0;
    double v;
    try {
      v = std::stod(s_.substr(pos_), &end);
    } catch (const std::exception&) {
      throw ExprError("bad number at position " + std::to_string(pos_));
    }
    pos_ += end;
    return [v](double, double, double) { return v; };
  }

  EvalFn identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
            s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "theta") return [](double a, double, double) { return a; };
    if (name == "t") return [](double, double b, double) { return b; };
    if (name == "rho") return [](double, double, double c) { return c; };
    if (name == "pi")
      return [](double, double, double) { return std::numbers::pi; };

    static const std::vector<std::pair<std::string, double (*)(double)>> fns =
        {{"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
         {"sinh", std::sinh}, {"cosh", std::cosh}, {"tanh", std::tanh},
         {"exp", std::exp},   {"log", std::log},   {"sqrt", std::sqrt},
         {"abs", std::fabs}};
    skip_ws();
    if (!consume('(')) throw ExprError("unknown variable '" + name + "'");
    EvalFn arg = sum();
    skip_ws();
    if (!consume(')')) throw ExprError("missing ')' after " + name);
    if (name == "sech")
      return [arg](double a, double b, double c) {
        return 1.0 / std::cosh(arg(a, b, c));
      };
    for (const auto& [fname, f] : fns)
      if (fname == name)
        return [f, arg](double a, double b, double c) {
          return f(arg(a, b, c));
        };
    throw ExprError("unknown function '" + name + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool consume(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(const std::string& text) {
  Parser p(text);
  auto node = std::make_shared<Node>();
  node->fn = p.parse();
  return Expr(std::move(node));
}

double Expr::eval(double theta, double t, double rho) const {
  return root_->fn(theta, t, rho);
}

}  // namespace courbure
