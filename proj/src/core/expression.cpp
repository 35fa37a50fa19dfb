#include "core/expression.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <vector>

#include "core/errors.hpp"

namespace levylab {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual double eval(double u) const = 0;
};

using NodePtr = std::unique_ptr<Node>;

struct Constant : Node {
  double value;
  explicit Constant(double v) : value(v) {}
  double eval(double) const override { return value; }
};

struct Variable : Node {
  double eval(double u) const override { return u; }
};

struct Unary : Node {
  double (*fn)(double);
  NodePtr arg;
  Unary(double (*f)(double), NodePtr a) : fn(f), arg(std::move(a)) {}
  double eval(double u) const override { return fn(arg->eval(u)); }
};

struct Binary : Node {
  double (*fn)(double, double);
  NodePtr lhs, rhs;
  Binary(double (*f)(double, double), NodePtr l, NodePtr r)
      : fn(f), lhs(std::move(l)), rhs(std::move(r)) {}
  double eval(double u) const override {
    return fn(lhs->eval(u), rhs->eval(u));
  }
};

double add(double a, double b) { return a + b; }
double sub(double a, double b) { return a - b; }
double mul(double a, double b) { return a * b; }
double divide(double a, double b) { return a / b; }
double neg(double a) { return -a; }
double min2(double a, double b) { return a < b ? a : b; }
double max2(double a, double b) { return a > b ? a : b; }

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  NodePtr expression() {
    NodePtr lhs = term();
    while (true) {
      skip_ws();
      if (consume('+')) {
        lhs = std::make_unique<Binary>(add, std::move(lhs), term());
      } else if (consume('-')) {
        lhs = std::make_unique<Binary>(sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      skip_ws();
      if (consume('*')) {
        lhs = std::make_unique<Binary>(mul, std::move(lhs), factor());
      } else if (consume('/')) {
        lhs = std::make_unique<Binary>(divide, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    skip_ws();
    if (consume('^')) {
      return std::make_unique<Binary>(
          static_cast<double (*)(double, double)>(std::pow), std::move(base),
          factor());
    }
    return base;
  }

  NodePtr unary() {
    skip_ws();
    if (consume('-')) return std::make_unique<Unary>(neg, unary());
    if (consume('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return identifier();
    }
    fail("unexpected character");
  }

  NodePtr number() {
    std::size_t end = 0;
    double v;
    try {
      v = std::stod(text_.substr(pos_), &end);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += end;
    return std::make_unique<Constant>(v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "u") return std::make_unique<Variable>();
    if (name == "pi") return std::make_unique<Constant>(M_PI);
    if (name == "e") return std::make_unique<Constant>(M_E);

    skip_ws();
    expect('(');
    NodePtr first = expression();
    if (name == "pow" || name == "min" || name == "max") {
      expect(',');
      NodePtr second = expression();
      expect(')');
      double (*fn)(double, double) =
          name == "pow" ? static_cast<double (*)(double, double)>(std::pow)
          : name == "min" ? min2
                          : max2;
      return std::make_unique<Binary>(fn, std::move(first), std::move(second));
    }
    expect(')');
    double (*fn)(double) = nullptr;
    if (name == "abs") fn = std::fabs;
    else if (name == "exp") fn = std::exp;
    else if (name == "ln" || name == "log") fn = std::log;
    else if (name == "sqrt") fn = std::sqrt;
    else fail("unknown function '" + name + "'");
    return std::make_unique<Unary>(fn, std::move(first));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("density expression: " + why + " at position " +
                      std::to_string(pos_) + " in \"" + text_ + "\"");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> compile_density_expression(
    const std::string& text) {
  Parser parser(text);
  std::shared_ptr<Node> root(parser.parse().release());
  return [root](double u) { return root->eval(u); };
}

}  // namespace levylab
