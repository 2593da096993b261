#include "focklab/symbols.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <utility>

namespace focklab {

Symbol Symbol::constant(Complex c) {
  Symbol s;
  s.kind = Kind::radial;
  s.eval = [c](Complex) { return c; };
  s.radial_profile = [c](double) { return c.real(); };
  s.name = "constant";
  return s;
}

Symbol Symbol::from_function(std::function<Complex(Complex)> f, std::string name) {
  Symbol s;
  s.kind = Kind::generic;
  s.eval = std::move(f);
  s.name = std::move(name);
  return s;
}

Symbol Symbol::radial(std::function<double(double)> profile, std::string name) {
  Symbol s;
  s.kind = Kind::radial;
  s.radial_profile = profile;
  s.eval = [profile](Complex z) { return Complex(profile(std::abs(z)), 0.0); };
  s.name = std::move(name);
  return s;
}

Symbol Symbol::indicator_ball(Complex center, double radius) {
  if (!(radius > 0.0)) throw InvalidParameter("indicator radius must be positive");
  Symbol s;
  s.kind = Kind::indicator;
  s.center = center;
  s.radius = radius;
  s.eval = [center, radius](Complex z) {
    return std::abs(z - center) <= radius ? Complex(1.0) : Complex(0.0);
  };
  if (std::abs(center) == 0.0) {
    s.radial_profile = [radius](double r) { return r <= radius ? 1.0 : 0.0; };
  }
  s.name = "indicator";
  return s;
}

namespace {

struct Node {
  enum class Tag { constant, var, conj_, abs2_, exp_, indicator, add, sub, mul, neg };
  Tag tag = Tag::constant;
  Complex value = 0.0;
  Complex center = 0.0;
  double radius = 0.0;
  std::vector<std::shared_ptr<Node>> kids;

  bool radial() const {
    switch (tag) {
      case Tag::constant:
        return true;
      case Tag::var:
        return false;
      case Tag::conj_:
        return kids[0]->radial();
      case Tag::abs2_: {
        const Node& k = *kids[0];
        if (k.tag == Tag::var) return true;
        if (k.tag == Tag::conj_ && k.kids[0]->tag == Tag::var) return true;
        return k.radial();
      }
      case Tag::exp_:
      case Tag::neg:
        return kids[0]->radial();
      case Tag::indicator:
        return std::abs(center) == 0.0;
      case Tag::add:
      case Tag::sub:
      case Tag::mul:
        return kids[0]->radial() && kids[1]->radial();
    }
    return false;
  }

  Complex eval(Complex z) const {
    switch (tag) {
      case Tag::constant:
        return value;
      case Tag::var:
        return z;
      case Tag::conj_:
        return std::conj(kids[0]->eval(z));
      case Tag::abs2_:
        return std::norm(kids[0]->eval(z));
      case Tag::exp_:
        return std::exp(kids[0]->eval(z));
      case Tag::neg:
        return -kids[0]->eval(z);
      case Tag::indicator:
        return std::abs(z - center) <= radius ? Complex(1.0) : Complex(0.0);
      case Tag::add:
        return kids[0]->eval(z) + kids[1]->eval(z);
      case Tag::sub:
        return kids[0]->eval(z) - kids[1]->eval(z);
      case Tag::mul:
        return kids[0]->eval(z) * kids[1]->eval(z);
    }
    return 0.0;
  }
};

using NodePtr = std::shared_ptr<Node>;

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_space();
    if (pos_ != text_.size())
      throw InvalidParameter("unexpected trailing input in symbol expression: '" +
                             text_.substr(pos_) + "'");
    return e;
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c))
      throw InvalidParameter(std::string("expected '") + c + "' in symbol expression");
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (consume('+')) {
        NodePtr n = std::make_shared<Node>();
        n->tag = Node::Tag::add;
        n->kids = {lhs, term()};
        lhs = n;
      } else if (consume('-')) {
        NodePtr n = std::make_shared<Node>();
        n->tag = Node::Tag::sub;
        n->kids = {lhs, term()};
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (consume('*')) {
      NodePtr n = std::make_shared<Node>();
      n->tag = Node::Tag::mul;
      n->kids = {lhs, factor()};
      lhs = n;
    }
    return lhs;
  }

  double number() {
    skip_space();
    size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(text_.substr(pos_), &consumed);
    } catch (const std::exception&) {
      throw InvalidParameter("expected a number in symbol expression at position " +
                             std::to_string(pos_));
    }
    pos_ += consumed;
    return v;
  }

  NodePtr factor() {
    skip_space();
    if (consume('-')) {
      NodePtr n = std::make_shared<Node>();
      n->tag = Node::Tag::neg;
      n->kids = {factor()};
      return n;
    }
    if (consume('(')) {
      NodePtr e = expression();
      expect(')');
      return e;
    }
    if (pos_ >= text_.size())
      throw InvalidParameter("symbol expression ended unexpectedly");

    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      NodePtr n = std::make_shared<Node>();
      n->tag = Node::Tag::constant;
      n->value = number();
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      const std::string word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "z") {
        NodePtr n = std::make_shared<Node>();
        n->tag = Node::Tag::var;
        return n;
      }
      if (word == "i") {
        NodePtr n = std::make_shared<Node>();
        n->tag = Node::Tag::constant;
        n->value = Complex(0.0, 1.0);
        return n;
      }
      if (word == "conj" || word == "abs2" || word == "exp") {
        expect('(');
        NodePtr inner = expression();
        expect(')');
        NodePtr n = std::make_shared<Node>();
        n->tag = word == "conj" ? Node::Tag::conj_
                                : (word == "abs2" ? Node::Tag::abs2_ : Node::Tag::exp_);
        n->kids = {inner};
        return n;
      }
      if (word == "indicator") {
        expect('(');
        const double cx = number();
        expect(',');
        const double cy = number();
        expect(',');
        const double r = number();
        expect(')');
        if (!(r > 0.0))
          throw InvalidParameter("indicator radius must be positive");
        NodePtr n = std::make_shared<Node>();
        n->tag = Node::Tag::indicator;
        n->center = Complex(cx, cy);
        n->radius = r;
        return n;
      }
      throw InvalidParameter("unknown name '" + word + "' in symbol expression");
    }
    throw InvalidParameter(std::string("unexpected character '") + c +
                           "' in symbol expression");
  }
};

}  // namespace

Symbol parse_symbol(const std::string& text) {
  NodePtr root = Parser(text).parse();

  if (root->tag == Node::Tag::indicator)
    return Symbol::indicator_ball(root->center, root->radius);

  Symbol s;
  s.name = text;
  s.eval = [root](Complex z) { return root->eval(z); };
  if (root->radial()) {
    s.kind = Symbol::Kind::radial;
    s.radial_profile = [root](double r) { return root->eval(Complex(r, 0.0)).real(); };
  }
  return s;
}

std::vector<std::pair<std::string, std::string>> preset_catalog() {
  return {
      {"identity", "identity matrix on the truncated space"},
      {"zero", "zero matrix"},
      {"unit-ball", "compression of the indicator of the unit disk"},
      {"point-mass", "compression of the unit point mass at the origin"},
      {"coord", "compression of the symbol z"},
      {"coord-conj", "compression of the symbol conj(z)"},
      {"abs2", "compression of the symbol abs2(z)"},
      {"gaussian", "compression of exp(-abs2(z))"},
  };
}

}  // namespace focklab
