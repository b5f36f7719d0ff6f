#include "qdiff/parser.hpp"

#include <cctype>

namespace qdiff {

namespace {

struct Token {
  enum class Kind { Integer, Name, Op, End };
  Kind kind;
  std::string text;
  long value = 0;
  size_t pos = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& cur() const { return cur_; }

  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    cur_.pos = i_;
    if (i_ >= s_.size()) {
      cur_ = {Token::Kind::End, "", 0, i_};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string text = s_.substr(start, i_ - start);
      cur_ = {Token::Kind::Integer, text, std::stol(text), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      if (i_ < s_.size() && s_[i_] == '\'') ++i_;  // q'
      cur_ = {Token::Kind::Name, s_.substr(start, i_ - start), 0, start};
      return;
    }
    if (std::string("+-*/^()=,").find(c) != std::string::npos) {
      cur_ = {Token::Kind::Op, std::string(1, c), 0, i_};
      ++i_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

private:
  const std::string& s_;
  size_t i_ = 0;
  Token cur_;
};

std::unique_ptr<ExprAST> make_node(ExprAST::Kind k) {
  auto n = std::make_unique<ExprAST>();
  n->kind = k;
  return n;
}

class Parser {
public:
  explicit Parser(const std::string& s) : lex_(s) {}

  std::unique_ptr<ExprAST> parse_full() {
    auto e = parse_expr();
    if (lex_.cur().kind != Token::Kind::End)
      throw ParseError("trailing input '" + lex_.cur().text + "'", lex_.cur().pos);
    return e;
  }

  std::unique_ptr<ExprAST> parse_expr() {
    std::unique_ptr<ExprAST> e;
    if (is_op("-")) {
      lex_.advance();
      auto n = make_node(ExprAST::Kind::Neg);
      n->lhs = parse_term();
      e = std::move(n);
    } else {
      e = parse_term();
    }
    while (is_op("+") || is_op("-")) {
      bool plus = lex_.cur().text == "+";
      lex_.advance();
      auto n = make_node(plus ? ExprAST::Kind::Add : ExprAST::Kind::Sub);
      n->lhs = std::move(e);
      n->rhs = parse_term();
      e = std::move(n);
    }
    return e;
  }

  bool at_end() const { return lex_.cur().kind == Token::Kind::End; }
  const Token& cur() const { return lex_.cur(); }
  void advance() { lex_.advance(); }
  bool is_op(const char* t) const {
    return lex_.cur().kind == Token::Kind::Op && lex_.cur().text == t;
  }

private:
  std::unique_ptr<ExprAST> parse_term() {
    auto e = parse_factor();
    while (is_op("*") || is_op("/")) {
      bool mul = lex_.cur().text == "*";
      lex_.advance();
      auto n = make_node(mul ? ExprAST::Kind::Mul : ExprAST::Kind::Div);
      n->lhs = std::move(e);
      n->rhs = parse_factor();
      e = std::move(n);
    }
    return e;
  }

  std::unique_ptr<ExprAST> parse_factor() {
    auto base = parse_atom();
    if (is_op("^")) {
      lex_.advance();
      long sign = 1;
      if (is_op("-")) {
        sign = -1;
        lex_.advance();
      }
      bool parens = false;
      if (is_op("(")) {  // q^(-2)
        parens = true;
        lex_.advance();
        if (is_op("-")) {
          sign = -sign;
          lex_.advance();
        }
      }
      if (lex_.cur().kind != Token::Kind::Integer)
        throw ParseError("integer exponent expected", lex_.cur().pos);
      long v = lex_.cur().value;
      lex_.advance();
      if (parens) {
        if (!is_op(")")) throw ParseError("')' expected", lex_.cur().pos);
        lex_.advance();
      }
      auto n = make_node(ExprAST::Kind::Pow);
      n->lhs = std::move(base);
      n->value = sign * v;
      return n;
    }
    return base;
  }

  std::unique_ptr<ExprAST> parse_atom() {
    const Token& t = lex_.cur();
    if (t.kind == Token::Kind::Integer) {
      auto n = make_node(ExprAST::Kind::Integer);
      n->value = t.value;
      lex_.advance();
      return n;
    }
    if (t.kind == Token::Kind::Name) {
      auto n = make_node(ExprAST::Kind::Symbol);
      n->name = t.text;
      lex_.advance();
      return n;
    }
    if (is_op("(")) {
      lex_.advance();
      auto e = parse_expr();
      if (!is_op(")")) throw ParseError("')' expected", lex_.cur().pos);
      lex_.advance();
      return e;
    }
    throw ParseError("unexpected token '" + t.text + "'", t.pos);
  }

  Lexer lex_;
};

// Evaluates an AST to an Element.  When P is null only scalar symbols are
// allowed.
Element eval_ast(const ExprAST& n, const Presentation* P) {
  switch (n.kind) {
    case ExprAST::Kind::Integer:
      return Element::from_scalar(Scalar(n.value));
    case ExprAST::Kind::Symbol: {
      if (n.name == "j") return Element::from_scalar(Scalar::j());
      int v = var_index(n.name);
      if (v >= 0) return Element::from_scalar(Scalar::var(v));
      if (P) {
        int r = P->rank_of(n.name);
        if (r >= 0) return Element::from_word({static_cast<uint8_t>(r)});
      }
      throw ValidationError("unknown generator name: " + n.name);
    }
    case ExprAST::Kind::Neg:
      return -eval_ast(*n.lhs, P);
    case ExprAST::Kind::Add:
      return eval_ast(*n.lhs, P) + eval_ast(*n.rhs, P);
    case ExprAST::Kind::Sub:
      return eval_ast(*n.lhs, P) - eval_ast(*n.rhs, P);
    case ExprAST::Kind::Mul:
      return concat(eval_ast(*n.lhs, P), eval_ast(*n.rhs, P));
    case ExprAST::Kind::Div: {
      Element den = eval_ast(*n.rhs, P);
      Scalar d = Scalar::zero();
      for (const auto& [w, c] : den.terms()) {
        if (!w.empty())
          throw ValidationError("division by a non-scalar expression");
        d = c;
      }
      if (d.is_zero()) throw MalformedScalarError("division by zero");
      return eval_ast(*n.lhs, P).scaled(d.inverse());
    }
    case ExprAST::Kind::Pow: {
      Element base = eval_ast(*n.lhs, P);
      bool scalar_only = true;
      Scalar s = Scalar::zero();
      for (const auto& [w, c] : base.terms()) {
        if (!w.empty()) scalar_only = false;
        else s = c;
      }
      if (scalar_only) {
        if (base.is_zero()) {
          if (n.value < 0) throw MalformedScalarError("division by zero");
          return Element::from_scalar(n.value == 0 ? Scalar::one() : Scalar::zero());
        }
        return Element::from_scalar(s.pow(static_cast<int>(n.value)));
      }
      if (n.value < 0)
        throw ValidationError("negative power of a non-scalar expression");
      Element acc = Element::from_scalar(Scalar::one());
      for (long i = 0; i < n.value; ++i) acc = concat(acc, base);
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::unique_ptr<ExprAST> parse_ast(const std::string& text) {
  return Parser(text).parse_full();
}

Scalar parse_scalar(const std::string& text) {
  Element e = eval_ast(*parse_ast(text), nullptr);
  Scalar s = Scalar::zero();
  for (const auto& [w, c] : e.terms()) {
    if (!w.empty()) throw ValidationError("expected a scalar expression");
    s = c;
  }
  return s;
}

Element parse_element(const std::string& text, const Presentation& P) {
  return eval_ast(*parse_ast(text), &P);
}

Bindings parse_bindings(const std::string& text) {
  Bindings out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty()) {
      size_t eq = piece.find('=');
      if (eq == std::string::npos)
        throw ParseError("binding must look like var=expr", start);
      std::string name = piece.substr(0, eq);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
        name.pop_back();
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
        name.erase(name.begin());
      int v = var_index(name);
      if (v < 0 || v >= kVarC1)
        throw ParseError("unknown substitution variable '" + name + "'", start);
      out.emplace_back(v, parse_scalar(piece.substr(eq + 1)));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace qdiff
