#ifndef QDIFF_PARSER_HPP
#define QDIFF_PARSER_HPP

#include <memory>
#include <string>
#include <vector>

#include "qdiff/algebra.hpp"
#include "qdiff/scalar.hpp"

namespace qdiff {

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

/// Expression tree for the shared scalar/element grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ['^' ['-'] integer]
///   atom   := integer | name | '(' expr ')'
/// Products preserve written order; names resolve to scalar symbols
/// (j, q, p, q', k, C1..C16) or to generators of the target presentation.
struct ExprAST {
  enum class Kind { Integer, Symbol, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind;
  long value = 0;        // Integer, and the exponent of Pow
  std::string name;      // Symbol
  std::unique_ptr<ExprAST> lhs, rhs;
};

std::unique_ptr<ExprAST> parse_ast(const std::string& text);

/// Parse a pure scalar expression (generators are rejected).
Scalar parse_scalar(const std::string& text);

/// Parse an expression over P's generators; the result is unnormalized.
Element parse_element(const std::string& text, const Presentation& P);

/// Parse comma-separated `var=scalar-expr` bindings (vars in {q,p,q',k}),
/// applied in written order.
Bindings parse_bindings(const std::string& text);

}  // namespace qdiff

#endif
