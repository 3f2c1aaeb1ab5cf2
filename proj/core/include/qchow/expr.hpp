#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qchow/cycle.hpp"
#include "qchow/families.hpp"

namespace qchow {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Atoms.  Hyperplane powers accept any exponent (vanishing above d); the
// prime atom is the middle class opposite to the designated l_d.
struct AtomH { int k = 0; };
struct AtomL { int j = 0; };
struct AtomLPrime {};

struct RhoNode { int i = 0; int j = 0; };
struct RhoPullNode { int i = 0; int j = 0; int l = 0; };
struct DeltaNode { int i = 0; int j = 0; };
struct DiagNode {};
struct PrimordialNode { int i1 = 1; std::vector<bool> coeffs; };

struct SymNode { ExprPtr body; };
struct CycSumNode { std::vector<int> images; ExprPtr body; };       // 1-based images
struct PermNode { std::vector<int> images; ExprPtr body; };         // 1-based images
struct ExternalNode { std::vector<ExprPtr> parts; };
struct MulNode { std::vector<ExprPtr> parts; };
struct AddNode { std::vector<ExprPtr> parts; };
struct SteenrodNode { int degree = 0; std::optional<int> slot; ExprPtr body; };  // 1-based slot
struct PullDiagNode { std::vector<int> image; ExprPtr body; };      // 1-based images
struct PushForgetNode { std::vector<int> slots; ExprPtr body; };    // 1-based slots
struct ComposeNode { int middle = 1; ExprPtr alpha; ExprPtr beta; };
struct DegNode { ExprPtr body; };
struct EqModNonessNode { ExprPtr lhs; ExprPtr rhs; };

using ExprNode =
    std::variant<AtomH, AtomL, AtomLPrime, RhoNode, RhoPullNode, DeltaNode, DiagNode,
                 PrimordialNode, SymNode, CycSumNode, PermNode, ExternalNode, MulNode,
                 AddNode, SteenrodNode, PullDiagNode, PushForgetNode, ComposeNode,
                 DegNode, EqModNonessNode>;

struct Expr {
  ExprNode node;
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& message)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(column_) + ": " + message),
        line(line_),
        column(column_) {}
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Either a cycle of some arity or a single bit (from deg / eqmodnoness).
struct ExprInfo {
  bool is_bit = false;
  int arity = 0;
};

// Parses and validates against the active quadric (arity consistency and
// index ranges included).  Throws ParseError / EvalError.
ExprPtr parse_expr(const std::string& text, const QuadricContext& ctx);

// Canonical printer; parse_expr(print_expr(e)) reproduces e.
std::string print_expr(const ExprPtr& e);

// Arity/kind analysis without evaluation.
ExprInfo check_expr(const ExprPtr& e, const QuadricContext& ctx);

using EvalValue = std::variant<Cycle, bool>;
EvalValue eval_expr(const ExprPtr& e, const QuadricContext& ctx);

std::string to_string(const EvalValue& v, const QuadricContext& ctx);

}  // namespace qchow
