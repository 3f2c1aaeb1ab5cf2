#include "qchow/expr.hpp"

#include <cctype>
#include <numeric>

#include "qchow/steenrod.hpp"

namespace qchow {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { Int, Ident, Plus, Dot, Caret, At, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  long value = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      bump(text_[pos_]);
      ++pos_;
    }
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      current_.text = "<end>";
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        bump(text_[pos_]);
        ++pos_;
      }
      current_.kind = Tok::Int;
      current_.text = text_.substr(start, pos_ - start);
      try {
        current_.value = std::stol(current_.text);
      } catch (const std::out_of_range&) {
        throw ParseError(current_.line, current_.column, "integer literal too large");
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        bump(text_[pos_]);
        ++pos_;
      }
      current_.kind = Tok::Ident;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    auto punct = [&](Tok kind) {
      current_.kind = kind;
      current_.text = std::string(1, c);
      bump(c);
      ++pos_;
    };
    switch (c) {
      case '+': punct(Tok::Plus); return;
      case '.': punct(Tok::Dot); return;
      case '^': punct(Tok::Caret); return;
      case '@': punct(Tok::At); return;
      case '(': punct(Tok::LParen); return;
      case ')': punct(Tok::RParen); return;
      case '[': punct(Tok::LBracket); return;
      case ']': punct(Tok::RBracket); return;
      case ',': punct(Tok::Comma); return;
      default:
        throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
    }
  }

  void bump(char c) {
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ExprPtr parse() {
    ExprPtr e = parse_add();
    expect(Tok::End, "end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const Token& at, const std::string& expected) {
    throw ParseError(at.line, at.column,
                     "expected " + expected + ", found '" + at.text + "'");
  }

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) fail(lex_.peek(), what);
    return lex_.take();
  }

  int expect_int(const std::string& what) {
    Token t = expect(Tok::Int, what);
    return static_cast<int>(t.value);
  }

  bool peek_ident(const char* text) {
    return lex_.peek().kind == Tok::Ident && lex_.peek().text == text;
  }

  static ExprPtr make(ExprNode node) {
    return std::make_shared<Expr>(Expr{std::move(node)});
  }

  ExprPtr parse_add() {
    std::vector<ExprPtr> parts{parse_mul()};
    while (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      parts.push_back(parse_mul());
    }
    if (parts.size() == 1) return parts[0];
    return make(AddNode{std::move(parts)});
  }

  ExprPtr parse_mul() {
    std::vector<ExprPtr> parts{parse_external()};
    while (lex_.peek().kind == Tok::Dot) {
      lex_.take();
      parts.push_back(parse_external());
    }
    if (parts.size() == 1) return parts[0];
    return make(MulNode{std::move(parts)});
  }

  ExprPtr parse_external() {
    std::vector<ExprPtr> parts{parse_factor()};
    while (peek_ident("x")) {
      lex_.take();
      parts.push_back(parse_factor());
    }
    if (parts.size() == 1) return parts[0];
    return make(ExternalNode{std::move(parts)});
  }

  std::vector<int> parse_int_list() {
    expect(Tok::LBracket, "'['");
    std::vector<int> out{expect_int("slot index")};
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      out.push_back(expect_int("slot index"));
    }
    expect(Tok::RBracket, "']'");
    return out;
  }

  ExprPtr parse_factor() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Int) {
      if (t.value != 1) fail(t, "an expression ('1' is the only numeric atom)");
      lex_.take();
      return make(AtomH{0});
    }
    if (t.kind == Tok::LParen) {
      lex_.take();
      ExprPtr inner = parse_add();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Ident) fail(t, "an expression");
    Token head = lex_.take();
    const std::string& name = head.text;

    if (name == "h") {
      int k = 1;
      if (lex_.peek().kind == Tok::Caret) {
        lex_.take();
        k = expect_int("hyperplane exponent");
      }
      return make(AtomH{k});
    }
    if (name == "lp") return make(AtomLPrime{});
    if (name.size() > 2 && name.rfind("l_", 0) == 0) {
      const std::string digits = name.substr(2);
      if (digits.find_first_not_of("0123456789") != std::string::npos) {
        fail(head, "an isotropic class of the form l_<index>");
      }
      return make(AtomL{std::stoi(digits)});
    }
    if (name == "S") {
      expect(Tok::Caret, "'^' after S");
      int degree = expect_int("operation degree");
      std::optional<int> slot;
      if (lex_.peek().kind == Tok::At) {
        lex_.take();
        slot = expect_int("target slot");
      }
      expect(Tok::LParen, "'('");
      ExprPtr body = parse_add();
      expect(Tok::RParen, "')'");
      return make(SteenrodNode{degree, slot, std::move(body)});
    }
    if (name == "rho") {
      expect(Tok::LParen, "'('");
      int i = expect_int("rho index");
      expect(Tok::Comma, "','");
      int j = expect_int("rho index");
      if (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        int l = expect_int("rho operation degree");
        expect(Tok::RParen, "')'");
        return make(RhoPullNode{i, j, l});
      }
      expect(Tok::RParen, "')'");
      return make(RhoNode{i, j});
    }
    if (name == "delta") {
      expect(Tok::LParen, "'('");
      int i = expect_int("delta index");
      expect(Tok::Comma, "','");
      int j = expect_int("delta index");
      expect(Tok::RParen, "')'");
      return make(DeltaNode{i, j});
    }
    if (name == "diag") {
      expect(Tok::LParen, "'('");
      expect(Tok::RParen, "')'");
      return make(DiagNode{});
    }
    if (name == "prim") {
      expect(Tok::LParen, "'('");
      PrimordialNode node;
      node.i1 = expect_int("first Witt index");
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        Token bit = expect(Tok::Int, "coefficient bit");
        if (bit.value != 0 && bit.value != 1) fail(bit, "a coefficient bit (0 or 1)");
        node.coeffs.push_back(bit.value == 1);
      }
      expect(Tok::RParen, "')'");
      return make(std::move(node));
    }
    if (name == "sym") {
      expect(Tok::LParen, "'('");
      ExprPtr body = parse_add();
      expect(Tok::RParen, "')'");
      return make(SymNode{std::move(body)});
    }
    if (name == "cycsum" || name == "perm" || name == "pull" || name == "drop") {
      expect(Tok::LParen, "'('");
      std::vector<int> list = parse_int_list();
      expect(Tok::Comma, "','");
      ExprPtr body = parse_add();
      expect(Tok::RParen, "')'");
      if (name == "cycsum") return make(CycSumNode{std::move(list), std::move(body)});
      if (name == "perm") return make(PermNode{std::move(list), std::move(body)});
      if (name == "pull") return make(PullDiagNode{std::move(list), std::move(body)});
      return make(PushForgetNode{std::move(list), std::move(body)});
    }
    if (name == "compose") {
      expect(Tok::LParen, "'('");
      int middle = expect_int("middle arity");
      expect(Tok::Comma, "','");
      ExprPtr alpha = parse_add();
      expect(Tok::Comma, "','");
      ExprPtr beta = parse_add();
      expect(Tok::RParen, "')'");
      return make(ComposeNode{middle, std::move(alpha), std::move(beta)});
    }
    if (name == "deg") {
      expect(Tok::LParen, "'('");
      ExprPtr body = parse_add();
      expect(Tok::RParen, "')'");
      return make(DegNode{std::move(body)});
    }
    if (name == "eqmodnoness") {
      expect(Tok::LParen, "'('");
      ExprPtr lhs = parse_add();
      expect(Tok::Comma, "','");
      ExprPtr rhs = parse_add();
      expect(Tok::RParen, "')'");
      return make(EqModNonessNode{std::move(lhs), std::move(rhs)});
    }
    fail(head, "an atom or operation name");
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

int precedence(const ExprPtr& e) {
  if (std::holds_alternative<AddNode>(e->node)) return 0;
  if (std::holds_alternative<MulNode>(e->node)) return 1;
  if (std::holds_alternative<ExternalNode>(e->node)) return 2;
  return 3;
}

std::string print_at(const ExprPtr& e, int min_prec);

std::string print_list(const std::vector<int>& xs) {
  std::string out = "[";
  for (size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(xs[k]);
  }
  return out + "]";
}

std::string print_parts(const std::vector<ExprPtr>& parts, const char* sep, int child_min) {
  std::string out;
  for (size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += print_at(parts[k], child_min);
  }
  return out;
}

std::string print_node(const ExprPtr& e) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AtomH>) {
          return node.k == 0 ? "1" : "h^" + std::to_string(node.k);
        } else if constexpr (std::is_same_v<T, AtomL>) {
          return "l_" + std::to_string(node.j);
        } else if constexpr (std::is_same_v<T, AtomLPrime>) {
          return "lp";
        } else if constexpr (std::is_same_v<T, RhoNode>) {
          return "rho(" + std::to_string(node.i) + "," + std::to_string(node.j) + ")";
        } else if constexpr (std::is_same_v<T, RhoPullNode>) {
          return "rho(" + std::to_string(node.i) + "," + std::to_string(node.j) + "," +
                 std::to_string(node.l) + ")";
        } else if constexpr (std::is_same_v<T, DeltaNode>) {
          return "delta(" + std::to_string(node.i) + "," + std::to_string(node.j) + ")";
        } else if constexpr (std::is_same_v<T, DiagNode>) {
          return "diag()";
        } else if constexpr (std::is_same_v<T, PrimordialNode>) {
          std::string out = "prim(" + std::to_string(node.i1);
          for (bool b : node.coeffs) out += b ? ",1" : ",0";
          return out + ")";
        } else if constexpr (std::is_same_v<T, SymNode>) {
          return "sym(" + print_at(node.body, 0) + ")";
        } else if constexpr (std::is_same_v<T, CycSumNode>) {
          return "cycsum(" + print_list(node.images) + "," + print_at(node.body, 0) + ")";
        } else if constexpr (std::is_same_v<T, PermNode>) {
          return "perm(" + print_list(node.images) + "," + print_at(node.body, 0) + ")";
        } else if constexpr (std::is_same_v<T, ExternalNode>) {
          return print_parts(node.parts, " x ", 3);
        } else if constexpr (std::is_same_v<T, MulNode>) {
          return print_parts(node.parts, " . ", 2);
        } else if constexpr (std::is_same_v<T, AddNode>) {
          return print_parts(node.parts, " + ", 1);
        } else if constexpr (std::is_same_v<T, SteenrodNode>) {
          std::string out = "S^" + std::to_string(node.degree);
          if (node.slot) out += "@" + std::to_string(*node.slot);
          return out + "(" + print_at(node.body, 0) + ")";
        } else if constexpr (std::is_same_v<T, PullDiagNode>) {
          return "pull(" + print_list(node.image) + "," + print_at(node.body, 0) + ")";
        } else if constexpr (std::is_same_v<T, PushForgetNode>) {
          return "drop(" + print_list(node.slots) + "," + print_at(node.body, 0) + ")";
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          return "compose(" + std::to_string(node.middle) + "," + print_at(node.alpha, 0) +
                 "," + print_at(node.beta, 0) + ")";
        } else if constexpr (std::is_same_v<T, DegNode>) {
          return "deg(" + print_at(node.body, 0) + ")";
        } else {
          static_assert(std::is_same_v<T, EqModNonessNode>);
          return "eqmodnoness(" + print_at(node.lhs, 0) + "," + print_at(node.rhs, 0) + ")";
        }
      },
      e->node);
}

std::string print_at(const ExprPtr& e, int min_prec) {
  std::string body = print_node(e);
  if (precedence(e) < min_prec) return "(" + body + ")";
  return body;
}

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

ExprInfo expect_cycle(const ExprPtr& e, const QuadricContext& ctx, const char* where) {
  ExprInfo info = check_expr(e, ctx);
  if (info.is_bit) {
    throw EvalError(std::string(where) + ": operand is a bit, not a cycle");
  }
  return info;
}

void check_one_based_permutation(const std::vector<int>& images, int arity,
                                 const char* where) {
  if (static_cast<int>(images.size()) != arity) {
    throw EvalError(std::string(where) + ": permutation size " +
                    std::to_string(images.size()) + " does not match arity " +
                    std::to_string(arity));
  }
  std::vector<bool> seen(arity, false);
  for (int v : images) {
    if (v < 1 || v > arity || seen[v - 1]) {
      throw EvalError(std::string(where) + ": not a permutation of 1.." +
                      std::to_string(arity));
    }
    seen[v - 1] = true;
  }
}

std::vector<int> to_zero_based(const std::vector<int>& xs) {
  std::vector<int> out(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) out[k] = xs[k] - 1;
  return out;
}

}  // namespace

ExprInfo check_expr(const ExprPtr& e, const QuadricContext& ctx) {
  const int d = ctx.d;
  return std::visit(
      [&](const auto& node) -> ExprInfo {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AtomH>) {
          if (node.k < 0) throw EvalError("negative hyperplane exponent");
          return {false, 1};
        } else if constexpr (std::is_same_v<T, AtomL>) {
          if (node.j < 0 || node.j > d) {
            throw EvalError("isotropic index " + std::to_string(node.j) +
                            " out of range for n=" + std::to_string(ctx.n));
          }
          return {false, 1};
        } else if constexpr (std::is_same_v<T, AtomLPrime>) {
          if (!ctx.even()) throw EvalError("lp needs an even-dimensional quadric");
          return {false, 1};
        } else if constexpr (std::is_same_v<T, RhoNode>) {
          if (node.i < 0 || node.i > d || node.j < 0 || node.j > d) {
            throw EvalError("rho indices out of range");
          }
          return {false, node.i + 1};
        } else if constexpr (std::is_same_v<T, RhoPullNode>) {
          if (node.i < 2 || node.i > d || node.l < 1 || node.l > node.i - 1 ||
              node.j < node.l || node.j > d) {
            throw EvalError("rho(i,j,l) indices out of range");
          }
          return {false, node.i};
        } else if constexpr (std::is_same_v<T, DeltaNode>) {
          if (node.i < 1 || node.i > d || node.j < 0 || node.j > node.i - 1) {
            throw EvalError("delta indices out of range");
          }
          return {false, node.i + 1};
        } else if constexpr (std::is_same_v<T, DiagNode>) {
          return {false, 2};
        } else if constexpr (std::is_same_v<T, PrimordialNode>) {
          if (node.i1 < 1 || node.i1 > d) throw EvalError("prim index out of range");
          int expected = std::max(0, d - 2 * node.i1 + 2);
          if (static_cast<int>(node.coeffs.size()) != expected) {
            throw EvalError("prim expects " + std::to_string(expected) +
                            " coefficient bits for n=" + std::to_string(ctx.n));
          }
          return {false, 2};
        } else if constexpr (std::is_same_v<T, SymNode>) {
          return expect_cycle(node.body, ctx, "sym");
        } else if constexpr (std::is_same_v<T, CycSumNode>) {
          ExprInfo info = expect_cycle(node.body, ctx, "cycsum");
          check_one_based_permutation(node.images, info.arity, "cycsum");
          return info;
        } else if constexpr (std::is_same_v<T, PermNode>) {
          ExprInfo info = expect_cycle(node.body, ctx, "perm");
          check_one_based_permutation(node.images, info.arity, "perm");
          return info;
        } else if constexpr (std::is_same_v<T, ExternalNode>) {
          int arity = 0;
          for (const ExprPtr& p : node.parts) arity += expect_cycle(p, ctx, "x").arity;
          return {false, arity};
        } else if constexpr (std::is_same_v<T, MulNode> || std::is_same_v<T, AddNode>) {
          const char* what = std::is_same_v<T, MulNode> ? "." : "+";
          ExprInfo first = expect_cycle(node.parts[0], ctx, what);
          for (size_t k = 1; k < node.parts.size(); ++k) {
            ExprInfo info = expect_cycle(node.parts[k], ctx, what);
            if (info.arity != first.arity) {
              throw EvalError(std::string(what) + ": arity mismatch (" +
                              std::to_string(first.arity) + " vs " +
                              std::to_string(info.arity) + ")");
            }
          }
          return first;
        } else if constexpr (std::is_same_v<T, SteenrodNode>) {
          ExprInfo info = expect_cycle(node.body, ctx, "S");
          if (node.degree < 0) throw EvalError("negative Steenrod degree");
          if (node.slot && (*node.slot < 1 || *node.slot > info.arity)) {
            throw EvalError("Steenrod slot out of range");
          }
          return info;
        } else if constexpr (std::is_same_v<T, PullDiagNode>) {
          ExprInfo info = expect_cycle(node.body, ctx, "pull");
          if (static_cast<int>(node.image.size()) != info.arity) {
            throw EvalError("pull: map size does not match arity");
          }
          int s = 0;
          for (int v : node.image) {
            if (v < 1) throw EvalError("pull: slot indices are 1-based");
            s = std::max(s, v);
          }
          std::vector<bool> hit(s, false);
          for (int v : node.image) hit[v - 1] = true;
          for (bool h : hit) {
            if (!h) throw EvalError("pull: map is not surjective");
          }
          return {false, s};
        } else if constexpr (std::is_same_v<T, PushForgetNode>) {
          ExprInfo info = expect_cycle(node.body, ctx, "drop");
          std::vector<bool> seen(info.arity, false);
          for (int v : node.slots) {
            if (v < 1 || v > info.arity || seen[v - 1]) {
              throw EvalError("drop: bad slot list");
            }
            seen[v - 1] = true;
          }
          int kept = info.arity - static_cast<int>(node.slots.size());
          if (node.slots.empty() || kept < 1) {
            throw EvalError("drop must forget a nonempty proper subset of the slots");
          }
          return {false, kept};
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          ExprInfo alpha = expect_cycle(node.alpha, ctx, "compose");
          ExprInfo beta = expect_cycle(node.beta, ctx, "compose");
          if (node.middle < 1 || alpha.arity <= node.middle || beta.arity <= node.middle) {
            throw EvalError("compose: inconsistent arity split");
          }
          return {false, alpha.arity + beta.arity - 2 * node.middle};
        } else if constexpr (std::is_same_v<T, DegNode>) {
          expect_cycle(node.body, ctx, "deg");
          return {true, 0};
        } else {
          static_assert(std::is_same_v<T, EqModNonessNode>);
          ExprInfo lhs = expect_cycle(node.lhs, ctx, "eqmodnoness");
          ExprInfo rhs = expect_cycle(node.rhs, ctx, "eqmodnoness");
          if (lhs.arity != rhs.arity) throw EvalError("eqmodnoness: arity mismatch");
          return {true, 0};
        }
      },
      e->node);
}

ExprPtr parse_expr(const std::string& text, const QuadricContext& ctx) {
  Parser parser(text);
  ExprPtr e = parser.parse();
  check_expr(e, ctx);  // surface range and arity problems at parse time
  return e;
}

std::string print_expr(const ExprPtr& e) { return print_at(e, 0); }

namespace {
EvalValue eval_impl(const ExprPtr& e, const QuadricContext& ctx);

Cycle eval_cycle(const ExprPtr& e, const QuadricContext& ctx) {
  return std::get<Cycle>(eval_impl(e, ctx));
}

EvalValue eval_impl(const ExprPtr& e, const QuadricContext& ctx) {
  return std::visit(
      [&](const auto& node) -> EvalValue {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AtomH>) {
          return h_power_cycle(ctx, node.k);
        } else if constexpr (std::is_same_v<T, AtomL>) {
          return Cycle::from_basis(ctx.isotropic(node.j));
        } else if constexpr (std::is_same_v<T, AtomLPrime>) {
          return Cycle::from_basis(ctx.alternate_middle());
        } else if constexpr (std::is_same_v<T, RhoNode>) {
          return rho(ctx, node.i, node.j);
        } else if constexpr (std::is_same_v<T, RhoPullNode>) {
          return rho_steenrod_pullback(ctx, node.i, node.j, node.l);
        } else if constexpr (std::is_same_v<T, DeltaNode>) {
          return delta_cycle(ctx, node.i, node.j);
        } else if constexpr (std::is_same_v<T, DiagNode>) {
          return diagonal_class(ctx);
        } else if constexpr (std::is_same_v<T, PrimordialNode>) {
          PrimordialSpec spec;
          spec.i1 = node.i1;
          for (size_t k = 0; k < node.coeffs.size(); ++k) {
            spec.coeffs[node.i1 + static_cast<int>(k)] = node.coeffs[k];
          }
          return primordial(ctx, spec);
        } else if constexpr (std::is_same_v<T, SymNode>) {
          return sym(eval_cycle(node.body, ctx));
        } else if constexpr (std::is_same_v<T, CycSumNode>) {
          return subgroup_sum(Permutation(to_zero_based(node.images)),
                              eval_cycle(node.body, ctx));
        } else if constexpr (std::is_same_v<T, PermNode>) {
          return permute_pushforward(Permutation(to_zero_based(node.images)),
                                     eval_cycle(node.body, ctx));
        } else if constexpr (std::is_same_v<T, ExternalNode>) {
          Cycle out = eval_cycle(node.parts[0], ctx);
          for (size_t k = 1; k < node.parts.size(); ++k) {
            out = external(out, eval_cycle(node.parts[k], ctx));
          }
          return out;
        } else if constexpr (std::is_same_v<T, MulNode>) {
          Cycle out = eval_cycle(node.parts[0], ctx);
          for (size_t k = 1; k < node.parts.size(); ++k) {
            out = mul(out, eval_cycle(node.parts[k], ctx), ctx);
          }
          return out;
        } else if constexpr (std::is_same_v<T, AddNode>) {
          Cycle out = eval_cycle(node.parts[0], ctx);
          for (size_t k = 1; k < node.parts.size(); ++k) {
            out = add(out, eval_cycle(node.parts[k], ctx));
          }
          return out;
        } else if constexpr (std::is_same_v<T, SteenrodNode>) {
          SteenrodQuery q{node.degree, std::nullopt};
          if (node.slot) q.slot = *node.slot - 1;
          return steenrod_factor(eval_cycle(node.body, ctx), q, ctx);
        } else if constexpr (std::is_same_v<T, PullDiagNode>) {
          SlotMap f;
          f.image = to_zero_based(node.image);
          f.target_arity = 0;
          for (int v : f.image) f.target_arity = std::max(f.target_arity, v + 1);
          return diagonal_pullback(f, eval_cycle(node.body, ctx), ctx);
        } else if constexpr (std::is_same_v<T, PushForgetNode>) {
          return projection_pushforward(to_zero_based(node.slots),
                                        eval_cycle(node.body, ctx));
        } else if constexpr (std::is_same_v<T, ComposeNode>) {
          return corr_compose(eval_cycle(node.alpha, ctx), node.middle,
                              eval_cycle(node.beta, ctx), ctx);
        } else if constexpr (std::is_same_v<T, DegNode>) {
          return degree(eval_cycle(node.body, ctx));
        } else {
          static_assert(std::is_same_v<T, EqModNonessNode>);
          return equal_mod_nonessential(eval_cycle(node.lhs, ctx),
                                        eval_cycle(node.rhs, ctx), ctx);
        }
      },
      e->node);
}
}  // namespace

EvalValue eval_expr(const ExprPtr& e, const QuadricContext& ctx) {
  check_expr(e, ctx);
  return eval_impl(e, ctx);
}

std::string to_string(const EvalValue& v, const QuadricContext& ctx) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "1" : "0";
  return to_string(std::get<Cycle>(v), ctx);
}

}  // namespace qchow
