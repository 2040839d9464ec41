#include "tfd/opexpr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace tfd {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at byte " + std::to_string(position)), pos_(position) {}

namespace {

constexpr const char* kDaggerUtf8 = "\xE2\x80\xA0";

struct Token {
  enum Kind { number, ident, plus, minus, star, dagger, tilde, lparen, rparen, end };
  Kind kind;
  std::size_t pos;
  Complex value;     // number
  std::string text;  // ident
};

// strtod without sign handling: the caller decides what a leading '-' means.
bool lex_unsigned(const std::string& s, std::size_t& i, double& out) {
  if (i >= s.size() || !(std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'))
    return false;
  const char* begin = s.c_str() + i;
  char* endp = nullptr;
  out = std::strtod(begin, &endp);
  if (endp == begin) return false;
  i += static_cast<std::size_t>(endp - begin);
  return true;
}

// The paired literal "(re+imi)" is emitted by the formatter with no interior
// spaces; read it back as one number token, or fall through to '('.
bool lex_paired_complex(const std::string& s, std::size_t& i, Complex& out) {
  std::size_t j = i + 1;  // past '('
  double re_sign = 1.0;
  if (j < s.size() && s[j] == '-') {
    re_sign = -1.0;
    ++j;
  }
  double re = 0.0;
  if (!lex_unsigned(s, j, re)) return false;
  if (j >= s.size() || (s[j] != '+' && s[j] != '-')) return false;
  double im_sign = s[j] == '-' ? -1.0 : 1.0;
  ++j;
  double im = 0.0;
  if (!lex_unsigned(s, j, im)) return false;
  if (j + 1 >= s.size() || s[j] != 'i' || s[j + 1] != ')') return false;
  out = Complex(re_sign * re, im_sign * im);
  i = j + 2;
  return true;
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      if (!lex_unsigned(s, i, v)) throw ParseError("unrecognized character", start);
      if (!std::isfinite(v)) throw ParseError("number out of range", start);
      Complex value(v, 0.0);
      if (i < s.size() && s[i] == 'i') {
        value = Complex(0.0, v);
        ++i;
      }
      toks.push_back({Token::number, start, value, {}});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      toks.push_back({Token::ident, start, {}, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (c == '(') {
      Complex paired;
      if (lex_paired_complex(s, i, paired)) {
        if (!std::isfinite(paired.real()) || !std::isfinite(paired.imag()))
          throw ParseError("number out of range", start);
        toks.push_back({Token::number, start, paired, {}});
      } else {
        toks.push_back({Token::lparen, start, {}, {}});
        ++i;
      }
      continue;
    }
    if (s.compare(i, 3, kDaggerUtf8) == 0) {
      toks.push_back({Token::dagger, start, {}, {}});
      i += 3;
      continue;
    }
    Token::Kind kind;
    switch (c) {
      case '\'': kind = Token::dagger; break;
      case '~': kind = Token::tilde; break;
      case '+': kind = Token::plus; break;
      case '-': kind = Token::minus; break;
      case '*': kind = Token::star; break;
      case ')': kind = Token::rparen; break;
      default: throw ParseError("unrecognized character", start);
    }
    toks.push_back({kind, start, {}, {}});
    ++i;
  }
  toks.push_back({Token::end, s.size(), {}, {}});
  return toks;
}

std::shared_ptr<Expr> node(ExprKind kind) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  return e;
}

ExprPtr negated(const ExprPtr& e) {
  if (e->kind == ExprKind::scalar) return make_scalar(-e->value);
  if (e->kind == ExprKind::scalar_mul) return make_scalar_mul(-e->value, e->kids[0]);
  return make_scalar_mul(Complex(-1.0, 0.0), e);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    if (peek().kind != Token::end) throw ParseError("unexpected trailing input", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  static bool starts_factor(Token::Kind k) {
    return k == Token::number || k == Token::ident || k == Token::tilde || k == Token::lparen;
  }

  ExprPtr parse_expr() {
    bool neg = false;
    if (peek().kind == Token::plus) {
      take();
    } else if (peek().kind == Token::minus) {
      take();
      neg = true;
    }
    ExprPtr t = parse_term();
    std::vector<ExprPtr> terms{neg ? negated(t) : t};
    while (peek().kind == Token::plus || peek().kind == Token::minus) {
      bool minus = take().kind == Token::minus;
      ExprPtr next = parse_term();
      terms.push_back(minus ? negated(next) : next);
    }
    return terms.size() == 1 ? terms[0] : make_sum(std::move(terms));
  }

  ExprPtr parse_term() {
    std::vector<ExprPtr> factors{parse_factor()};
    while (true) {
      if (peek().kind == Token::star) {
        take();
        factors.push_back(parse_factor());
      } else if (starts_factor(peek().kind)) {
        factors.push_back(parse_factor());
      } else {
        break;
      }
    }
    return make_product(std::move(factors));
  }

  ExprPtr parse_factor() {
    ExprPtr e = parse_primary();
    while (true) {
      if (peek().kind == Token::dagger) {
        take();
        e = make_dagger(e);
      } else if (peek().kind == Token::tilde && toks_[pos_ + 1].kind != Token::lparen) {
        // '~(' always reads as the prefix form starting a new factor.
        take();
        e = make_tilde(e);
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::number:
        take();
        return make_scalar(t.value);
      case Token::ident:
        take();
        return make_atom(t.text);
      case Token::tilde: {
        take();
        if (peek().kind != Token::lparen)
          throw ParseError("expected ( after ~", peek().pos);
        take();
        ExprPtr inner = parse_expr();
        if (peek().kind != Token::rparen)
          throw ParseError("expected )", peek().pos);
        take();
        return make_tilde(inner);
      }
      case Token::lparen: {
        take();
        ExprPtr inner = parse_expr();
        if (peek().kind != Token::rparen)
          throw ParseError("expected )", peek().pos);
        take();
        return inner;
      }
      default:
        throw ParseError("expected an operand", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_complex(Complex c) {
  if (c.imag() == 0.0) return fmt_real(c.real());
  if (c.real() == 0.0) return fmt_real(c.imag()) + "i";
  std::string s = "(";
  s += fmt_real(c.real());
  s += c.imag() < 0.0 ? "-" : "+";
  s += fmt_real(std::abs(c.imag()));
  s += "i)";
  return s;
}

// Negative reals and negative pure imaginaries re-enter the grammar through
// a '-' sign, so a sum tail can absorb them into subtraction.
bool negatable(Complex c) {
  return (c.imag() == 0.0 && c.real() < 0.0) || (c.real() == 0.0 && c.imag() < 0.0);
}

std::string fmt(const ExprPtr& e);

std::string fmt_factor(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::sum:
    case ExprKind::product:
    case ExprKind::scalar_mul:
      return "(" + fmt(e) + ")";
    case ExprKind::scalar:
      return negatable(e->value) ? "(" + fmt(e) + ")" : fmt(e);
    default:
      return fmt(e);
  }
}

std::string fmt_dagger_operand(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::atom:
    case ExprKind::tilde:
      return fmt(e);
    case ExprKind::scalar: {
      std::string s = fmt(e);
      return s[0] == '-' ? "(" + s + ")" : s;
    }
    default:
      return "(" + fmt(e) + ")";
  }
}

std::string fmt(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::scalar:
      return fmt_complex(e->value);
    case ExprKind::atom:
      return e->name;
    case ExprKind::dagger:
      return fmt_dagger_operand(e->kids[0]) + kDaggerUtf8;
    case ExprKind::tilde:
      return "~(" + fmt(e->kids[0]) + ")";
    case ExprKind::scalar_mul: {
      const ExprPtr& kid = e->kids[0];
      bool paren = kid->kind == ExprKind::sum || kid->kind == ExprKind::scalar_mul;
      return fmt_complex(e->value) + " " + (paren ? "(" + fmt(kid) + ")" : fmt(kid));
    }
    case ExprKind::product: {
      std::string s;
      for (std::size_t k = 0; k < e->kids.size(); ++k) {
        if (k) s += " ";
        s += fmt_factor(e->kids[k]);
      }
      return s;
    }
    case ExprKind::sum: {
      const ExprPtr& head = e->kids[0];
      std::string s = head->kind == ExprKind::sum ? "(" + fmt(head) + ")" : fmt(head);
      for (std::size_t k = 1; k < e->kids.size(); ++k) {
        const ExprPtr& t = e->kids[k];
        bool flip =
            (t->kind == ExprKind::scalar || t->kind == ExprKind::scalar_mul) &&
            negatable(t->value);
        if (flip) {
          s += " - " + fmt(negated(t));
        } else {
          s += " + " + (t->kind == ExprKind::sum ? "(" + fmt(t) + ")" : fmt(t));
        }
      }
      return s;
    }
  }
  throw std::logic_error("unreachable expression kind");
}

Mat atom_matrix(const std::string& name, const FockSpace& space) {
  if (name == "a" || name == "b") return annihilator(space);
  throw std::runtime_error("unbound identifier '" + name + "'");
}

Mat eval_doubled(const ExprPtr& e, const DoubledSpace& ds) {
  switch (e->kind) {
    case ExprKind::scalar:
      return e->value * Mat::Identity(ds.dim(), ds.dim());
    case ExprKind::atom:
      return lift_physical(ds, atom_matrix(e->name, ds.phys));
    case ExprKind::dagger:
      return eval_doubled(e->kids[0], ds).adjoint();
    case ExprKind::scalar_mul:
      return e->value * eval_doubled(e->kids[0], ds);
    case ExprKind::sum: {
      Mat acc = eval_doubled(e->kids[0], ds);
      for (std::size_t k = 1; k < e->kids.size(); ++k) acc += eval_doubled(e->kids[k], ds);
      return acc;
    }
    case ExprKind::product: {
      Mat acc = eval_doubled(e->kids[0], ds);
      for (std::size_t k = 1; k < e->kids.size(); ++k) acc *= eval_doubled(e->kids[k], ds);
      return acc;
    }
    case ExprKind::tilde: {
      const ExprPtr& kid = e->kids[0];
      if (kid->kind == ExprKind::atom)
        return lift_tilde(ds, atom_matrix(kid->name, ds.phys));
      return eval_doubled(tilde_rewrite(kid).expr, ds);
    }
  }
  throw std::logic_error("unreachable expression kind");
}

Mat eval_single(const ExprPtr& e, const FockSpace& space) {
  switch (e->kind) {
    case ExprKind::scalar:
      return e->value * Mat::Identity(space.dim, space.dim);
    case ExprKind::atom:
      return atom_matrix(e->name, space);
    case ExprKind::dagger:
      return eval_single(e->kids[0], space).adjoint();
    case ExprKind::scalar_mul:
      return e->value * eval_single(e->kids[0], space);
    case ExprKind::sum: {
      Mat acc = eval_single(e->kids[0], space);
      for (std::size_t k = 1; k < e->kids.size(); ++k) acc += eval_single(e->kids[k], space);
      return acc;
    }
    case ExprKind::product: {
      Mat acc = eval_single(e->kids[0], space);
      for (std::size_t k = 1; k < e->kids.size(); ++k) acc *= eval_single(e->kids[k], space);
      return acc;
    }
    case ExprKind::tilde:
      throw std::runtime_error("expression uses mirror operators; no single-mode value");
  }
  throw std::logic_error("unreachable expression kind");
}

}  // namespace

ExprPtr make_scalar(Complex c) {
  auto e = node(ExprKind::scalar);
  e->value = c;
  return e;
}

ExprPtr make_atom(std::string name) {
  auto e = node(ExprKind::atom);
  e->name = std::move(name);
  return e;
}

ExprPtr make_dagger(ExprPtr x) {
  auto e = node(ExprKind::dagger);
  e->kids.push_back(std::move(x));
  return e;
}

ExprPtr make_tilde(ExprPtr x) {
  auto e = node(ExprKind::tilde);
  e->kids.push_back(std::move(x));
  return e;
}

ExprPtr make_sum(std::vector<ExprPtr> terms) {
  if (terms.empty()) throw std::invalid_argument("a sum needs at least one term");
  if (terms.size() == 1) return terms[0];
  auto e = node(ExprKind::sum);
  e->kids = std::move(terms);
  return e;
}

ExprPtr make_product(std::vector<ExprPtr> factors) {
  if (factors.empty()) throw std::invalid_argument("a product needs at least one factor");
  Complex coeff(1.0, 0.0);
  std::vector<ExprPtr> ops;
  for (ExprPtr& f : factors) {
    if (f->kind == ExprKind::scalar)
      coeff *= f->value;
    else
      ops.push_back(std::move(f));
  }
  if (ops.empty()) return make_scalar(coeff);
  ExprPtr op;
  if (ops.size() == 1) {
    op = ops[0];
  } else {
    auto p = node(ExprKind::product);
    p->kids = std::move(ops);
    op = p;
  }
  return make_scalar_mul(coeff, op);
}

ExprPtr make_scalar_mul(Complex c, ExprPtr x) {
  if (x->kind == ExprKind::scalar) return make_scalar(c * x->value);
  if (x->kind == ExprKind::scalar_mul) return make_scalar_mul(c * x->value, x->kids[0]);
  if (c == Complex(1.0, 0.0)) return x;
  auto e = node(ExprKind::scalar_mul);
  e->value = c;
  e->kids.push_back(std::move(x));
  return e;
}

ExprPtr parse(const std::string& src) { return Parser(tokenize(src)).run(); }

std::string format(const ExprPtr& e) { return fmt(e); }

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind) return false;
  if (a->value != b->value) return false;
  if (a->name != b->name) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t k = 0; k < a->kids.size(); ++k)
    if (!structurally_equal(a->kids[k], b->kids[k])) return false;
  return true;
}

int tilde_depth(const ExprPtr& e) {
  int inner = 0;
  for (const ExprPtr& kid : e->kids) inner = std::max(inner, tilde_depth(kid));
  return inner + (e->kind == ExprKind::tilde ? 1 : 0);
}

MirrorResult tilde_rewrite(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::scalar:
      return {make_scalar(std::conj(e->value)), 0};
    case ExprKind::atom:
      return {make_tilde(e), 0};
    case ExprKind::tilde:
      return {e->kids[0], 1};
    case ExprKind::dagger: {
      MirrorResult sub = tilde_rewrite(e->kids[0]);
      return {make_dagger(sub.expr), sub.unwrapped};
    }
    case ExprKind::scalar_mul: {
      MirrorResult sub = tilde_rewrite(e->kids[0]);
      return {make_scalar_mul(std::conj(e->value), sub.expr), sub.unwrapped};
    }
    case ExprKind::sum:
    case ExprKind::product: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      int unwrapped = 0;
      for (const ExprPtr& kid : e->kids) {
        MirrorResult sub = tilde_rewrite(kid);
        kids.push_back(sub.expr);
        unwrapped += sub.unwrapped;
      }
      ExprPtr out = e->kind == ExprKind::sum ? make_sum(std::move(kids))
                                             : make_product(std::move(kids));
      return {out, unwrapped};
    }
  }
  throw std::logic_error("unreachable expression kind");
}

Mat evaluate(const ExprPtr& e, const DoubledSpace& ds) {
  if (tilde_depth(e) > 2)
    throw std::runtime_error("mirror conjugation nested deeper than twice");
  return eval_doubled(e, ds);
}

Mat evaluate_single_mode(const ExprPtr& e, const FockSpace& space) {
  return eval_single(e, space);
}

}  // namespace tfd
