#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfd/doubled.hpp"

namespace tfd {

// Small expression language for ladder-operator algebra on the doubled space.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor factor* with '*' optional between factors
//   factor  := primary ('†' | '~')*          ascii ' may stand in for †
//   primary := number | ident | '~' '(' expr ')' | '(' expr ')'
//
// Numbers: 2, 2.5, 3e-2, 1i, and the paired form (1-2i). The identifiers a
// and b both evaluate to the annihilator of the single mode; anything else is
// unbound. A postfix '~' binds to the factor before it (b~); when '~' sits
// directly before '(' it instead reads as the prefix form ~(a b).
enum class ExprKind { scalar, atom, dagger, tilde, sum, product, scalar_mul };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  Complex value{};             // scalar and scalar_mul coefficient
  std::string name;            // atom
  std::vector<ExprPtr> kids;   // dagger, tilde, scalar_mul: 1; sum, product: 2+
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Builders normalize the same way the parser does: scalar factors fold into a
// scalar_mul coefficient, unit coefficients drop, single-element sums and
// products collapse to their only member.
ExprPtr make_scalar(Complex c);
ExprPtr make_atom(std::string name);
ExprPtr make_dagger(ExprPtr x);
ExprPtr make_tilde(ExprPtr x);
ExprPtr make_sum(std::vector<ExprPtr> terms);
ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_scalar_mul(Complex c, ExprPtr x);

ExprPtr parse(const std::string& src);

// Canonical text form; parse(format(e)) is structurally equal to e, with
// scalars printed to full precision (%.17g).
std::string format(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Deepest chain of nested mirror conjugations in the tree.
int tilde_depth(const ExprPtr& e);

struct MirrorResult {
  ExprPtr expr;
  int unwrapped;  // double-conjugation collapses; sign conventions that
                  // attach a phase per collapse can apply it from this count
};

// Applies the mirror conjugation to the whole expression and pushes it down
// to the leaves: products and sums map member by member in order, scalars
// conjugate, dagger passes through, and a second conjugation cancels.
MirrorResult tilde_rewrite(const ExprPtr& e);

// Matrix value on the doubled space: atoms become the lifted annihilator,
// mirror leaves the lifted mirror annihilator. Rejects expressions whose raw
// tilde nesting exceeds two. Throws std::runtime_error on unbound names.
Mat evaluate(const ExprPtr& e, const DoubledSpace& ds);

// Same walk on the bare mode, with mirror conjugation rejected. Useful as an
// independent route: lifting this result must agree with evaluating the
// rewritten expression.
Mat evaluate_single_mode(const ExprPtr& e, const FockSpace& space);

}  // namespace tfd
