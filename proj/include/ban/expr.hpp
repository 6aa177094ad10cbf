#pragma once

#include "ban/configuration.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace ban
{

enum class Op : std::uint8_t
{
  var,
  constant,
  not_,
  and_,
  or_,
  xor_,
  ite
};

/*! \brief Immutable Boolean circuit expression.
 *
 * Nodes are shared between expressions (the structure is a DAG); semantics
 * are those of the unfolded tree. And/Or/Xor take two or more children,
 * Not one, Ite three (condition, then, else). Arity is checked at
 * construction, so a built Expr is always well formed.
 */
class Expr
{
public:
  /* constant 0 */
  Expr();

  static Expr var( std::size_t index );
  static Expr constant( bool value );
  static Expr make( Op op, std::vector<Expr> children );

  Op op() const noexcept { return node_->op; }
  std::size_t var_index() const noexcept { return node_->index; }
  bool value() const noexcept { return node_->value; }
  std::span<Expr const> children() const noexcept { return node_->children; }

  bool is_var() const noexcept { return op() == Op::var; }
  bool is_constant() const noexcept { return op() == Op::constant; }
  bool is_const( bool v ) const noexcept { return is_constant() && value() == v; }

  /* identity of the shared node, for DAG traversals */
  void const* id() const noexcept { return node_.get(); }

  /* sorted variable indices occurring syntactically */
  std::vector<std::size_t> support() const;
  /* largest variable index + 1, or 0 without variables */
  std::size_t input_width() const;
  /* number of distinct DAG nodes */
  std::size_t dag_size() const;

  bool structurally_equal( Expr const& other ) const;

private:
  struct Node
  {
    Op op = Op::constant;
    std::uint32_t index = 0;
    bool value = false;
    std::vector<Expr> children;
  };

  explicit Expr( std::shared_ptr<Node const> node ) : node_( std::move( node ) ) {}

  std::shared_ptr<Node const> node_;
};

Expr operator!( Expr const& a );
Expr operator&( Expr const& a, Expr const& b );
Expr operator|( Expr const& a, Expr const& b );
Expr operator^( Expr const& a, Expr const& b );
Expr ite( Expr const& c, Expr const& t, Expr const& e );

/* value of `expr` under valuation x; throws ErrorKind::input when a variable is outside x */
bool eval( Expr const& expr, Configuration const& x );

/* replace every Var(j) by `map(j)` */
Expr substitute( Expr const& expr, std::function<Expr( std::size_t )> const& map );

/* constant propagation and trivial identities (x&1, x^0, !!x, ite with constant condition) */
Expr simplify( Expr const& expr );

} // namespace ban
