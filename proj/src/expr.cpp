#include "ban/expr.hpp"

#include "ban/error.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace ban
{

namespace
{

std::size_t expected_arity( Op op )
{
  switch ( op )
  {
  case Op::var:
  case Op::constant: return 0;
  case Op::not_: return 1;
  case Op::ite: return 3;
  default: return 2; // minimum for and/or/xor
  }
}

} // namespace

Expr::Expr() : node_( std::make_shared<Node const>() ) {}

Expr Expr::var( std::size_t index )
{
  if ( index > 0xffffffffu )
    throw Error( ErrorKind::structural, "variable index too large" );
  Node n;
  n.op = Op::var;
  n.index = static_cast<std::uint32_t>( index );
  return Expr( std::make_shared<Node const>( std::move( n ) ) );
}

Expr Expr::constant( bool value )
{
  static Expr const zero = [] {
    Node n;
    n.op = Op::constant;
    n.value = false;
    return Expr( std::make_shared<Node const>( std::move( n ) ) );
  }();
  static Expr const one = [] {
    Node n;
    n.op = Op::constant;
    n.value = true;
    return Expr( std::make_shared<Node const>( std::move( n ) ) );
  }();
  return value ? one : zero;
}

Expr Expr::make( Op op, std::vector<Expr> children )
{
  if ( op == Op::var || op == Op::constant )
    throw Error( ErrorKind::structural, "leaves are built with Expr::var / Expr::constant" );
  auto const arity = expected_arity( op );
  bool const nary = op == Op::and_ || op == Op::or_ || op == Op::xor_;
  if ( nary ? children.size() < arity : children.size() != arity )
    throw Error( ErrorKind::structural, "operator arity mismatch: got " + std::to_string( children.size() ) + " children" );
  Node n;
  n.op = op;
  n.children = std::move( children );
  return Expr( std::make_shared<Node const>( std::move( n ) ) );
}

std::vector<std::size_t> Expr::support() const
{
  std::vector<std::size_t> vars;
  std::unordered_set<void const*> seen;
  std::vector<Expr const*> stack{ this };
  while ( !stack.empty() )
  {
    auto const* e = stack.back();
    stack.pop_back();
    if ( !seen.insert( e->id() ).second )
      continue;
    if ( e->is_var() )
      vars.push_back( e->var_index() );
    for ( auto const& c : e->children() )
      stack.push_back( &c );
  }
  std::sort( vars.begin(), vars.end() );
  vars.erase( std::unique( vars.begin(), vars.end() ), vars.end() );
  return vars;
}

std::size_t Expr::input_width() const
{
  auto const s = support();
  return s.empty() ? 0u : s.back() + 1u;
}

std::size_t Expr::dag_size() const
{
  std::unordered_set<void const*> seen;
  std::vector<Expr const*> stack{ this };
  while ( !stack.empty() )
  {
    auto const* e = stack.back();
    stack.pop_back();
    if ( !seen.insert( e->id() ).second )
      continue;
    for ( auto const& c : e->children() )
      stack.push_back( &c );
  }
  return seen.size();
}

bool Expr::structurally_equal( Expr const& other ) const
{
  if ( id() == other.id() )
    return true;
  if ( op() != other.op() )
    return false;
  if ( is_var() )
    return var_index() == other.var_index();
  if ( is_constant() )
    return value() == other.value();
  if ( children().size() != other.children().size() )
    return false;
  for ( std::size_t i = 0; i < children().size(); ++i )
    if ( !children()[i].structurally_equal( other.children()[i] ) )
      return false;
  return true;
}

Expr operator!( Expr const& a ) { return Expr::make( Op::not_, { a } ); }
Expr operator&( Expr const& a, Expr const& b ) { return Expr::make( Op::and_, { a, b } ); }
Expr operator|( Expr const& a, Expr const& b ) { return Expr::make( Op::or_, { a, b } ); }
Expr operator^( Expr const& a, Expr const& b ) { return Expr::make( Op::xor_, { a, b } ); }
Expr ite( Expr const& c, Expr const& t, Expr const& e ) { return Expr::make( Op::ite, { c, t, e } ); }

bool eval( Expr const& expr, Configuration const& x )
{
  switch ( expr.op() )
  {
  case Op::var:
    if ( expr.var_index() >= x.size() )
      throw Error( ErrorKind::input, "variable x" + std::to_string( expr.var_index() ) + " outside configuration of size " + std::to_string( x.size() ) );
    return x[expr.var_index()];
  case Op::constant:
    return expr.value();
  case Op::not_:
    return !eval( expr.children()[0], x );
  case Op::and_:
    return std::all_of( expr.children().begin(), expr.children().end(), [&]( auto const& c ) { return eval( c, x ); } );
  case Op::or_:
    return std::any_of( expr.children().begin(), expr.children().end(), [&]( auto const& c ) { return eval( c, x ); } );
  case Op::xor_:
  {
    bool r = false;
    for ( auto const& c : expr.children() )
      r ^= eval( c, x );
    return r;
  }
  case Op::ite:
    return eval( expr.children()[0], x ) ? eval( expr.children()[1], x ) : eval( expr.children()[2], x );
  }
  return false;
}

namespace
{

template<typename Fn>
Expr rebuild( Expr const& expr, std::unordered_map<void const*, Expr>& memo, Fn&& leaf )
{
  if ( auto it = memo.find( expr.id() ); it != memo.end() )
    return it->second;
  Expr result;
  if ( expr.is_var() || expr.is_constant() )
    result = leaf( expr );
  else
  {
    std::vector<Expr> children;
    children.reserve( expr.children().size() );
    for ( auto const& c : expr.children() )
      children.push_back( rebuild( c, memo, leaf ) );
    result = Expr::make( expr.op(), std::move( children ) );
  }
  memo.emplace( expr.id(), result );
  return result;
}

Expr simplify_node( Op op, std::vector<Expr> children )
{
  switch ( op )
  {
  case Op::not_:
  {
    auto const& a = children[0];
    if ( a.is_constant() )
      return Expr::constant( !a.value() );
    if ( a.op() == Op::not_ )
      return a.children()[0];
    return !a;
  }
  case Op::and_:
  case Op::or_:
  {
    bool const absorbing = op == Op::or_;
    std::vector<Expr> kept;
    for ( auto& c : children )
    {
      if ( c.is_const( absorbing ) )
        return Expr::constant( absorbing );
      if ( !c.is_constant() )
        kept.push_back( std::move( c ) );
    }
    if ( kept.empty() )
      return Expr::constant( !absorbing );
    if ( kept.size() == 1u )
      return kept.front();
    return Expr::make( op, std::move( kept ) );
  }
  case Op::xor_:
  {
    bool parity = false;
    std::vector<Expr> kept;
    for ( auto& c : children )
    {
      if ( c.is_constant() )
        parity ^= c.value();
      else
        kept.push_back( std::move( c ) );
    }
    Expr base;
    if ( kept.empty() )
      return Expr::constant( parity );
    base = kept.size() == 1u ? kept.front() : Expr::make( Op::xor_, std::move( kept ) );
    return parity ? simplify_node( Op::not_, { base } ) : base;
  }
  case Op::ite:
  {
    auto const& c = children[0];
    auto const& t = children[1];
    auto const& e = children[2];
    if ( c.is_constant() )
      return c.value() ? t : e;
    if ( t.id() == e.id() || t.structurally_equal( e ) )
      return t;
    if ( t.is_const( true ) && e.is_const( false ) )
      return c;
    if ( t.is_const( false ) && e.is_const( true ) )
      return simplify_node( Op::not_, { c } );
    if ( t.is_const( false ) )
      return simplify_node( Op::and_, { simplify_node( Op::not_, { c } ), e } );
    if ( e.is_const( false ) )
      return simplify_node( Op::and_, { c, t } );
    if ( t.is_const( true ) )
      return simplify_node( Op::or_, { c, e } );
    if ( e.is_const( true ) )
      return simplify_node( Op::or_, { simplify_node( Op::not_, { c } ), t } );
    return Expr::make( Op::ite, std::move( children ) );
  }
  default:
    return Expr::make( op, std::move( children ) );
  }
}

} // namespace

Expr substitute( Expr const& expr, std::function<Expr( std::size_t )> const& map )
{
  std::unordered_map<void const*, Expr> memo;
  return rebuild( expr, memo, [&]( Expr const& leaf ) { return leaf.is_var() ? map( leaf.var_index() ) : leaf; } );
}

Expr simplify( Expr const& expr )
{
  std::unordered_map<void const*, Expr> memo;
  std::function<Expr( Expr const& )> go = [&]( Expr const& e ) -> Expr {
    if ( auto it = memo.find( e.id() ); it != memo.end() )
      return it->second;
    Expr result = e;
    if ( !e.is_var() && !e.is_constant() )
    {
      std::vector<Expr> children;
      for ( auto const& c : e.children() )
        children.push_back( go( c ) );
      result = simplify_node( e.op(), std::move( children ) );
    }
    memo.emplace( e.id(), result );
    return result;
  };
  return go( expr );
}

} // namespace ban
