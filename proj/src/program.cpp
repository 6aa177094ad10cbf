#include "ban/program.hpp"

#include <algorithm>
#include <unordered_map>

namespace ban
{

namespace
{

class Emitter
{
public:
  std::vector<Program::Instr> code;

  std::uint32_t emit( Expr const& e )
  {
    if ( auto it = slot_of_.find( e.id() ); it != slot_of_.end() )
      return it->second;
    std::uint32_t slot;
    switch ( e.op() )
    {
    case Op::var:
      slot = push( { Op::var, static_cast<std::uint32_t>( e.var_index() ) } );
      break;
    case Op::constant:
      slot = push( { Op::constant, e.value() ? 1u : 0u } );
      break;
    case Op::not_:
      slot = push( { Op::not_, emit( e.children()[0] ) } );
      break;
    case Op::ite:
    {
      auto const c = emit( e.children()[0] );
      auto const t = emit( e.children()[1] );
      auto const f = emit( e.children()[2] );
      slot = push( { Op::ite, c, t, f } );
      break;
    }
    default:
    {
      auto acc = emit( e.children()[0] );
      for ( std::size_t k = 1; k < e.children().size(); ++k )
      {
        auto const rhs = emit( e.children()[k] );
        acc = push( { e.op(), acc, rhs } );
      }
      slot = acc;
      break;
    }
    }
    slot_of_.emplace( e.id(), slot );
    return slot;
  }

private:
  std::uint32_t push( Program::Instr in )
  {
    code.push_back( in );
    return static_cast<std::uint32_t>( code.size() - 1u );
  }

  std::unordered_map<void const*, std::uint32_t> slot_of_;
};

} // namespace

Program::Program( Expr const& expr )
{
  Emitter em;
  auto const root = em.emit( expr );
  code_ = std::move( em.code );
  /* the result must sit in the last slot */
  if ( root + 1u != code_.size() )
    code_.push_back( { Op::and_, root, root } );
  support_ = expr.support();
}

CompiledNetwork::CompiledNetwork( Network const& net )
{
  locals_.reserve( net.size() );
  for ( auto const& f : net.locals() )
  {
    locals_.emplace_back( f );
    scratch_ = std::max( scratch_, locals_.back().size() );
  }
}

} // namespace ban
