#include "stratlog/strategy.hpp"

#include <algorithm>
#include <iterator>

namespace stratlog
{

namespace
{

void require_same_player( const Strategy& a, const Strategy& b )
{
    if ( a.player != b.player )
        throw precondition_error( "strategies belong to different players" );
}

// Moves of s grouped by state, in state order.
std::map< StateId, std::vector< ActionId > > by_state( const Strategy& s )
{
    std::map< StateId, std::vector< ActionId > > out;
    for ( const Move& mv : s.moves )
        out[ mv.state ].push_back( mv.action );
    return out;
}

} // namespace

Strategy restrict( const Strategy& s, StateId w )
{
    Strategy out{ s.player, {} };
    auto lo = s.moves.lower_bound( Move{ w, ActionId{ std::uint32_t{ 0 } } } );
    for ( auto it = lo; it != s.moves.end() && it->state == w; ++it )
        out.moves.insert( *it );
    return out;
}

Strategy intersect( const Strategy& a, const Strategy& b )
{
    require_same_player( a, b );
    Strategy out{ a.player, {} };
    std::set_intersection( a.moves.begin(), a.moves.end(), b.moves.begin(), b.moves.end(),
                           std::inserter( out.moves, out.moves.end() ) );
    return out;
}

Strategy unite( const Strategy& a, const Strategy& b )
{
    require_same_player( a, b );
    Strategy out = a;
    out.moves.insert( b.moves.begin(), b.moves.end() );
    return out;
}

bool is_subset( const Strategy& a, const Strategy& b )
{
    require_same_player( a, b );
    return std::includes( b.moves.begin(), b.moves.end(), a.moves.begin(), a.moves.end() );
}

bool is_valid( const Strategy& s ) { return !s.empty(); }

bool is_complete( const Game& game, const Strategy& s )
{
    game.require_terminating();
    for ( StateId w : game.reachable_states() )
    {
        if ( game.player_moves_at( w, s.player ).empty() )
            continue;
        if ( restrict( s, w ).empty() )
            return false;
    }
    return true;
}

bool is_deterministic( const Strategy& s )
{
    std::optional< StateId > last;
    for ( const Move& mv : s.moves )
    {
        if ( last == mv.state )
            return false;
        last = mv.state;
    }
    return true;
}

bool is_functional( const Game& game, const Strategy& s ) { return is_complete( game, s ) && is_deterministic( s ); }

bool is_markovian( const Model& model, const Strategy& s )
{
    const auto reachable = model.g().reachable_states();
    for ( const Move& mv : s.moves )
    {
        const auto props = model.v().props( mv.state );
        for ( StateId w2 : reachable )
        {
            const auto other = model.v().props( w2 );
            if ( !std::equal( props.begin(), props.end(), other.begin(), other.end() ) )
                continue;
            if ( !s.contains( { w2, mv.action } ) )
                return false;
        }
    }
    return true;
}

Formula represent_markovian( const Model& model, const Strategy& s )
{
    if ( !is_markovian( model, s ) )
        throw precondition_error( "strategy is not Markovian" );
    const auto& v = model.v();

    std::vector< Formula > disjuncts;
    for ( const Move& mv : s.moves )
    {
        std::vector< Formula > conjuncts;
        const auto holding = v.props( mv.state );
        for ( PropId p : holding )
            conjuncts.push_back( Formula::prop( v.name( p ) ) );
        for ( std::size_t k = 0; k < v.size(); ++k )
            if ( !std::binary_search( holding.begin(), holding.end(), PropId{ k } ) )
                conjuncts.push_back( Formula::negate( Formula::prop( v.name( PropId{ k } ) ) ) );
        conjuncts.push_back( Formula::does( model.g().action_name( mv.action ) ) );
        Formula d = Formula::conj_all( conjuncts );
        if ( std::find( disjuncts.begin(), disjuncts.end(), d ) == disjuncts.end() )
            disjuncts.push_back( std::move( d ) );
    }
    return Formula::disj_all( disjuncts );
}

FormulaLeafResolver::FormulaLeafResolver( Model model, PlayerId player )
    : _model{ std::move( model ) }, _player{ player }
{
}

Strategy FormulaLeafResolver::resolve( const Formula& leaf ) const
{
    const std::string key = to_string( leaf );
    {
        std::lock_guard lock( _mutex );
        if ( auto it = _cache.find( key ); it != _cache.end() )
            return it->second;
    }
    Strategy s = strategy_of_formula( _model, _player, leaf );
    std::lock_guard lock( _mutex );
    return _cache.emplace( key, std::move( s ) ).first->second;
}

TableLeafResolver::TableLeafResolver( PlayerId player, std::map< std::string, Strategy > table )
    : _player{ player }, _table{ std::move( table ) }
{
}

Strategy TableLeafResolver::resolve( const Formula& leaf ) const
{
    const std::string key = to_string( leaf );
    auto it = _table.find( key );
    if ( it == _table.end() )
        throw domain_error( "no strategy supplied for leaf '" + key + "'" );
    return it->second;
}

Strategy prioritised_disjunction( const std::vector< Strategy >& args )
{
    if ( args.empty() )
        throw precondition_error( "prioritised disjunction needs an argument" );
    Strategy out{ args.front().player, {} };
    std::vector< std::map< StateId, std::vector< ActionId > > > grouped;
    std::set< StateId > states;
    for ( const auto& s : args )
    {
        require_same_player( args.front(), s );
        grouped.push_back( by_state( s ) );
        for ( const auto& [ w, _ ] : grouped.back() )
            states.insert( w );
    }
    for ( StateId w : states )
    {
        for ( const auto& g : grouped )
        {
            auto it = g.find( w );
            if ( it == g.end() )
                continue;
            for ( ActionId a : it->second )
                out.moves.insert( { w, a } );
            break;
        }
    }
    return out;
}

Strategy prioritised_conjunction( const std::vector< Strategy >& args )
{
    if ( args.empty() )
        throw precondition_error( "prioritised conjunction needs an argument" );
    for ( const auto& s : args )
        require_same_player( args.front(), s );
    Strategy out{ args.front().player, {} };
    // The prefix intersections shrink with k, so the greatest k whose
    // intersection is nonempty at w is found by a left-to-right scan.
    for ( const auto& [ w, first ] : by_state( args.front() ) )
    {
        std::vector< ActionId > current = first;
        for ( std::size_t k = 1; k < args.size(); ++k )
        {
            std::vector< ActionId > narrowed;
            for ( ActionId a : current )
                if ( args[ k ].contains( { w, a } ) )
                    narrowed.push_back( a );
            if ( narrowed.empty() )
                break;
            current = std::move( narrowed );
        }
        for ( ActionId a : current )
            out.moves.insert( { w, a } );
    }
    return out;
}

Strategy interpret_rule( const LeafResolver& resolver, const Rule& r )
{
    if ( r.is_leaf() )
    {
        Strategy s = resolver.resolve( r.formula() );
        if ( s.player != resolver.player() )
            throw precondition_error( "leaf '" + to_string( r.formula() ) + "' resolves to another player's strategy" );
        return s;
    }
    std::vector< Strategy > args;
    for ( const Rule& arg : r.args() )
        args.push_back( interpret_rule( resolver, arg ) );
    return r.kind() == Rule::Kind::pd ? prioritised_disjunction( args ) : prioritised_conjunction( args );
}

RuleProperties strategy_properties( const Game& game, Strategy s )
{
    RuleProperties out;
    out.consistent = is_valid( s );
    out.complete = is_complete( game, s );
    out.deterministic = is_deterministic( s );
    out.functional = out.complete && out.deterministic;
    out.strategy = std::move( s );
    return out;
}

RuleProperties rule_properties( const Model& model, PlayerId i, const Rule& r )
{
    FormulaLeafResolver resolver( model, i );
    return strategy_properties( model.g(), interpret_rule( resolver, r ) );
}

} // namespace stratlog
