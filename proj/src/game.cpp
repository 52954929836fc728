#include "stratlog/game.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace stratlog
{

namespace
{

template< typename Id >
std::unordered_map< std::string, Id > index_names( const std::vector< std::string >& names, const char* what )
{
    std::unordered_map< std::string, Id > index;
    for ( std::size_t k = 0; k < names.size(); ++k )
    {
        if ( !index.emplace( names[ k ], Id{ k } ).second )
            throw domain_error( std::string( "duplicate " ) + what + " '" + names[ k ] + "'" );
    }
    return index;
}

template< typename Id >
Id lookup( const std::unordered_map< std::string, Id >& index, std::string_view name, const char* what )
{
    auto it = index.find( std::string( name ) );
    if ( it == index.end() )
        throw domain_error( std::string( "unknown " ) + what + " '" + std::string( name ) + "'" );
    return it->second;
}

} // namespace

GameData explore( const GameDefinition& definition, std::size_t state_limit )
{
    GameData data;
    data.players = definition.players();
    data.actions = definition.actions();
    data.propositions = definition.propositions();
    data.initial = definition.initial();

    std::set< std::string > seen{ data.initial };
    std::deque< std::string > frontier{ data.initial };
    while ( !frontier.empty() )
    {
        std::string state = std::move( frontier.front() );
        frontier.pop_front();

        GameData::State record;
        record.id = state;
        record.terminal = definition.terminal( state );
        for ( const auto& player : data.players )
            if ( definition.goal( player, state ) )
                record.goal.push_back( player );
        record.props = definition.valuation( state );

        for ( const auto& action : data.actions )
        {
            if ( !definition.legal( state, action.id ) )
                continue;
            std::string next = definition.update( action.id, state );
            data.legal.emplace_back( state, action.id );
            data.update.push_back( { action.id, state, next } );
            if ( seen.insert( next ).second )
            {
                if ( seen.size() > state_limit )
                    throw non_terminating_error( "state limit of " + std::to_string( state_limit ) +
                                                 " exceeded while exploring the game" );
                frontier.push_back( std::move( next ) );
            }
        }
        data.states.push_back( std::move( record ) );
    }
    return data;
}

Game::Game( const GameData& data )
{
    if ( data.players.empty() )
        throw domain_error( "game has no players" );
    _players = data.players;
    _player_index = index_names< PlayerId >( _players, "player" );

    for ( const auto& action : data.actions )
    {
        _actions.push_back( action.id );
        _owners.push_back( lookup( _player_index, action.owner, "player" ) );
    }
    _action_index = index_names< ActionId >( _actions, "action" );

    std::vector< std::string > state_names;
    for ( const auto& state : data.states )
        state_names.push_back( state.id );
    _state_index = index_names< StateId >( state_names, "state" );

    _states.resize( data.states.size() );
    for ( std::size_t k = 0; k < data.states.size(); ++k )
    {
        auto& record = _states[ k ];
        record.name = data.states[ k ].id;
        record.terminal = data.states[ k ].terminal;
        record.goal.assign( _players.size(), false );
        for ( const auto& player : data.states[ k ].goal )
            record.goal[ lookup( _player_index, player, "player" ).index() ] = true;
    }
    _initial = lookup( _state_index, data.initial, "state" );

    std::map< std::pair< StateId, ActionId >, StateId > next;
    for ( const auto& t : data.update )
    {
        auto key = std::pair{ lookup( _state_index, t.state, "state" ), lookup( _action_index, t.action, "action" ) };
        auto target = lookup( _state_index, t.next, "state" );
        auto [ it, inserted ] = next.emplace( key, target );
        if ( !inserted && it->second != target )
            throw domain_error( "update is not a function at (" + t.state + ", " + t.action + ")" );
    }
    for ( const auto& [ state_name, action_name ] : data.legal )
    {
        StateId w = lookup( _state_index, state_name, "state" );
        ActionId a = lookup( _action_index, action_name, "action" );
        auto it = next.find( { w, a } );
        if ( it == next.end() )
            throw domain_error( "legal move (" + state_name + ", " + action_name + ") has no update entry" );
        _states[ w.index() ].edges.push_back( { a, it->second } );
    }
    for ( auto& record : _states )
    {
        std::sort( record.edges.begin(), record.edges.end(),
                   []( const Edge& x, const Edge& y ) { return x.action < y.action; } );
        record.edges.erase( std::unique( record.edges.begin(), record.edges.end(),
                                         []( const Edge& x, const Edge& y ) { return x.action == y.action; } ),
                            record.edges.end() );
    }
    analyse();
}

void Game::analyse()
{
    const std::size_t n = _states.size();
    for ( auto& record : _states )
    {
        record.forward = false;
        record.co_reachable = false;
        record.moves.clear();
    }

    // forward reachability
    std::vector< StateId > queue{ _initial };
    _states[ _initial.index() ].forward = true;
    for ( std::size_t head = 0; head < queue.size(); ++head )
    {
        for ( const Edge& e : _states[ queue[ head ].index() ].edges )
        {
            if ( !_states[ e.next.index() ].forward )
            {
                _states[ e.next.index() ].forward = true;
                queue.push_back( e.next );
            }
        }
    }

    // cycle detection over the forward graph (iterative three-colour DFS)
    _termination = {};
    {
        enum class colour : unsigned char { white, grey, black };
        std::vector< colour > mark( n, colour::white );
        struct Frame
        {
            StateId state;
            std::size_t edge;
        };
        std::vector< Frame > stack{ { _initial, 0 } };
        mark[ _initial.index() ] = colour::grey;
        while ( !stack.empty() && _termination.terminating )
        {
            Frame& top = stack.back();
            const auto& edges = _states[ top.state.index() ].edges;
            if ( top.edge == edges.size() )
            {
                mark[ top.state.index() ] = colour::black;
                stack.pop_back();
                continue;
            }
            const Edge e = edges[ top.edge++ ];
            if ( mark[ e.next.index() ] == colour::grey )
            {
                Path cycle;
                auto start = std::find_if( stack.begin(), stack.end(),
                                           [ & ]( const Frame& f ) { return f.state == e.next; } );
                for ( auto it = start; it != stack.end(); ++it )
                {
                    cycle.states.push_back( it->state );
                    // the edge taken out of each frame is the one before its cursor
                    if ( std::next( it ) != stack.end() )
                        cycle.actions.push_back( _states[ it->state.index() ].edges[ it->edge - 1 ].action );
                }
                cycle.actions.push_back( e.action );
                cycle.states.push_back( e.next );
                _termination = { false, std::move( cycle ) };
            }
            else if ( mark[ e.next.index() ] == colour::white )
            {
                mark[ e.next.index() ] = colour::grey;
                stack.push_back( { e.next, 0 } );
            }
        }
    }

    // co-reachability to a terminal state over reversed legal edges
    std::vector< std::vector< StateId > > reverse( n );
    for ( std::size_t k = 0; k < n; ++k )
        for ( const Edge& e : _states[ k ].edges )
            reverse[ e.next.index() ].push_back( StateId{ k } );
    queue.clear();
    for ( std::size_t k = 0; k < n; ++k )
    {
        if ( _states[ k ].terminal )
        {
            _states[ k ].co_reachable = true;
            queue.push_back( StateId{ k } );
        }
    }
    for ( std::size_t head = 0; head < queue.size(); ++head )
    {
        for ( StateId prev : reverse[ queue[ head ].index() ] )
        {
            if ( !_states[ prev.index() ].co_reachable )
            {
                _states[ prev.index() ].co_reachable = true;
                queue.push_back( prev );
            }
        }
    }

    for ( auto& record : _states )
    {
        if ( !record.forward )
            continue;
        for ( const Edge& e : record.edges )
            if ( _states[ e.next.index() ].co_reachable )
                record.moves.push_back( e );
    }
}

Game Game::restrict_legality( const std::function< bool( StateId, ActionId ) >& keep ) const
{
    Game reduced = *this;
    for ( std::size_t k = 0; k < reduced._states.size(); ++k )
    {
        auto& edges = reduced._states[ k ].edges;
        std::erase_if( edges, [ & ]( const Edge& e ) { return !keep( StateId{ k }, e.action ); } );
    }
    reduced.analyse();
    return reduced;
}

const std::string& Game::player_name( PlayerId i ) const
{
    if ( i.index() >= _players.size() )
        throw domain_error( "player index out of range" );
    return _players[ i.index() ];
}

const std::string& Game::action_name( ActionId a ) const
{
    if ( a.index() >= _actions.size() )
        throw domain_error( "action index out of range" );
    return _actions[ a.index() ];
}

const std::string& Game::state_name( StateId w ) const
{
    if ( w.index() >= _states.size() )
        throw domain_error( "state index out of range" );
    return _states[ w.index() ].name;
}

PlayerId Game::owner( ActionId a ) const
{
    if ( a.index() >= _owners.size() )
        throw domain_error( "action index out of range" );
    return _owners[ a.index() ];
}

std::optional< PlayerId > Game::find_player( std::string_view name ) const
{
    auto it = _player_index.find( std::string( name ) );
    return it == _player_index.end() ? std::nullopt : std::optional{ it->second };
}

std::optional< ActionId > Game::find_action( std::string_view name ) const
{
    auto it = _action_index.find( std::string( name ) );
    return it == _action_index.end() ? std::nullopt : std::optional{ it->second };
}

std::optional< StateId > Game::find_state( std::string_view name ) const
{
    auto it = _state_index.find( std::string( name ) );
    return it == _state_index.end() ? std::nullopt : std::optional{ it->second };
}

PlayerId Game::player( std::string_view name ) const { return lookup( _player_index, name, "player" ); }
ActionId Game::action( std::string_view name ) const { return lookup( _action_index, name, "action" ); }
StateId Game::state( std::string_view name ) const { return lookup( _state_index, name, "state" ); }

bool Game::is_terminal( StateId w ) const { return _states.at( w.index() ).terminal; }

bool Game::is_goal( PlayerId i, StateId w ) const { return _states.at( w.index() ).goal.at( i.index() ); }

std::span< const Edge > Game::legal_edges( StateId w ) const { return _states.at( w.index() ).edges; }

bool Game::is_legal( StateId w, ActionId a ) const { return successor( w, a ).has_value(); }

std::optional< StateId > Game::successor( StateId w, ActionId a ) const
{
    const auto& edges = _states.at( w.index() ).edges;
    auto it = std::lower_bound( edges.begin(), edges.end(), a,
                                []( const Edge& e, ActionId x ) { return e.action < x; } );
    if ( it == edges.end() || it->action != a )
        return std::nullopt;
    return it->next;
}

std::vector< ActionId > Game::legal_actions( StateId w, PlayerId i ) const
{
    if ( w.index() >= _states.size() )
        throw domain_error( "unknown state index" );
    if ( i.index() >= _players.size() )
        throw domain_error( "unknown player index" );
    std::vector< ActionId > out;
    for ( const Edge& e : _states[ w.index() ].edges )
        if ( _owners[ e.action.index() ] == i )
            out.push_back( e.action );
    return out;
}

void Game::require_terminating() const
{
    if ( _termination.terminating )
        return;
    throw non_terminating_error( "game is not finitely terminating; witness cycle: " +
                                 render_path( *this, *_termination.cycle ) );
}

bool Game::is_reachable( StateId w ) const
{
    const auto& record = _states.at( w.index() );
    return record.forward && record.co_reachable;
}

bool Game::is_forward_reachable( StateId w ) const { return _states.at( w.index() ).forward; }
bool Game::is_co_reachable( StateId w ) const { return _states.at( w.index() ).co_reachable; }

std::vector< StateId > Game::reachable_states() const
{
    std::vector< StateId > out;
    for ( std::size_t k = 0; k < _states.size(); ++k )
        if ( _states[ k ].forward && _states[ k ].co_reachable )
            out.emplace_back( k );
    return out;
}

std::vector< StateId > Game::dead_ends() const
{
    std::vector< StateId > out;
    for ( std::size_t k = 0; k < _states.size(); ++k )
        if ( _states[ k ].forward && !_states[ k ].co_reachable )
            out.emplace_back( k );
    return out;
}

std::span< const Edge > Game::moves_at( StateId w ) const { return _states.at( w.index() ).moves; }

bool Game::is_move( Move mv ) const
{
    if ( mv.state.index() >= _states.size() )
        return false;
    const auto& moves = _states[ mv.state.index() ].moves;
    return std::any_of( moves.begin(), moves.end(), [ & ]( const Edge& e ) { return e.action == mv.action; } );
}

std::vector< Move > Game::omega() const
{
    std::vector< Move > out;
    for ( std::size_t k = 0; k < _states.size(); ++k )
        for ( const Edge& e : _states[ k ].moves )
            out.push_back( { StateId{ k }, e.action } );
    return out;
}

std::vector< Move > Game::omega( PlayerId i ) const
{
    std::vector< Move > out;
    for ( std::size_t k = 0; k < _states.size(); ++k )
        for ( const Edge& e : _states[ k ].moves )
            if ( _owners[ e.action.index() ] == i )
                out.push_back( { StateId{ k }, e.action } );
    return out;
}

std::vector< ActionId > Game::player_moves_at( StateId w, PlayerId i ) const
{
    std::vector< ActionId > out;
    for ( const Edge& e : moves_at( w ) )
        if ( _owners[ e.action.index() ] == i )
            out.push_back( e.action );
    return out;
}

bool Game::is_reachable_path( const Path& path ) const
{
    if ( path.states.empty() || path.states.size() != path.actions.size() + 1 )
        return false;
    if ( !is_reachable( path.states.front() ) )
        return false;
    for ( std::size_t k = 0; k < path.actions.size(); ++k )
    {
        if ( !is_move( { path.states[ k ], path.actions[ k ] } ) )
            return false;
        if ( successor( path.states[ k ], path.actions[ k ] ) != path.states[ k + 1 ] )
            return false;
    }
    return true;
}

Valuation::Valuation( std::vector< std::string > propositions, std::vector< std::vector< PropId > > per_state )
    : _names{ std::move( propositions ) }, _per_state{ std::move( per_state ) }
{
    _index = index_names< PropId >( _names, "proposition" );
    for ( auto& props : _per_state )
    {
        std::sort( props.begin(), props.end() );
        props.erase( std::unique( props.begin(), props.end() ), props.end() );
    }
}

const std::string& Valuation::name( PropId p ) const { return _names.at( p.index() ); }

std::optional< PropId > Valuation::find( std::string_view name ) const
{
    auto it = _index.find( std::string( name ) );
    return it == _index.end() ? std::nullopt : std::optional{ it->second };
}

std::span< const PropId > Valuation::props( StateId w ) const { return _per_state.at( w.index() ); }

bool Valuation::holds( StateId w, PropId p ) const
{
    const auto& props = _per_state.at( w.index() );
    return std::binary_search( props.begin(), props.end(), p );
}

Model build_model( const GameData& data )
{
    auto game = std::make_shared< const Game >( data );

    std::set< std::string > names( data.propositions.begin(), data.propositions.end() );
    for ( const auto& state : data.states )
        names.insert( state.props.begin(), state.props.end() );
    std::vector< std::string > sorted( names.begin(), names.end() );
    std::unordered_map< std::string, PropId > index;
    for ( std::size_t k = 0; k < sorted.size(); ++k )
        index.emplace( sorted[ k ], PropId{ k } );

    std::vector< std::vector< PropId > > per_state( data.states.size() );
    for ( std::size_t k = 0; k < data.states.size(); ++k )
        for ( const auto& p : data.states[ k ].props )
            per_state[ game->state( data.states[ k ].id ).index() ].push_back( index.at( p ) );

    return { std::move( game ), std::make_shared< const Valuation >( std::move( sorted ), std::move( per_state ) ) };
}

PathEnumerator::PathEnumerator( std::shared_ptr< const Game > game, std::optional< std::size_t > max_len )
    : _game{ std::move( game ) }, _max_len{ max_len }
{
    _game->require_terminating();
    _roots = _game->reachable_states();
}

std::optional< Path > PathEnumerator::next()
{
    auto current = [ this ] {
        Path path;
        for ( const Frame& f : _stack )
            path.states.push_back( f.state );
        path.actions = _actions;
        return path;
    };

    while ( true )
    {
        if ( _stack.empty() )
        {
            if ( _root >= _roots.size() )
                return std::nullopt;
            _stack.push_back( { _roots[ _root++ ], 0 } );
            return current();
        }
        Frame& top = _stack.back();
        auto moves = _game->moves_at( top.state );
        const bool can_extend = !_max_len || _actions.size() < *_max_len;
        if ( can_extend && top.edge < moves.size() )
        {
            const Edge e = moves[ top.edge++ ];
            _actions.push_back( e.action );
            _stack.push_back( { e.next, 0 } );
            return current();
        }
        _stack.pop_back();
        if ( !_actions.empty() )
            _actions.pop_back();
    }
}

PathEnumerator reachable_paths( const std::shared_ptr< const Game >& game, std::optional< std::size_t > max_len )
{
    return PathEnumerator( game, max_len );
}

void for_each_complete_path( const Game& game, const std::function< bool( const Path& ) >& visit )
{
    game.require_terminating();
    if ( !game.is_reachable( game.initial() ) )
        return;

    Path path;
    path.states.push_back( game.initial() );
    std::vector< std::size_t > cursor{ 0 };
    bool stop = game.is_terminal( game.initial() ) && !visit( path );
    while ( !cursor.empty() && !stop )
    {
        auto moves = game.moves_at( path.states.back() );
        if ( cursor.back() == moves.size() )
        {
            cursor.pop_back();
            path.states.pop_back();
            if ( !path.actions.empty() )
                path.actions.pop_back();
            continue;
        }
        const Edge e = moves[ cursor.back()++ ];
        path.actions.push_back( e.action );
        path.states.push_back( e.next );
        cursor.push_back( 0 );
        if ( game.is_terminal( e.next ) && !visit( path ) )
            stop = true;
    }
}

std::vector< Path > complete_paths( const Game& game )
{
    std::vector< Path > out;
    for_each_complete_path( game, [ & ]( const Path& p ) {
        out.push_back( p );
        return true;
    } );
    return out;
}

std::string render_path( const Game& game, const Path& path )
{
    std::ostringstream out;
    for ( std::size_t k = 0; k < path.states.size(); ++k )
    {
        if ( k > 0 )
            out << " -" << game.action_name( path.actions[ k - 1 ] ) << "-> ";
        out << game.state_name( path.states[ k ] );
    }
    return out.str();
}

std::string render_move( const Game& game, Move mv )
{
    return game.state_name( mv.state ) + ":" + game.action_name( mv.action );
}

} // namespace stratlog
