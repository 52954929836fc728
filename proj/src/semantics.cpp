#include "stratlog/semantics.hpp"

namespace stratlog
{

Evaluator::Evaluator( const Model& model, const Formula& f ) : _model{ &model }, _depth{ f.modal_depth() }
{
    _root = compile( f );
}

int Evaluator::compile( const Formula& f )
{
    using K = Formula::Kind;
    Node node{ f.kind() };
    switch ( f.kind() )
    {
    case K::prop:
    {
        auto p = _model->v().find( f.name() );
        if ( !p )
            throw domain_error( "unknown proposition '" + f.name() + "'" );
        node.id = p->value;
        break;
    }
    case K::does:
    case K::legal: node.id = _model->g().action( f.name() ).value; break;
    case K::wins: node.id = _model->g().player( f.name() ).value; break;
    case K::init:
    case K::terminal: break;
    case K::negation:
    case K::next: node.lhs = compile( f.operand() ); break;
    case K::conjunction:
        node.lhs = compile( f.lhs() );
        node.rhs = compile( f.rhs() );
        break;
    }
    _nodes.push_back( node );
    return static_cast< int >( _nodes.size() ) - 1;
}

bool Evaluator::satisfied( const Path& path, std::size_t offset ) const { return eval( _root, path, offset ); }

bool Evaluator::eval( int index, const Path& path, std::size_t k ) const
{
    using K = Formula::Kind;
    const Node& n = _nodes[ static_cast< std::size_t >( index ) ];
    const StateId w = path.states[ k ];
    const bool singleton = k == path.actions.size();
    switch ( n.kind )
    {
    case K::prop: return _model->v().holds( w, PropId{ n.id } );
    case K::does: return singleton || path.actions[ k ] == ActionId{ n.id };
    case K::legal: return _model->g().is_legal( w, ActionId{ n.id } );
    case K::wins: return _model->g().is_goal( PlayerId{ n.id }, w );
    case K::init: return w == _model->g().initial();
    case K::terminal: return _model->g().is_terminal( w );
    case K::negation: return !eval( n.lhs, path, k );
    case K::conjunction: return eval( n.lhs, path, k ) && eval( n.rhs, path, k );
    case K::next: return singleton || eval( n.lhs, path, k + 1 );
    }
    return false;
}

bool satisfies( const Model& model, const Path& path, const Formula& f )
{
    if ( !model.g().is_reachable_path( path ) )
        throw precondition_error( "path is not a reachable path of the model" );
    return Evaluator( model, f ).satisfied( path );
}

Judgment model_valid( const Model& model, const Formula& f )
{
    Evaluator eval( model, f );
    // Atoms read the first state/action only and each X consumes one move, so
    // paths longer than depth+1 moves agree with their prefix of that length.
    PathEnumerator paths( model.game, f.modal_depth() + 1 );
    while ( auto path = paths.next() )
    {
        if ( !eval.satisfied( *path ) )
            return { false, std::move( *path ) };
    }
    return { true, std::nullopt };
}

namespace
{

// Depth-first walk over every prefix (>= 1 move) of the continuation tree of
// the move, at most max_len moves long. Returns the first falsifying prefix.
std::optional< Path > find_counterexample( const Game& game, Move mv, const Evaluator& eval, std::size_t max_len )
{
    Path path;
    path.states.push_back( mv.state );
    path.actions.push_back( mv.action );
    path.states.push_back( *game.successor( mv.state, mv.action ) );
    if ( !eval.satisfied( path ) )
        return path;

    std::vector< std::size_t > cursor{ 0 };
    while ( !cursor.empty() )
    {
        auto moves = game.moves_at( path.states.back() );
        if ( path.actions.size() >= max_len || cursor.back() == moves.size() )
        {
            cursor.pop_back();
            if ( path.actions.size() > 1 )
            {
                path.actions.pop_back();
                path.states.pop_back();
            }
            continue;
        }
        const Edge e = moves[ cursor.back()++ ];
        path.actions.push_back( e.action );
        path.states.push_back( e.next );
        if ( !eval.satisfied( path ) )
            return path;
        cursor.push_back( 0 );
    }
    return std::nullopt;
}

} // namespace

Judgment valid_under_move( const Model& model, Move mv, const Formula& f )
{
    model.g().require_terminating();
    if ( !model.g().is_move( mv ) )
        throw precondition_error( "not a reachable move: " + render_move( model.g(), mv ) );
    Evaluator eval( model, f );
    if ( auto witness = find_counterexample( model.g(), mv, eval, f.modal_depth() + 1 ) )
        return { false, std::move( witness ) };
    return { true, std::nullopt };
}

Strategy strategy_of_formula( const Model& model, PlayerId i, const Formula& f )
{
    model.g().require_terminating();
    Evaluator eval( model, f );
    Strategy out{ i, {} };
    for ( const Move& mv : model.g().omega( i ) )
        if ( !find_counterexample( model.g(), mv, eval, f.modal_depth() + 1 ) )
            out.moves.insert( mv );
    return out;
}

} // namespace stratlog
