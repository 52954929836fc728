#include "stratlog/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace stratlog
{

struct Formula::Node
{
    Kind kind;
    std::string name;
    std::vector< Formula > children;
    std::size_t depth = 0;
    std::size_t size = 1;
};

Formula::Formula( std::shared_ptr< const Node > node ) : _node{ std::move( node ) } {}

Formula Formula::prop( std::string name )
{
    return Formula( std::make_shared< const Node >( Node{ Kind::prop, std::move( name ), {} } ) );
}

Formula Formula::does( std::string action )
{
    return Formula( std::make_shared< const Node >( Node{ Kind::does, std::move( action ), {} } ) );
}

Formula Formula::legal( std::string action )
{
    return Formula( std::make_shared< const Node >( Node{ Kind::legal, std::move( action ), {} } ) );
}

Formula Formula::wins( std::string player )
{
    return Formula( std::make_shared< const Node >( Node{ Kind::wins, std::move( player ), {} } ) );
}

Formula Formula::init()
{
    static const Formula f( std::make_shared< const Node >( Node{ Kind::init, {}, {} } ) );
    return f;
}

Formula Formula::terminal()
{
    static const Formula f( std::make_shared< const Node >( Node{ Kind::terminal, {}, {} } ) );
    return f;
}

Formula Formula::negate( Formula f )
{
    Node node{ Kind::negation, {}, { f } };
    node.depth = f.modal_depth();
    node.size = f.size() + 1;
    return Formula( std::make_shared< const Node >( std::move( node ) ) );
}

Formula Formula::conj( Formula lhs, Formula rhs )
{
    Node node{ Kind::conjunction, {}, { lhs, rhs } };
    node.depth = std::max( lhs.modal_depth(), rhs.modal_depth() );
    node.size = lhs.size() + rhs.size() + 1;
    return Formula( std::make_shared< const Node >( std::move( node ) ) );
}

Formula Formula::next( Formula f )
{
    Node node{ Kind::next, {}, { f } };
    node.depth = f.modal_depth() + 1;
    node.size = f.size() + 1;
    return Formula( std::make_shared< const Node >( std::move( node ) ) );
}

Formula Formula::falsum()
{
    static const Formula f = conj( init(), negate( init() ) );
    return f;
}

Formula Formula::verum()
{
    static const Formula f = negate( falsum() );
    return f;
}

Formula Formula::disj( Formula lhs, Formula rhs ) { return negate( conj( negate( lhs ), negate( rhs ) ) ); }

Formula Formula::implies( Formula lhs, Formula rhs ) { return negate( conj( lhs, negate( rhs ) ) ); }

Formula Formula::iff( Formula lhs, Formula rhs ) { return conj( implies( lhs, rhs ), implies( rhs, lhs ) ); }

Formula Formula::conj_all( const std::vector< Formula >& fs )
{
    if ( fs.empty() )
        return verum();
    Formula acc = fs.front();
    for ( std::size_t k = 1; k < fs.size(); ++k )
        acc = conj( acc, fs[ k ] );
    return acc;
}

Formula Formula::disj_all( const std::vector< Formula >& fs )
{
    if ( fs.empty() )
        return falsum();
    Formula acc = fs.front();
    for ( std::size_t k = 1; k < fs.size(); ++k )
        acc = disj( acc, fs[ k ] );
    return acc;
}

Formula::Kind Formula::kind() const { return _node->kind; }
const std::string& Formula::name() const { return _node->name; }

const Formula& Formula::operand() const
{
    if ( _node->kind != Kind::negation && _node->kind != Kind::next )
        throw std::logic_error( "formula has no single operand" );
    return _node->children.front();
}

const Formula& Formula::lhs() const
{
    if ( _node->kind != Kind::conjunction )
        throw std::logic_error( "formula is not a conjunction" );
    return _node->children[ 0 ];
}

const Formula& Formula::rhs() const
{
    if ( _node->kind != Kind::conjunction )
        throw std::logic_error( "formula is not a conjunction" );
    return _node->children[ 1 ];
}

bool Formula::is_atom() const { return _node->children.empty(); }
std::size_t Formula::modal_depth() const { return _node->depth; }
std::size_t Formula::size() const { return _node->size; }

bool Formula::operator==( const Formula& other ) const
{
    if ( _node == other._node )
        return true;
    if ( _node->kind != other._node->kind || _node->size != other._node->size || _node->name != other._node->name )
        return false;
    return _node->children == other._node->children;
}

namespace
{

// Binding strength, loosest first.
enum prec : int
{
    p_iff = 0,
    p_imp = 1,
    p_or = 2,
    p_and = 3,
    p_unary = 4,
    p_atom = 5,
};

bool is_false( const Formula& f ) { return f == Formula::falsum(); }

bool is_true( const Formula& f ) { return f == Formula::verum(); }

// ~(~a & ~b)
bool as_or( const Formula& f, Formula& a, Formula& b )
{
    if ( f.kind() != Formula::Kind::negation || f.operand().kind() != Formula::Kind::conjunction )
        return false;
    const auto& c = f.operand();
    if ( c.lhs().kind() != Formula::Kind::negation || c.rhs().kind() != Formula::Kind::negation )
        return false;
    a = c.lhs().operand();
    b = c.rhs().operand();
    return true;
}

// ~(a & ~b)
bool as_imp( const Formula& f, Formula& a, Formula& b )
{
    if ( f.kind() != Formula::Kind::negation || f.operand().kind() != Formula::Kind::conjunction )
        return false;
    const auto& c = f.operand();
    if ( c.rhs().kind() != Formula::Kind::negation )
        return false;
    a = c.lhs();
    b = c.rhs().operand();
    return true;
}

// (a -> b) & (b -> a)
bool as_iff( const Formula& f, Formula& a, Formula& b )
{
    if ( f.kind() != Formula::Kind::conjunction )
        return false;
    Formula a1 = f, b1 = f, a2 = f, b2 = f;
    if ( !as_imp( f.lhs(), a1, b1 ) || !as_imp( f.rhs(), a2, b2 ) )
        return false;
    if ( !( a1 == b2 ) || !( b1 == a2 ) )
        return false;
    a = a1;
    b = b1;
    return true;
}

void print( const Formula& f, int required, std::string& out );

void print_binary( const Formula& a, const char* op, const Formula& b, int own, int lhs_prec, int rhs_prec,
                   int required, std::string& out )
{
    const bool wrap = own < required;
    if ( wrap )
        out += '(';
    print( a, lhs_prec, out );
    out += ' ';
    out += op;
    out += ' ';
    print( b, rhs_prec, out );
    if ( wrap )
        out += ')';
}

void print( const Formula& f, int required, std::string& out )
{
    using K = Formula::Kind;
    if ( is_false( f ) )
    {
        out += "false";
        return;
    }
    if ( is_true( f ) )
    {
        out += "true";
        return;
    }
    Formula a = f, b = f;
    switch ( f.kind() )
    {
    case K::prop: out += f.name(); return;
    case K::does: out += "does(" + f.name() + ")"; return;
    case K::legal: out += "legal(" + f.name() + ")"; return;
    case K::wins: out += "wins(" + f.name() + ")"; return;
    case K::init: out += "init"; return;
    case K::terminal: out += "terminal"; return;
    case K::next:
        if ( p_unary < required )
            out += '(';
        out += "X ";
        print( f.operand(), p_unary, out );
        if ( p_unary < required )
            out += ')';
        return;
    case K::negation:
        if ( as_or( f, a, b ) )
            return print_binary( a, "|", b, p_or, p_or, p_or + 1, required, out );
        if ( as_imp( f, a, b ) )
            return print_binary( a, "->", b, p_imp, p_imp + 1, p_imp, required, out );
        if ( p_unary < required )
            out += '(';
        out += '~';
        print( f.operand(), p_unary, out );
        if ( p_unary < required )
            out += ')';
        return;
    case K::conjunction:
        if ( as_iff( f, a, b ) )
            return print_binary( a, "<->", b, p_iff, p_iff, p_iff + 1, required, out );
        return print_binary( f.lhs(), "&", f.rhs(), p_and, p_and, p_and + 1, required, out );
    }
}

} // namespace

std::string to_string( const Formula& f )
{
    std::string out;
    print( f, p_iff, out );
    return out;
}

Rule::Rule( Formula f ) : _kind{ Kind::leaf }, _leaf{ std::move( f ) } {}

Rule::Rule( Kind kind, std::vector< Rule > args ) : _kind{ kind }, _args{ std::move( args ) } {}

Rule Rule::pd( std::vector< Rule > args )
{
    if ( args.empty() )
        throw std::invalid_argument( "PD requires at least one argument" );
    if ( args.size() == 1 )
        return std::move( args.front() );
    return Rule( Kind::pd, std::move( args ) );
}

Rule Rule::pc( std::vector< Rule > args )
{
    if ( args.empty() )
        throw std::invalid_argument( "PC requires at least one argument" );
    if ( args.size() == 1 )
        return std::move( args.front() );
    return Rule( Kind::pc, std::move( args ) );
}

const Formula& Rule::formula() const
{
    if ( _kind != Kind::leaf )
        throw std::logic_error( "rule is not a formula leaf" );
    return _leaf.front();
}

std::size_t Rule::modal_depth() const
{
    if ( is_leaf() )
        return formula().modal_depth();
    std::size_t depth = 0;
    for ( const auto& arg : _args )
        depth = std::max( depth, arg.modal_depth() );
    return depth;
}

std::vector< Formula > Rule::leaves() const
{
    if ( is_leaf() )
        return { formula() };
    std::vector< Formula > out;
    for ( const auto& arg : _args )
    {
        auto sub = arg.leaves();
        out.insert( out.end(), sub.begin(), sub.end() );
    }
    return out;
}

bool Rule::operator==( const Rule& other ) const
{
    return _kind == other._kind && _leaf == other._leaf && _args == other._args;
}

std::string to_string( const Rule& r )
{
    if ( r.is_leaf() )
        return to_string( r.formula() );
    std::string out = r.kind() == Rule::Kind::pd ? "PD[" : "PC[";
    for ( std::size_t k = 0; k < r.args().size(); ++k )
    {
        if ( k > 0 )
            out += ", ";
        out += to_string( r.args()[ k ] );
    }
    out += ']';
    return out;
}

} // namespace stratlog
