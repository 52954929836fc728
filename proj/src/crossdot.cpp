#include "stratlog/crossdot.hpp"

#include <cstdio>
#include <stdexcept>

namespace stratlog::crossdot
{

void validate( const Params& params )
{
    if ( params.m < 2 )
        throw std::invalid_argument( "crossdot needs m >= 2 boxes" );
    if ( params.k < 2 || params.k > params.m )
        throw std::invalid_argument( "crossdot needs 1 < k <= m" );
}

std::string State::str() const
{
    std::string out = "(";
    out += turn1 ? '1' : '0';
    out += ',';
    out += turn2 ? '1' : '0';
    for ( Cell c : boxes )
    {
        out += ',';
        out += static_cast< char >( c );
    }
    return out + ")";
}

State State::parse( std::string_view text )
{
    std::string compact;
    for ( char c : text )
        if ( c != ' ' && c != '\t' )
            compact += c;
    if ( compact.size() < 2 || compact.front() != '(' || compact.back() != ')' )
        throw std::invalid_argument( "crossdot state must look like (1,0,x,o,_,_): '" + std::string( text ) + "'" );

    std::vector< std::string > fields;
    std::string field;
    for ( std::size_t k = 1; k + 1 < compact.size(); ++k )
    {
        if ( compact[ k ] == ',' )
        {
            fields.push_back( field );
            field.clear();
        }
        else
            field += compact[ k ];
    }
    fields.push_back( field );
    if ( fields.size() < 4 )
        throw std::invalid_argument( "crossdot state needs two turn bits and at least two boxes" );

    State s;
    auto bit = [ & ]( const std::string& f ) {
        if ( f != "0" && f != "1" )
            throw std::invalid_argument( "turn bit must be 0 or 1, got '" + f + "'" );
        return f == "1";
    };
    s.turn1 = bit( fields[ 0 ] );
    s.turn2 = bit( fields[ 1 ] );
    for ( std::size_t k = 2; k < fields.size(); ++k )
    {
        const std::string& f = fields[ k ];
        if ( f == "x" )
            s.boxes.push_back( Cell::cross );
        else if ( f == "o" )
            s.boxes.push_back( Cell::dot );
        else if ( f == "_" )
            s.boxes.push_back( Cell::empty );
        else
            throw std::invalid_argument( "box must be x, o or _, got '" + f + "'" );
    }
    return s;
}

std::string action_name( int player, int box )
{
    return "a(" + std::to_string( player ) + "," + std::to_string( box ) + ")";
}

std::string box_prop( int player, int box )
{
    return "p(" + std::to_string( player ) + "," + std::to_string( box ) + ")";
}

std::string turn_prop( int player ) { return "turn(" + std::to_string( player ) + ")"; }

namespace
{

Cell mark( int player ) { return player == 1 ? Cell::cross : Cell::dot; }

// a(i,j) -> (i, j)
std::pair< int, int > parse_action( std::string_view action )
{
    int i = 0, j = 0;
    char tail = 0;
    if ( std::sscanf( std::string( action ).c_str(), "a(%d,%d%c", &i, &j, &tail ) != 3 || tail != ')' )
        throw domain_error( "not a crossdot action: '" + std::string( action ) + "'" );
    return { i, j };
}

int parse_player( std::string_view player )
{
    if ( player == "1" )
        return 1;
    if ( player == "2" )
        return 2;
    throw domain_error( "not a crossdot player: '" + std::string( player ) + "'" );
}

} // namespace

Definition::Definition( Params params ) : _params{ params } { validate( _params ); }

std::vector< std::string > Definition::players() const { return { "1", "2" }; }

std::vector< GameData::Action > Definition::actions() const
{
    std::vector< GameData::Action > out;
    for ( int i = 1; i <= 2; ++i )
        for ( int j = 1; j <= _params.m; ++j )
            out.push_back( { action_name( i, j ), std::to_string( i ) } );
    return out;
}

std::vector< std::string > Definition::propositions() const
{
    std::vector< std::string > out;
    for ( int i = 1; i <= 2; ++i )
        for ( int j = 1; j <= _params.m; ++j )
            out.push_back( box_prop( i, j ) );
    out.push_back( turn_prop( 1 ) );
    out.push_back( turn_prop( 2 ) );
    return out;
}

std::string Definition::initial() const
{
    State s;
    s.boxes.assign( static_cast< std::size_t >( _params.m ), Cell::empty );
    return s.str();
}

State Definition::state( std::string_view text ) const
{
    State s = State::parse( text );
    if ( s.boxes.size() != static_cast< std::size_t >( _params.m ) )
        throw domain_error( "state " + std::string( text ) + " does not have " + std::to_string( _params.m ) +
                            " boxes" );
    return s;
}

bool Definition::wins( int player, const State& s ) const
{
    const Cell c = mark( player );
    int run = 0;
    for ( Cell box : s.boxes )
    {
        run = box == c ? run + 1 : 0;
        if ( run >= _params.k )
            return true;
    }
    return false;
}

bool Definition::terminal( const State& s ) const
{
    if ( wins( 1, s ) || wins( 2, s ) )
        return true;
    for ( Cell box : s.boxes )
        if ( box == Cell::empty )
            return false;
    return true;
}

bool Definition::terminal( std::string_view text ) const { return terminal( state( text ) ); }

bool Definition::legal( std::string_view text, std::string_view action ) const
{
    const State s = state( text );
    const auto [ i, j ] = parse_action( action );
    if ( j < 1 || j > _params.m )
        return false;
    const bool turn = i == 1 ? s.turn1 : s.turn2;
    return s.boxes[ static_cast< std::size_t >( j - 1 ) ] == Cell::empty && turn && !terminal( s );
}

std::string Definition::update( std::string_view action, std::string_view text ) const
{
    State s = state( text );
    const auto [ i, j ] = parse_action( action );
    if ( j < 1 || j > _params.m )
        throw domain_error( "box index out of range in " + std::string( action ) );
    s.boxes[ static_cast< std::size_t >( j - 1 ) ] = mark( i );
    std::swap( s.turn1, s.turn2 );
    return s.str();
}

bool Definition::goal( std::string_view player, std::string_view text ) const
{
    return wins( parse_player( player ), state( text ) );
}

std::vector< std::string > Definition::valuation( std::string_view text ) const
{
    const State s = state( text );
    std::vector< std::string > out;
    if ( s.turn1 )
        out.push_back( turn_prop( 1 ) );
    if ( s.turn2 )
        out.push_back( turn_prop( 2 ) );
    for ( int j = 1; j <= _params.m; ++j )
    {
        const Cell c = s.boxes[ static_cast< std::size_t >( j - 1 ) ];
        if ( c == Cell::cross )
            out.push_back( box_prop( 1, j ) );
        else if ( c == Cell::dot )
            out.push_back( box_prop( 2, j ) );
    }
    return out;
}

Model generate( const Params& params ) { return build_model( explore( Definition( params ) ) ); }

namespace
{

Formula p( int i, int j ) { return Formula::prop( box_prop( i, j ) ); }
Formula turn( int i ) { return Formula::prop( turn_prop( i ) ); }
Formula does( int i, int j ) { return Formula::does( action_name( i, j ) ); }
Formula wins( int i ) { return Formula::wins( std::to_string( i ) ); }
Formula neg( Formula f ) { return Formula::negate( std::move( f ) ); }
Formula all( std::vector< Formula > fs ) { return Formula::conj_all( fs ); }
Formula any( std::vector< Formula > fs ) { return Formula::disj_all( fs ); }

// ~p(1,j) & ~p(2,j) & ...rest
Formula empty_and( int j, std::vector< Formula > rest )
{
    std::vector< Formula > fs{ neg( p( 1, j ) ), neg( p( 2, j ) ) };
    fs.insert( fs.end(), rest.begin(), rest.end() );
    return all( fs );
}

Formula win_condition( const Params& params, int i )
{
    std::vector< Formula > windows;
    for ( int j = 1; j + params.k - 1 <= params.m; ++j )
    {
        std::vector< Formula > run;
        for ( int l = j; l < j + params.k; ++l )
            run.push_back( p( i, l ) );
        windows.push_back( all( run ) );
    }
    return any( windows );
}

} // namespace

std::vector< NamedFormula > axioms( const Params& params )
{
    validate( params );
    const int m = params.m;
    std::vector< NamedFormula > out;
    for ( int i = 1; i <= 2; ++i )
        for ( int j = 1; j <= m; ++j )
            out.push_back( { "init " + box_prop( i, j ), Formula::implies( Formula::init(), neg( p( i, j ) ) ) } );
    out.push_back( { "init turn", Formula::implies( Formula::init(), all( { turn( 1 ), neg( turn( 2 ) ) } ) ) } );
    for ( int i = 1; i <= 2; ++i )
        out.push_back( { "wins(" + std::to_string( i ) + ")", Formula::iff( wins( i ), win_condition( params, i ) ) } );

    std::vector< Formula > filled;
    for ( int j = 1; j <= m; ++j )
        filled.push_back( Formula::disj( p( 1, j ), p( 2, j ) ) );
    out.push_back( { "terminal", Formula::iff( Formula::terminal(), any( { wins( 1 ), wins( 2 ), all( filled ) } ) ) } );

    for ( int i = 1; i <= 2; ++i )
        for ( int j = 1; j <= m; ++j )
            out.push_back( { "legal " + action_name( i, j ),
                             Formula::iff( all( { neg( Formula::disj( p( 1, j ), p( 2, j ) ) ), turn( i ),
                                                  neg( Formula::terminal() ) } ),
                                           Formula::legal( action_name( i, j ) ) ) } );
    for ( int i = 1; i <= 2; ++i )
        for ( int j = 1; j <= m; ++j )
            out.push_back( { "effect " + box_prop( i, j ),
                             Formula::iff( Formula::disj( p( i, j ), does( i, j ) ), Formula::next( p( i, j ) ) ) } );
    for ( int i = 1; i <= 2; ++i )
    {
        const int o = 3 - i;
        out.push_back( { "alternate " + turn_prop( i ),
                         Formula::implies( turn( i ), all( { Formula::next( neg( turn( i ) ) ),
                                                             Formula::next( turn( o ) ) } ) ) } );
    }
    return out;
}

std::vector< std::pair< std::string, Rule > > library( const Params& params, int i )
{
    validate( params );
    if ( i != 1 && i != 2 )
        throw std::invalid_argument( "crossdot player must be 1 or 2" );
    const int m = params.m;
    const int o = 3 - i;
    std::vector< std::pair< std::string, Rule > > out;

    std::vector< Formula > next_to;
    for ( int j = 2; j <= m; ++j )
        next_to.push_back( empty_and( j, { p( i, j - 1 ), does( i, j ) } ) );
    for ( int j = 1; j < m; ++j )
        next_to.push_back( empty_and( j, { p( i, j + 1 ), does( i, j ) } ) );
    const Formula fill_next = any( next_to );

    std::vector< Formula > isolated;
    for ( int j = 2; j < m; ++j )
        isolated.push_back( all( { neg( p( 1, j - 1 ) ), neg( p( 2, j - 1 ) ), neg( p( 1, j + 1 ) ),
                                   neg( p( 2, j + 1 ) ), neg( p( 1, j ) ), neg( p( 2, j ) ), does( i, j ) } ) );
    const Formula fill_isolated = any( isolated );

    std::vector< Formula > anywhere;
    for ( int j = 1; j <= m; ++j )
        anywhere.push_back( empty_and( j, { does( i, j ) } ) );
    const Formula fill_any = any( anywhere );

    const Rule combined = Rule::pd( { fill_next, fill_isolated, fill_any } );

    std::vector< Rule > cs; // c_m .. c_1
    std::vector< Formula > upto;
    std::vector< std::pair< std::string, Rule > > c_defs;
    for ( int t = 1; t <= m; ++t )
    {
        upto.push_back( does( i, t ) );
        c_defs.emplace_back( "c" + std::to_string( t ), Rule( any( upto ) ) );
    }
    for ( int t = m; t >= 1; --t )
        cs.push_back( c_defs[ static_cast< std::size_t >( t - 1 ) ].second );

    auto pc_with = []( Rule head, const std::vector< Rule >& tail ) {
        std::vector< Rule > args{ std::move( head ) };
        args.insert( args.end(), tail.begin(), tail.end() );
        return Rule::pc( std::move( args ) );
    };

    const Rule thoughtful = pc_with( combined, cs );
    const Rule fill_leftmost = Rule::pc( cs );

    std::vector< Formula > guards;
    for ( int j = 1; j <= m; ++j )
        guards.push_back( Formula::implies( Formula::next( all( { does( o, j ), Formula::next( wins( o ) ) } ) ),
                                            does( i, j ) ) );
    const Formula defence = all( guards );
    const Rule cautious = Rule::pd( { pc_with( defence, cs ), thoughtful } );

    std::vector< Formula > left_of, right_of;
    for ( int j = 1; j < m; ++j )
        left_of.push_back( empty_and( j, { p( o, j + 1 ), does( i, j ) } ) );
    for ( int j = 2; j <= m; ++j )
        right_of.push_back( empty_and( j, { p( o, j - 1 ), does( i, j ) } ) );
    const Rule fill_o_next = Rule::pd( { any( left_of ), any( right_of ) } );
    const Rule passive_defence =
        pc_with( Rule::pd( { Rule::pc( { defence, fill_o_next } ), fill_any } ), cs );

    out.emplace_back( "fill_next", fill_next );
    out.emplace_back( "fill_isolated", fill_isolated );
    out.emplace_back( "fill_any", fill_any );
    out.emplace_back( "combined", combined );
    out.insert( out.end(), c_defs.begin(), c_defs.end() );
    out.emplace_back( "thoughtful", thoughtful );
    out.emplace_back( "fill_leftmost", fill_leftmost );
    out.emplace_back( "defence", defence );
    out.emplace_back( "cautious", cautious );
    out.emplace_back( "fill_o_next", fill_o_next );
    out.emplace_back( "passive_defence", passive_defence );
    return out;
}

Definitions library_definitions( const Params& params )
{
    Definitions defs;
    for ( int i = 1; i <= 2; ++i )
        for ( auto& [ name, rule ] : library( params, i ) )
            defs.define( name + "@" + std::to_string( i ), std::move( rule ) );
    return defs;
}

} // namespace stratlog::crossdot
