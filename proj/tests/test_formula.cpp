#include "oracle.hpp"

#include "stratlog/parser.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace stratlog;

namespace
{

Formula p( const std::string& n ) { return Formula::prop( n ); }

std::string roundtrip_text( const std::string& text ) { return to_string( parse_rule( text ) ); }

std::size_t error_position( const std::string& text )
{
    try
    {
        (void)parse_rule( text );
    }
    catch ( const parse_error& e )
    {
        return e.position();
    }
    ADD_FAILURE() << "accepted '" << text << "'";
    return std::string::npos;
}

} // namespace

TEST( FormulaSyntax, AtomsAndConnectives )
{
    EXPECT_EQ( parse_formula( "p(1,1)" ), p( "p(1,1)" ) );
    EXPECT_EQ( parse_formula( "does(a(1,2))" ), Formula::does( "a(1,2)" ) );
    EXPECT_EQ( parse_formula( "legal(a(2,1))" ), Formula::legal( "a(2,1)" ) );
    EXPECT_EQ( parse_formula( "wins(2)" ), Formula::wins( "2" ) );
    EXPECT_EQ( parse_formula( "init" ), Formula::init() );
    EXPECT_EQ( parse_formula( "terminal" ), Formula::terminal() );
    EXPECT_EQ( parse_formula( "~ X turn(1)" ), Formula::negate( Formula::next( p( "turn(1)" ) ) ) );
    EXPECT_EQ( parse_formula( "X X does(a(2,1))" ), Formula::next( Formula::next( Formula::does( "a(2,1)" ) ) ) );
}

TEST( FormulaSyntax, SugarExpandsToCoreConnectives )
{
    const Formula a = p( "a" ), b = p( "b" );
    EXPECT_EQ( Formula::falsum(), Formula::conj( Formula::init(), Formula::negate( Formula::init() ) ) );
    EXPECT_EQ( Formula::verum(), Formula::negate( Formula::falsum() ) );
    EXPECT_EQ( parse_formula( "a | b" ), Formula::negate( Formula::conj( Formula::negate( a ), Formula::negate( b ) ) ) );
    EXPECT_EQ( parse_formula( "a -> b" ), Formula::negate( Formula::conj( a, Formula::negate( b ) ) ) );
    EXPECT_EQ( parse_formula( "a <-> b" ), Formula::conj( Formula::implies( a, b ), Formula::implies( b, a ) ) );
    EXPECT_EQ( parse_formula( "true" ), Formula::verum() );
    EXPECT_EQ( parse_formula( "false" ), Formula::falsum() );
    EXPECT_EQ( to_string( Formula::verum() ), "true" );
    EXPECT_EQ( to_string( Formula::falsum() ), "false" );
}

TEST( FormulaSyntax, PrecedenceAndAssociativity )
{
    const Formula a = p( "a" ), b = p( "b" ), c = p( "c" );
    EXPECT_EQ( parse_formula( "a | b & c" ), Formula::disj( a, Formula::conj( b, c ) ) );
    EXPECT_EQ( parse_formula( "a & b | c" ), Formula::disj( Formula::conj( a, b ), c ) );
    EXPECT_EQ( parse_formula( "a -> b -> c" ), Formula::implies( a, Formula::implies( b, c ) ) );
    EXPECT_EQ( parse_formula( "a <-> b <-> c" ), Formula::iff( Formula::iff( a, b ), c ) );
    EXPECT_EQ( parse_formula( "a -> b <-> c" ), Formula::iff( Formula::implies( a, b ), c ) );
    EXPECT_EQ( parse_formula( "~a & b" ), Formula::conj( Formula::negate( a ), b ) );
    EXPECT_EQ( parse_formula( "X a & b" ), Formula::conj( Formula::next( a ), b ) );
    EXPECT_EQ( parse_formula( "a & b & c" ), Formula::conj( Formula::conj( a, b ), c ) );
}

TEST( FormulaSyntax, PrinterUsesMinimalParentheses )
{
    EXPECT_EQ( roundtrip_text( "(a | b) & c" ), "(a | b) & c" );
    EXPECT_EQ( roundtrip_text( "a | (b & c)" ), "a | b & c" );
    EXPECT_EQ( roundtrip_text( "a -> (b -> c)" ), "a -> b -> c" );
    EXPECT_EQ( roundtrip_text( "(a <-> b) <-> c" ), "a <-> b <-> c" );
    EXPECT_EQ( roundtrip_text( "X ~X a" ), "X ~X a" );
    EXPECT_EQ( roundtrip_text( "legal(a(1,1)) & terminal & wins(2)" ), "legal(a(1,1)) & terminal & wins(2)" );
    EXPECT_EQ( roundtrip_text( "PC[a, PD[b|c, X true]]" ), "PC[a, PD[b | c, X true]]" );
}

TEST( FormulaSyntax, RulesAndArity )
{
    const Rule r = parse_rule( "PD[p(1,1), PC[init, X terminal, wins(1)]]" );
    ASSERT_EQ( r.kind(), Rule::Kind::pd );
    ASSERT_EQ( r.args().size(), 2u );
    EXPECT_EQ( r.args()[ 1 ].kind(), Rule::Kind::pc );
    EXPECT_EQ( r.args()[ 1 ].args().size(), 3u );
    EXPECT_EQ( r.leaves().size(), 4u );
    EXPECT_EQ( r.modal_depth(), 1u );

    EXPECT_EQ( parse_rule( "PD[a]" ), Rule( p( "a" ) ) ); // a one-argument combination is its argument
    EXPECT_EQ( parse_rule( "PC[PD[a, b]]" ), parse_rule( "PD[a, b]" ) );
    EXPECT_THROW( (void)parse_rule( "PD[]" ), parse_error );
    EXPECT_THROW( (void)parse_rule( "PC[]" ), parse_error );
    EXPECT_THROW( (void)Rule::pd( {} ), std::invalid_argument );
    EXPECT_THROW( (void)parse_formula( "PD[a, b]" ), parse_error );
    EXPECT_THROW( (void)parse_rule( "p(1,1) -> PD[x, y]" ), parse_error );
    EXPECT_THROW( (void)parse_rule( "~PC[x]" ), parse_error );
}

TEST( FormulaSyntax, ErrorsCarryPositions )
{
    EXPECT_EQ( error_position( "a & " ), 4u );
    EXPECT_EQ( error_position( "(a | b" ), 6u );
    EXPECT_EQ( error_position( "a b" ), 2u );
    EXPECT_EQ( error_position( "does()" ), 5u );
    EXPECT_EQ( error_position( "a $ b" ), 2u );
    try
    {
        (void)parse_rule( "p(1,1) -> PD[x, y]" );
    }
    catch ( const parse_error& e )
    {
        EXPECT_NE( std::string( e.what() ).find( "rule connective in formula position" ), std::string::npos );
    }
}

TEST( FormulaSyntax, NextIsReserved )
{
    EXPECT_EQ( parse_formula( "X(a)" ), Formula::next( p( "a" ) ) );
    EXPECT_THROW( (void)parse_formula( "X" ), parse_error );
    EXPECT_EQ( parse_formula( "Xa" ), p( "Xa" ) ); // longer identifiers are ordinary names
}

TEST( FormulaSyntax, ModalDepth )
{
    EXPECT_EQ( parse_formula( "p(1,1)" ).modal_depth(), 0u );
    EXPECT_EQ( parse_formula( "X p(1,1)" ).modal_depth(), 1u );
    EXPECT_EQ( parse_formula( "X X p & X q" ).modal_depth(), 2u );
    EXPECT_EQ( parse_formula( "~X(a & X ~X b)" ).modal_depth(), 3u );
    EXPECT_EQ( parse_rule( "PD[a, PC[X b, X X c]]" ).modal_depth(), 2u );
}

TEST( FormulaSyntax, DefinitionsExpandAsMacros )
{
    Definitions defs;
    std::istringstream in( "# comment\n"
                           "good := p(1,1) & X ~p(2,1)\n"
                           "\n"
                           "% another\n"
                           "both := PD[good, init]\n" );
    load_definitions( in, defs );
    EXPECT_EQ( defs.size(), 2u );
    EXPECT_EQ( parse_formula( "~good", &defs ), parse_formula( "~(p(1,1) & X ~p(2,1))" ) );
    EXPECT_EQ( parse_rule( "PC[both, good]", &defs ), parse_rule( "PC[PD[p(1,1) & X ~p(2,1), init], good]", &defs ) );
    EXPECT_THROW( (void)parse_formula( "both & init", &defs ), parse_error );
    EXPECT_THROW( defs.define( "good", Rule( Formula::init() ) ), std::invalid_argument );
}

TEST( FormulaSyntax, DefinitionErrorsNameTheLine )
{
    Definitions defs;
    std::istringstream in( "a := init\n"
                           "\n"
                           "b := a &\n" );
    try
    {
        load_definitions( in, defs );
        FAIL() << "accepted a bad definition";
    }
    catch ( const parse_error& e )
    {
        EXPECT_EQ( e.line(), 3u );
        EXPECT_EQ( e.position(), 8u );
        EXPECT_EQ( std::string( e.what() ), "line 3: parse error at position 8: expected a formula, found end of input" );
    }
    std::istringstream missing( "just a formula\n" );
    Definitions other;
    EXPECT_THROW( load_definitions( missing, other ), parse_error );
}

// Printing then parsing gives back the same tree.
TEST( FormulaProperty, PrintParseRoundTrip )
{
    oracle::FormulaGen gen( 1234, 4 );
    for ( int n = 0; n < 3000; ++n )
    {
        const Formula f = gen.formula( gen.pick( 1, 12 ), gen.pick( 0, 3 ) );
        const std::string text = to_string( f );
        ASSERT_EQ( parse_formula( text ), f ) << text;
        EXPECT_EQ( to_string( parse_formula( text ) ), text );
    }
}

TEST( FormulaProperty, RuleRoundTrip )
{
    oracle::FormulaGen gen( 99, 3 );
    std::function< Rule( int ) > rule = [ & ]( int depth ) -> Rule {
        if ( depth == 0 || gen.pick( 0, 2 ) == 0 )
            return gen.formula( gen.pick( 1, 5 ), 1 );
        std::vector< Rule > args;
        const int n = gen.pick( 1, 3 );
        for ( int i = 0; i < n; ++i )
            args.push_back( rule( depth - 1 ) );
        return gen.pick( 0, 1 ) ? Rule::pd( args ) : Rule::pc( args );
    };
    for ( int n = 0; n < 1000; ++n )
    {
        const Rule r = rule( 3 );
        ASSERT_EQ( parse_rule( to_string( r ) ), r ) << to_string( r );
    }
}
