#include "algebra_checks.hpp"
#include "oracle.hpp"

#include "stratlog/crossdot.hpp"
#include "stratlog/parser.hpp"
#include "stratlog/semantics.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stratlog;

namespace
{

const Model& cd42()
{
    static const Model model = crossdot::generate( { 4, 2 } );
    return model;
}

Path path_of( const Game& g, std::vector< std::string > states, std::vector< std::string > actions )
{
    Path p;
    for ( const auto& w : states )
        p.states.push_back( g.state( w ) );
    for ( const auto& a : actions )
        p.actions.push_back( g.action( a ) );
    return p;
}

Move move_of( const Game& g, const std::string& w, const std::string& a ) { return { g.state( w ), g.action( a ) }; }

// Formulas over the vocabulary of algebra::random_game.
class SmallGen
{
public:
    explicit SmallGen( std::uint64_t seed ) : _rng( seed ) {}

    Formula formula( int size, int depth )
    {
        if ( size <= 1 )
            return atom();
        switch ( pick( 0, depth > 0 ? 4 : 2 ) )
        {
        case 0: return Formula::negate( formula( size - 1, depth ) );
        case 1:
        {
            const int l = pick( 1, size - 1 );
            return Formula::conj( formula( l, depth ), formula( size - l, depth ) );
        }
        case 2:
        {
            const int l = pick( 1, size - 1 );
            return Formula::disj( formula( l, depth ), formula( size - l, depth ) );
        }
        default: return Formula::next( formula( size - 1, depth - 1 ) );
        }
    }

    int pick( int lo, int hi ) { return std::uniform_int_distribution< int >( lo, hi )( _rng ); }

private:
    Formula atom()
    {
        static const char* actions[] = { "a1", "a2", "a3", "a4", "b1" };
        switch ( pick( 0, 5 ) )
        {
        case 0: return Formula::prop( "q" + std::to_string( pick( 0, 2 ) ) );
        case 1: return Formula::does( actions[ pick( 0, 4 ) ] );
        case 2: return Formula::legal( actions[ pick( 0, 4 ) ] );
        case 3: return Formula::init();
        case 4: return Formula::terminal();
        default: return Formula::does( actions[ pick( 0, 4 ) ] );
        }
    }

    std::mt19937_64 _rng;
};

} // namespace

TEST( Satisfaction, PathExample )
{
    const Game& g = cd42().g();
    const Path d = path_of( g, { "(1,0,x,o,_,_)", "(0,1,x,o,x,_)" }, { "a(1,3)" } );
    EXPECT_TRUE( satisfies( cd42(), d, parse_formula( "~(p(1,3)|p(2,3)) & X p(1,3)" ) ) );
    EXPECT_FALSE( satisfies( cd42(), d, parse_formula( "X p(2,3)" ) ) );
    EXPECT_TRUE( satisfies( cd42(), d, parse_formula( "does(a(1,3)) & ~does(a(1,4))" ) ) );
}

TEST( Satisfaction, SingletonLimitCase )
{
    const Game& g = cd42().g();
    const Path init{ { g.initial() }, {} };
    EXPECT_TRUE( satisfies( cd42(), init, parse_formula( "does(a(2,4))" ) ) );
    EXPECT_TRUE( satisfies( cd42(), init, parse_formula( "X false" ) ) );
    EXPECT_TRUE( satisfies( cd42(), init, parse_formula( "does(a(1,1)) & does(a(1,2))" ) ) );
    EXPECT_FALSE( satisfies( cd42(), init, parse_formula( "~does(a(2,4))" ) ) );
    EXPECT_FALSE( satisfies( cd42(), init, parse_formula( "legal(a(2,4))" ) ) );
    EXPECT_TRUE( satisfies( cd42(), init, parse_formula( "legal(a(1,4)) & init & turn(1)" ) ) );
}

TEST( Satisfaction, OffsetDropsLeadingMoves )
{
    const Game& g = cd42().g();
    const Path d = path_of( g, { "(1,0,_,_,_,_)", "(0,1,x,_,_,_)", "(1,0,x,o,_,_)" }, { "a(1,1)", "a(2,2)" } );
    const Evaluator e( cd42(), parse_formula( "turn(2) & does(a(2,2)) & X turn(1)" ) );
    EXPECT_FALSE( e.satisfied( d, 0 ) );
    EXPECT_TRUE( e.satisfied( d, 1 ) );
    EXPECT_EQ( e.modal_depth(), 1u );
}

TEST( Satisfaction, UnknownNamesAreDomainErrors )
{
    const Path init{ { cd42().g().initial() }, {} };
    EXPECT_THROW( (void)satisfies( cd42(), init, parse_formula( "p(9,9)" ) ), domain_error );
    EXPECT_THROW( (void)satisfies( cd42(), init, parse_formula( "does(a(1,9))" ) ), domain_error );
    EXPECT_THROW( (void)satisfies( cd42(), init, parse_formula( "wins(3)" ) ), domain_error );
    EXPECT_THROW( (void)model_valid( cd42(), parse_formula( "legal(jump)" ) ), domain_error );
}

TEST( Validity, ModelExamples )
{
    EXPECT_TRUE( model_valid( cd42(), parse_formula( "init -> turn(1) & ~turn(2)" ) ).holds );
    EXPECT_TRUE( model_valid( cd42(), Formula::verum() ).holds );
    EXPECT_FALSE( model_valid( cd42(), Formula::falsum() ).holds );

    const Judgment j = model_valid( cd42(), parse_formula( "terminal -> wins(1)" ) );
    ASSERT_FALSE( j.holds );
    ASSERT_TRUE( j.witness.has_value() );
    const Game& g = cd42().g();
    const StateId end = j.witness->states.front();
    EXPECT_TRUE( g.is_terminal( end ) );
    EXPECT_FALSE( g.is_goal( g.player( "1" ), end ) );
    EXPECT_FALSE( satisfies( cd42(), *j.witness, parse_formula( "terminal -> wins(1)" ) ) );
}

TEST( Validity, MoveExamples )
{
    const Game& g = cd42().g();
    const Move mv = move_of( g, "(1,0,x,o,_,_)", "a(1,3)" );
    EXPECT_TRUE( valid_under_move( cd42(), mv, parse_formula( "legal(a(1,4))" ) ).holds );
    EXPECT_TRUE( valid_under_move( cd42(), mv, parse_formula( "X legal(a(2,4))" ) ).holds );
    EXPECT_TRUE( valid_under_move( cd42(), mv, parse_formula( "X X terminal" ) ).holds );
    EXPECT_TRUE( valid_under_move( cd42(), mv, parse_formula( "does(a(1,3))" ) ).holds );
    const Judgment no = valid_under_move( cd42(), mv, parse_formula( "does(a(2,3))" ) );
    EXPECT_FALSE( no.holds );
    ASSERT_TRUE( no.witness.has_value() );
    EXPECT_EQ( no.witness->states.front(), mv.state );
    EXPECT_EQ( no.witness->actions.front(), mv.action );

    EXPECT_THROW( (void)valid_under_move( cd42(), move_of( g, "(1,0,x,o,_,_)", "a(2,3)" ), Formula::verum() ),
                  precondition_error );
    EXPECT_THROW( (void)valid_under_move( cd42(), move_of( g, "(1,0,x,o,_,_)", "a(1,1)" ), Formula::verum() ),
                  precondition_error );
}

// Every move of a player satisfies does(a) for its own action.
TEST( Validity, MoveSatisfiesItsOwnDoes )
{
    const Game& g = cd42().g();
    for ( const Move& mv : g.omega() )
        ASSERT_TRUE( valid_under_move( cd42(), mv, Formula::does( g.action_name( mv.action ) ) ).holds )
            << render_move( g, mv );
}

TEST( Denotation, TrueGivesAllMovesAndFalseNone )
{
    const Game& g = cd42().g();
    for ( const char* player : { "1", "2" } )
    {
        const auto i = g.player( player );
        const auto omega = g.omega( i );
        const Strategy all = strategy_of_formula( cd42(), i, Formula::verum() );
        EXPECT_EQ( all.moves, std::set< Move >( omega.begin(), omega.end() ) );
        EXPECT_TRUE( strategy_of_formula( cd42(), i, Formula::falsum() ).empty() );
    }
}

TEST( Denotation, NextPropositionExample )
{
    // X p(1,1): either box 1 already holds a cross, or player 1 fills it now.
    const Game& g = cd42().g();
    const Strategy s = strategy_of_formula( cd42(), g.player( "1" ), parse_formula( "X p(1,1)" ) );
    const oracle::CrossDot view( 4, 2 );
    const oracle::BruteForce brute( view );
    oracle::MoveSet expected = oracle::comprehension( brute.moves( "1" ), "(1,0,_,?,?,?)", "a(1,1)" );
    for ( int j = 2; j <= 4; ++j )
        for ( const auto& mv : oracle::comprehension( brute.moves( "1" ), "(1,0,x,?,?,?)", crossdot::action_name( 1, j ) ) )
            expected.insert( mv );
    EXPECT_EQ( expected.size(), 13u );
    EXPECT_EQ( oracle::named( g, s ), expected );
}

// Under the literal limit case a singleton continuation satisfies any X-formula,
// so moves into terminal states belong to every S(X ...).
TEST( Denotation, MovesIntoTerminalStatesSatisfyAnyNext )
{
    const Game& g = cd42().g();
    const auto i = g.player( "2" );
    const Strategy s = strategy_of_formula( cd42(), i, parse_formula( "X X does(a(2,1))" ) );
    const oracle::CrossDot view( 4, 2 );
    const oracle::BruteForce brute( view );
    EXPECT_EQ( oracle::named( g, s ), brute.strategy( "2", parse_formula( "X X does(a(2,1))" ) ) );
    for ( const Move& mv : s.moves )
    {
        const StateId next = *g.successor( mv.state, mv.action );
        bool short_game = g.is_terminal( next );
        for ( ActionId b : g.player_moves_at( next, g.player( "1" ) ) )
            short_game = short_game || g.is_terminal( *g.successor( next, b ) );
        EXPECT_TRUE( short_game ) << render_move( g, mv );
    }
}

// Bounded evaluation agrees with evaluating every reachable path in full.
TEST( DepthBound, CrossDotAgreesWithBruteForce )
{
    for ( auto [ m, k ] : { std::pair{ 3, 2 }, { 4, 2 } } )
    {
        const Model model = crossdot::generate( { m, k } );
        const oracle::CrossDot view( m, k );
        const oracle::BruteForce brute( view );
        oracle::FormulaGen gen( 314 + m, m );
        for ( int n = 0; n < 120; ++n )
        {
            const Formula f = gen.formula( gen.pick( 1, 8 ), gen.pick( 0, 3 ) );
            ASSERT_EQ( model_valid( model, f ).holds, brute.model_valid( f ) ) << to_string( f );
            for ( const char* player : { "1", "2" } )
                ASSERT_EQ( oracle::named( model.g(), strategy_of_formula( model, model.g().player( player ), f ) ),
                           brute.strategy( player, f ) )
                    << to_string( f ) << " for player " << player;
        }
    }
}

TEST( DepthBound, RandomGamesAgreeWithBruteForce )
{
    std::mt19937_64 rng( 2718 );
    SmallGen gen( 2719 );
    for ( int n = 0; n < 120; ++n )
    {
        const Model model = build_model( algebra::random_game( rng ) );
        const oracle::ModelView view( model );
        const oracle::BruteForce brute( view );
        for ( int t = 0; t < 10; ++t )
        {
            const Formula f = gen.formula( gen.pick( 1, 7 ), gen.pick( 0, 3 ) );
            const Judgment j = model_valid( model, f );
            ASSERT_EQ( j.holds, brute.model_valid( f ) ) << "game #" << n << ": " << to_string( f );
            ASSERT_EQ( j.witness.has_value(), !j.holds );
            if ( j.witness )
                EXPECT_FALSE( satisfies( model, *j.witness, f ) );
            for ( const Move& mv : model.g().omega() )
            {
                const oracle::NamedMove named{ model.g().state_name( mv.state ), model.g().action_name( mv.action ) };
                ASSERT_EQ( valid_under_move( model, mv, f ).holds, brute.valid_under_move( named, f ) )
                    << "game #" << n << ": " << to_string( f ) << " under " << render_move( model.g(), mv );
            }
        }
    }
}

// Conjunction maps to intersection; union is contained in the disjunction.
TEST( DenotationProperty, ConjunctionAndDisjunction )
{
    for ( auto [ m, seed ] : { std::pair{ 3, 11 }, { 4, 12 } } )
    {
        const Model model = crossdot::generate( { m, 2 } );
        oracle::FormulaGen gen( static_cast< std::uint64_t >( seed ), m );
        for ( int n = 0; n < 80; ++n )
        {
            const Formula f1 = gen.formula( gen.pick( 1, 6 ), gen.pick( 0, 2 ) );
            const Formula f2 = gen.formula( gen.pick( 1, 6 ), gen.pick( 0, 2 ) );
            for ( const char* player : { "1", "2" } )
            {
                const auto i = model.g().player( player );
                const Strategy s1 = strategy_of_formula( model, i, f1 );
                const Strategy s2 = strategy_of_formula( model, i, f2 );
                const Strategy both = strategy_of_formula( model, i, Formula::conj( f1, f2 ) );
                const Strategy either = strategy_of_formula( model, i, Formula::disj( f1, f2 ) );
                std::set< Move > meet;
                std::set_intersection( s1.moves.begin(), s1.moves.end(), s2.moves.begin(), s2.moves.end(),
                                       std::inserter( meet, meet.end() ) );
                ASSERT_EQ( both.moves, meet ) << to_string( f1 ) << " / " << to_string( f2 );
                for ( const Move& mv : s1.moves )
                    ASSERT_TRUE( either.contains( mv ) );
                for ( const Move& mv : s2.moves )
                    ASSERT_TRUE( either.contains( mv ) );
            }
        }
    }
}

// Propositions read only the first state of a path.
TEST( SatisfactionProperty, PropositionsReadFirstState )
{
    const Model& model = cd42();
    const Game& g = model.g();
    auto paths = reachable_paths( model.game, 3 );
    std::size_t seen = 0;
    while ( auto p = paths.next() )
    {
        const Path first{ { p->states.front() }, {} };
        for ( std::size_t q = 0; q < model.v().size(); ++q )
        {
            const Formula f = Formula::prop( model.v().name( PropId( q ) ) );
            ASSERT_EQ( satisfies( model, *p, f ), satisfies( model, first, f ) ) << render_path( g, *p );
        }
        ++seen;
    }
    EXPECT_GT( seen, 100u );
}
