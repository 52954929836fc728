// stratlog: evaluate game formulas, strategy rules and compliance claims.
//
// Exit codes: 0 holds / success, 1 claim fails, 2 usage or input error,
// 3 environment (no solver).

#include "stratlog/compliance.hpp"
#include "stratlog/crossdot.hpp"
#include "stratlog/game_io.hpp"
#include "stratlog/parser.hpp"
#include "stratlog/semantics.hpp"
#include "stratlog/strategy.hpp"
#include "stratlog/translate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace stratlog;
using json = nlohmann::json;

namespace
{

enum Exit : int
{
    ok = 0,
    fails = 1,
    usage = 2,
    environment = 3,
};

class environment_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string game;
    std::string defs_file;
    bool json = false;
};

struct Session
{
    LoadedGame loaded;
    Definitions env;

    const Model& model() const { return loaded.model; }
    const Game& g() const { return loaded.model.g(); }
};

Session open( const Options& opt )
{
    Session s{ load_game_spec( opt.game ), {} };
    s.env = s.loaded.library;
    if ( !opt.defs_file.empty() )
        load_definitions_file( opt.defs_file, s.env );
    return s;
}

// "name=value", split at the first '='
std::pair< std::string, std::string > assignment( const std::string& text, const char* what )
{
    const auto eq = text.find( '=' );
    if ( eq == std::string::npos || eq == 0 )
        throw std::invalid_argument( std::string( "expected <player>=<rule> for " ) + what + ", got '" + text + "'" );
    return { text.substr( 0, eq ), text.substr( eq + 1 ) };
}

// "<state>:<action>", split at the last ':'
Move parse_move( const Game& g, const std::string& text )
{
    const auto colon = text.rfind( ':' );
    if ( colon == std::string::npos )
        throw std::invalid_argument( "expected <state>:<action> for --move, got '" + text + "'" );
    return { g.state( text.substr( 0, colon ) ), g.action( text.substr( colon + 1 ) ) };
}

Strategy strategy_of( const Session& s, PlayerId player, const Rule& r )
{
    FormulaLeafResolver resolver( s.model(), player );
    return interpret_rule( resolver, r );
}

json path_json( const Game& g, const Path& p )
{
    json states = json::array(), actions = json::array();
    for ( auto w : p.states )
        states.push_back( g.state_name( w ) );
    for ( auto a : p.actions )
        actions.push_back( g.action_name( a ) );
    return { { "states", states }, { "actions", actions }, { "rendered", render_path( g, p ) } };
}

json judgment_json( const Game& g, const Judgment& j )
{
    json out{ { "holds", j.holds } };
    out[ "witness" ] = j.witness ? path_json( g, *j.witness ) : json( nullptr );
    return out;
}

void print_judgment( const Game& g, const Judgment& j )
{
    std::cout << ( j.holds ? "holds" : "fails" ) << "\n";
    if ( j.witness )
        std::cout << "witness: " << render_path( g, *j.witness ) << "\n";
}

ComplianceSpec compliance( const Session& s, const std::vector< std::string >& assignments )
{
    ComplianceSpec spec;
    for ( const auto& text : assignments )
    {
        const auto [ player, rule ] = assignment( text, "--comply" );
        const PlayerId i = s.g().player( player );
        if ( spec.contains( i ) )
            throw std::invalid_argument( "player " + player + " has two --comply rules" );
        spec[ i ] = strategy_of( s, i, parse_rule( rule, &s.env ) );
    }
    return spec;
}

// ---- subcommands --------------------------------------------------------------

int cmd_eval( const Options& opt, const std::string& formula, const std::string& move )
{
    const Session s = open( opt );
    const Formula f = parse_formula( formula, &s.env );
    const Judgment j = move.empty() ? model_valid( s.model(), f ) : valid_under_move( s.model(), parse_move( s.g(), move ), f );
    if ( opt.json )
        std::cout << judgment_json( s.g(), j ).dump( 2 ) << "\n";
    else
        print_judgment( s.g(), j );
    return j.holds ? ok : fails;
}

int cmd_strategy( const Options& opt, const std::string& player, const std::string& rule )
{
    const Session s = open( opt );
    const PlayerId i = s.g().player( player );
    const RuleProperties props = strategy_properties( s.g(), strategy_of( s, i, parse_rule( rule, &s.env ) ) );
    if ( opt.json )
    {
        json moves = json::array();
        for ( const auto& mv : props.strategy.moves )
            moves.push_back( { { "state", s.g().state_name( mv.state ) }, { "action", s.g().action_name( mv.action ) } } );
        std::cout << json{ { "player", player },
                           { "moves", moves },
                           { "consistent", props.consistent },
                           { "complete", props.complete },
                           { "deterministic", props.deterministic },
                           { "functional", props.functional } }
                         .dump( 2 )
                  << "\n";
        return ok;
    }
    for ( const auto& mv : props.strategy.moves )
        std::cout << render_move( s.g(), mv ) << "\n";
    auto flag = []( bool b ) { return b ? "yes" : "no"; };
    std::cout << "moves: " << props.strategy.size() << "\n"
              << "consistent: " << flag( props.consistent ) << "\n"
              << "complete: " << flag( props.complete ) << "\n"
              << "deterministic: " << flag( props.deterministic ) << "\n"
              << "functional: " << flag( props.functional ) << "\n";
    return ok;
}

int cmd_verify( const Options& opt, const std::vector< std::string >& comply, const std::string& claim, bool list )
{
    const Session s = open( opt );
    const Formula f = parse_formula( claim, &s.env );
    const ReducedModel reduced = reduce_model( s.model(), compliance( s, comply ) );
    const Game& g = reduced.model.g();
    const Judgment j = verify_claim( reduced.model, f );
    const auto paths = playouts( reduced.model );
    if ( opt.json )
    {
        json out = judgment_json( g, j );
        out[ "playouts" ] = paths.size();
        out[ "dead_ends" ] = json::array();
        for ( auto w : reduced.dead_ends )
            out[ "dead_ends" ].push_back( g.state_name( w ) );
        if ( list )
        {
            out[ "paths" ] = json::array();
            for ( const auto& p : paths )
                out[ "paths" ].push_back( path_json( g, p ) );
        }
        std::cout << out.dump( 2 ) << "\n";
        return j.holds ? ok : fails;
    }
    print_judgment( g, j );
    std::cout << "playouts: " << paths.size() << "\n";
    if ( !reduced.dead_ends.empty() )
    {
        std::cout << "dead ends (pruned): " << reduced.dead_ends.size() << "\n";
        for ( auto w : reduced.dead_ends )
            std::cout << "  " << g.state_name( w ) << "\n";
    }
    if ( list )
        for ( const auto& p : paths )
            std::cout << render_path( g, p ) << "\n";
    return j.holds ? ok : fails;
}

int cmd_playouts( const Options& opt, const std::vector< std::string >& comply )
{
    const Session s = open( opt );
    const ReducedModel reduced = reduce_model( s.model(), compliance( s, comply ) );
    const Game& g = reduced.model.g();
    const auto paths = playouts( reduced.model );
    if ( opt.json )
    {
        json out{ { "count", paths.size() }, { "paths", json::array() } };
        for ( const auto& p : paths )
            out[ "paths" ].push_back( path_json( g, p ) );
        std::cout << out.dump( 2 ) << "\n";
        return ok;
    }
    for ( const auto& p : paths )
        std::cout << render_path( g, p ) << "\n";
    std::cout << "playouts: " << paths.size() << "\n";
    return ok;
}

int cmd_check_game( const Options& opt )
{
    const Session s = open( opt );
    const Game& g = s.g();
    const auto& term = g.termination();
    json out{ { "players", g.player_count() },
              { "actions", g.action_count() },
              { "states", g.state_count() },
              { "terminating", term.terminating } };
    if ( term.cycle )
        out[ "cycle" ] = path_json( g, *term.cycle );
    else
    {
        out[ "reachable_states" ] = g.reachable_states().size();
        out[ "moves" ] = g.omega().size();
        out[ "complete_paths" ] = complete_paths( g ).size();
        out[ "dead_ends" ] = json::array();
        for ( auto w : g.dead_ends() )
            out[ "dead_ends" ].push_back( g.state_name( w ) );
    }
    if ( opt.json )
        std::cout << out.dump( 2 ) << "\n";
    else
    {
        std::cout << "players: " << g.player_count() << "\nactions: " << g.action_count()
                  << "\nstates: " << g.state_count() << "\n";
        if ( term.cycle )
            std::cout << "not terminating, cycle: " << render_path( g, *term.cycle ) << "\n";
        else
        {
            std::cout << "terminating\nreachable states: " << out[ "reachable_states" ].get< std::size_t >()
                      << "\nmoves: " << out[ "moves" ].get< std::size_t >()
                      << "\ncomplete paths: " << out[ "complete_paths" ].get< std::size_t >() << "\n";
            for ( const auto& w : out[ "dead_ends" ] )
                std::cout << "dead end: " << w.get< std::string >() << "\n";
        }
    }
    return term.terminating ? ok : fails;
}

struct TranslateArgs
{
    std::string target;
    std::vector< std::string > rules;
    std::string viewpoint;
    int horizon = -1;
    std::string output;
    bool solve = false;
    std::string solver;
};

int cmd_translate( const Options& opt, const TranslateArgs& t )
{
    const Session s = open( opt );
    std::vector< std::pair< std::string, std::string > > rules;
    for ( const auto& r : t.rules )
        rules.push_back( assignment( r, "--rule" ) );

    std::string text;
    json answers;
    if ( t.target == "sitcalc" )
    {
        SitCalcInput input;
        if ( s.loaded.crossdot )
            input.axioms = crossdot::axioms( *s.loaded.crossdot );
        for ( const auto& [ player, rule ] : rules )
        {
            (void)s.g().player( player );
            input.rules.emplace_back( player, parse_rule( rule, &s.env ) );
        }
        if ( !t.viewpoint.empty() )
        {
            (void)s.g().player( t.viewpoint );
            input.viewpoint = t.viewpoint;
        }
        for ( std::size_t p = 0; p < s.model().v().size(); ++p )
            input.propositions.push_back( s.model().v().name( PropId( p ) ) );
        text = emit_sitcalc( input ).text();
    }
    else
    {
        if ( !s.loaded.crossdot )
            throw std::invalid_argument( "answer set encoding is only available for crossdot games" );
        const int horizon = t.horizon >= 0 ? t.horizon : s.loaded.crossdot->m;
        std::map< int, AspRule > asp;
        for ( const auto& [ player, rule ] : rules )
        {
            (void)s.g().player( player );
            const int i = std::stoi( player );
            if ( asp.contains( i ) )
                throw std::invalid_argument( "player " + player + " has two --rule options" );
            asp.emplace( i, AspRule{ rule, parse_rule( rule, &s.env ) } );
        }
        const AspProgram prog = emit_asp( *s.loaded.crossdot, horizon, asp );
        text = prog.text();
        if ( t.solve )
        {
            const std::string command = t.solver.empty() ? default_solver_command() : t.solver;
            const SolverRun run = run_external_solver( prog, command );
            if ( !run.available )
                throw environment_error( run.notice );
            answers = json::array();
            for ( const auto& p : run.playouts )
                answers.push_back( p );
        }
    }

    if ( !t.output.empty() )
    {
        std::ofstream out( t.output );
        if ( !out )
            throw std::invalid_argument( "cannot write " + t.output );
        out << text;
    }
    if ( opt.json )
    {
        json out{ { "target", t.target } };
        if ( t.output.empty() )
            out[ "text" ] = text;
        else
            out[ "output" ] = t.output;
        if ( t.solve )
            out[ "answer_sets" ] = answers;
        std::cout << out.dump( 2 ) << "\n";
        return ok;
    }
    if ( t.output.empty() && !t.solve )
        std::cout << text;
    if ( t.solve )
    {
        for ( const auto& a : answers )
        {
            std::string line;
            for ( const auto& act : a )
                line += ( line.empty() ? "" : " " ) + act.get< std::string >();
            std::cout << line << "\n";
        }
        std::cout << "answer sets: " << answers.size() << "\n";
    }
    return ok;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Strategy rules for state-transition games" };
    app.require_subcommand( 1 );
    Options opt;
    app.add_option( "--defs", opt.defs_file, "File of `name := rule` definitions" )->check( CLI::ExistingFile );
    app.add_flag( "--json", opt.json, "Machine-readable output" );

    std::string formula, move, player, rule, claim;
    std::vector< std::string > comply;
    bool list = false;
    TranslateArgs targs;
    const char* game_help = "crossdot[:m=<boxes>,k=<length>] or file:<path>";

    auto* eval = app.add_subcommand( "eval", "Decide M |= formula, or validity under a move" );
    eval->add_option( "game", opt.game, game_help )->required();
    eval->add_option( "formula", formula )->required();
    eval->add_option( "--move", move, "<state>:<action>, e.g. (1,0,x,o,_,_):a(1,3)" );

    auto* strategy = app.add_subcommand( "strategy", "List the moves of S^i(rule) and its properties" );
    strategy->add_option( "game", opt.game, game_help )->required();
    strategy->add_option( "player", player )->required();
    strategy->add_option( "rule", rule )->required();

    auto* verify = app.add_subcommand( "verify", "Check a claim on the model reduced by compliance" );
    verify->add_option( "game", opt.game, game_help )->required();
    verify->add_option( "claim", claim )->required();
    verify->add_option( "--comply", comply, "<player>=<rule>; repeatable" )->allow_extra_args( false );
    verify->add_flag( "--playouts", list, "List the remaining complete paths" );

    auto* play = app.add_subcommand( "playouts", "List complete paths under compliance" );
    play->add_option( "game", opt.game, game_help )->required();
    play->add_option( "--comply", comply, "<player>=<rule>; repeatable" )->allow_extra_args( false );

    auto* check = app.add_subcommand( "check-game", "Termination, reachability and dead ends" );
    check->add_option( "game", opt.game, game_help )->required();

    auto* translate = app.add_subcommand( "translate", "Emit a situation calculus or answer set encoding" );
    translate->add_option( "game", opt.game, game_help )->required();
    translate->add_option( "target", targs.target )->required()->check( CLI::IsMember( { "sitcalc", "asp" } ) );
    translate->add_option( "--rule", targs.rules, "<player>=<rule>; repeatable" )->allow_extra_args( false );
    translate->add_option( "--viewpoint", targs.viewpoint, "Emit Win clauses for this player (sitcalc)" );
    translate->add_option( "--horizon", targs.horizon, "Time steps (asp; default m)" )->check( CLI::NonNegativeNumber );
    translate->add_option( "-o,--output", targs.output, "Write the encoding to a file" );
    translate->add_flag( "--solve", targs.solve, "Run the answer set solver and print decoded playouts (asp)" );
    translate->add_option( "--solver", targs.solver, "Solver command (default: $STRATLOG_SOLVER or clingo)" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e );
        return usage;
    }

    try
    {
        if ( *eval )
            return cmd_eval( opt, formula, move );
        if ( *strategy )
            return cmd_strategy( opt, player, rule );
        if ( *verify )
            return cmd_verify( opt, comply, claim, list );
        if ( *play )
            return cmd_playouts( opt, comply );
        if ( *check )
            return cmd_check_game( opt );
        if ( *translate )
            return cmd_translate( opt, targs );
    }
    catch ( const environment_error& e )
    {
        std::cerr << "stratlog: " << e.what() << "\n";
        return environment;
    }
    catch ( const solver_error& e )
    {
        std::cerr << "stratlog: " << e.what() << "\n";
        return environment;
    }
    catch ( const std::exception& e )
    {
        std::cerr << "stratlog: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
