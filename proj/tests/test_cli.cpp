#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace
{

struct Result
{
    int code = -1;
    std::string out;
};

std::string quote( const std::string& arg )
{
    std::string q = "'";
    for ( char c : arg )
        q += c == '\'' ? std::string( "'\\''" ) : std::string( 1, c );
    return q + "'";
}

// Runs the CLI with stderr folded into stdout; `env` is prefixed verbatim.
Result run( const std::vector< std::string >& args, const std::string& env = {} )
{
    std::string cmd = env + ( env.empty() ? "" : " " ) + quote( STRATLOG_CLI );
    for ( const auto& a : args )
        cmd += " " + quote( a );
    cmd += " 2>&1";
    Result r;
    FILE* pipe = ::popen( cmd.c_str(), "r" );
    if ( !pipe )
        return r;
    char buf[ 4096 ];
    std::size_t got = 0;
    while ( ( got = std::fread( buf, 1, sizeof buf, pipe ) ) > 0 )
        r.out.append( buf, got );
    const int status = ::pclose( pipe );
    r.code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
    return r;
}

std::string read_file( const std::filesystem::path& p )
{
    std::ifstream in( p );
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir
{
public:
    TempDir()
    {
        _path = std::filesystem::temp_directory_path() /
                ( "stratlog-cli-" + std::to_string( ::getpid() ) + "-" +
                  ::testing::UnitTest::GetInstance()->current_test_info()->name() );
        std::filesystem::create_directories( _path );
    }
    ~TempDir() { std::filesystem::remove_all( _path ); }
    [[nodiscard]] const std::filesystem::path& path() const { return _path; }

private:
    std::filesystem::path _path;
};

} // namespace

TEST( Cli, EvalExitCodes )
{
    EXPECT_EQ( run( { "eval", "crossdot", "init -> turn(1) & ~turn(2)" } ).code, 0 );
    const Result fails = run( { "eval", "crossdot", "terminal -> wins(1)" } );
    EXPECT_EQ( fails.code, 1 );
    EXPECT_EQ( fails.out.rfind( "fails\nwitness: ", 0 ), 0u ) << fails.out;
}

TEST( Cli, EvalUnderMove )
{
    const std::string mv = "(1,0,x,o,_,_):a(1,3)";
    EXPECT_EQ( run( { "eval", "crossdot", "X X terminal", "--move", mv } ).code, 0 );
    const Result r = run( { "eval", "crossdot", "does(a(2,3))", "--move", mv } );
    EXPECT_EQ( r.code, 1 );
    EXPECT_NE( r.out.find( "(1,0,x,o,_,_) -a(1,3)-> (0,1,x,o,x,_)" ), std::string::npos ) << r.out;
    const Result bad = run( { "eval", "crossdot", "true", "--move", "(1,0,x,o,_,_):a(2,3)" } );
    EXPECT_EQ( bad.code, 2 );
    EXPECT_NE( bad.out.find( "not a reachable move" ), std::string::npos ) << bad.out;
}

TEST( Cli, JsonJudgment )
{
    const Result r = run( { "--json", "eval", "crossdot", "terminal -> wins(1)" } );
    ASSERT_EQ( r.code, 1 );
    const auto j = nlohmann::json::parse( r.out );
    EXPECT_FALSE( j.at( "holds" ).get< bool >() );
    EXPECT_FALSE( j.at( "witness" ).at( "states" ).empty() );
    EXPECT_EQ( j.at( "witness" ).at( "states" ).size(), j.at( "witness" ).at( "actions" ).size() + 1 );
}

TEST( Cli, StrategyListing )
{
    const Result r = run( { "strategy", "crossdot", "1", "fill_next@1" } );
    ASSERT_EQ( r.code, 0 ) << r.out;
    EXPECT_NE( r.out.find( "(1,0,o,_,x,_):a(1,4)\n" ), std::string::npos ) << r.out;
    EXPECT_NE( r.out.find( "moves: 12\n" ), std::string::npos );
    EXPECT_NE( r.out.find( "complete: no\n" ), std::string::npos );

    const Result j = run( { "--json", "strategy", "crossdot", "1", "thoughtful@1" } );
    ASSERT_EQ( j.code, 0 ) << j.out;
    const auto doc = nlohmann::json::parse( j.out );
    EXPECT_TRUE( doc.at( "functional" ).get< bool >() );
    EXPECT_FALSE( doc.at( "moves" ).empty() );
}

TEST( Cli, VerifyUnderCompliance )
{
    const Result r = run( { "verify", "crossdot", "terminal -> wins(1)", "--comply", "1=thoughtful@1", "--playouts" } );
    EXPECT_EQ( r.code, 0 ) << r.out;
    EXPECT_EQ( r.out.rfind( "holds\nplayouts: 3\n", 0 ), 0u ) << r.out;
    const Result lost =
        run( { "verify", "crossdot:m=3", "terminal -> wins(1)", "--comply", "1=fill_leftmost@1", "--comply", "2=thoughtful@2" } );
    EXPECT_EQ( lost.code, 1 ) << lost.out;
    EXPECT_EQ( run( { "verify", "crossdot", "true", "--comply", "3=fill_any@1" } ).code, 2 );
    EXPECT_EQ( run( { "verify", "crossdot", "true", "--comply", "thoughtful@1" } ).code, 2 );
}

TEST( Cli, Playouts )
{
    const Result r = run( { "playouts", "crossdot:m=2,k=2" } );
    EXPECT_EQ( r.code, 0 );
    std::size_t arrows = 0;
    for ( auto at = r.out.find( "-> " ); at != std::string::npos; at = r.out.find( "-> ", at + 1 ) )
        ++arrows;
    EXPECT_EQ( arrows, 4u ) << r.out; // two moves on each of two paths
    EXPECT_NE( r.out.find( "playouts: 2\n" ), std::string::npos ) << r.out;
    const Result j = run( { "--json", "playouts", "crossdot:m=4", "--comply", "1=fill_leftmost@1", "--comply",
                            "2=thoughtful@2" } );
    ASSERT_EQ( j.code, 0 ) << j.out;
    const auto doc = nlohmann::json::parse( j.out );
    ASSERT_EQ( doc.at( "count" ).get< int >(), 1 );
    EXPECT_EQ( doc.at( "paths" ).at( 0 ).at( "actions" ),
               nlohmann::json::parse( R"j(["a(1,1)", "a(2,3)", "a(1,2)"])j" ) );
}

TEST( Cli, CheckGameFromFile )
{
    TempDir dir;
    const auto ok = dir.path() / "ok.json";
    std::ofstream( ok ) << R"({"players": ["1"], "actions": [{"id": "go", "owner": "1"}], "initial": "s",
        "states": [{"id": "s"}, {"id": "t", "terminal": true}], "legal": [["s", "go"]], "update": [["go", "s", "t"]]})";
    const Result r = run( { "check-game", "file:" + ok.string() } );
    EXPECT_EQ( r.code, 0 ) << r.out;
    EXPECT_NE( r.out.find( "terminating" ), std::string::npos );

    const auto loop = dir.path() / "loop.json";
    std::ofstream( loop ) << R"({"players": ["1"], "actions": [{"id": "go", "owner": "1"}], "initial": "s",
        "states": [{"id": "s"}], "legal": [["s", "go"]], "update": [["go", "s", "s"]]})";
    EXPECT_EQ( run( { "check-game", "file:" + loop.string() } ).code, 1 );
    EXPECT_EQ( run( { "eval", "file:" + loop.string(), "true" } ).code, 2 );

    const auto broken = dir.path() / "broken.json";
    std::ofstream( broken ) << R"({"players": ["1"]})";
    const Result b = run( { "check-game", "file:" + broken.string() } );
    EXPECT_EQ( b.code, 2 );
    EXPECT_NE( b.out.find( "missing key" ), std::string::npos ) << b.out;
}

TEST( Cli, UsageAndParseErrors )
{
    EXPECT_EQ( run( {} ).code, 2 );
    EXPECT_EQ( run( { "eval", "crossdot" } ).code, 2 );
    EXPECT_EQ( run( { "eval", "chess", "true" } ).code, 2 );
    const Result r = run( { "eval", "crossdot", "a &" } );
    EXPECT_EQ( r.code, 2 );
    EXPECT_NE( r.out.find( "parse error at position 3" ), std::string::npos ) << r.out;
    EXPECT_EQ( run( { "eval", "crossdot", "p(9,9)" } ).code, 2 );
    EXPECT_EQ( run( { "--help" } ).code, 0 );
}

TEST( Cli, DefinitionsFile )
{
    TempDir dir;
    const auto defs = dir.path() / "defs.txt";
    std::ofstream( defs ) << "# my rules\nopen := does(a(1,2))\nsafe := PD[open, true]\n";
    const Result r = run( { "--defs", defs.string(), "strategy", "crossdot", "1", "safe" } );
    EXPECT_EQ( r.code, 0 ) << r.out;
    EXPECT_NE( r.out.find( "(1,0,_,_,_,_):a(1,2)\n" ), std::string::npos ) << r.out;

    const auto bad = dir.path() / "bad.txt";
    std::ofstream( bad ) << "ok := init\nnope := (\n";
    const Result e = run( { "--defs", bad.string(), "eval", "crossdot", "ok" } );
    EXPECT_EQ( e.code, 2 );
    EXPECT_NE( e.out.find( "line 2: " ), std::string::npos ) << e.out;
}

TEST( Cli, TranslateGoldens )
{
    TempDir dir;
    const auto sit = dir.path() / "sit.txt";
    ASSERT_EQ( run( { "translate", "crossdot:m=4,k=2", "sitcalc", "--rule", "1=PD[fill_next@1, fill_any@1]",
                      "--viewpoint", "1", "-o", sit.string() } )
                   .code,
               0 );
    EXPECT_EQ( read_file( sit ), read_file( std::filesystem::path( STRATLOG_GOLDEN_DIR ) / "sitcalc_crossdot_4_2.txt" ) );

    const auto asp = dir.path() / "prog.lp";
    ASSERT_EQ( run( { "translate", "crossdot:m=4,k=2", "asp", "--horizon", "4", "--rule",
                      "1=PD[fill_next@1, fill_any@1]", "--rule", "2=PD[fill_next@2, fill_any@2]", "-o", asp.string() } )
                   .code,
               0 );
    EXPECT_EQ( read_file( asp ), read_file( std::filesystem::path( STRATLOG_GOLDEN_DIR ) / "asp_figure1.lp" ) );
}

TEST( Cli, TranslateErrors )
{
    const Result look = run( { "translate", "crossdot", "asp", "--rule", "2=cautious@2" } );
    EXPECT_EQ( look.code, 2 );
    EXPECT_NE( look.out.find( "requires a counterfactual look-ahead" ), std::string::npos ) << look.out;
    EXPECT_EQ( run( { "translate", "crossdot", "prolog" } ).code, 2 );

    TempDir dir;
    const auto game = dir.path() / "g.json";
    std::ofstream( game ) << R"({"players": ["1"], "actions": [{"id": "go", "owner": "1"}], "initial": "s",
        "states": [{"id": "s"}, {"id": "t", "terminal": true}], "legal": [["s", "go"]], "update": [["go", "s", "t"]]})";
    EXPECT_EQ( run( { "translate", "file:" + game.string(), "asp" } ).code, 2 );
    EXPECT_EQ( run( { "translate", "file:" + game.string(), "sitcalc", "--viewpoint", "1" } ).code, 2 );
    EXPECT_EQ( run( { "translate", "file:" + game.string(), "sitcalc" } ).code, 0 );
}

TEST( Cli, SolveWithoutSolverIsEnvironmentError )
{
    const Result r = run( { "translate", "crossdot:m=2", "asp", "--solve" }, "env STRATLOG_SOLVER= PATH=/nonexistent" );
    EXPECT_EQ( r.code, 3 ) << r.out;
    const Result missing = run( { "translate", "crossdot:m=2", "asp", "--solve", "--solver", "stratlog-no-such-solver" } );
    EXPECT_EQ( missing.code, 3 ) << missing.out;
}

TEST( Cli, SolveWithStubSolver )
{
    const Result r = run( { "translate", "crossdot:m=2", "asp", "--solve", "--solver",
                            "sh -c 'cat >/dev/null; echo \"does(a(1,1),0) does(a(2,2),1)\"; exit 30'" } );
    EXPECT_EQ( r.code, 0 ) << r.out;
    EXPECT_NE( r.out.find( "a(1,1) a(2,2)" ), std::string::npos ) << r.out;
    const Result bad = run( { "translate", "crossdot:m=2", "asp", "--solve", "--solver", "sh -c 'cat >/dev/null; exit 1'" } );
    EXPECT_EQ( bad.code, 3 ) << bad.out;
}
