#include "stratlog/translate.hpp"

#include "stratlog/ids.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace stratlog
{

namespace
{

// ---- sugar patterns (same order as the formula printer) ----------------------

bool is_false( const Formula& f )
{
    return f.kind() == Formula::Kind::conjunction && f.lhs().kind() == Formula::Kind::init &&
           f.rhs().kind() == Formula::Kind::negation && f.rhs().operand().kind() == Formula::Kind::init;
}

bool is_true( const Formula& f )
{
    return f.kind() == Formula::Kind::negation && is_false( f.operand() );
}

// ~(~a & ~b)
bool match_or( const Formula& f )
{
    if ( f.kind() != Formula::Kind::negation || f.operand().kind() != Formula::Kind::conjunction )
        return false;
    const auto& c = f.operand();
    return c.lhs().kind() == Formula::Kind::negation && c.rhs().kind() == Formula::Kind::negation;
}

// ~(a & ~b)
bool match_imp( const Formula& f )
{
    return f.kind() == Formula::Kind::negation && f.operand().kind() == Formula::Kind::conjunction &&
           f.operand().rhs().kind() == Formula::Kind::negation;
}

bool match_iff( const Formula& f )
{
    if ( f.kind() != Formula::Kind::conjunction || !match_imp( f.lhs() ) || !match_imp( f.rhs() ) )
        return false;
    const auto& l = f.lhs().operand();
    const auto& r = f.rhs().operand();
    return l.lhs() == r.rhs().operand() && l.rhs().operand() == r.lhs();
}

// ---- situation calculus terms ------------------------------------------------

struct Sc
{
    enum class K
    {
        atom,
        neg,
        conj,
        disj,
        imp,
        iff,
        forall,
        exists,
    };
    K kind;
    std::string text; // atom text or bound variable
    std::vector< Sc > kids;
};

Sc atom( std::string text ) { return { Sc::K::atom, std::move( text ), {} }; }
Sc neg( Sc a ) { return { Sc::K::neg, {}, { std::move( a ) } }; }
Sc binary( Sc::K k, Sc a, Sc b ) { return { k, {}, { std::move( a ), std::move( b ) } }; }
Sc quant( Sc::K k, std::string var, Sc body ) { return { k, std::move( var ), { std::move( body ) } }; }

Sc nary( Sc::K k, std::vector< Sc > parts )
{
    if ( parts.size() == 1 )
        return std::move( parts.front() );
    Sc out{ k, {}, {} };
    for ( auto& p : parts )
    {
        if ( p.kind == k )
            std::move( p.kids.begin(), p.kids.end(), std::back_inserter( out.kids ) );
        else
            out.kids.push_back( std::move( p ) );
    }
    return out;
}

int precedence( Sc::K k )
{
    switch ( k )
    {
    case Sc::K::iff: return 0;
    case Sc::K::imp: return 1;
    case Sc::K::disj: return 2;
    case Sc::K::conj: return 3;
    case Sc::K::neg: return 4;
    case Sc::K::atom: return 5;
    case Sc::K::forall:
    case Sc::K::exists: return -1;
    }
    return 5;
}

// `ctx` is the weakest precedence printable without parentheses; -1 means a
// quantifier may extend to the end of the text.
void print( std::ostream& out, const Sc& t, int ctx )
{
    const int p = precedence( t.kind );
    const bool quantifier = p < 0;
    const bool parens = quantifier ? ctx >= 0 : p < ctx;
    if ( parens )
        out << '(';
    switch ( t.kind )
    {
    case Sc::K::atom: out << t.text; break;
    case Sc::K::neg:
        out << '~';
        print( out, t.kids[ 0 ], 4 );
        break;
    case Sc::K::conj:
    case Sc::K::disj:
        for ( std::size_t k = 0; k < t.kids.size(); ++k )
        {
            if ( k )
                out << ( t.kind == Sc::K::conj ? " & " : " | " );
            print( out, t.kids[ k ], p + 1 );
        }
        break;
    case Sc::K::imp:
        print( out, t.kids[ 0 ], 2 );
        out << " -> ";
        print( out, t.kids[ 1 ], 1 );
        break;
    case Sc::K::iff:
        print( out, t.kids[ 0 ], 0 );
        out << " <-> ";
        print( out, t.kids[ 1 ], 1 );
        break;
    case Sc::K::forall:
    case Sc::K::exists:
        out << ( t.kind == Sc::K::forall ? "forall " : "exists " ) << t.text << ". ";
        print( out, t.kids[ 0 ], -1 );
        break;
    }
    if ( parens )
        out << ')';
}

std::string str( const Sc& t )
{
    std::ostringstream out;
    print( out, t, -1 );
    return out.str();
}

class SitCalc
{
public:
    // [[f]]_{A,S}
    Sc formula( const Formula& f, const std::string& a, const std::string& s )
    {
        if ( is_false( f ) )
            return atom( "false" );
        if ( is_true( f ) )
            return atom( "true" );
        if ( match_or( f ) )
            return nary( Sc::K::disj, { formula( f.operand().lhs().operand(), a, s ),
                                        formula( f.operand().rhs().operand(), a, s ) } );
        if ( match_imp( f ) )
            return binary( Sc::K::imp, formula( f.operand().lhs(), a, s ), formula( f.operand().rhs().operand(), a, s ) );
        if ( match_iff( f ) )
            return binary( Sc::K::iff, formula( f.lhs().operand().lhs(), a, s ),
                           formula( f.lhs().operand().rhs().operand(), a, s ) );
        switch ( f.kind() )
        {
        case Formula::Kind::prop: return atom( "Holds(" + f.name() + "," + s + ")" );
        case Formula::Kind::does: return atom( a + "=" + f.name() );
        case Formula::Kind::legal: return atom( "Poss(" + f.name() + "," + s + ")" );
        case Formula::Kind::wins: return atom( "Wins(" + f.name() + "," + s + ")" );
        case Formula::Kind::init: return atom( s + "=s0" );
        case Formula::Kind::terminal: return atom( "Terminal(" + s + ")" );
        case Formula::Kind::negation: return neg( formula( f.operand(), a, s ) );
        case Formula::Kind::conjunction:
            return nary( Sc::K::conj, { formula( f.lhs(), a, s ), formula( f.rhs(), a, s ) } );
        case Formula::Kind::next:
        {
            std::string v = fresh();
            return quant( Sc::K::forall, v, formula( f.operand(), v, "Do(" + a + "," + s + ")" ) );
        }
        }
        throw std::logic_error( "unhandled formula kind" );
    }

    // [[r]]^strat_{A,S}
    Sc rule( const Rule& r, const std::string& a, const std::string& s )
    {
        const auto& args = r.args();
        switch ( r.kind() )
        {
        case Rule::Kind::leaf:
            return nary( Sc::K::conj, { atom( "Poss(" + a + "," + s + ")" ), formula( r.formula(), a, s ) } );
        case Rule::Kind::pd:
        {
            std::vector< Sc > disjuncts{ rule( args[ 0 ], a, s ) };
            for ( std::size_t k = 1; k < args.size(); ++k )
            {
                std::string v = fresh();
                std::vector< Sc > earlier;
                for ( std::size_t j = 0; j < k; ++j )
                    earlier.push_back( rule( args[ j ], v, s ) );
                disjuncts.push_back( nary( Sc::K::conj, { rule( args[ k ], a, s ),
                                                          neg( quant( Sc::K::exists, v,
                                                                      nary( Sc::K::disj, std::move( earlier ) ) ) ) } ) );
            }
            return nary( Sc::K::disj, std::move( disjuncts ) );
        }
        case Rule::Kind::pc:
        {
            std::vector< Sc > disjuncts;
            for ( std::size_t k = 1; k <= args.size(); ++k )
            {
                std::vector< Sc > parts;
                for ( std::size_t j = 0; j < k; ++j )
                    parts.push_back( rule( args[ j ], a, s ) );
                if ( k < args.size() )
                {
                    std::string v = fresh();
                    std::vector< Sc > longer;
                    for ( std::size_t j = 0; j <= k; ++j )
                        longer.push_back( rule( args[ j ], v, s ) );
                    parts.push_back(
                        neg( quant( Sc::K::exists, v, nary( Sc::K::conj, std::move( longer ) ) ) ) );
                }
                disjuncts.push_back( nary( Sc::K::conj, std::move( parts ) ) );
            }
            return nary( Sc::K::disj, std::move( disjuncts ) );
        }
        }
        throw std::logic_error( "unhandled rule kind" );
    }

    std::string fresh() { return "A" + std::to_string( ++_counter ); }

private:
    int _counter = 0;
};

std::string clause( const Sc& body ) { return "forall A, S. " + str( body ); }

} // namespace

std::string sitcalc_formula( const Formula& f )
{
    SitCalc sc;
    return str( sc.formula( f, "A", "S" ) );
}

std::string sitcalc_rule( const Rule& r )
{
    SitCalc sc;
    return str( sc.rule( r, "A", "S" ) );
}

std::string SitCalcDocument::text() const
{
    std::string out;
    for ( const auto& l : lines )
        out += l + "\n";
    return out;
}

SitCalcDocument emit_sitcalc( const SitCalcInput& input )
{
    SitCalcDocument doc;
    auto& out = doc.lines;

    std::string turn;
    if ( input.viewpoint )
    {
        turn = "turn(" + *input.viewpoint + ")";
        if ( std::ranges::find( input.propositions, turn ) == input.propositions.end() )
            throw precondition_error( "Win clauses need a " + turn +
                                      " proposition to tell whose turn it is; this game has none" );
    }

    out.emplace_back( "% game axioms" );
    for ( const auto& ax : input.axioms )
    {
        SitCalc sc;
        out.push_back( "% " + ax.name );
        out.push_back( clause( sc.formula( ax.formula, "A", "S" ) ) );
    }

    out.emplace_back( "% strategy" );
    std::vector< Sc > strat;
    for ( const auto& [ player, r ] : input.rules )
        out.push_back( "% player " + player + ": " + to_string( r ) );
    {
        SitCalc sc;
        for ( const auto& [ player, r ] : input.rules )
            strat.push_back( sc.rule( r, "A", "S" ) );
        Sc body = strat.empty() ? atom( "Poss(A,S)" ) : nary( Sc::K::disj, std::move( strat ) );
        out.push_back( clause( binary( Sc::K::iff, atom( "Strat(A,S)" ), std::move( body ) ) ) );
    }

    out.emplace_back( "% strategic playouts" );
    out.emplace_back( "Strategic(s0)" );
    out.emplace_back( "forall A, S. Strategic(S) & Strat(A,S) -> Strategic(Do(A,S))" );

    if ( input.viewpoint )
    {
        const std::string& i = *input.viewpoint;
        out.push_back( "% winning situations for player " + i );
        out.push_back( "forall S. Turn(" + i + ",S) <-> Holds(" + turn + ",S)" );
        out.push_back( "forall S. Wins(" + i + ",S) -> Win(S)" );
        out.push_back( "forall S. Turn(" + i + ",S) & (exists A. Poss(A,S) & Win(Do(A,S))) -> Win(S)" );
        out.push_back( "forall S. ~Turn(" + i + ",S) & (forall A. Strat(A,S) -> Win(Do(A,S))) -> Win(S)" );
    }
    return doc;
}

// ---- answer set programming ---------------------------------------------------

namespace
{

class AspCompiler
{
public:
    AspCompiler( int player, std::vector< std::string >& out )
        : _player( player ), _out( out ), _move( "a(" + std::to_string( player ) + ",J)" )
    {
    }

    // Returns a predicate n with n(a(i,J),T) true iff the player's move
    // a(i,J) is legal at T and satisfies the rule's strategy.
    std::string rule( const Rule& r )
    {
        const auto& args = r.args();
        if ( r.kind() == Rule::Kind::leaf )
            return formula( r.formula() );

        std::vector< std::string > sub;
        for ( const auto& a : args )
            sub.push_back( rule( a ) );
        const std::string n = fresh( "n" );
        if ( r.kind() == Rule::Kind::pd )
        {
            // n <- the first argument with a move at T
            emit( n + "(" + _move + ",T) :- " + sub[ 0 ] + "(" + _move + ",T)." );
            for ( std::size_t k = 1; k < sub.size(); ++k )
            {
                const std::string g = fresh( "g" );
                for ( std::size_t j = 0; j < k; ++j )
                    emit( g + "(T) :- " + sub[ j ] + "(A,T)." );
                emit( n + "(" + _move + ",T) :- " + sub[ k ] + "(" + _move + ",T), not " + g + "(T)." );
            }
            return n;
        }
        // PC: the longest prefix whose intersection is nonempty at T
        for ( std::size_t k = 1; k <= sub.size(); ++k )
        {
            std::string body;
            for ( std::size_t j = 0; j < k; ++j )
                body += ( j ? ", " : "" ) + sub[ j ] + "(" + _move + ",T)";
            if ( k < sub.size() )
            {
                const std::string h = fresh( "g" );
                std::string longer;
                for ( std::size_t j = 0; j <= k; ++j )
                    longer += ( j ? ", " : "" ) + sub[ j ] + "(A,T)";
                emit( h + "(T) :- " + longer + "." );
                body += ", not " + h + "(T)";
            }
            emit( n + "(" + _move + ",T) :- " + body + "." );
        }
        return n;
    }

private:
    std::string formula( const Formula& f )
    {
        const std::string key = to_string( f );
        if ( auto it = _cache.find( key ); it != _cache.end() )
            return it->second;
        const std::string n = fresh( "n" );
        _out.push_back( "% " + n + ": " + key );
        std::vector< Formula > disjuncts;
        collect_disjuncts( f, disjuncts );
        for ( const auto& d : disjuncts )
        {
            std::vector< std::string > lits;
            body( d, lits );
            std::string line = n + "(" + _move + ",T) :- legal(" + _move + ",T)";
            for ( const auto& l : lits )
                line += ", " + l;
            emit( line + "." );
        }
        _cache.emplace( key, n );
        return n;
    }

    static void collect_disjuncts( const Formula& f, std::vector< Formula >& into )
    {
        if ( !is_false( f ) && !is_true( f ) && match_or( f ) )
        {
            collect_disjuncts( f.operand().lhs().operand(), into );
            collect_disjuncts( f.operand().rhs().operand(), into );
        }
        else
            into.push_back( f );
    }

    // Positive literal for an atom, or nothing for a compound formula.
    std::optional< std::string > literal( const Formula& f, bool positive ) const
    {
        const std::string nt = positive ? "" : "not ";
        switch ( f.kind() )
        {
        case Formula::Kind::prop: return nt + "holds(" + f.name() + ",T)";
        case Formula::Kind::does: return _move + ( positive ? "=" : "!=" ) + f.name();
        case Formula::Kind::legal: return nt + "legal(" + f.name() + ",T)";
        case Formula::Kind::wins: return nt + "wins(" + f.name() + ",T)";
        case Formula::Kind::init: return positive ? "T=0" : "T!=0";
        case Formula::Kind::terminal: return nt + "terminal(T)";
        case Formula::Kind::next:
            throw lookahead_error( "rule leaf uses X: " + to_string( f ) +
                                   "; this requires a counterfactual look-ahead the answer set encoding does not "
                                   "support" );
        default: return std::nullopt;
        }
    }

    void body( const Formula& f, std::vector< std::string >& lits )
    {
        if ( f.kind() == Formula::Kind::conjunction )
        {
            body( f.lhs(), lits );
            body( f.rhs(), lits );
            return;
        }
        if ( auto l = literal( f, true ) )
        {
            lits.push_back( *l );
            return;
        }
        if ( f.kind() == Formula::Kind::negation )
        {
            if ( auto l = literal( f.operand(), false ) )
                lits.push_back( *l );
            else
                lits.push_back( "not " + formula( f.operand() ) + "(" + _move + ",T)" );
            return;
        }
        lits.push_back( formula( f ) + "(" + _move + ",T)" );
    }

    std::string fresh( const char* stem )
    {
        return std::string( stem ) + std::to_string( _player ) + "_" + std::to_string( ++_counter );
    }

    void emit( std::string line ) { _out.push_back( std::move( line ) ); }

    int _player;
    std::vector< std::string >& _out;
    std::string _move;
    std::map< std::string, std::string > _cache;
    int _counter = 0;
};

} // namespace

std::string AspProgram::text() const
{
    std::string out;
    for ( const auto& l : lines )
        out += l + "\n";
    return out;
}

AspProgram emit_asp( const crossdot::Params& params, int horizon, const std::map< int, AspRule >& rules )
{
    crossdot::validate( params );
    if ( horizon < 0 )
        throw std::invalid_argument( "horizon must be non-negative" );
    for ( const auto& [ player, r ] : rules )
        if ( player != 1 && player != 2 )
            throw std::invalid_argument( "CrossDot has players 1 and 2, not " + std::to_string( player ) );

    AspProgram prog;
    prog.horizon = horizon;
    auto& out = prog.lines;
    const std::string H = std::to_string( horizon );
    const int m = params.m;
    const int k = params.k;

    out.push_back( "% CrossDot m=" + std::to_string( m ) + " k=" + std::to_string( k ) + ", horizon " + H );
    out.push_back( "time(0.." + H + ")." );
    for ( int i = 1; i <= 2; ++i )
        for ( int j = 1; j <= m; ++j )
            out.push_back( "action(" + crossdot::action_name( i, j ) + ")." );

    out.emplace_back( "% initial state: empty boxes, player 1 to move" );
    out.emplace_back( "holds(turn(1),0)." );

    out.emplace_back( "% legality" );
    out.emplace_back( "legal(a(I,J),T) :- action(a(I,J)), time(T), holds(turn(I),T), not holds(p(1,J),T), "
                      "not holds(p(2,J),T), not terminal(T)." );

    out.emplace_back( "% effects and frame" );
    out.push_back( "holds(p(I,J),T+1) :- holds(p(I,J),T), time(T), T < " + H + "." );
    out.emplace_back( "holds(p(I,J),T+1) :- does(a(I,J),T)." );
    out.push_back( "holds(turn(1),T+1) :- holds(turn(2),T), time(T), T < " + H + "." );
    out.push_back( "holds(turn(2),T+1) :- holds(turn(1),T), time(T), T < " + H + "." );

    out.emplace_back( "% k in a row wins; full board ends the game" );
    for ( int i = 1; i <= 2; ++i )
        for ( int start = 1; start + k - 1 <= m; ++start )
        {
            std::string line = "wins(" + std::to_string( i ) + ",T) :- time(T)";
            for ( int j = start; j < start + k; ++j )
                line += ", holds(" + crossdot::box_prop( i, j ) + ",T)";
            out.push_back( line + "." );
        }
    out.emplace_back( "terminal(T) :- wins(I,T)." );
    out.emplace_back( "terminal(T) :- time(T), not freecell(T)." );
    out.emplace_back( "freecell(T) :- time(T), action(a(1,J)), not holds(p(1,J),T), not holds(p(2,J),T)." );

    out.emplace_back( "% one action per step until the game ends" );
    out.push_back( "1 { does(A,T) : action(A) } 1 :- time(T), T < " + H + ", not terminal(T)." );
    out.emplace_back( ":- does(A,T), not legal(A,T)." );

    out.emplace_back( "% compliance" );
    out.emplace_back( "non_strategic(T) :- does(A,T), not strat(A,T)." );
    out.emplace_back( ":- non_strategic(T)." );
    for ( int i = 1; i <= 2; ++i )
    {
        const std::string move = "a(" + std::to_string( i ) + ",J)";
        auto it = rules.find( i );
        if ( it == rules.end() )
        {
            out.push_back( "% player " + std::to_string( i ) + ": unrestricted" );
            out.push_back( "strat(" + move + ",T) :- legal(" + move + ",T)." );
            continue;
        }
        out.push_back( "% player " + std::to_string( i ) + ": " +
                       ( it->second.label.empty() ? to_string( it->second.rule ) : it->second.label ) );
        AspCompiler compiler( i, out );
        const std::string top = compiler.rule( it->second.rule );
        out.push_back( "strat(" + move + ",T) :- " + top + "(" + move + ",T)." );
    }
    out.emplace_back( "#show does/2." );
    return prog;
}

std::string default_solver_command()
{
    if ( const char* env = std::getenv( "STRATLOG_SOLVER" ) )
        return env;
    if ( const char* path = std::getenv( "PATH" ) )
    {
        std::stringstream dirs{ std::string( path ) };
        std::string dir;
        while ( std::getline( dirs, dir, ':' ) )
        {
            std::error_code ec;
            const auto candidate = std::filesystem::path( dir.empty() ? "." : dir ) / "clingo";
            if ( std::filesystem::is_regular_file( candidate, ec ) && ::access( candidate.c_str(), X_OK ) == 0 )
                return "clingo -n 0 --verbose=0";
        }
    }
    return {};
}

std::vector< std::vector< std::string > > decode_answer_sets( const std::string& output )
{
    static const std::regex atom_re( R"(does\((a\([^()]*\)),(\d+)\))" );
    static const std::set< std::string > status{ "SATISFIABLE", "UNSATISFIABLE", "UNKNOWN", "OPTIMUM FOUND" };
    std::vector< std::vector< std::string > > sets;
    std::istringstream in( output );
    std::string line;
    while ( std::getline( in, line ) )
    {
        if ( !line.empty() && line.back() == '\r' )
            line.pop_back();
        if ( status.contains( line ) )
            continue;
        std::vector< std::pair< int, std::string > > steps;
        std::istringstream atoms( line );
        std::string token;
        while ( atoms >> token )
        {
            std::smatch m;
            if ( !std::regex_match( token, m, atom_re ) )
                throw solver_error( "unexpected atom in solver output: " + token );
            steps.emplace_back( std::stoi( m[ 2 ] ), m[ 1 ] );
        }
        std::ranges::sort( steps );
        std::vector< std::string > playout;
        for ( std::size_t t = 0; t < steps.size(); ++t )
        {
            if ( steps[ t ].first != static_cast< int >( t ) )
                throw solver_error( "answer set does not have exactly one action per step: " + line );
            playout.push_back( steps[ t ].second );
        }
        sets.push_back( std::move( playout ) );
    }
    return sets;
}

SolverRun run_external_solver( const AspProgram& program, const std::string& command )
{
    SolverRun run;
    if ( command.empty() )
    {
        run.notice = "no answer set solver configured (set STRATLOG_SOLVER or put clingo on PATH)";
        return run;
    }

    const auto dir = std::filesystem::temp_directory_path();
    const auto stem = "stratlog-" + std::to_string( ::getpid() ) + "-" + std::to_string( std::rand() );
    const auto input = dir / ( stem + ".lp" );
    const auto errors = dir / ( stem + ".err" );
    {
        std::ofstream f( input );
        f << program.text();
    }
    const std::string cmd = command + " < '" + input.string() + "' 2> '" + errors.string() + "'";

    std::string output;
    FILE* pipe = ::popen( cmd.c_str(), "r" );
    if ( !pipe )
    {
        std::filesystem::remove( input );
        throw solver_error( "cannot start solver: " + command );
    }
    char buf[ 4096 ];
    std::size_t got = 0;
    while ( ( got = std::fread( buf, 1, sizeof buf, pipe ) ) > 0 )
        output.append( buf, got );
    const int status = ::pclose( pipe );

    std::string err;
    {
        std::ifstream e( errors );
        std::ostringstream s;
        s << e.rdbuf();
        err = s.str();
    }
    std::error_code ec;
    std::filesystem::remove( input, ec );
    std::filesystem::remove( errors, ec );

    const int code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
    if ( code == 127 )
    {
        run.notice = "solver command not found: " + command;
        return run;
    }
    // clingo: 10 satisfiable, 20 unsatisfiable, 30 all models enumerated
    if ( code != 0 && code != 10 && code != 20 && code != 30 )
        throw solver_error( "solver failed (exit " + std::to_string( code ) + "): " + err );

    run.available = true;
    run.playouts = decode_answer_sets( output );
    return run;
}

} // namespace stratlog
