#include "stratlog/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <vector>

namespace stratlog
{

parse_error::parse_error( const std::string& message, std::size_t position )
    : std::runtime_error( "parse error at position " + std::to_string( position ) + ": " + message ),
      _position{ position }, _detail{ message }
{
}

parse_error::parse_error( const std::string& message, std::size_t position, std::size_t line )
    : std::runtime_error( "line " + std::to_string( line ) + ": parse error at position " + std::to_string( position ) +
                          ": " + message ),
      _position{ position }, _line{ line }, _detail{ message }
{
}

void Definitions::define( const std::string& name, Rule rule )
{
    if ( !_table.emplace( name, std::move( rule ) ).second )
        throw std::invalid_argument( "duplicate definition '" + name + "'" );
}

const Rule* Definitions::find( std::string_view name ) const
{
    auto it = _table.find( name );
    return it == _table.end() ? nullptr : &it->second;
}

namespace
{

enum class tok
{
    end,
    ident,
    number,
    lparen,
    rparen,
    lbracket,
    rbracket,
    comma,
    tilde,
    amp,
    bar,
    arrow,
    dblarrow,
};

struct Token
{
    tok kind = tok::end;
    std::string text;
    std::size_t pos = 0;
};

bool ident_start( char c ) { return std::isalpha( static_cast< unsigned char >( c ) ) || c == '_'; }

bool ident_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '@' || c == '\'';
}

std::vector< Token > tokenize( std::string_view s )
{
    std::vector< Token > out;
    std::size_t k = 0;
    while ( k < s.size() )
    {
        const char c = s[ k ];
        if ( std::isspace( static_cast< unsigned char >( c ) ) )
        {
            ++k;
            continue;
        }
        Token t;
        t.pos = k;
        if ( ident_start( c ) )
        {
            std::size_t e = k + 1;
            while ( e < s.size() && ident_char( s[ e ] ) )
                ++e;
            t.kind = tok::ident;
            t.text = std::string( s.substr( k, e - k ) );
            k = e;
        }
        else if ( std::isdigit( static_cast< unsigned char >( c ) ) )
        {
            std::size_t e = k + 1;
            while ( e < s.size() && std::isdigit( static_cast< unsigned char >( s[ e ] ) ) )
                ++e;
            t.kind = tok::number;
            t.text = std::string( s.substr( k, e - k ) );
            k = e;
        }
        else if ( s.substr( k, 3 ) == "<->" )
        {
            t.kind = tok::dblarrow;
            k += 3;
        }
        else if ( s.substr( k, 2 ) == "->" )
        {
            t.kind = tok::arrow;
            k += 2;
        }
        else
        {
            switch ( c )
            {
            case '(': t.kind = tok::lparen; break;
            case ')': t.kind = tok::rparen; break;
            case '[': t.kind = tok::lbracket; break;
            case ']': t.kind = tok::rbracket; break;
            case ',': t.kind = tok::comma; break;
            case '~': t.kind = tok::tilde; break;
            case '&': t.kind = tok::amp; break;
            case '|': t.kind = tok::bar; break;
            default: throw parse_error( std::string( "unexpected character '" ) + c + "'", k );
            }
            ++k;
        }
        out.push_back( std::move( t ) );
    }
    Token end;
    end.pos = s.size();
    out.push_back( end );
    return out;
}

const char* describe( tok t )
{
    switch ( t )
    {
    case tok::end: return "end of input";
    case tok::ident: return "identifier";
    case tok::number: return "number";
    case tok::lparen: return "'('";
    case tok::rparen: return "')'";
    case tok::lbracket: return "'['";
    case tok::rbracket: return "']'";
    case tok::comma: return "','";
    case tok::tilde: return "'~'";
    case tok::amp: return "'&'";
    case tok::bar: return "'|'";
    case tok::arrow: return "'->'";
    case tok::dblarrow: return "'<->'";
    }
    return "token";
}

bool is_rule_keyword( const std::string& s ) { return s == "PD" || s == "PC"; }

class Parser
{
public:
    Parser( std::string_view text, const Definitions* env ) : _toks{ tokenize( text ) }, _env{ env } {}

    Formula formula_only()
    {
        Formula f = iff();
        expect_end();
        return f;
    }

    Rule rule_only()
    {
        Rule r = rule();
        expect_end();
        return r;
    }

private:
    const Token& peek( std::size_t ahead = 0 ) const
    {
        const std::size_t k = std::min( _at + ahead, _toks.size() - 1 );
        return _toks[ k ];
    }

    Token take() { return _toks[ std::min( _at++, _toks.size() - 1 ) ]; }

    bool accept( tok t )
    {
        if ( peek().kind != t )
            return false;
        ++_at;
        return true;
    }

    Token expect( tok t )
    {
        if ( peek().kind != t )
            fail( std::string( "expected " ) + describe( t ) + ", found " + found() );
        return take();
    }

    std::string found() const
    {
        const Token& t = peek();
        if ( t.kind == tok::ident || t.kind == tok::number )
            return "'" + t.text + "'";
        return describe( t.kind );
    }

    [[noreturn]] void fail( const std::string& message ) const { throw parse_error( message, peek().pos ); }

    void expect_end()
    {
        if ( peek().kind != tok::end )
            fail( "unexpected " + found() );
    }

    const Rule* bound( const std::string& name ) const { return _env ? _env->find( name ) : nullptr; }

    bool at_rule_boundary( std::size_t ahead ) const
    {
        const tok k = peek( ahead ).kind;
        return k == tok::comma || k == tok::rbracket || k == tok::end;
    }

    Rule rule()
    {
        const Token& t = peek();
        if ( t.kind == tok::ident && is_rule_keyword( t.text ) && peek( 1 ).kind == tok::lbracket )
        {
            const bool disjunction = take().text == "PD";
            const std::size_t open = take().pos;
            std::vector< Rule > args;
            if ( peek().kind == tok::rbracket )
                throw parse_error( std::string( disjunction ? "PD" : "PC" ) + "[] requires at least one argument",
                                   open );
            args.push_back( rule() );
            while ( accept( tok::comma ) )
                args.push_back( rule() );
            expect( tok::rbracket );
            return disjunction ? Rule::pd( std::move( args ) ) : Rule::pc( std::move( args ) );
        }
        if ( t.kind == tok::ident && at_rule_boundary( 1 ) )
        {
            if ( const Rule* r = bound( t.text ); r && !r->is_leaf() )
            {
                take();
                return *r;
            }
        }
        return Rule( iff() );
    }

    Formula iff()
    {
        Formula f = imp();
        while ( accept( tok::dblarrow ) )
            f = Formula::iff( f, imp() );
        return f;
    }

    Formula imp()
    {
        Formula f = disj();
        if ( accept( tok::arrow ) )
            return Formula::implies( f, imp() );
        return f;
    }

    Formula disj()
    {
        Formula f = conj();
        while ( accept( tok::bar ) )
            f = Formula::disj( f, conj() );
        return f;
    }

    Formula conj()
    {
        Formula f = unary();
        while ( accept( tok::amp ) )
            f = Formula::conj( f, unary() );
        return f;
    }

    Formula unary()
    {
        if ( accept( tok::tilde ) )
            return Formula::negate( unary() );
        if ( peek().kind == tok::ident && peek().text == "X" )
        {
            take();
            return Formula::next( unary() );
        }
        return primary();
    }

    Formula primary()
    {
        if ( accept( tok::lparen ) )
        {
            Formula f = iff();
            expect( tok::rparen );
            return f;
        }
        if ( peek().kind != tok::ident )
            fail( "expected a formula, found " + found() );

        const Token t = take();
        if ( is_rule_keyword( t.text ) && peek().kind == tok::lbracket )
            throw parse_error( "rule connective in formula position", t.pos );
        if ( t.text == "init" )
            return Formula::init();
        if ( t.text == "terminal" )
            return Formula::terminal();
        if ( t.text == "true" )
            return Formula::verum();
        if ( t.text == "false" )
            return Formula::falsum();
        if ( t.text == "does" || t.text == "legal" || t.text == "wins" )
        {
            expect( tok::lparen );
            std::string arg = term();
            expect( tok::rparen );
            if ( t.text == "does" )
                return Formula::does( std::move( arg ) );
            if ( t.text == "legal" )
                return Formula::legal( std::move( arg ) );
            return Formula::wins( std::move( arg ) );
        }
        if ( peek().kind == tok::lparen )
            return Formula::prop( t.text + arguments() );
        if ( const Rule* r = bound( t.text ) )
        {
            if ( !r->is_leaf() )
                throw parse_error( "rule connective in formula position", t.pos );
            return r->formula();
        }
        return Formula::prop( t.text );
    }

    // '(' term (',' term)* ')' rendered without whitespace
    std::string arguments()
    {
        expect( tok::lparen );
        std::string out = "(" + term();
        while ( accept( tok::comma ) )
            out += "," + term();
        expect( tok::rparen );
        return out + ")";
    }

    std::string term()
    {
        if ( peek().kind == tok::number )
            return take().text;
        if ( peek().kind != tok::ident )
            fail( "expected a term, found " + found() );
        std::string name = take().text;
        if ( peek().kind == tok::lparen )
            name += arguments();
        return name;
    }

    std::vector< Token > _toks;
    std::size_t _at = 0;
    const Definitions* _env;
};

} // namespace

Formula parse_formula( std::string_view text, const Definitions* env ) { return Parser( text, env ).formula_only(); }

Rule parse_rule( std::string_view text, const Definitions* env ) { return Parser( text, env ).rule_only(); }

void load_definitions( std::istream& in, Definitions& into )
{
    std::string line;
    std::size_t lineno = 0;
    while ( std::getline( in, line ) )
    {
        ++lineno;
        const auto first = line.find_first_not_of( " \t\r" );
        if ( first == std::string::npos || line[ first ] == '#' || line[ first ] == '%' )
            continue;
        const auto sep = line.find( ":=" );
        if ( sep == std::string::npos )
            throw parse_error( "expected 'name := definition'", first, lineno );
        std::string name = line.substr( first, sep - first );
        while ( !name.empty() && std::isspace( static_cast< unsigned char >( name.back() ) ) )
            name.pop_back();
        if ( name.empty() || !ident_start( name.front() ) ||
             !std::all_of( name.begin(), name.end(), ident_char ) )
            throw parse_error( "invalid definition name '" + name + "'", first, lineno );
        try
        {
            into.define( name, parse_rule( std::string_view( line ).substr( sep + 2 ), &into ) );
        }
        catch ( const parse_error& e )
        {
            throw parse_error( e.detail(), sep + 2 + e.position(), lineno );
        }
        catch ( const std::invalid_argument& e )
        {
            throw parse_error( e.what(), first, lineno );
        }
    }
}

void load_definitions_file( const std::filesystem::path& path, Definitions& into )
{
    std::ifstream in( path );
    if ( !in )
        throw std::runtime_error( "cannot open definitions file " + path.string() );
    load_definitions( in, into );
}

} // namespace stratlog
