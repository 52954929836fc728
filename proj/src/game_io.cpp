#include "stratlog/game_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace stratlog
{

namespace
{

using json = nlohmann::json;

[[noreturn]] void fail( const std::string& where, const std::string& what )
{
    throw load_error( "game file " + where + ": " + what );
}

const json& member( const json& obj, const char* key, const std::string& where )
{
    if ( !obj.is_object() )
        fail( where, "expected an object" );
    auto it = obj.find( key );
    if ( it == obj.end() )
        fail( where, std::string( "missing key '" ) + key + "'" );
    return *it;
}

std::string text( const json& v, const std::string& where )
{
    if ( !v.is_string() )
        fail( where, "expected a string" );
    return v.get< std::string >();
}

const json& array( const json& v, const std::string& where )
{
    if ( !v.is_array() )
        fail( where, "expected an array" );
    return v;
}

std::string known( const std::set< std::string >& ids, const json& v, const std::string& where, const char* what )
{
    std::string id = text( v, where );
    if ( !ids.contains( id ) )
        fail( where, std::string( "unknown " ) + what + " '" + id + "'" );
    return id;
}

} // namespace

GameData parse_game_json( std::string_view source )
{
    json doc;
    try
    {
        doc = json::parse( source );
    }
    catch ( const json::parse_error& e )
    {
        throw load_error( std::string( "game file is not valid JSON: " ) + e.what() );
    }

    GameData data;
    std::set< std::string > players, actions, states;

    const auto& jplayers = array( member( doc, "players", "" ), "/players" );
    for ( std::size_t k = 0; k < jplayers.size(); ++k )
    {
        const std::string where = "/players/" + std::to_string( k );
        std::string id = text( jplayers[ k ], where );
        if ( !players.insert( id ).second )
            fail( where, "duplicate player '" + id + "'" );
        data.players.push_back( std::move( id ) );
    }
    if ( data.players.empty() )
        fail( "/players", "at least one player is required" );

    const auto& jactions = array( member( doc, "actions", "" ), "/actions" );
    for ( std::size_t k = 0; k < jactions.size(); ++k )
    {
        const std::string where = "/actions/" + std::to_string( k );
        std::string id = text( member( jactions[ k ], "id", where ), where + "/id" );
        std::string owner = known( players, member( jactions[ k ], "owner", where ), where + "/owner", "player" );
        if ( !actions.insert( id ).second )
            fail( where + "/id", "duplicate action '" + id + "'" );
        data.actions.push_back( { std::move( id ), std::move( owner ) } );
    }

    const auto& jstates = array( member( doc, "states", "" ), "/states" );
    for ( std::size_t k = 0; k < jstates.size(); ++k )
    {
        const std::string where = "/states/" + std::to_string( k );
        const json& js = jstates[ k ];
        GameData::State s;
        s.id = text( member( js, "id", where ), where + "/id" );
        if ( !states.insert( s.id ).second )
            fail( where + "/id", "duplicate state '" + s.id + "'" );
        if ( auto it = js.find( "terminal" ); it != js.end() )
        {
            if ( !it->is_boolean() )
                fail( where + "/terminal", "expected a boolean" );
            s.terminal = it->get< bool >();
        }
        if ( auto it = js.find( "goal" ); it != js.end() )
        {
            const auto& goal = array( *it, where + "/goal" );
            for ( std::size_t g = 0; g < goal.size(); ++g )
                s.goal.push_back( known( players, goal[ g ], where + "/goal/" + std::to_string( g ), "player" ) );
        }
        if ( auto it = js.find( "props" ); it != js.end() )
        {
            const auto& props = array( *it, where + "/props" );
            for ( std::size_t p = 0; p < props.size(); ++p )
                s.props.push_back( text( props[ p ], where + "/props/" + std::to_string( p ) ) );
        }
        data.states.push_back( std::move( s ) );
    }

    data.initial = known( states, member( doc, "initial", "" ), "/initial", "state" );

    const auto& jlegal = array( member( doc, "legal", "" ), "/legal" );
    for ( std::size_t k = 0; k < jlegal.size(); ++k )
    {
        const std::string where = "/legal/" + std::to_string( k );
        const auto& pair = array( jlegal[ k ], where );
        if ( pair.size() != 2 )
            fail( where, "expected [state, action]" );
        data.legal.emplace_back( known( states, pair[ 0 ], where + "/0", "state" ),
                                 known( actions, pair[ 1 ], where + "/1", "action" ) );
    }

    const auto& jupdate = array( member( doc, "update", "" ), "/update" );
    for ( std::size_t k = 0; k < jupdate.size(); ++k )
    {
        const std::string where = "/update/" + std::to_string( k );
        const auto& triple = array( jupdate[ k ], where );
        if ( triple.size() != 3 )
            fail( where, "expected [action, state, next_state]" );
        data.update.push_back( { known( actions, triple[ 0 ], where + "/0", "action" ),
                                 known( states, triple[ 1 ], where + "/1", "state" ),
                                 known( states, triple[ 2 ], where + "/2", "state" ) } );
    }

    // Legal moves need an update entry; report it with the legal entry's path.
    std::set< std::pair< std::string, std::string > > updated;
    for ( const auto& t : data.update )
        updated.emplace( t.state, t.action );
    for ( std::size_t k = 0; k < data.legal.size(); ++k )
        if ( !updated.contains( data.legal[ k ] ) )
            fail( "/legal/" + std::to_string( k ), "legal move (" + data.legal[ k ].first + ", " +
                                                       data.legal[ k ].second + ") has no update entry" );
    return data;
}

GameData load_game_file( const std::filesystem::path& path )
{
    std::ifstream in( path );
    if ( !in )
        throw load_error( "cannot open game file " + path.string() );
    std::ostringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse_game_json( buf.str() );
    }
    catch ( const load_error& e )
    {
        throw load_error( path.string() + ": " + e.what() );
    }
}

LoadedGame load_game_spec( std::string_view spec )
{
    if ( spec.starts_with( "file:" ) )
    {
        GameData data = load_game_file( std::string( spec.substr( 5 ) ) );
        try
        {
            return { build_model( data ), std::nullopt, {} };
        }
        catch ( const domain_error& e )
        {
            throw load_error( std::string( spec.substr( 5 ) ) + ": " + e.what() );
        }
    }
    if ( spec.starts_with( "crossdot" ) )
    {
        crossdot::Params params;
        std::string_view rest = spec.substr( 8 );
        if ( !rest.empty() )
        {
            if ( rest.front() != ':' )
                throw std::invalid_argument( "expected crossdot:m=<boxes>,k=<length>" );
            std::stringstream fields{ std::string( rest.substr( 1 ) ) };
            std::string field;
            while ( std::getline( fields, field, ',' ) )
            {
                const auto eq = field.find( '=' );
                int value = 0;
                try
                {
                    if ( eq == std::string::npos )
                        throw std::invalid_argument( field );
                    std::size_t used = 0;
                    value = std::stoi( field.substr( eq + 1 ), &used );
                    if ( used != field.size() - eq - 1 )
                        throw std::invalid_argument( field );
                }
                catch ( const std::logic_error& )
                {
                    throw std::invalid_argument( "bad crossdot parameter '" + field + "'" );
                }
                const std::string key = field.substr( 0, eq );
                if ( key == "m" )
                    params.m = value;
                else if ( key == "k" )
                    params.k = value;
                else
                    throw std::invalid_argument( "unknown crossdot parameter '" + key + "'" );
            }
        }
        crossdot::validate( params );
        return { crossdot::generate( params ), params, crossdot::library_definitions( params ) };
    }
    throw std::invalid_argument( "unknown game spec '" + std::string( spec ) +
                                 "' (expected crossdot:m=..,k=.. or file:<path>)" );
}

} // namespace stratlog
