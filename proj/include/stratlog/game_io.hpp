#pragma once

#include "stratlog/crossdot.hpp"
#include "stratlog/game.hpp"
#include "stratlog/parser.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stratlog
{

// Malformed game file; the message carries the JSON pointer of the offending value.
class load_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Keys: players, actions [{id, owner}], initial, states [{id, terminal, goal,
// props}], legal [[state, action]], update [[action, state, next]].
[[nodiscard]] GameData parse_game_json( std::string_view text );
[[nodiscard]] GameData load_game_file( const std::filesystem::path& path );

struct LoadedGame
{
    Model model;
    std::optional< crossdot::Params > crossdot; // set for builtin games
    Definitions library;                        // builtin named rules, e.g. thoughtful@1
};

// "crossdot:m=4,k=2" or "file:<path>".
[[nodiscard]] LoadedGame load_game_spec( std::string_view spec );

} // namespace stratlog
