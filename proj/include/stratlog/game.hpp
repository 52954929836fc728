#pragma once

#include "stratlog/ids.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stratlog
{

// Plain, name-based description of a finite game. Both the JSON loader and
// the lazy explorer produce one of these; Game is built from it.
struct GameData
{
    struct Action
    {
        std::string id;
        std::string owner;
    };

    struct State
    {
        std::string id;
        bool terminal = false;
        std::vector< std::string > goal;  // players for whom this is a goal state
        std::vector< std::string > props; // valuation v(w)
    };

    struct Transition
    {
        std::string action;
        std::string state;
        std::string next;
    };

    std::vector< std::string > players;
    std::vector< Action > actions;
    std::vector< std::string > propositions; // declared Phi; props of states are added implicitly
    std::string initial;
    std::vector< State > states;
    std::vector< std::pair< std::string, std::string > > legal; // (state, action)
    std::vector< Transition > update;
};

// Programmatic game supplied through string state keys. States are discovered
// lazily from initial() by following legal actions through update().
class GameDefinition
{
public:
    virtual ~GameDefinition() = default;

    [[nodiscard]] virtual std::vector< std::string > players() const = 0;
    [[nodiscard]] virtual std::vector< GameData::Action > actions() const = 0;
    [[nodiscard]] virtual std::vector< std::string > propositions() const = 0;
    [[nodiscard]] virtual std::string initial() const = 0;
    [[nodiscard]] virtual bool terminal( std::string_view state ) const = 0;
    [[nodiscard]] virtual bool legal( std::string_view state, std::string_view action ) const = 0;
    [[nodiscard]] virtual std::string update( std::string_view action, std::string_view state ) const = 0;
    [[nodiscard]] virtual bool goal( std::string_view player, std::string_view state ) const = 0;
    [[nodiscard]] virtual std::vector< std::string > valuation( std::string_view state ) const = 0;
};

// Explores the forward-reachable fragment of a definition. Throws
// non_terminating_error if more than state_limit states are discovered.
[[nodiscard]] GameData explore( const GameDefinition& definition, std::size_t state_limit = 1'000'000 );

// w0 -a0-> w1 ... -a(m-1)-> wm
struct Path
{
    std::vector< StateId > states;
    std::vector< ActionId > actions;

    [[nodiscard]] std::size_t length() const { return actions.size(); }
    bool operator==( const Path& ) const = default;
};

struct Edge
{
    ActionId action;
    StateId next;
};

struct TerminationReport
{
    bool terminating = true;
    std::optional< Path > cycle; // witness: states.front() == states.back()
};

// The explicit state-transition game (N, W, A, initial, t, l, u, g) over the
// materialised state table, with reachability precomputed.
class Game
{
public:
    explicit Game( const GameData& data );

    // Same game with legality filtered by keep(w, a); reachability recomputed.
    [[nodiscard]] Game restrict_legality( const std::function< bool( StateId, ActionId ) >& keep ) const;

    [[nodiscard]] std::size_t player_count() const { return _players.size(); }
    [[nodiscard]] std::size_t action_count() const { return _actions.size(); }
    [[nodiscard]] std::size_t state_count() const { return _states.size(); }

    [[nodiscard]] const std::string& player_name( PlayerId i ) const;
    [[nodiscard]] const std::string& action_name( ActionId a ) const;
    [[nodiscard]] const std::string& state_name( StateId w ) const;
    [[nodiscard]] PlayerId owner( ActionId a ) const;

    [[nodiscard]] std::optional< PlayerId > find_player( std::string_view name ) const;
    [[nodiscard]] std::optional< ActionId > find_action( std::string_view name ) const;
    [[nodiscard]] std::optional< StateId > find_state( std::string_view name ) const;
    [[nodiscard]] PlayerId player( std::string_view name ) const; // throws domain_error
    [[nodiscard]] ActionId action( std::string_view name ) const;
    [[nodiscard]] StateId state( std::string_view name ) const;

    [[nodiscard]] StateId initial() const { return _initial; }
    [[nodiscard]] bool is_terminal( StateId w ) const;
    [[nodiscard]] bool is_goal( PlayerId i, StateId w ) const;
    [[nodiscard]] bool is_legal( StateId w, ActionId a ) const;
    [[nodiscard]] std::optional< StateId > successor( StateId w, ActionId a ) const;
    [[nodiscard]] std::span< const Edge > legal_edges( StateId w ) const;

    // Raw legality: { a in A^i : l(w, a) }.
    [[nodiscard]] std::vector< ActionId > legal_actions( StateId w, PlayerId i ) const;

    [[nodiscard]] const TerminationReport& termination() const { return _termination; }
    // Throws non_terminating_error unless the legal-move graph is acyclic.
    void require_terminating() const;

    // Reachable state: lies on some complete path.
    [[nodiscard]] bool is_reachable( StateId w ) const;
    [[nodiscard]] bool is_forward_reachable( StateId w ) const;
    [[nodiscard]] bool is_co_reachable( StateId w ) const;
    [[nodiscard]] std::vector< StateId > reachable_states() const;
    // Forward-reachable states that cannot reach a terminal state.
    [[nodiscard]] std::vector< StateId > dead_ends() const;

    // Moves of Omega(G) at w, i.e. edges on some complete path.
    [[nodiscard]] std::span< const Edge > moves_at( StateId w ) const;
    [[nodiscard]] bool is_move( Move mv ) const;
    [[nodiscard]] std::vector< Move > omega() const;
    [[nodiscard]] std::vector< Move > omega( PlayerId i ) const;
    // l^i(w) restricted to Omega.
    [[nodiscard]] std::vector< ActionId > player_moves_at( StateId w, PlayerId i ) const;

    [[nodiscard]] bool is_reachable_path( const Path& path ) const;

private:
    struct StateRecord
    {
        std::string name;
        bool terminal = false;
        std::vector< bool > goal;
        std::vector< Edge > edges; // sorted by action
        std::vector< Edge > moves; // subset of edges inside Omega
        bool forward = false;
        bool co_reachable = false;
    };

    Game() = default;
    void analyse();

    std::vector< std::string > _players;
    std::vector< std::string > _actions;
    std::vector< PlayerId > _owners;
    std::vector< StateRecord > _states;
    std::unordered_map< std::string, PlayerId > _player_index;
    std::unordered_map< std::string, ActionId > _action_index;
    std::unordered_map< std::string, StateId > _state_index;
    StateId _initial;
    TerminationReport _termination;
};

// v : W -> 2^Phi
class Valuation
{
public:
    Valuation( std::vector< std::string > propositions, std::vector< std::vector< PropId > > per_state );

    [[nodiscard]] std::size_t size() const { return _names.size(); }
    [[nodiscard]] const std::string& name( PropId p ) const;
    [[nodiscard]] std::optional< PropId > find( std::string_view name ) const;
    // Sorted by PropId; PropIds are ordered by proposition name.
    [[nodiscard]] std::span< const PropId > props( StateId w ) const;
    [[nodiscard]] bool holds( StateId w, PropId p ) const;

private:
    std::vector< std::string > _names;
    std::unordered_map< std::string, PropId > _index;
    std::vector< std::vector< PropId > > _per_state;
};

// A state transition model M = (G, v). Cheap to copy.
struct Model
{
    std::shared_ptr< const Game > game;
    std::shared_ptr< const Valuation > valuation;

    [[nodiscard]] const Game& g() const { return *game; }
    [[nodiscard]] const Valuation& v() const { return *valuation; }
};

[[nodiscard]] Model build_model( const GameData& data );

// Depth-first enumeration of reachable paths: every reachable state as a
// singleton followed by all its extensions through Omega, up to max_len actions.
class PathEnumerator
{
public:
    PathEnumerator( std::shared_ptr< const Game > game, std::optional< std::size_t > max_len );

    [[nodiscard]] std::optional< Path > next();

private:
    struct Frame
    {
        StateId state;
        std::size_t edge = 0;
    };

    std::shared_ptr< const Game > _game;
    std::optional< std::size_t > _max_len;
    std::vector< StateId > _roots;
    std::size_t _root = 0;
    std::vector< Frame > _stack;
    std::vector< ActionId > _actions;
};

[[nodiscard]] PathEnumerator reachable_paths( const std::shared_ptr< const Game >& game,
                                              std::optional< std::size_t > max_len = std::nullopt );

// Calls visit(path) for every complete path; visit returns false to stop.
void for_each_complete_path( const Game& game, const std::function< bool( const Path& ) >& visit );
[[nodiscard]] std::vector< Path > complete_paths( const Game& game );

[[nodiscard]] std::string render_path( const Game& game, const Path& path );
[[nodiscard]] std::string render_move( const Game& game, Move mv );

} // namespace stratlog
