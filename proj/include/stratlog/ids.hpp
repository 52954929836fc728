#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace stratlog
{

// Dense indices into a Game's tables. Distinct tag types keep states,
// actions, players and propositions from being mixed up.
template< typename Tag >
struct index_id
{
    std::uint32_t value = 0;

    constexpr index_id() = default;
    constexpr explicit index_id( std::uint32_t v ) : value{ v } {}
    constexpr explicit index_id( std::size_t v ) : value{ static_cast< std::uint32_t >( v ) } {}

    constexpr auto operator<=>( const index_id& ) const = default;
    [[nodiscard]] constexpr std::size_t index() const { return value; }
};

struct player_tag {};
struct action_tag {};
struct state_tag {};
struct prop_tag {};

using PlayerId = index_id< player_tag >;
using ActionId = index_id< action_tag >;
using StateId = index_id< state_tag >;
using PropId = index_id< prop_tag >;

// A state-action pair (w, a).
struct Move
{
    StateId state;
    ActionId action;

    constexpr auto operator<=>( const Move& ) const = default;
};

// Unknown state/action/player/proposition, or a query outside the game.
class domain_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A query that needs a finitely terminating game was asked of one with a cycle.
class non_terminating_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class precondition_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace stratlog

template< typename Tag >
struct std::hash< stratlog::index_id< Tag > >
{
    std::size_t operator()( const stratlog::index_id< Tag >& id ) const noexcept
    {
        return std::hash< std::uint32_t >{}( id.value );
    }
};
