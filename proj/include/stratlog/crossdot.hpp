#pragma once

#include "stratlog/formula.hpp"
#include "stratlog/game.hpp"
#include "stratlog/parser.hpp"

#include <string>
#include <vector>

namespace stratlog::crossdot
{

// m boxes in a line, k in a row wins.
struct Params
{
    int m = 4;
    int k = 2;
};

void validate( const Params& params ); // throws std::invalid_argument

enum class Cell : char
{
    empty = '_',
    cross = 'x',
    dot = 'o',
};

// (t1,t2,x1..xm), written "(1,0,x,o,_,_)".
struct State
{
    bool turn1 = true;
    bool turn2 = false;
    std::vector< Cell > boxes;

    [[nodiscard]] std::string str() const;
    static State parse( std::string_view text ); // throws std::invalid_argument
    bool operator==( const State& ) const = default;
};

[[nodiscard]] std::string action_name( int player, int box ); // a(i,j)
[[nodiscard]] std::string box_prop( int player, int box );     // p(i,j)
[[nodiscard]] std::string turn_prop( int player );             // turn(i)

class Definition final : public GameDefinition
{
public:
    explicit Definition( Params params );

    [[nodiscard]] std::vector< std::string > players() const override;
    [[nodiscard]] std::vector< GameData::Action > actions() const override;
    [[nodiscard]] std::vector< std::string > propositions() const override;
    [[nodiscard]] std::string initial() const override;
    [[nodiscard]] bool terminal( std::string_view state ) const override;
    [[nodiscard]] bool legal( std::string_view state, std::string_view action ) const override;
    [[nodiscard]] std::string update( std::string_view action, std::string_view state ) const override;
    [[nodiscard]] bool goal( std::string_view player, std::string_view state ) const override;
    [[nodiscard]] std::vector< std::string > valuation( std::string_view state ) const override;

    [[nodiscard]] bool wins( int player, const State& s ) const;
    [[nodiscard]] bool terminal( const State& s ) const;

private:
    [[nodiscard]] State state( std::string_view text ) const;
    Params _params;
};

[[nodiscard]] Model generate( const Params& params );

struct NamedFormula
{
    std::string name;
    Formula formula;
};

// The game axioms: initial state, winning and termination conditions,
// legality, effect/frame axioms and turn alternation.
[[nodiscard]] std::vector< NamedFormula > axioms( const Params& params );

// fill_next, fill_isolated, fill_any, combined, c1..cm, thoughtful,
// fill_leftmost, defence, cautious, fill_o_next, passive_defence for player i.
[[nodiscard]] std::vector< std::pair< std::string, Rule > > library( const Params& params, int player );

// The library of both players, named `name@i`.
[[nodiscard]] Definitions library_definitions( const Params& params );

} // namespace stratlog::crossdot
