#pragma once

#include "stratlog/semantics.hpp"

#include <map>
#include <mutex>
#include <string>

namespace stratlog
{

// S restricted to the moves at w.
[[nodiscard]] Strategy restrict( const Strategy& s, StateId w );

// Set operations; mixing players throws precondition_error.
[[nodiscard]] Strategy intersect( const Strategy& a, const Strategy& b );
[[nodiscard]] Strategy unite( const Strategy& a, const Strategy& b );
[[nodiscard]] bool is_subset( const Strategy& a, const Strategy& b );

[[nodiscard]] bool is_valid( const Strategy& s );
// Some move at every reachable state where the player has a reachable move.
[[nodiscard]] bool is_complete( const Game& game, const Strategy& s );
[[nodiscard]] bool is_deterministic( const Strategy& s );
[[nodiscard]] bool is_functional( const Game& game, const Strategy& s );

// Closed under states with equal valuations.
[[nodiscard]] bool is_markovian( const Model& model, const Strategy& s );

// Disjunction over the moves of S of the full state description of w and
// does(a). Throws precondition_error if S is not Markovian.
[[nodiscard]] Formula represent_markovian( const Model& model, const Strategy& s );

// Supplies the strategy denoted by a rule leaf.
class LeafResolver
{
public:
    virtual ~LeafResolver() = default;
    [[nodiscard]] virtual PlayerId player() const = 0;
    [[nodiscard]] virtual Strategy resolve( const Formula& leaf ) const = 0;
};

// Leaves are formulas evaluated through S^i; results are cached by formula.
class FormulaLeafResolver final : public LeafResolver
{
public:
    FormulaLeafResolver( Model model, PlayerId player );

    [[nodiscard]] PlayerId player() const override { return _player; }
    [[nodiscard]] Strategy resolve( const Formula& leaf ) const override;

private:
    Model _model;
    PlayerId _player;
    mutable std::mutex _mutex;
    mutable std::map< std::string, Strategy > _cache;
};

// Leaves are looked up by their printed form in a fixed table.
class TableLeafResolver final : public LeafResolver
{
public:
    TableLeafResolver( PlayerId player, std::map< std::string, Strategy > table );

    [[nodiscard]] PlayerId player() const override { return _player; }
    [[nodiscard]] Strategy resolve( const Formula& leaf ) const override;

private:
    PlayerId _player;
    std::map< std::string, Strategy > _table;
};

// S^i(r) for PD / PC rules, evaluated n-ary.
[[nodiscard]] Strategy interpret_rule( const LeafResolver& resolver, const Rule& r );

// Per-state combination steps, exposed for strategies computed elsewhere.
[[nodiscard]] Strategy prioritised_disjunction( const std::vector< Strategy >& args );
[[nodiscard]] Strategy prioritised_conjunction( const std::vector< Strategy >& args );

struct RuleProperties
{
    Strategy strategy;
    bool consistent = false;
    bool complete = false;
    bool deterministic = false;
    bool functional = false;
};

[[nodiscard]] RuleProperties rule_properties( const Model& model, PlayerId i, const Rule& r );
[[nodiscard]] RuleProperties strategy_properties( const Game& game, Strategy s );

} // namespace stratlog
