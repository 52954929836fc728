#pragma once

#include "stratlog/formula.hpp"
#include "stratlog/game.hpp"

#include <optional>
#include <set>

namespace stratlog
{

// A set of moves of one player.
struct Strategy
{
    PlayerId player;
    std::set< Move > moves;

    [[nodiscard]] bool empty() const { return moves.empty(); }
    [[nodiscard]] std::size_t size() const { return moves.size(); }
    [[nodiscard]] bool contains( Move mv ) const { return moves.contains( mv ); }
    bool operator==( const Strategy& ) const = default;
};

struct Judgment
{
    bool holds = true;
    std::optional< Path > witness; // a falsifying path when holds is false
};

// A formula with its atoms resolved against one model. Throws domain_error
// for propositions, actions or players the model does not know.
class Evaluator
{
public:
    Evaluator( const Model& model, const Formula& f );

    // M, delta |= f where delta is path with its first `offset` moves dropped.
    [[nodiscard]] bool satisfied( const Path& path, std::size_t offset = 0 ) const;
    [[nodiscard]] std::size_t modal_depth() const { return _depth; }

private:
    struct Node
    {
        Formula::Kind kind;
        std::uint32_t id = 0; // PropId / ActionId / PlayerId
        int lhs = -1;
        int rhs = -1;
    };

    int compile( const Formula& f );
    [[nodiscard]] bool eval( int node, const Path& path, std::size_t k ) const;

    const Model* _model;
    std::vector< Node > _nodes;
    int _root = -1;
    std::size_t _depth = 0;
};

[[nodiscard]] bool satisfies( const Model& model, const Path& path, const Formula& f );

// M |= f: f holds on every reachable path.
[[nodiscard]] Judgment model_valid( const Model& model, const Formula& f );

// M |=_(w,a) f: f holds on every reachable path starting with the move.
// Throws precondition_error unless mv is in Omega.
[[nodiscard]] Judgment valid_under_move( const Model& model, Move mv, const Formula& f );

// S^i(f): the moves of player i under which f is valid.
[[nodiscard]] Strategy strategy_of_formula( const Model& model, PlayerId i, const Formula& f );

} // namespace stratlog
