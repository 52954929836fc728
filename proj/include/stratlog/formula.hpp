#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace stratlog
{

// Immutable formula of the game language. Only the primitive connectives are
// stored; or/implies/iff/true/false are built from not/and by the factories
// below and re-sugared by to_string().
class Formula
{
public:
    enum class Kind
    {
        prop,
        does,
        legal,
        wins,
        init,
        terminal,
        negation,
        conjunction,
        next,
    };

    static Formula prop( std::string name );
    static Formula does( std::string action );
    static Formula legal( std::string action );
    static Formula wins( std::string player );
    static Formula init();
    static Formula terminal();
    static Formula negate( Formula f );
    static Formula conj( Formula lhs, Formula rhs );
    static Formula next( Formula f );

    // false := init & ~init, true := ~false
    static Formula falsum();
    static Formula verum();
    static Formula disj( Formula lhs, Formula rhs );
    static Formula implies( Formula lhs, Formula rhs );
    static Formula iff( Formula lhs, Formula rhs );
    // Left folds; the empty conjunction is true, the empty disjunction false.
    static Formula conj_all( const std::vector< Formula >& fs );
    static Formula disj_all( const std::vector< Formula >& fs );

    [[nodiscard]] Kind kind() const;
    // Atom payload: proposition, action or player name.
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const Formula& operand() const; // negation, next
    [[nodiscard]] const Formula& lhs() const;     // conjunction
    [[nodiscard]] const Formula& rhs() const;

    [[nodiscard]] bool is_atom() const;
    [[nodiscard]] std::size_t modal_depth() const;
    [[nodiscard]] std::size_t size() const;

    bool operator==( const Formula& other ) const;

private:
    struct Node;
    explicit Formula( std::shared_ptr< const Node > node );
    std::shared_ptr< const Node > _node;
};

std::string to_string( const Formula& f );

// Strategy rule: a formula leaf or an n-ary prioritised disjunction (PD) or
// conjunction (PC) of rules.
class Rule
{
public:
    enum class Kind
    {
        leaf,
        pd,
        pc,
    };

    // Implicit: every formula is a rule.
    Rule( Formula f ); // NOLINT(google-explicit-constructor)

    // Arity one collapses to the argument; arity zero throws std::invalid_argument.
    static Rule pd( std::vector< Rule > args );
    static Rule pc( std::vector< Rule > args );

    [[nodiscard]] Kind kind() const { return _kind; }
    [[nodiscard]] bool is_leaf() const { return _kind == Kind::leaf; }
    [[nodiscard]] const Formula& formula() const; // leaf only
    [[nodiscard]] const std::vector< Rule >& args() const { return _args; }

    // Largest modal depth over all leaves.
    [[nodiscard]] std::size_t modal_depth() const;
    // Leaves in left-to-right order.
    [[nodiscard]] std::vector< Formula > leaves() const;

    bool operator==( const Rule& other ) const;

private:
    Rule( Kind kind, std::vector< Rule > args );

    Kind _kind;
    std::vector< Formula > _leaf; // exactly one element for leaves
    std::vector< Rule > _args;
};

std::string to_string( const Rule& r );

} // namespace stratlog
