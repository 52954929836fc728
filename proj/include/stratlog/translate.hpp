#pragma once

#include "stratlog/crossdot.hpp"
#include "stratlog/formula.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stratlog
{

// ---- Situation Calculus ----------------------------------------------------

// Text syntax, one closed formula per line:
//   forall A, S. body      exists A1. body      ~ & | -> <->
//   Holds(p,S)  Poss(a,S)  Wins(i,S)  Terminal(S)  Do(A,S)  s0
// Lines starting with '%' are comments.
struct SitCalcInput
{
    std::vector< crossdot::NamedFormula > axioms;
    std::vector< std::pair< std::string, Rule > > rules; // (player, rule)
    std::optional< std::string > viewpoint;             // emit Win clauses for this player
    std::vector< std::string > propositions;            // the game's propositions
};

struct SitCalcDocument
{
    std::vector< std::string > lines;
    [[nodiscard]] std::string text() const;
};

// [[f]]_{A,S}; fresh quantified variables are A1, A2, ...
[[nodiscard]] std::string sitcalc_formula( const Formula& f );
// [[r]]^strat_{A,S}
[[nodiscard]] std::string sitcalc_rule( const Rule& r );

// Throws precondition_error when a viewpoint is requested but the game has no
// turn(i) proposition for it.
[[nodiscard]] SitCalcDocument emit_sitcalc( const SitCalcInput& input );

// ---- Answer set programming -------------------------------------------------

class lookahead_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct AspRule
{
    std::string label; // shown in comments, e.g. the source rule text
    Rule rule;
};

struct AspProgram
{
    std::vector< std::string > lines;
    int horizon = 0;
    [[nodiscard]] std::string text() const;
};

// CrossDot game encoding with one action per time step up to the horizon, plus
// compliance constraints for the given players' rules (players 1 and 2).
// Throws lookahead_error if a rule uses X.
[[nodiscard]] AspProgram emit_asp( const crossdot::Params& params, int horizon,
                                   const std::map< int, AspRule >& rules );

class solver_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct SolverRun
{
    bool available = false;
    std::string notice; // why the solver was skipped
    std::vector< std::vector< std::string > > playouts; // action names in time order
};

// Command from STRATLOG_SOLVER, else "clingo -n 0 --verbose=0" if clingo is on
// PATH, else empty.
[[nodiscard]] std::string default_solver_command();

// Runs `command < program-file`; each output line is one answer set of
// does(action,time) atoms. Status lines (SATISFIABLE, ...) are skipped.
// Throws solver_error on a failing exit status or unexpected atoms.
[[nodiscard]] SolverRun run_external_solver( const AspProgram& program, const std::string& command );

// Decodes solver output; exposed for testing.
[[nodiscard]] std::vector< std::vector< std::string > > decode_answer_sets( const std::string& output );

} // namespace stratlog
