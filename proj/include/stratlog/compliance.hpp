#pragma once

#include "stratlog/semantics.hpp"

#include <map>

namespace stratlog
{

// Strategies the players are assumed to follow; players without an entry
// are unconstrained.
using ComplianceSpec = std::map< PlayerId, Strategy >;

struct ReducedModel
{
    Model model;
    // Forward-reachable states left without a way to a terminal state; paths
    // through them are no longer reachable in the reduced model.
    std::vector< StateId > dead_ends;
};

// M' with l'(w,a) = l(w,a) and (w,a) in S_i for the actions of each assigned
// player i. Throws precondition_error if a strategy's player does not match
// its key.
[[nodiscard]] ReducedModel reduce_model( const Model& model, const ComplianceSpec& spec );

[[nodiscard]] std::vector< Path > playouts( const Model& model );

// model_valid on the (reduced) model.
[[nodiscard]] Judgment verify_claim( const Model& model, const Formula& claim );

} // namespace stratlog
