#include "stratlog/compliance.hpp"

namespace stratlog
{

ReducedModel reduce_model( const Model& model, const ComplianceSpec& spec )
{
    const Game& g = model.g();
    for ( const auto& [ player, strategy ] : spec )
    {
        if ( player.index() >= g.player_count() )
            throw domain_error( "unknown player index in compliance spec" );
        if ( strategy.player != player )
            throw precondition_error( "strategy assigned to player " + g.player_name( player ) +
                                      " belongs to player " + g.player_name( strategy.player ) );
    }

    auto reduced = std::make_shared< const Game >( g.restrict_legality( [ & ]( StateId w, ActionId a ) {
        auto it = spec.find( g.owner( a ) );
        return it == spec.end() || it->second.contains( { w, a } );
    } ) );
    std::vector< StateId > dead_ends = reduced->dead_ends();
    return { Model{ std::move( reduced ), model.valuation }, std::move( dead_ends ) };
}

std::vector< Path > playouts( const Model& model ) { return complete_paths( model.g() ); }

Judgment verify_claim( const Model& model, const Formula& claim ) { return model_valid( model, claim ); }

} // namespace stratlog
