#pragma once

#include <vector>

#include "elastic/model.hpp"

namespace elastic {

enum class AgrVariant {
    kAsWritten,   // (1/m) * sum of weighted reliabilities
    kNormalized,  // weighted mean: sum(w_i * rel_i) / sum(w_i), for sensitivity runs
};

// (et - st)/60 * I * Tsr, in mAh.
double dec_of_partial(const PartialService& ps);

// Sum of member dec values; idle placeholders contribute zero.
double tec(const CompositeService& comp);

// Aggregate reliability; m counts the non-idle partials. Throws
// UndefinedAggregateError when the composite carries no energy.
double agr(const CompositeService& comp, const EnergyQuery& q,
           AgrVariant variant = AgrVariant::kAsWritten);

// max(0, RE - TEC*AgR); reads comp.tec and comp.agr.
double rem_re(const CompositeService& comp, const EnergyQuery& q);

// Services of the query's area overlapping [t_s+du, t_s+2du], any provider.
std::vector<EnergyService> extension_pool(const std::vector<EnergyService>& services,
                                          const EnergyQuery& q);

// Expected extension in minutes: RemRE over the pool's mean delivery rate.
// Zero remainder gives 0; an empty pool gives the 2*du sentinel, marking the
// composite extension-infeasible.
double ext_q(double rem_re_value, const EnergyQuery& q,
             const std::vector<EnergyService>& pool);

// Fills tec/agr/rem_re/ext_q in order. Returns false (leaving the composite
// unassessed past tec) when aggregate reliability is undefined.
bool assess(CompositeService& comp, const EnergyQuery& q,
            const std::vector<EnergyService>& pool,
            AgrVariant variant = AgrVariant::kAsWritten);

}  // namespace elastic
