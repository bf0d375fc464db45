#pragma once

#include <functional>
#include <vector>

#include "elastic/assessment.hpp"
#include "elastic/model.hpp"
#include "elastic/timeline.hpp"

namespace elastic {

inline constexpr long long kDefaultEnumerationCap = 10'000'000;
inline constexpr int kDefaultTopK = 3;

struct ComposerConfig {
    PreferenceStrategy strategy;
    int top_k = kDefaultTopK;
    long long enumeration_cap = kDefaultEnumerationCap;
    AgrVariant agr_variant = AgrVariant::kAsWritten;
};

// AgR maximized, ExtQ minimized; members are mutually non-dominated, ordered
// by ExtQ asc, AgR desc, then signature.
struct ParetoFront {
    std::vector<CompositeService> members;
};

struct CompositionResult {
    std::string algorithm;
    CompositeService selected;
    ParetoFront front;
    bool has_front = false;
    long long candidates_examined = 0;
    double elapsed_ms = 0.0;
};

// |AllComp| = product of per-chunk partial counts. Throws
// SearchSpaceOverflowError (naming the count) beyond the cap.
long long count_compositions(const ChunkedTimeline& tl,
                             long long cap = kDefaultEnumerationCap);

// Streams every one-partial-per-chunk combination in lexicographic chunk
// order. Checks the cap up front.
void for_each_composition(const ChunkedTimeline& tl, long long cap,
                          const std::function<void(CompositeService&&)>& fn);

std::vector<CompositeService> enumerate_all(const ChunkedTimeline& tl,
                                            long long cap = kDefaultEnumerationCap);

// True iff a is at least as good on both attributes and strictly better on one.
bool dominates(const CompositeService& a, const CompositeService& b);

// Exact non-dominated subset of the (already assessed) candidates.
ParetoFront pareto_front(std::vector<CompositeService> cands);

// Keeps ExtQ within the extension budget always; additionally keeps
// TEC >= RE when at least one candidate satisfies it (the energy constraint
// is relaxed otherwise, since under-provisioned composites are exactly what
// the extension mechanism covers). Throws NoFeasibleCompositionError with the
// nearest-miss candidate when nothing survives.
std::vector<CompositeService> apply_constraints(std::vector<CompositeService> cands,
                                                const EnergyQuery& q);

// w_e * minmax-norm(TEC over the cohort) + w_r * AgR.
double utility(const CompositeService& comp, const PreferenceStrategy& strategy,
               double cohort_tec_min, double cohort_tec_max);

// Utility argmax over the front (the front is the normalization cohort).
// Ties go to lower ExtQ, then higher AgR, then signature.
CompositeService select_from_front(const ParetoFront& front,
                                   const PreferenceStrategy& strategy);

// Per-chunk search-space reduction: chunk merging plus top-k partials per
// chunk by per-chunk utility, with non-dominated (dec, rel) partials kept
// first. The result's candidate set is PromComp.
ChunkedTimeline reduce_space(const ChunkedTimeline& tl, const ComposerConfig& cfg);

CompositionResult compose_brute(const ChunkedTimeline& tl, const EnergyQuery& q,
                                const std::vector<EnergyService>& pool,
                                const ComposerConfig& cfg);

CompositionResult compose_heuristic(const ChunkedTimeline& tl, const EnergyQuery& q,
                                    const std::vector<EnergyService>& pool,
                                    const ComposerConfig& cfg);

// Max-dec partial per chunk; no front, no constraint filtering.
CompositionResult compose_greedy(const ChunkedTimeline& tl, const EnergyQuery& q,
                                 const std::vector<EnergyService>& pool,
                                 const ComposerConfig& cfg);

// Same selection rule on the unmerged timeline; kept as a distinct tagged
// baseline for reporting parity.
CompositionResult compose_knapsack(const ChunkedTimeline& tl, const EnergyQuery& q,
                                   const std::vector<EnergyService>& pool,
                                   const ComposerConfig& cfg);

}  // namespace elastic
