#include "elastic/composer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace elastic {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Deterministic order used for fronts and tie-breaking: lower ExtQ, then
// higher AgR, then lexicographic signature.
bool attribute_order(const CompositeService& a, const CompositeService& b) {
    if (a.ext_q != b.ext_q) return a.ext_q < b.ext_q;
    if (a.agr != b.agr) return a.agr > b.agr;
    return a.signature() < b.signature();
}

// Streaming non-dominated set; keeps memory bounded by the front itself.
struct StreamingFront {
    std::vector<CompositeService> members;

    void insert(const CompositeService& c) {
        for (const auto& m : members)
            if (dominates(m, c)) return;
        members.erase(std::remove_if(members.begin(), members.end(),
                                     [&](const CompositeService& m) {
                                         return dominates(c, m);
                                     }),
                      members.end());
        members.push_back(c);
    }
};

// Shared brute/heuristic pipeline on whatever candidate space tl spans.
// Candidates are streamed: the full space is never materialized, only the
// running fronts (with and without the energy constraint) survive.
CompositionResult elastic_compose(std::string tag, const ChunkedTimeline& tl,
                                  const EnergyQuery& q,
                                  const std::vector<EnergyService>& pool,
                                  const ComposerConfig& cfg) {
    const auto t0 = Clock::now();
    CompositionResult result;
    result.algorithm = std::move(tag);

    const double budget = static_cast<double>(q.extension_budget());
    StreamingFront strict, relaxed;
    bool any_assessed = false;
    bool have_nearest = false;
    CompositeService nearest;
    for_each_composition(tl, cfg.enumeration_cap, [&](CompositeService&& comp) {
        ++result.candidates_examined;
        if (!assess(comp, q, pool, cfg.agr_variant)) return;
        any_assessed = true;
        if (comp.ext_q > budget) {
            if (!have_nearest || comp.ext_q < nearest.ext_q) {
                nearest = std::move(comp);
                have_nearest = true;
            }
            return;
        }
        relaxed.insert(comp);
        if (comp.tec >= q.required_energy_RE) strict.insert(comp);
    });
    if (!any_assessed)
        throw NoFeasibleCompositionError("no candidate carries any energy for query " +
                                         q.query_id);
    if (relaxed.members.empty()) {
        if (have_nearest)
            throw NoFeasibleCompositionError(
                "no composition meets the extension budget of " +
                    std::to_string(q.extension_budget()) + " min for query " +
                    q.query_id + "; nearest miss " + nearest.signature() + " needs " +
                    std::to_string(nearest.ext_q) + " min",
                nearest.signature(), nearest.ext_q);
        throw NoFeasibleCompositionError("no candidate compositions for query " +
                                         q.query_id);
    }

    // The energy constraint applies only when someone can actually meet it.
    result.front.members =
        std::move(strict.members.empty() ? relaxed.members : strict.members);
    std::sort(result.front.members.begin(), result.front.members.end(),
              attribute_order);
    result.has_front = true;
    double tec_min = result.front.members.front().tec, tec_max = tec_min;
    for (const auto& c : result.front.members) {
        tec_min = std::min(tec_min, c.tec);
        tec_max = std::max(tec_max, c.tec);
    }
    for (auto& c : result.front.members)
        c.utility = utility(c, cfg.strategy, tec_min, tec_max);
    result.selected = select_from_front(result.front, cfg.strategy);
    result.elapsed_ms = elapsed_ms_since(t0);
    return result;
}

CompositionResult max_energy_compose(std::string tag, const ChunkedTimeline& tl,
                                     const EnergyQuery& q,
                                     const std::vector<EnergyService>& pool,
                                     const ComposerConfig& cfg) {
    const auto t0 = Clock::now();
    CompositionResult result;
    result.algorithm = std::move(tag);
    result.candidates_examined = 1;

    CompositeService comp;
    for (const auto& chunk_partials : tl.partials_by_chunk) {
        const PartialService* best = &chunk_partials.front();
        for (const auto& ps : chunk_partials) {
            if (best->is_idle() && !ps.is_idle()) {
                best = &ps;
                continue;
            }
            if (ps.is_idle()) continue;
            if (ps.dec > best->dec ||
                (ps.dec == best->dec && ps.parent_id < best->parent_id)) {
                best = &ps;
            }
        }
        comp.partials.push_back(*best);
    }
    if (!assess(comp, q, pool, cfg.agr_variant)) {
        comp.rem_re = q.required_energy_RE;
        comp.ext_q = ext_q(comp.rem_re, q, pool);
    }
    result.selected = std::move(comp);
    result.elapsed_ms = elapsed_ms_since(t0);
    return result;
}

// Non-dominated partials under (dec maximize, reliability maximize).
bool partial_dominates(const PartialService& a, const PartialService& b) {
    return a.dec >= b.dec && a.reliability >= b.reliability &&
           (a.dec > b.dec || a.reliability > b.reliability);
}

}  // namespace

long long count_compositions(const ChunkedTimeline& tl, long long cap) {
    double estimate = 1.0;
    long long count = 1;
    bool overflow = false;
    for (const auto& partials : tl.partials_by_chunk) {
        const auto size = static_cast<long long>(partials.size());
        estimate *= static_cast<double>(size);
        if (!overflow) {
            if (count > cap / size) {
                overflow = true;
            } else {
                count *= size;
            }
        }
    }
    if (overflow || count > cap) {
        throw SearchSpaceOverflowError(
            "search space of " + std::to_string(estimate) +
                " compositions exceeds cap " + std::to_string(cap),
            estimate);
    }
    return count;
}

void for_each_composition(const ChunkedTimeline& tl, long long cap,
                          const std::function<void(CompositeService&&)>& fn) {
    count_compositions(tl, cap);
    if (tl.chunks.empty()) return;

    const std::size_t n = tl.partials_by_chunk.size();
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
        CompositeService comp;
        comp.partials.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            comp.partials.push_back(tl.partials_by_chunk[i][pick[i]]);
        fn(std::move(comp));

        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++pick[i] < tl.partials_by_chunk[i].size()) break;
            pick[i] = 0;
            if (i == 0) return;
        }
    }
}

std::vector<CompositeService> enumerate_all(const ChunkedTimeline& tl, long long cap) {
    std::vector<CompositeService> out;
    for_each_composition(tl, cap,
                         [&](CompositeService&& c) { out.push_back(std::move(c)); });
    return out;
}

bool dominates(const CompositeService& a, const CompositeService& b) {
    return a.agr >= b.agr && a.ext_q <= b.ext_q &&
           (a.agr > b.agr || a.ext_q < b.ext_q);
}

ParetoFront pareto_front(std::vector<CompositeService> cands) {
    ParetoFront front;
    if (cands.empty()) return front;
    std::sort(cands.begin(), cands.end(), attribute_order);

    // One sweep over ExtQ-sorted candidates: a group of equal ExtQ survives
    // with its max AgR, and only if that improves strictly on everything seen
    // at lower ExtQ.
    double best_agr = -1.0;
    std::size_t i = 0;
    while (i < cands.size()) {
        std::size_t j = i;
        while (j < cands.size() && cands[j].ext_q == cands[i].ext_q) ++j;
        const double group_max = cands[i].agr;  // sorted AgR-desc within group
        if (group_max > best_agr) {
            for (std::size_t k = i; k < j && cands[k].agr == group_max; ++k)
                front.members.push_back(cands[k]);
            best_agr = group_max;
        }
        i = j;
    }
    return front;
}

std::vector<CompositeService> apply_constraints(std::vector<CompositeService> cands,
                                                const EnergyQuery& q) {
    const double budget = static_cast<double>(q.extension_budget());
    std::vector<CompositeService> within_budget;
    const CompositeService* nearest = nullptr;
    for (auto& c : cands) {
        if (c.ext_q <= budget) {
            within_budget.push_back(std::move(c));
        } else if (!nearest || c.ext_q < nearest->ext_q) {
            nearest = &c;
        }
    }
    if (within_budget.empty()) {
        if (nearest)
            throw NoFeasibleCompositionError(
                "no composition meets the extension budget of " +
                    std::to_string(q.extension_budget()) + " min for query " +
                    q.query_id + "; nearest miss " + nearest->signature() +
                    " needs " + std::to_string(nearest->ext_q) + " min",
                nearest->signature(), nearest->ext_q);
        throw NoFeasibleCompositionError("no candidate compositions for query " +
                                         q.query_id);
    }

    const bool any_satisfies = std::any_of(
        within_budget.begin(), within_budget.end(),
        [&](const CompositeService& c) { return c.tec >= q.required_energy_RE; });
    if (!any_satisfies) return within_budget;
    std::vector<CompositeService> out;
    for (auto& c : within_budget)
        if (c.tec >= q.required_energy_RE) out.push_back(std::move(c));
    return out;
}

CompositeService select_from_front(const ParetoFront& front,
                                   const PreferenceStrategy& strategy) {
    if (front.members.empty())
        throw NoFeasibleCompositionError("select_from_front: empty front");
    double tec_min = front.members.front().tec, tec_max = tec_min;
    for (const auto& c : front.members) {
        tec_min = std::min(tec_min, c.tec);
        tec_max = std::max(tec_max, c.tec);
    }
    const CompositeService* best = nullptr;
    double best_u = 0.0;
    for (const auto& c : front.members) {
        const double u = utility(c, strategy, tec_min, tec_max);
        if (!best || u > best_u || (u == best_u && attribute_order(c, *best))) {
            best = &c;
            best_u = u;
        }
    }
    CompositeService out = *best;
    out.utility = best_u;
    return out;
}

double utility(const CompositeService& comp, const PreferenceStrategy& strategy,
               double cohort_tec_min, double cohort_tec_max) {
    const double span = cohort_tec_max - cohort_tec_min;
    const double norm = span > 0.0 ? (comp.tec - cohort_tec_min) / span : 1.0;
    return strategy.w_e * norm + strategy.w_r * comp.agr;
}

ChunkedTimeline reduce_space(const ChunkedTimeline& tl, const ComposerConfig& cfg) {
    ChunkedTimeline merged = merge_chunks_by_max(tl);
    const std::size_t k = static_cast<std::size_t>(std::max(1, cfg.top_k));

    for (auto& partials : merged.partials_by_chunk) {
        if (partials.size() <= k) continue;

        double dec_min = partials.front().dec, dec_max = dec_min;
        for (const auto& ps : partials) {
            dec_min = std::min(dec_min, ps.dec);
            dec_max = std::max(dec_max, ps.dec);
        }
        const double span = dec_max - dec_min;
        auto partial_utility = [&](const PartialService& ps) {
            const double norm = span > 0.0 ? (ps.dec - dec_min) / span : 1.0;
            return cfg.strategy.w_e * norm + cfg.strategy.w_r * ps.reliability;
        };
        auto by_utility = [&](const PartialService& a, const PartialService& b) {
            const double ua = partial_utility(a), ub = partial_utility(b);
            if (ua != ub) return ua > ub;
            return a.parent_id < b.parent_id;
        };

        // Non-dominated partials are guaranteed a slot when they fit in k;
        // remaining slots go to the best dominated ones by utility.
        std::vector<PartialService> nd, rest;
        for (const auto& ps : partials) {
            const bool dominated = std::any_of(
                partials.begin(), partials.end(),
                [&](const PartialService& other) { return partial_dominates(other, ps); });
            (dominated ? rest : nd).push_back(ps);
        }
        std::sort(nd.begin(), nd.end(), by_utility);
        std::sort(rest.begin(), rest.end(), by_utility);

        std::vector<PartialService> kept;
        if (nd.size() >= k) {
            kept.assign(nd.begin(), nd.begin() + k);
        } else {
            kept = nd;
            kept.insert(kept.end(), rest.begin(),
                        rest.begin() + std::min(rest.size(), k - nd.size()));
        }
        std::sort(kept.begin(), kept.end(), by_utility);
        partials = std::move(kept);
    }
    return merged;
}

CompositionResult compose_brute(const ChunkedTimeline& tl, const EnergyQuery& q,
                                const std::vector<EnergyService>& pool,
                                const ComposerConfig& cfg) {
    return elastic_compose("brute", tl, q, pool, cfg);
}

CompositionResult compose_heuristic(const ChunkedTimeline& tl, const EnergyQuery& q,
                                    const std::vector<EnergyService>& pool,
                                    const ComposerConfig& cfg) {
    const auto t0 = Clock::now();
    auto result = elastic_compose("heuristic", reduce_space(tl, cfg), q, pool, cfg);
    result.elapsed_ms = elapsed_ms_since(t0);  // include the reduction itself
    return result;
}

CompositionResult compose_greedy(const ChunkedTimeline& tl, const EnergyQuery& q,
                                 const std::vector<EnergyService>& pool,
                                 const ComposerConfig& cfg) {
    return max_energy_compose("greedy", tl, q, pool, cfg);
}

CompositionResult compose_knapsack(const ChunkedTimeline& tl, const EnergyQuery& q,
                                   const std::vector<EnergyService>& pool,
                                   const ComposerConfig& cfg) {
    return max_energy_compose("knapsack", tl, q, pool, cfg);
}

}  // namespace elastic
