#pragma once

#include <vector>

#include "elastic/model.hpp"

namespace elastic {

struct ChunkedTimeline {
    std::string query_id;
    std::vector<Chunk> chunks;  // abutting, tile [t_s, t_s + du]
    std::vector<std::vector<PartialService>> partials_by_chunk;
};

inline constexpr Minutes kDefaultMinLch = 2;

// Services in the query's area, within the consumer's current limit, whose
// interval overlaps the query window. Ordered by start_time then id.
std::vector<EnergyService> select_nearby(const std::vector<EnergyService>& services,
                                         const EnergyQuery& q);

// Partitions [t_s, t_s+du] at the candidate services' start/end timestamps.
// Interior boundaries closer than min_lch to the previous kept boundary are
// dropped (the later one goes). Chunks with no service hold an idle partial.
ChunkedTimeline chunk_window(const std::vector<EnergyService>& nearby,
                             const EnergyQuery& q, Minutes min_lch = kDefaultMinLch);

// Merges consecutive chunks whose max-energy partial comes from the same
// parent, left to right until fixpoint. Ties on dec go to the smaller id.
ChunkedTimeline merge_chunks_by_max(const ChunkedTimeline& tl);

}  // namespace elastic
