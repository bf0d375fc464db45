#include "elastic/timeline.hpp"

#include <algorithm>
#include <map>

namespace elastic {

namespace {

bool overlaps(Minutes a_start, Minutes a_end, Minutes b_start, Minutes b_end) {
    return a_start < b_end && b_start < a_end;
}

std::vector<PartialService> partials_for_chunk(
    const std::vector<EnergyService>& services, const Chunk& chunk) {
    std::vector<PartialService> out;
    for (const auto& s : services) {
        if (overlaps(s.start_time, s.end_time, chunk.start, chunk.end))
            out.push_back(make_partial(s, chunk));
    }
    if (out.empty()) out.push_back(make_idle_partial(chunk));
    return out;
}

// Index of the max-dec partial, ties to the smaller parent id. Returns -1 for
// idle-only chunks, which never take part in merging.
int argmax_partial(const std::vector<PartialService>& partials) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(partials.size()); ++i) {
        if (partials[i].is_idle()) continue;
        if (best < 0 || partials[i].dec > partials[best].dec ||
            (partials[i].dec == partials[best].dec &&
             partials[i].parent_id < partials[best].parent_id)) {
            best = i;
        }
    }
    return best;
}

}  // namespace

std::vector<EnergyService> select_nearby(const std::vector<EnergyService>& services,
                                         const EnergyQuery& q) {
    std::vector<EnergyService> out;
    for (const auto& s : services) {
        if (s.area_id != q.area_id) continue;
        if (s.intensity_I > q.max_intensity_CI) continue;
        if (!overlaps(s.start_time, s.end_time, q.t_s, q.soft_deadline())) continue;
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const EnergyService& a, const EnergyService& b) {
        if (a.start_time != b.start_time) return a.start_time < b.start_time;
        return a.id < b.id;
    });
    return out;
}

ChunkedTimeline chunk_window(const std::vector<EnergyService>& nearby,
                             const EnergyQuery& q, Minutes min_lch) {
    const Minutes window_start = q.t_s;
    const Minutes window_end = q.soft_deadline();

    std::vector<Minutes> interior;
    for (const auto& s : nearby) {
        for (Minutes t : {s.start_time, s.end_time}) {
            if (t > window_start && t < window_end) interior.push_back(t);
        }
    }
    std::sort(interior.begin(), interior.end());
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());

    // Coalesce sub-MinLch gaps by dropping the later interior boundary; the
    // window end counts as the later boundary of the final pair, so interior
    // boundaries too close to it are dropped as well.
    std::vector<Minutes> kept{window_start};
    for (Minutes b : interior) {
        if (b - kept.back() >= min_lch) kept.push_back(b);
    }
    while (kept.size() > 1 && window_end - kept.back() < min_lch) kept.pop_back();
    kept.push_back(window_end);

    ChunkedTimeline tl;
    tl.query_id = q.query_id;
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
        Chunk c{static_cast<int>(i), kept[i], kept[i + 1]};
        tl.chunks.push_back(c);
        tl.partials_by_chunk.push_back(partials_for_chunk(nearby, c));
    }
    return tl;
}

ChunkedTimeline merge_chunks_by_max(const ChunkedTimeline& tl) {
    ChunkedTimeline out = tl;
    std::size_t i = 0;
    while (i + 1 < out.chunks.size()) {
        const auto& left = out.partials_by_chunk[i];
        const auto& right = out.partials_by_chunk[i + 1];
        int li = argmax_partial(left);
        int ri = argmax_partial(right);
        if (li < 0 || ri < 0 || left[li].parent_id != right[ri].parent_id) {
            ++i;
            continue;
        }
        // Same max provider on both sides: extend the left chunk and rebuild
        // its partials from the union of the two sides.
        Chunk merged{out.chunks[i].index, out.chunks[i].start, out.chunks[i + 1].end};
        std::map<std::string, PartialService> by_parent;
        for (const auto* side : {&left, &right}) {
            for (const auto& ps : *side) {
                if (ps.is_idle()) continue;
                auto [it, inserted] = by_parent.emplace(ps.parent_id, ps);
                if (!inserted) {
                    it->second.start = std::min(it->second.start, ps.start);
                    it->second.end = std::max(it->second.end, ps.end);
                }
            }
        }
        std::vector<PartialService> merged_partials;
        for (auto& [id, ps] : by_parent) {
            ps.chunk_index = merged.index;
            ps.dec = interval_energy(ps.start, ps.end, ps.intensity_I, ps.tsr);
            merged_partials.push_back(ps);
        }
        out.chunks[i] = merged;
        out.partials_by_chunk[i] = std::move(merged_partials);
        out.chunks.erase(out.chunks.begin() + i + 1);
        out.partials_by_chunk.erase(out.partials_by_chunk.begin() + i + 1);
        // Stay on i: the merged chunk may now share its max with the next one.
    }
    for (std::size_t j = 0; j < out.chunks.size(); ++j) {
        out.chunks[j].index = static_cast<int>(j);
        for (auto& ps : out.partials_by_chunk[j]) ps.chunk_index = static_cast<int>(j);
    }
    return out;
}

}  // namespace elastic
