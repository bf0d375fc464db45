#include "elastic/model.hpp"

#include <algorithm>
#include <cmath>

namespace elastic {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

}  // namespace

EnergyService validate_service(EnergyService raw) {
    require(!raw.id.empty(), "service id: must be non-empty");
    require(raw.end_time > raw.start_time,
            "end_time: empty interval (end_time <= start_time) for service " + raw.id);
    require(raw.tsr >= 0.0 && raw.tsr <= 1.0,
            "tsr: out of [0,1] for service " + raw.id);
    require(raw.intensity_I >= 0.0,
            "intensity_I: negative for service " + raw.id);
    require(raw.reliability >= 0.0 && raw.reliability <= 1.0,
            "reliability: out of [0,1] for service " + raw.id);
    raw.dec_advertised =
        interval_energy(raw.start_time, raw.end_time, raw.intensity_I, raw.tsr);
    return raw;
}

EnergyQuery validate_query(EnergyQuery raw) {
    require(!raw.query_id.empty(), "query_id: must be non-empty");
    require(raw.duration_du > 0,
            "duration_du: must be positive for query " + raw.query_id);
    require(raw.required_energy_RE > 0.0,
            "required_energy_RE: must be positive for query " + raw.query_id);
    require(raw.max_intensity_CI >= 0.0,
            "max_intensity_CI: negative for query " + raw.query_id);
    require(raw.hard_deadline_Dlh >= raw.duration_du,
            "hard_deadline_Dlh: precedes soft deadline for query " + raw.query_id);
    return raw;
}

PartialService make_partial(const EnergyService& parent, const Chunk& chunk) {
    PartialService ps;
    ps.parent_id = parent.id;
    ps.chunk_index = chunk.index;
    ps.start = std::max(parent.start_time, chunk.start);
    ps.end = std::min(parent.end_time, chunk.end);
    ps.intensity_I = parent.intensity_I;
    ps.tsr = parent.tsr;
    ps.reliability = parent.reliability;
    ps.dec = interval_energy(ps.start, ps.end, ps.intensity_I, ps.tsr);
    return ps;
}

PartialService make_idle_partial(const Chunk& chunk) {
    PartialService ps;
    ps.chunk_index = chunk.index;
    ps.start = chunk.start;
    ps.end = chunk.end;
    ps.reliability = 1.0;
    return ps;
}

std::string CompositeService::signature() const {
    std::string sig;
    for (const auto& ps : partials) {
        if (!sig.empty()) sig += '+';
        sig += ps.is_idle() ? "-" : ps.parent_id;
    }
    return sig;
}

PreferenceStrategy strategy_from_wr(double w_r) {
    if (w_r < 0.0 || w_r > 1.0)
        throw ValidationError("w_r: out of [0,1]");
    return PreferenceStrategy{1.0 - w_r, w_r};
}

}  // namespace elastic
