#pragma once

#include <string>
#include <vector>

#include "elastic/errors.hpp"

namespace elastic {

// Times are integer minutes, energies mAh, currents mA.
using Minutes = int;

inline constexpr double kMinutesPerHour = 60.0;

// Energy delivered by a constant current over an interval, in mAh.
inline double interval_energy(Minutes start, Minutes end, double intensity_ma,
                              double tsr) {
    return (static_cast<double>(end - start) / kMinutesPerHour) * intensity_ma * tsr;
}

struct EnergyService {
    std::string id;
    std::string owner_id;
    std::string area_id;
    Minutes start_time = 0;
    Minutes end_time = 0;
    double intensity_I = 0.0;  // mA
    double tsr = 0.0;          // [0,1]
    double dec_advertised = 0.0;  // mAh, always derived from duration * I * Tsr
    double reliability = 0.0;     // [0,1]

    Minutes duration() const { return end_time - start_time; }
};

// Checks invariants and recomputes dec_advertised; never trusts the input value.
EnergyService validate_service(EnergyService raw);

struct EnergyQuery {
    std::string query_id;
    std::string area_id;
    Minutes t_s = 0;
    double required_energy_RE = 0.0;  // mAh
    double max_intensity_CI = 0.0;    // mA
    Minutes duration_du = 0;          // soft deadline is t_s + duration_du
    Minutes hard_deadline_Dlh = 0;    // minutes after t_s, >= duration_du

    Minutes soft_deadline() const { return t_s + duration_du; }
    Minutes hard_deadline() const { return t_s + hard_deadline_Dlh; }
    // Tolerated extension past the soft deadline.
    Minutes extension_budget() const { return hard_deadline_Dlh - duration_du; }
};

EnergyQuery validate_query(EnergyQuery raw);

struct Chunk {
    int index = 0;
    Minutes start = 0;
    Minutes end = 0;

    Minutes length() const { return end - start; }
};

struct PartialService {
    std::string parent_id;  // empty for the idle placeholder
    int chunk_index = 0;
    Minutes start = 0;
    Minutes end = 0;
    double intensity_I = 0.0;
    double tsr = 0.0;
    double reliability = 0.0;
    double dec = 0.0;  // mAh

    bool is_idle() const { return parent_id.empty(); }
    Minutes duration() const { return end - start; }
};

// Restriction of a service to a chunk; [start,end] is the intersection.
PartialService make_partial(const EnergyService& parent, const Chunk& chunk);
PartialService make_idle_partial(const Chunk& chunk);

struct CompositeService {
    std::vector<PartialService> partials;  // one per chunk, temporally ordered
    double tec = 0.0;
    double agr = 0.0;
    double rem_re = 0.0;
    double ext_q = 0.0;
    double utility = 0.0;

    // Stable identity used for tie-breaking and reporting: parent ids in
    // chunk order, "-" for idle chunks.
    std::string signature() const;
};

struct ReliabilityProfile {
    std::string owner_id;
    double eub = 0.0;
    long long successful_services_SS = 0;
    long long total_services_TPS = 0;
};

struct PreferenceStrategy {
    double w_e = 0.5;
    double w_r = 0.5;
};

// Builds (1 - w_r, w_r); w_r must lie in [0,1].
PreferenceStrategy strategy_from_wr(double w_r);

}  // namespace elastic
