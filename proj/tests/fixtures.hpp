#pragma once

// Hand-checked scenarios shared across the test binaries.

#include <vector>

#include "elastic/model.hpp"
#include "elastic/simulator.hpp"

namespace fixtures {

using namespace elastic;

inline EnergyService make_service(std::string id, std::string area, Minutes st,
                                  Minutes et, double intensity, double tsr,
                                  double rel) {
    EnergyService s;
    s.id = std::move(id);
    s.owner_id = "p_" + s.id;
    s.area_id = std::move(area);
    s.start_time = st;
    s.end_time = et;
    s.intensity_I = intensity;
    s.tsr = tsr;
    s.reliability = rel;
    return validate_service(std::move(s));
}

inline EnergyQuery make_query(std::string id, std::string area, Minutes ts, Minutes du,
                              Minutes dlh, double re, double ci) {
    EnergyQuery q;
    q.query_id = std::move(id);
    q.area_id = std::move(area);
    q.t_s = ts;
    q.duration_du = du;
    q.hard_deadline_Dlh = dlh;
    q.required_energy_RE = re;
    q.max_intensity_CI = ci;
    return validate_query(std::move(q));
}

// Two services over a 30-minute window. A=[0,30] 300mA rel .9, B=[10,30]
// 600mA rel .5; chunks [0,10] {A} and [10,30] {A,B}. With RE=200 the two
// candidates are {A,A} (TEC 150, AgR .25) and {A,B} (TEC 250, AgR 49/300).
inline std::vector<EnergyService> s1_services() {
    return {make_service("A", "cafe", 0, 30, 300, 1.0, 0.9),
            make_service("B", "cafe", 10, 30, 600, 1.0, 0.5)};
}

inline EnergyQuery s1_query() {
    return make_query("q1", "cafe", 0, 30, 90, 200, 1000);
}

// One extension-window provider, 300 mA from minute 30 to 90.
inline std::vector<EnergyService> s1_pool() {
    return {make_service("P", "cafe", 30, 90, 300, 1.0, 0.8)};
}

// Five services over a 30-minute query yielding 7 chunks with per-chunk
// partial counts (2,3,4,3,2,3,2), i.e. 864 combinations.
inline std::vector<EnergyService> five_service_layout() {
    return {make_service("c1", "shop", 0, 30, 600, 1.0, 0.9),
            make_service("c2", "shop", 0, 16, 500, 1.0, 0.8),
            make_service("c3", "shop", 4, 30, 400, 1.0, 0.7),
            make_service("c4", "shop", 8, 12, 300, 1.0, 0.6),
            make_service("c5", "shop", 20, 24, 200, 1.0, 0.5)};
}

inline EnergyQuery five_service_query() {
    return make_query("q5", "shop", 0, 30, 60, 300, 1000);
}

// Six 10-minute chunks with exactly 4 partials each; the max-energy provider
// repeats over chunks (1,2) and (3,4), so merging leaves 4 chunks with
// partial counts (5,5,4,4).
inline std::vector<EnergyService> six_chunk_layout() {
    return {make_service("M1", "hub", 0, 20, 1000, 1.0, 0.50),
            make_service("M2", "hub", 20, 40, 1000, 1.0, 0.55),
            make_service("M3", "hub", 40, 50, 1000, 1.0, 0.60),
            make_service("M4", "hub", 50, 60, 1000, 1.0, 0.65),
            make_service("F1", "hub", 0, 30, 500, 1.0, 0.90),
            make_service("F2", "hub", 30, 60, 500, 1.0, 0.85),
            make_service("F3", "hub", 0, 10, 400, 1.0, 0.95),
            make_service("F4", "hub", 10, 60, 400, 1.0, 0.80),
            make_service("F5", "hub", 0, 60, 300, 1.0, 0.99)};
}

inline EnergyQuery six_chunk_query() {
    return make_query("q6", "hub", 0, 60, 120, 500, 2000);
}

// Extension-window provider for the hub scenario; strong enough that every
// candidate stays inside the 60-minute budget.
inline std::vector<EnergyService> six_chunk_pool() {
    return {make_service("HP", "hub", 60, 120, 800, 1.0, 0.8)};
}

// Small randomized environments for oracle-style checks.
inline EnvironmentConfig small_env_config(uint64_t seed, int queries = 10,
                                          double ratio = 3.0) {
    EnvironmentConfig cfg;
    cfg.num_areas = queries;
    cfg.num_queries = queries;
    cfg.ratio = ratio;
    cfg.query_duration = {20, 40};
    cfg.service_duration = {15, 45};
    cfg.provided_energy = {100, 600};
    cfg.required_energy = {100, 400};
    cfg.tsr = {0.6, 1.0};
    cfg.reliability = {0.1, 1.0};
    cfg.consumer_intensity = {5000, 5000};
    cfg.horizon = 120;
    cfg.seed = seed;
    return cfg;
}

}  // namespace fixtures
