#include "elastic/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "elastic/timeline.hpp"

namespace elastic {

// --- RNG -------------------------------------------------------------------

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ stream);
}

uint64_t hash_label(const std::string& label) {
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t Rng::next() {
    state_ = splitmix64(state_);
    return state_;
}

double Rng::uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

int Rng::uniform_int(int lo, int hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
}

// --- environment -----------------------------------------------------------

namespace {

void check_range(const RealRange& r, const std::string& name) {
    if (r.hi < r.lo) throw ConfigError(name + ": empty range");
}

void check_range(const IntRange& r, const std::string& name) {
    if (r.hi < r.lo || r.lo <= 0) throw ConfigError(name + ": empty or non-positive range");
}

}  // namespace

void validate_config(const EnvironmentConfig& cfg) {
    if (cfg.num_areas < 1) throw ConfigError("num_areas: must be >= 1");
    if (cfg.num_queries < 0) throw ConfigError("num_queries: must be >= 0");
    if (cfg.ratio < 1.0) throw ConfigError("ratio: must be >= 1");
    check_range(cfg.service_duration, "service_duration");
    check_range(cfg.query_duration, "query_duration");
    check_range(cfg.provided_energy, "provided_energy");
    if (cfg.provided_energy.lo <= 0.0) throw ConfigError("provided_energy: must be positive");
    check_range(cfg.required_energy, "required_energy");
    if (cfg.required_energy.lo <= 0.0) throw ConfigError("required_energy: must be positive");
    check_range(cfg.tsr, "tsr");
    if (cfg.tsr.lo <= 0.0 || cfg.tsr.hi > 1.0) throw ConfigError("tsr: must lie in (0,1]");
    check_range(cfg.reliability, "reliability");
    if (cfg.reliability.lo < 0.0 || cfg.reliability.hi > 1.0)
        throw ConfigError("reliability: must lie in [0,1]");
    check_range(cfg.consumer_intensity, "consumer_intensity");
    if (cfg.horizon < cfg.query_duration.hi)
        throw ConfigError("horizon: shorter than the longest query duration");
}

Environment generate_environment(const EnvironmentConfig& cfg) {
    validate_config(cfg);
    Environment env;

    const int base = cfg.num_areas > 0 ? cfg.num_queries / cfg.num_areas : 0;
    const int rem = cfg.num_areas > 0 ? cfg.num_queries % cfg.num_areas : 0;

    for (int a = 0; a < cfg.num_areas; ++a) {
        const std::string area_id = "a" + std::to_string(a);
        const int nq = base + (a < rem ? 1 : 0);
        const auto ns = static_cast<int>(std::llround(cfg.ratio * nq));

        Rng qrng(mix_seed(cfg.seed, 2 * static_cast<uint64_t>(a)));
        for (int i = 0; i < nq; ++i) {
            EnergyQuery q;
            q.query_id = area_id + ".q" + std::to_string(i);
            q.area_id = area_id;
            q.duration_du = qrng.uniform_int(cfg.query_duration.lo, cfg.query_duration.hi);
            q.t_s = qrng.uniform_int(0, std::max(0, cfg.horizon - 2 * q.duration_du));
            q.hard_deadline_Dlh = q.duration_du + qrng.uniform_int(0, q.duration_du);
            q.required_energy_RE = qrng.uniform(cfg.required_energy.lo, cfg.required_energy.hi);
            q.max_intensity_CI =
                qrng.uniform(cfg.consumer_intensity.lo, cfg.consumer_intensity.hi);
            env.queries.push_back(validate_query(std::move(q)));
        }

        Rng srng(mix_seed(cfg.seed, 2 * static_cast<uint64_t>(a) + 1));
        for (int i = 0; i < ns; ++i) {
            EnergyService s;
            s.id = area_id + ".s" + std::to_string(i);
            s.owner_id = area_id + ".p" + std::to_string(i);
            s.area_id = area_id;
            const int dur = srng.uniform_int(cfg.service_duration.lo, cfg.service_duration.hi);
            s.start_time = srng.uniform_int(0, std::max(0, cfg.horizon - dur));
            s.end_time = s.start_time + dur;
            const double energy = srng.uniform(cfg.provided_energy.lo, cfg.provided_energy.hi);
            s.tsr = srng.uniform(cfg.tsr.lo, cfg.tsr.hi);
            s.intensity_I = energy / ((dur / kMinutesPerHour) * s.tsr);
            s.reliability = srng.uniform(cfg.reliability.lo, cfg.reliability.hi);
            env.services.push_back(validate_service(std::move(s)));
        }
    }
    return env;
}

// --- failure injection -----------------------------------------------------

FailureScenario inject_failures(const std::vector<EnergyService>& services, int count,
                                double eps, uint64_t seed) {
    FailureScenario scenario;
    if (count <= 0) return scenario;

    std::map<std::string, std::vector<const EnergyService*>> by_area;
    for (const auto& s : services) by_area[s.area_id].push_back(&s);

    for (auto& [area, members] : by_area) {
        Rng rng(mix_seed(seed, hash_label(area)));
        std::vector<double> weights;
        weights.reserve(members.size());
        for (const auto* s : members) weights.push_back((1.0 - s->reliability) + eps);

        const int picks = std::min<int>(count, static_cast<int>(members.size()));
        std::vector<bool> taken(members.size(), false);
        for (int p = 0; p < picks; ++p) {
            double total = 0.0;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (!taken[i]) total += weights[i];
            double r = rng.uniform(0.0, total);
            std::size_t chosen = members.size();
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (taken[i]) continue;
                chosen = i;  // falls through to the last untaken on fp leftovers
                if (r < weights[i]) break;
                r -= weights[i];
            }
            taken[chosen] = true;
            scenario.revoked.insert(members[chosen]->id);
        }
    }
    return scenario;
}

// --- replay ----------------------------------------------------------------

double effective_extension(const CompositeService& selected,
                           const FailureScenario& scenario, const EnergyQuery& q,
                           const std::vector<EnergyService>& services) {
    double delivered = 0.0;
    std::unordered_set<std::string> used;
    for (const auto& ps : selected.partials) {
        if (ps.is_idle()) continue;
        used.insert(ps.parent_id);
        if (!scenario.revoked.count(ps.parent_id)) delivered += ps.dec;
    }
    double deficit = q.required_energy_RE - delivered;
    if (deficit <= 1e-9) return 0.0;

    const Minutes soft = q.soft_deadline();
    const Minutes window_end = q.t_s + 2 * q.duration_du;
    const double sentinel = 2.0 * q.duration_du;

    std::vector<const EnergyService*> replacements;
    for (const auto& s : services) {
        if (s.area_id != q.area_id) continue;
        if (scenario.revoked.count(s.id) || used.count(s.id)) continue;
        if (s.start_time < window_end && s.end_time > soft) replacements.push_back(&s);
    }
    std::sort(replacements.begin(), replacements.end(),
              [](const EnergyService* a, const EnergyService* b) {
                  if (a->start_time != b->start_time) return a->start_time < b->start_time;
                  if (a->dec_advertised != b->dec_advertised)
                      return a->dec_advertised > b->dec_advertised;
                  return a->id < b->id;
              });

    double cursor = soft;
    for (const auto* s : replacements) {
        const double from = std::max({cursor, static_cast<double>(s->start_time),
                                      static_cast<double>(soft)});
        const double to = std::min(static_cast<double>(s->end_time),
                                   static_cast<double>(window_end));
        if (to <= from) continue;
        const double rate = s->intensity_I * s->tsr;  // mAh per hour
        if (rate <= 0.0) continue;
        const double energy = (to - from) / kMinutesPerHour * rate;
        if (energy >= deficit) {
            const double cover = from + deficit / rate * kMinutesPerHour;
            return cover - soft;
        }
        deficit -= energy;
        cursor = to;
    }
    return sentinel;
}

// --- experiment suites -----------------------------------------------------

Suite suite_from_name(const std::string& name) {
    if (name == "scalability") return Suite::kScalability;
    if (name == "efficiency") return Suite::kEfficiency;
    if (name == "effectiveness") return Suite::kEffectiveness;
    throw ConfigError("suite: unknown name '" + name + "'");
}

std::string suite_name(Suite s) {
    switch (s) {
        case Suite::kScalability: return "scalability";
        case Suite::kEfficiency: return "efficiency";
        case Suite::kEffectiveness: return "effectiveness";
    }
    return "?";
}

std::vector<StrategyBand> default_strategy_bands() {
    return {{"risk-taker", 0.1, 0.3}, {"risk-neutral", 0.4, 0.6}, {"risk-averse", 0.7, 0.9}};
}

double exer_ratio(const std::vector<ReportRow>& rows) {
    if (rows.empty()) throw UndefinedMetricError("exer_ratio: no rows");
    long long hits = 0;
    for (const auto& r : rows)
        if (r.exer) ++hits;
    return static_cast<double>(hits) / static_cast<double>(rows.size());
}

namespace {

using ComposeFn = CompositionResult (*)(const ChunkedTimeline&, const EnergyQuery&,
                                        const std::vector<EnergyService>&,
                                        const ComposerConfig&);

ComposeFn compose_fn(const std::string& name) {
    if (name == "brute") return &compose_brute;
    if (name == "heuristic") return &compose_heuristic;
    if (name == "greedy") return &compose_greedy;
    if (name == "knapsack") return &compose_knapsack;
    throw ConfigError("algorithm: unknown name '" + name + "'");
}

bool is_elastic(const std::string& name) { return name == "brute" || name == "heuristic"; }

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int nthreads = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    workers.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& w : workers) w.join();
}

// Per-query inputs shared by all suites.
struct QueryContext {
    const EnergyQuery* q = nullptr;
    std::vector<EnergyService> nearby;
    ChunkedTimeline tl;
    std::vector<EnergyService> pool;
};

QueryContext make_context(const EnergyQuery& q, const Environment& env, Minutes min_lch) {
    QueryContext ctx;
    ctx.q = &q;
    ctx.nearby = select_nearby(env.services, q);
    ctx.tl = chunk_window(ctx.nearby, q, min_lch);
    ctx.pool = extension_pool(env.services, q);
    return ctx;
}

ReportRow base_row(const std::string& suite, uint64_t seed, const EnergyQuery& q,
                   const std::string& algorithm) {
    ReportRow row;
    row.suite = suite;
    row.seed = seed;
    row.query_id = q.query_id;
    row.algorithm = algorithm;
    return row;
}

void fill_result(ReportRow& row, const CompositionResult& res) {
    row.status = "ok";
    row.tec = res.selected.tec;
    row.agr = res.selected.agr;
    row.ext_q = res.selected.ext_q;
    row.front_size = res.has_front ? static_cast<long long>(res.front.members.size()) : 0;
    row.candidates = res.candidates_examined;
    row.elapsed_ms = res.elapsed_ms;
}

std::string status_of(const Error& e) {
    if (dynamic_cast<const SearchSpaceOverflowError*>(&e)) return "overflow";
    if (dynamic_cast<const NoFeasibleCompositionError*>(&e)) return "infeasible";
    return "error";
}

ExperimentReport run_scalability(const SuiteConfig& cfg) {
    ExperimentReport report;
    report.suite = "scalability";
    const std::vector<std::pair<std::string, IntRange>> regimes{
        {"short", {10, 30}}, {"long", {20, 50}}, {"all", cfg.env.service_duration}};

    for (int seed_idx = 0; seed_idx < cfg.num_seeds; ++seed_idx) {
        for (const auto& [regime, dur] : regimes) {
            for (int ratio : cfg.ratios) {
                EnvironmentConfig ec = cfg.env;
                ec.ratio = ratio;
                ec.service_duration = dur;
                ec.seed = mix_seed(cfg.env.seed, hash_label(regime) + 977 * seed_idx);
                const Environment env = generate_environment(ec);

                std::vector<std::vector<ReportRow>> per_query(env.queries.size());
                parallel_for(env.queries.size(), cfg.jobs, [&](std::size_t qi) {
                    const auto ctx = make_context(env.queries[qi], env, cfg.min_lch);
                    for (const auto& algo : cfg.algorithms) {
                        ReportRow row = base_row("scalability", ec.seed, *ctx.q, algo);
                        row.ratio = ratio;
                        row.regime = regime;
                        try {
                            fill_result(row, compose_fn(algo)(ctx.tl, *ctx.q, ctx.pool,
                                                              cfg.composer));
                        } catch (const Error& e) {
                            row.status = status_of(e);
                        }
                        per_query[qi].push_back(std::move(row));
                    }
                });
                for (auto& rows : per_query)
                    for (auto& r : rows) report.rows.push_back(std::move(r));
            }
        }
    }
    // Aggregate CPU time per (regime, ratio, algorithm).
    std::map<std::string, std::pair<double, long long>> cpu;
    for (const auto& r : report.rows) {
        if (r.status != "ok") continue;
        auto& [total, n] = cpu["cpu_ms/regime=" + r.regime +
                               "/ratio=" + std::to_string(r.ratio) + "/algo=" + r.algorithm];
        total += r.elapsed_ms;
        ++n;
    }
    for (const auto& [key, v] : cpu) report.aggregates[key] = v.first;
    return report;
}

ExperimentReport run_efficiency(const SuiteConfig& cfg) {
    ExperimentReport report;
    report.suite = "efficiency";

    for (int seed_idx = 0; seed_idx < cfg.num_seeds; ++seed_idx) {
        EnvironmentConfig ec = cfg.env;
        ec.seed = mix_seed(cfg.env.seed, 31 + static_cast<uint64_t>(seed_idx));
        const Environment env = generate_environment(ec);

        std::vector<std::vector<ReportRow>> per_query(env.queries.size());
        parallel_for(env.queries.size(), cfg.jobs, [&](std::size_t qi) {
            const auto ctx = make_context(env.queries[qi], env, cfg.min_lch);
            for (const auto& algo : cfg.algorithms) {
                if (!is_elastic(algo)) continue;

                // The brute front is weight-independent: compute once, then
                // re-select per weight. The heuristic's reduction depends on
                // the weights, so it recomposes.
                CompositionResult cached;
                bool cached_ok = false;
                std::string cached_status;
                if (algo == "brute") {
                    try {
                        cached = compose_brute(ctx.tl, *ctx.q, ctx.pool, cfg.composer);
                        cached_ok = true;
                    } catch (const Error& e) {
                        cached_status = status_of(e);
                    }
                }
                for (double wr : cfg.wr_sweep) {
                    ReportRow row = base_row("efficiency", ec.seed, *ctx.q, algo);
                    row.w_r = wr;
                    ComposerConfig cc = cfg.composer;
                    cc.strategy = strategy_from_wr(wr);
                    try {
                        if (algo == "brute") {
                            if (!cached_ok) {
                                row.status = cached_status;
                            } else {
                                CompositionResult res = cached;
                                res.selected = select_from_front(res.front, cc.strategy);
                                fill_result(row, res);
                            }
                        } else {
                            fill_result(row, compose_heuristic(ctx.tl, *ctx.q, ctx.pool, cc));
                        }
                    } catch (const Error& e) {
                        row.status = status_of(e);
                    }
                    per_query[qi].push_back(std::move(row));
                }
            }
        });
        for (auto& rows : per_query)
            for (auto& r : rows) report.rows.push_back(std::move(r));
    }

    std::map<std::string, std::pair<double, long long>> ext, front;
    for (const auto& r : report.rows) {
        if (r.status != "ok") continue;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", r.w_r);
        const std::string key = "/wr=" + std::string(buf) + "/algo=" + r.algorithm;
        ext["mean_ext_q" + key].first += r.ext_q;
        ext["mean_ext_q" + key].second += 1;
        front["mean_front" + key].first += static_cast<double>(r.front_size);
        front["mean_front" + key].second += 1;
    }
    for (const auto& m : {ext, front})
        for (const auto& [key, v] : m)
            if (v.second > 0) report.aggregates[key] = v.first / v.second;
    return report;
}

ExperimentReport run_effectiveness(const SuiteConfig& cfg) {
    ExperimentReport report;
    report.suite = "effectiveness";

    for (int seed_idx = 0; seed_idx < cfg.num_seeds; ++seed_idx) {
        EnvironmentConfig ec = cfg.env;
        ec.seed = mix_seed(cfg.env.seed, 7919 + static_cast<uint64_t>(seed_idx));
        const Environment env = generate_environment(ec);

        // Same seed for every count: scenarios are nested, so the revoked set
        // only grows with the failure count.
        const uint64_t fail_seed = mix_seed(ec.seed, hash_label("failures"));
        std::map<int, FailureScenario> scenarios;
        for (int f : cfg.failure_counts)
            scenarios[f] = inject_failures(env.services, f, cfg.failure_eps, fail_seed);

        std::vector<std::vector<ReportRow>> per_query(env.queries.size());
        parallel_for(env.queries.size(), cfg.jobs, [&](std::size_t qi) {
            const auto ctx = make_context(env.queries[qi], env, cfg.min_lch);
            const EnergyQuery& q = *ctx.q;
            const double budget = static_cast<double>(q.extension_budget());

            for (const auto& algo : cfg.algorithms) {
                for (const auto& band : cfg.strategies) {
                    Rng wrng(mix_seed(ec.seed, hash_label(q.query_id + "/" + band.name)));
                    const double wr = wrng.uniform(band.wr_lo, band.wr_hi);
                    ComposerConfig cc = cfg.composer;
                    cc.strategy = strategy_from_wr(wr);

                    CompositionResult res;
                    std::string status = "ok";
                    try {
                        res = compose_fn(algo)(ctx.tl, q, ctx.pool, cc);
                    } catch (const Error& e) {
                        status = status_of(e);
                    }
                    for (int f : cfg.failure_counts) {
                        ReportRow row = base_row("effectiveness", ec.seed, q, algo);
                        row.failures = f;
                        row.strategy = band.name;
                        row.w_r = wr;
                        if (status == "ok") {
                            fill_result(row, res);
                            row.eff_q = effective_extension(res.selected, scenarios.at(f),
                                                            q, env.services);
                            row.exer = res.selected.ext_q <= budget && row.eff_q > budget;
                        } else {
                            row.status = status;
                        }
                        per_query[qi].push_back(std::move(row));
                    }
                }
            }
        });
        for (auto& rows : per_query)
            for (auto& r : rows) report.rows.push_back(std::move(r));
    }

    std::map<std::string, std::vector<ReportRow>> groups;
    for (const auto& r : report.rows) {
        if (r.status != "ok") continue;
        groups["exer_ratio/failures=" + std::to_string(r.failures) +
               "/strategy=" + r.strategy + "/algo=" + r.algorithm]
            .push_back(r);
    }
    for (const auto& [key, rows] : groups) report.aggregates[key] = exer_ratio(rows);
    return report;
}

}  // namespace

ExperimentReport run_experiment(Suite suite, const SuiteConfig& cfg) {
    validate_config(cfg.env);
    for (const auto& algo : cfg.algorithms) compose_fn(algo);  // fail fast on typos
    switch (suite) {
        case Suite::kScalability: return run_scalability(cfg);
        case Suite::kEfficiency: return run_efficiency(cfg);
        case Suite::kEffectiveness: return run_effectiveness(cfg);
    }
    throw ConfigError("suite: invalid");
}

}  // namespace elastic
