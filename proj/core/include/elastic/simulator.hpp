#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "elastic/composer.hpp"
#include "elastic/model.hpp"

namespace elastic {

// --- deterministic RNG -----------------------------------------------------
// Small wrapper with our own uniform draws so reports are bit-stable across
// standard library versions.

uint64_t splitmix64(uint64_t x);
uint64_t mix_seed(uint64_t seed, uint64_t stream);
uint64_t hash_label(const std::string& label);

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(splitmix64(seed ^ 0x9e3779b97f4a7c15ULL)) {}
    uint64_t next();
    double uniform(double lo, double hi);      // [lo, hi)
    int uniform_int(int lo, int hi);           // inclusive

private:
    uint64_t state_;
};

// --- environment generation ------------------------------------------------

struct RealRange {
    double lo = 0.0, hi = 0.0;
};
struct IntRange {
    int lo = 0, hi = 0;
};

struct EnvironmentConfig {
    int num_areas = 1;
    int num_queries = 1;
    double ratio = 1.0;  // N.CES / N.Q, services per query
    IntRange service_duration{10, 60};   // minutes
    IntRange query_duration{5, 120};     // minutes
    RealRange provided_energy{50, 1000};   // mAh
    RealRange required_energy{100, 800};   // mAh
    RealRange tsr{0.5, 1.0};
    RealRange reliability{0.0, 1.0};
    RealRange consumer_intensity{1000, 12000};  // query CI, mA
    Minutes horizon = 240;  // per-area advertisement window
    uint64_t seed = 0;
};

void validate_config(const EnvironmentConfig& cfg);

struct Environment {
    std::vector<EnergyService> services;
    std::vector<EnergyQuery> queries;
};

// Fully deterministic per (cfg, seed); hard deadlines are du + U(0, du).
Environment generate_environment(const EnvironmentConfig& cfg);

// --- failure injection -----------------------------------------------------

inline constexpr double kDefaultFailureEps = 0.01;

struct FailureScenario {
    std::unordered_set<std::string> revoked;
};

// Per area, draws `count` services without replacement with weight
// (1 - reliability) + eps. Scenarios are nested: for a fixed seed, the set at
// count f is a subset of the set at f+1.
FailureScenario inject_failures(const std::vector<EnergyService>& services, int count,
                                double eps, uint64_t seed);

// --- replay ----------------------------------------------------------------

// Actual extension (EffQ) in minutes: revoked members deliver nothing; after
// the soft deadline the remaining deficit is covered greedily from
// non-revoked, not-selected services (ordered by availability then dec).
// Returns the 2*du sentinel when the deficit survives past t_s + 2*du.
double effective_extension(const CompositeService& selected,
                           const FailureScenario& scenario, const EnergyQuery& q,
                           const std::vector<EnergyService>& services);

// --- experiment suites -----------------------------------------------------

enum class Suite { kScalability, kEfficiency, kEffectiveness };

Suite suite_from_name(const std::string& name);
std::string suite_name(Suite s);

struct StrategyBand {
    std::string name;
    double wr_lo = 0.0, wr_hi = 0.0;
};

// Risk bands from the evaluation protocol.
std::vector<StrategyBand> default_strategy_bands();

struct SuiteConfig {
    EnvironmentConfig env;
    std::vector<std::string> algorithms{"brute", "heuristic", "greedy", "knapsack"};
    ComposerConfig composer;
    Minutes min_lch = kDefaultMinLch;
    int num_seeds = 1;
    std::vector<int> ratios{1, 2, 3, 4, 5, 6, 7, 8, 9};          // scalability
    std::vector<double> wr_sweep{0.1, 0.2, 0.3, 0.4, 0.5,
                                 0.6, 0.7, 0.8, 0.9};            // efficiency
    std::vector<int> failure_counts{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};  // effectiveness
    std::vector<StrategyBand> strategies = default_strategy_bands();
    double failure_eps = kDefaultFailureEps;
    int jobs = 1;
};

struct ReportRow {
    std::string suite;
    uint64_t seed = 0;
    int ratio = 0;
    std::string regime;      // scalability service-duration regime
    int failures = -1;
    std::string strategy;
    double w_r = 0.0;
    std::string query_id;
    std::string algorithm;
    std::string status;      // ok | infeasible | overflow
    double tec = 0.0;
    double agr = 0.0;
    double ext_q = 0.0;
    double eff_q = 0.0;
    bool exer = false;
    long long front_size = 0;
    long long candidates = 0;
    double elapsed_ms = 0.0;
};

struct ExperimentReport {
    std::string suite;
    std::vector<ReportRow> rows;
    // aggregate key -> value, e.g. "exer_ratio/failures=3/strategy=risk-averse/algo=brute"
    std::map<std::string, double> aggregates;
};

// Fraction of rows where the expected extension met the hard-deadline budget
// but the actual extension missed it.
double exer_ratio(const std::vector<ReportRow>& rows);

ExperimentReport run_experiment(Suite suite, const SuiteConfig& cfg);

}  // namespace elastic
