// escomp: generate synthetic crowdsourced-energy environments, compose a
// single query, or run experiment suites.
//
// Exit codes: 0 ok, 2 config/usage error, 3 no feasible composition,
// 4 suite failure rate above threshold.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "elastic/composer.hpp"
#include "elastic/io.hpp"
#include "elastic/simulator.hpp"
#include "elastic/timeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSuiteFailure = 4;

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// "0..10" or "1,3,5".
std::vector<int> parse_int_spec(const std::string& spec) {
    const auto dots = spec.find("..");
    std::vector<int> out;
    try {
        if (dots != std::string::npos) {
            const int lo = std::stoi(spec.substr(0, dots));
            const int hi = std::stoi(spec.substr(dots + 2));
            if (hi < lo) throw elastic::ConfigError("range '" + spec + "' is empty");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            for (const auto& item : split_list(spec)) out.push_back(std::stoi(item));
        }
    } catch (const std::invalid_argument&) {
        throw elastic::ConfigError("cannot parse integer list '" + spec + "'");
    }
    if (out.empty()) throw elastic::ConfigError("empty integer list '" + spec + "'");
    return out;
}

struct ComposerFlags {
    double w_r = 0.5;
    int top_k = elastic::kDefaultTopK;
    int min_lch = elastic::kDefaultMinLch;
    long long cap = elastic::kDefaultEnumerationCap;
    std::string agr_variant = "standard";

    elastic::ComposerConfig to_config() const {
        elastic::ComposerConfig cfg;
        cfg.strategy = elastic::strategy_from_wr(w_r);
        cfg.top_k = top_k;
        cfg.enumeration_cap = cap;
        if (agr_variant == "standard") {
            cfg.agr_variant = elastic::AgrVariant::kAsWritten;
        } else if (agr_variant == "normalized") {
            cfg.agr_variant = elastic::AgrVariant::kNormalized;
        } else {
            throw elastic::ConfigError("agr-variant: expected 'standard' or 'normalized'");
        }
        return cfg;
    }
};

void add_composer_flags(CLI::App* app, ComposerFlags& flags) {
    app->add_option("--wr", flags.w_r, "Reliability weight w_r in [0,1]; w_e = 1 - w_r");
    app->add_option("-k,--top-k", flags.top_k, "Partials kept per chunk by the heuristic");
    app->add_option("--min-lch", flags.min_lch, "Minimum chunk length in minutes");
    app->add_option("--cap", flags.cap, "Enumeration cap for brute force");
    app->add_option("--agr-variant", flags.agr_variant,
                    "Aggregate reliability form: standard | normalized");
}

int cmd_generate(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = elastic::io::load_environment_config(config_path);
    const auto env = elastic::generate_environment(cfg);

    fs::create_directories(out_dir);
    elastic::io::save_services_csv((fs::path(out_dir) / "services.csv").string(),
                                   env.services);
    elastic::io::save_queries_csv((fs::path(out_dir) / "queries.csv").string(),
                                  env.queries);
    json summary{{"config", elastic::io::environment_config_to_json(cfg)},
                 {"num_services", env.services.size()},
                 {"num_queries", env.queries.size()}};
    std::ofstream((fs::path(out_dir) / "env-summary.json").string()) << summary.dump(2)
                                                                     << '\n';
    std::cout << "wrote " << env.services.size() << " services and "
              << env.queries.size() << " queries to " << out_dir << '\n';
    return kExitOk;
}

int cmd_compose(const std::string& services_path, const std::string& queries_path,
                const std::string& query_id, std::optional<elastic::EnergyQuery> inline_query,
                const std::string& algos, const ComposerFlags& flags, bool dump_chunks) {
    const auto services = elastic::io::load_services(services_path);

    elastic::EnergyQuery q;
    if (inline_query) {
        q = *inline_query;
    } else {
        if (queries_path.empty())
            throw elastic::ConfigError("either --queries/--query or inline query flags required");
        const auto queries = elastic::io::load_queries(queries_path);
        auto it = std::find_if(queries.begin(), queries.end(),
                               [&](const auto& c) { return c.query_id == query_id; });
        if (it == queries.end())
            throw elastic::ConfigError("query '" + query_id + "' not found in " + queries_path);
        q = *it;
    }

    const auto cfg = flags.to_config();
    const auto nearby = elastic::select_nearby(services, q);
    const auto tl = elastic::chunk_window(nearby, q, flags.min_lch);
    const auto pool = elastic::extension_pool(services, q);

    json output = json::object();
    output["query"] = elastic::io::query_to_json(q);
    if (dump_chunks) output["chunks"] = elastic::io::timeline_to_json(tl);
    output["results"] = json::array();

    bool any_infeasible = false;
    for (const auto& name : split_list(algos)) {
        elastic::CompositionResult (*fn)(const elastic::ChunkedTimeline&,
                                         const elastic::EnergyQuery&,
                                         const std::vector<elastic::EnergyService>&,
                                         const elastic::ComposerConfig&) = nullptr;
        if (name == "brute") fn = &elastic::compose_brute;
        else if (name == "heuristic") fn = &elastic::compose_heuristic;
        else if (name == "greedy") fn = &elastic::compose_greedy;
        else if (name == "knapsack") fn = &elastic::compose_knapsack;
        else throw elastic::ConfigError("algorithm: unknown name '" + name + "'");

        try {
            output["results"].push_back(
                elastic::io::composition_result_to_json(fn(tl, q, pool, cfg)));
        } catch (const elastic::NoFeasibleCompositionError& e) {
            any_infeasible = true;
            output["results"].push_back(json{{"algorithm", name}, {"error", e.what()}});
        }
    }
    std::cout << output.dump(2) << '\n';
    return any_infeasible ? kExitInfeasible : kExitOk;
}

int cmd_experiment(const std::string& suite_name, const std::string& config_path,
                   const std::string& out_dir, const ComposerFlags& flags, int seeds,
                   const std::string& failures_spec, const std::string& ratios_spec,
                   const std::string& algos, int jobs, double fail_threshold) {
    elastic::SuiteConfig cfg;
    if (!config_path.empty()) cfg.env = elastic::io::load_environment_config(config_path);
    cfg.composer = flags.to_config();
    cfg.min_lch = flags.min_lch;
    cfg.num_seeds = seeds;
    cfg.jobs = jobs;
    if (!failures_spec.empty()) cfg.failure_counts = parse_int_spec(failures_spec);
    if (!ratios_spec.empty()) cfg.ratios = parse_int_spec(ratios_spec);
    if (!algos.empty()) cfg.algorithms = split_list(algos);

    const auto suite = elastic::suite_from_name(suite_name);
    const auto report = elastic::run_experiment(suite, cfg);

    fs::create_directories(out_dir);
    elastic::io::save_report_csv((fs::path(out_dir) / "report.csv").string(), report.rows);
    const json summary = elastic::io::report_summary_json(report);
    std::ofstream((fs::path(out_dir) / "summary.json").string()) << summary.dump(2) << '\n';

    std::cout << summary.dump(2) << '\n';

    const auto failed = summary.at("rows_failed").get<double>();
    const auto total = summary.at("rows").get<double>();
    if (total > 0 && failed / total > fail_threshold) {
        std::cerr << "suite failure rate " << failed / total << " exceeds threshold "
                  << fail_threshold << '\n';
        return kExitSuiteFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elastic composition of crowdsourced IoT energy services"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic environment");
    std::string gen_config, gen_out = "out";
    gen->add_option("--config", gen_config, "Environment config JSON")->required();
    gen->add_option("--out", gen_out, "Output directory");

    // compose
    auto* comp = app.add_subcommand("compose", "Compose one query");
    std::string comp_services, comp_queries, comp_query_id;
    std::string comp_algos = "brute,heuristic,greedy,knapsack";
    bool dump_chunks = false;
    ComposerFlags comp_flags;
    comp->add_option("--services", comp_services, "services.csv or .json")->required();
    comp->add_option("--queries", comp_queries, "queries.csv or .json");
    comp->add_option("--query", comp_query_id, "Query id inside --queries");
    comp->add_option("--algo", comp_algos, "Comma list: brute,heuristic,greedy,knapsack");
    comp->add_flag("--dump-chunks", dump_chunks, "Include the chunk layout in the output");
    add_composer_flags(comp, comp_flags);
    // Inline query definition, alternative to --queries/--query.
    int q_ts = 0, q_du = 0, q_dlh = -1;
    double q_re = 0, q_ci = 0;
    std::string q_area = "a0", q_id = "inline";
    comp->add_option("--ts", q_ts, "Inline query launch time (minutes)");
    comp->add_option("--du", q_du, "Inline query duration (minutes)");
    comp->add_option("--dlh", q_dlh, "Inline query hard deadline, minutes after launch");
    comp->add_option("--re", q_re, "Inline query required energy (mAh)");
    comp->add_option("--ci", q_ci, "Inline query max intensity (mA)");
    comp->add_option("--area", q_area, "Inline query area id");
    comp->add_option("--query-id", q_id, "Inline query id");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run an experiment suite");
    std::string suite, exp_config, exp_out = "out", failures_spec, ratios_spec, exp_algos;
    int seeds = 1, jobs = 1;
    double fail_threshold = 0.5;
    ComposerFlags exp_flags;
    exp->add_option("suite", suite, "scalability | efficiency | effectiveness")->required();
    exp->add_option("--config", exp_config, "Environment config JSON");
    exp->add_option("--out", exp_out, "Output directory");
    exp->add_option("--seeds", seeds, "Number of seeded repetitions");
    exp->add_option("--failures", failures_spec, "Failure counts, e.g. 0..10 or 1,5,10");
    exp->add_option("--ratios", ratios_spec, "Service/query ratios, e.g. 1..9");
    exp->add_option("--algos", exp_algos, "Comma list of algorithms");
    exp->add_option("--jobs", jobs, "Parallel workers for per-query composition");
    exp->add_option("--fail-threshold", fail_threshold,
                    "Row failure rate above which the suite exits non-zero");
    add_composer_flags(exp, exp_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_config, gen_out);
        if (comp->parsed()) {
            std::optional<elastic::EnergyQuery> inline_query;
            if (comp_queries.empty()) {
                elastic::EnergyQuery q;
                q.query_id = q_id;
                q.area_id = q_area;
                q.t_s = q_ts;
                q.duration_du = q_du;
                q.hard_deadline_Dlh = q_dlh >= 0 ? q_dlh : 2 * q_du;
                q.required_energy_RE = q_re;
                q.max_intensity_CI = q_ci;
                inline_query = elastic::validate_query(std::move(q));
            }
            return cmd_compose(comp_services, comp_queries, comp_query_id, inline_query,
                               comp_algos, comp_flags, dump_chunks);
        }
        if (exp->parsed())
            return cmd_experiment(suite, exp_config, exp_out, exp_flags, seeds,
                                  failures_spec, ratios_spec, exp_algos, jobs,
                                  fail_threshold);
    } catch (const elastic::NoFeasibleCompositionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const elastic::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
