#include "elastic/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace elastic::io {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

struct CsvTable {
    std::unordered_map<std::string, std::size_t> columns;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty CSV file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);
    for (std::size_t i = 0; i < header.size(); ++i) table.columns[header[i]] = i;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        table.rows.push_back(split_csv_line(line));
    }
    return table;
}

class RowView {
public:
    RowView(const CsvTable& table, const std::vector<std::string>& row,
            const std::string& path)
        : table_(table), row_(row), path_(path) {}

    const std::string& str(const std::string& col) const {
        auto it = table_.columns.find(col);
        if (it == table_.columns.end() || it->second >= row_.size())
            throw ConfigError("missing column '" + col + "' in " + path_);
        return row_[it->second];
    }
    double num(const std::string& col) const {
        try {
            return std::stod(str(col));
        } catch (const std::exception&) {
            throw ValidationError(col + ": not a number in " + path_);
        }
    }
    int minutes(const std::string& col) const {
        try {
            return std::stoi(str(col));
        } catch (const std::exception&) {
            throw ValidationError(col + ": not an integer in " + path_);
        }
    }

private:
    const CsvTable& table_;
    const std::vector<std::string>& row_;
    const std::string& path_;
};

bool has_json_extension(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << content;
}

}  // namespace

json service_to_json(const EnergyService& s) {
    return json{{"id", s.id},
                {"owner_id", s.owner_id},
                {"area_id", s.area_id},
                {"start_time", s.start_time},
                {"end_time", s.end_time},
                {"intensity_I", s.intensity_I},
                {"tsr", s.tsr},
                {"dec_advertised", s.dec_advertised},
                {"reliability", s.reliability}};
}

EnergyService service_from_json(const json& j) {
    EnergyService s;
    s.id = j.at("id").get<std::string>();
    s.owner_id = j.value("owner_id", "");
    s.area_id = j.value("area_id", "");
    s.start_time = j.at("start_time").get<Minutes>();
    s.end_time = j.at("end_time").get<Minutes>();
    s.intensity_I = j.at("intensity_I").get<double>();
    s.tsr = j.at("tsr").get<double>();
    s.reliability = j.value("reliability", 1.0);
    return validate_service(std::move(s));
}

json query_to_json(const EnergyQuery& q) {
    return json{{"query_id", q.query_id},
                {"area_id", q.area_id},
                {"t_s", q.t_s},
                {"required_energy_RE", q.required_energy_RE},
                {"max_intensity_CI", q.max_intensity_CI},
                {"duration_du", q.duration_du},
                {"hard_deadline_Dlh", q.hard_deadline_Dlh}};
}

EnergyQuery query_from_json(const json& j) {
    EnergyQuery q;
    q.query_id = j.at("query_id").get<std::string>();
    q.area_id = j.value("area_id", "");
    q.t_s = j.at("t_s").get<Minutes>();
    q.required_energy_RE = j.at("required_energy_RE").get<double>();
    q.max_intensity_CI = j.at("max_intensity_CI").get<double>();
    q.duration_du = j.at("duration_du").get<Minutes>();
    q.hard_deadline_Dlh = j.at("hard_deadline_Dlh").get<Minutes>();
    return validate_query(std::move(q));
}

std::vector<EnergyService> load_services(const std::string& path) {
    std::vector<EnergyService> out;
    if (has_json_extension(path)) {
        for (const auto& j : load_json_file(path)) out.push_back(service_from_json(j));
        return out;
    }
    const auto table = read_csv(path);
    for (const auto& raw : table.rows) {
        RowView row(table, raw, path);
        EnergyService s;
        s.id = row.str("id");
        s.owner_id = row.str("owner_id");
        s.area_id = row.str("area_id");
        s.start_time = row.minutes("start_time");
        s.end_time = row.minutes("end_time");
        s.intensity_I = row.num("intensity_I");
        s.tsr = row.num("tsr");
        s.reliability = row.num("reliability");
        out.push_back(validate_service(std::move(s)));
    }
    return out;
}

std::vector<EnergyQuery> load_queries(const std::string& path) {
    std::vector<EnergyQuery> out;
    if (has_json_extension(path)) {
        for (const auto& j : load_json_file(path)) out.push_back(query_from_json(j));
        return out;
    }
    const auto table = read_csv(path);
    for (const auto& raw : table.rows) {
        RowView row(table, raw, path);
        EnergyQuery q;
        q.query_id = row.str("query_id");
        q.area_id = row.str("area_id");
        q.t_s = row.minutes("t_s");
        q.required_energy_RE = row.num("required_energy_RE");
        q.max_intensity_CI = row.num("max_intensity_CI");
        q.duration_du = row.minutes("duration_du");
        q.hard_deadline_Dlh = row.minutes("hard_deadline_Dlh");
        out.push_back(validate_query(std::move(q)));
    }
    return out;
}

void save_services_csv(const std::string& path, const std::vector<EnergyService>& services) {
    std::string s =
        "id,owner_id,area_id,start_time,end_time,intensity_I,tsr,dec_advertised,reliability\n";
    for (const auto& svc : services) {
        s += svc.id + ',' + svc.owner_id + ',' + svc.area_id + ',' +
             std::to_string(svc.start_time) + ',' + std::to_string(svc.end_time) + ',' +
             fmt(svc.intensity_I) + ',' + fmt(svc.tsr) + ',' + fmt(svc.dec_advertised) +
             ',' + fmt(svc.reliability) + '\n';
    }
    write_file(path, s);
}

void save_queries_csv(const std::string& path, const std::vector<EnergyQuery>& queries) {
    std::string s =
        "query_id,area_id,t_s,required_energy_RE,max_intensity_CI,duration_du,hard_deadline_Dlh\n";
    for (const auto& q : queries) {
        s += q.query_id + ',' + q.area_id + ',' + std::to_string(q.t_s) + ',' +
             fmt(q.required_energy_RE) + ',' + fmt(q.max_intensity_CI) + ',' +
             std::to_string(q.duration_du) + ',' + std::to_string(q.hard_deadline_Dlh) + '\n';
    }
    write_file(path, s);
}

std::vector<SocSeries> load_soc_series(const std::string& path) {
    const auto table = read_csv(path);
    std::vector<SocSeries> out;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& raw : table.rows) {
        RowView row(table, raw, path);
        const std::string owner = row.str("owner_id");
        auto [it, inserted] = index.emplace(owner, out.size());
        if (inserted) out.push_back(SocSeries{owner, {}});
        out[it->second].samples.emplace_back(row.minutes("time_min"), row.num("soc"));
    }
    for (auto& series : out) series = validate_soc_series(std::move(series));
    return out;
}

std::vector<ReliabilityProfile> load_provision_history(const std::string& path) {
    const auto table = read_csv(path);
    std::vector<ReliabilityProfile> out;
    for (const auto& raw : table.rows) {
        RowView row(table, raw, path);
        ReliabilityProfile p;
        p.owner_id = row.str("owner_id");
        p.successful_services_SS = static_cast<long long>(row.num("ss"));
        p.total_services_TPS = static_cast<long long>(row.num("tps"));
        provision_success(p.successful_services_SS, p.total_services_TPS);  // validates
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

json partial_to_json(const PartialService& ps) {
    return json{{"parent_id", ps.is_idle() ? json() : json(ps.parent_id)},
                {"chunk_index", ps.chunk_index},
                {"start", ps.start},
                {"end", ps.end},
                {"intensity_I", ps.intensity_I},
                {"tsr", ps.tsr},
                {"reliability", ps.reliability},
                {"dec", ps.dec}};
}

json composite_to_json(const CompositeService& c) {
    json chunk_map = json::object();
    for (const auto& ps : c.partials)
        chunk_map[std::to_string(ps.chunk_index)] =
            ps.is_idle() ? json() : json(ps.parent_id);
    return json{{"signature", c.signature()}, {"chunks", chunk_map},
                {"tec", c.tec},             {"agr", c.agr},
                {"rem_re", c.rem_re},       {"ext_q", c.ext_q},
                {"utility", c.utility},     {"partials", [&] {
                     json arr = json::array();
                     for (const auto& ps : c.partials) arr.push_back(partial_to_json(ps));
                     return arr;
                 }()}};
}

}  // namespace

json composition_result_to_json(const CompositionResult& result) {
    json j{{"algorithm", result.algorithm},
           {"selected", composite_to_json(result.selected)},
           {"candidates_examined", result.candidates_examined},
           {"elapsed_ms", result.elapsed_ms}};
    if (result.has_front) {
        json front = json::array();
        for (const auto& c : result.front.members) front.push_back(composite_to_json(c));
        j["front"] = std::move(front);
    }
    return j;
}

json timeline_to_json(const ChunkedTimeline& tl) {
    json chunks = json::array();
    for (std::size_t i = 0; i < tl.chunks.size(); ++i) {
        json partials = json::array();
        for (const auto& ps : tl.partials_by_chunk[i]) partials.push_back(partial_to_json(ps));
        chunks.push_back(json{{"index", tl.chunks[i].index},
                              {"start", tl.chunks[i].start},
                              {"end", tl.chunks[i].end},
                              {"partials", std::move(partials)}});
    }
    return json{{"query_id", tl.query_id}, {"chunks", std::move(chunks)}};
}

namespace {

RealRange real_range(const json& j, const std::string& key, RealRange fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2)
        throw ConfigError(key + ": expected [lo, hi]");
    return RealRange{v[0].get<double>(), v[1].get<double>()};
}

IntRange int_range(const json& j, const std::string& key, IntRange fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2)
        throw ConfigError(key + ": expected [lo, hi]");
    return IntRange{v[0].get<int>(), v[1].get<int>()};
}

}  // namespace

EnvironmentConfig environment_config_from_json(const json& j) {
    EnvironmentConfig cfg;
    try {
        cfg.num_areas = j.value("num_areas", cfg.num_areas);
        cfg.num_queries = j.value("num_queries", cfg.num_queries);
        cfg.ratio = j.value("ratio", cfg.ratio);
        cfg.service_duration = int_range(j, "service_duration", cfg.service_duration);
        cfg.query_duration = int_range(j, "query_duration", cfg.query_duration);
        cfg.provided_energy = real_range(j, "provided_energy", cfg.provided_energy);
        cfg.required_energy = real_range(j, "required_energy", cfg.required_energy);
        cfg.tsr = real_range(j, "tsr", cfg.tsr);
        cfg.reliability = real_range(j, "reliability", cfg.reliability);
        cfg.consumer_intensity = real_range(j, "consumer_intensity", cfg.consumer_intensity);
        cfg.horizon = j.value("horizon", cfg.horizon);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("environment config: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

json environment_config_to_json(const EnvironmentConfig& cfg) {
    return json{{"num_areas", cfg.num_areas},
                {"num_queries", cfg.num_queries},
                {"ratio", cfg.ratio},
                {"service_duration", {cfg.service_duration.lo, cfg.service_duration.hi}},
                {"query_duration", {cfg.query_duration.lo, cfg.query_duration.hi}},
                {"provided_energy", {cfg.provided_energy.lo, cfg.provided_energy.hi}},
                {"required_energy", {cfg.required_energy.lo, cfg.required_energy.hi}},
                {"tsr", {cfg.tsr.lo, cfg.tsr.hi}},
                {"reliability", {cfg.reliability.lo, cfg.reliability.hi}},
                {"consumer_intensity",
                 {cfg.consumer_intensity.lo, cfg.consumer_intensity.hi}},
                {"horizon", cfg.horizon},
                {"seed", cfg.seed}};
}

EnvironmentConfig load_environment_config(const std::string& path) {
    return environment_config_from_json(load_json_file(path));
}

void save_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
    std::string s =
        "suite,seed,ratio,regime,failures,strategy,w_r,query_id,algorithm,status,"
        "tec,agr,ext_q,eff_q,exer,front_size,candidates,elapsed_ms\n";
    for (const auto& r : rows) {
        s += r.suite + ',' + std::to_string(r.seed) + ',' + std::to_string(r.ratio) + ',' +
             r.regime + ',' + std::to_string(r.failures) + ',' + r.strategy + ',' +
             fmt(r.w_r) + ',' + r.query_id + ',' + r.algorithm + ',' + r.status + ',' +
             fmt(r.tec) + ',' + fmt(r.agr) + ',' + fmt(r.ext_q) + ',' + fmt(r.eff_q) + ',' +
             (r.exer ? "1" : "0") + ',' + std::to_string(r.front_size) + ',' +
             std::to_string(r.candidates) + ',' + fmt(r.elapsed_ms) + '\n';
    }
    write_file(path, s);
}

json report_summary_json(const ExperimentReport& report) {
    json aggregates = json::object();
    for (const auto& [key, value] : report.aggregates) aggregates[key] = value;
    long long ok = 0, failed = 0;
    for (const auto& r : report.rows) (r.status == "ok" ? ok : failed)++;
    return json{{"suite", report.suite},
                {"rows", static_cast<long long>(report.rows.size())},
                {"rows_ok", ok},
                {"rows_failed", failed},
                {"aggregates", std::move(aggregates)}};
}

}  // namespace elastic::io
