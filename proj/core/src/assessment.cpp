#include "elastic/assessment.hpp"

#include <algorithm>

namespace elastic {

double dec_of_partial(const PartialService& ps) {
    return interval_energy(ps.start, ps.end, ps.intensity_I, ps.tsr);
}

double tec(const CompositeService& comp) {
    double sum = 0.0;
    for (const auto& ps : comp.partials) sum += ps.dec;
    return sum;
}

double agr(const CompositeService& comp, const EnergyQuery& q, AgrVariant variant) {
    const double total = tec(comp);
    if (total <= 0.0)
        throw UndefinedAggregateError("agr: composite carries no energy (TEC = 0)");

    double weighted = 0.0;
    double weight_sum = 0.0;
    int m = 0;
    for (const auto& ps : comp.partials) {
        if (ps.is_idle()) continue;
        ++m;
        const double w = (ps.dec / total) *
                         (static_cast<double>(ps.duration()) / q.duration_du);
        weighted += w * ps.reliability;
        weight_sum += w;
    }
    if (variant == AgrVariant::kNormalized)
        return weight_sum > 0.0 ? weighted / weight_sum : 0.0;
    return weighted / m;
}

double rem_re(const CompositeService& comp, const EnergyQuery& q) {
    return std::max(0.0, q.required_energy_RE - comp.tec * comp.agr);
}

std::vector<EnergyService> extension_pool(const std::vector<EnergyService>& services,
                                          const EnergyQuery& q) {
    const Minutes lo = q.soft_deadline();
    const Minutes hi = q.t_s + 2 * q.duration_du;
    std::vector<EnergyService> out;
    for (const auto& s : services) {
        if (s.area_id != q.area_id) continue;
        if (s.start_time < hi && s.end_time > lo) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const EnergyService& a, const EnergyService& b) {
        if (a.start_time != b.start_time) return a.start_time < b.start_time;
        return a.id < b.id;
    });
    return out;
}

double ext_q(double rem_re_value, const EnergyQuery& q,
             const std::vector<EnergyService>& pool) {
    if (rem_re_value <= 0.0) return 0.0;
    const double sentinel = 2.0 * q.duration_du;
    if (pool.empty()) return sentinel;
    double mean_i = 0.0, mean_tsr = 0.0;
    for (const auto& s : pool) {
        mean_i += s.intensity_I;
        mean_tsr += s.tsr;
    }
    mean_i /= pool.size();
    mean_tsr /= pool.size();
    const double rate = mean_i * mean_tsr;  // mAh per hour
    if (rate <= 0.0) return sentinel;
    return rem_re_value / rate * kMinutesPerHour;
}

bool assess(CompositeService& comp, const EnergyQuery& q,
            const std::vector<EnergyService>& pool, AgrVariant variant) {
    comp.tec = tec(comp);
    if (comp.tec <= 0.0) return false;
    comp.agr = agr(comp, q, variant);
    comp.rem_re = rem_re(comp, q);
    comp.ext_q = ext_q(comp.rem_re, q, pool);
    return true;
}

}  // namespace elastic
