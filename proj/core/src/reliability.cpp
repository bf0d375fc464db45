#include "elastic/reliability.hpp"

#include <algorithm>
#include <cmath>

namespace elastic {

SocSeries validate_soc_series(SocSeries raw) {
    for (std::size_t i = 0; i < raw.samples.size(); ++i) {
        const auto& [t, soc] = raw.samples[i];
        if (soc < 0.0 || soc > 1.0)
            throw ValidationError("soc: out of [0,1] for owner " + raw.owner_id);
        if (i > 0 && t <= raw.samples[i - 1].first)
            throw ValidationError("time: not strictly increasing for owner " +
                                  raw.owner_id);
    }
    return raw;
}

double provision_success(long long ss, long long tps) {
    if (ss > tps)
        throw ValidationError("ss: exceeds tps");
    if (ss < 0 || tps < 0)
        throw ValidationError("ss/tps: negative count");
    if (tps == 0) return 1.0;
    return static_cast<double>(ss) / static_cast<double>(tps);
}

double normalized_entropy_eub(const std::vector<double>& deltas, int bins) {
    if (bins < 2) throw ValidationError("bins: must be >= 2");
    if (deltas.empty())
        throw InsufficientDataError("eub: no deltas");
    auto [lo_it, hi_it] = std::minmax_element(deltas.begin(), deltas.end());
    const double lo = *lo_it, hi = *hi_it;
    // a spread at rounding-noise level is a single occupied bin, zero entropy
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    if (hi - lo <= 1e-12 * scale) return 1.0;

    std::vector<long long> counts(bins, 0);
    const double width = (hi - lo) / bins;
    for (double d : deltas) {
        int b = static_cast<int>((d - lo) / width);
        if (b >= bins) b = bins - 1;  // the max lands in the last bin
        ++counts[b];
    }
    double h = 0.0;
    const double n = static_cast<double>(deltas.size());
    for (long long c : counts) {
        if (c == 0) continue;
        const double p = c / n;
        h -= p * std::log(p);
    }
    return 1.0 - h / std::log(static_cast<double>(bins));
}

double eub_from_soc(const SocSeries& series, int bins) {
    if (series.samples.size() < 2)
        throw InsufficientDataError("eub_from_soc: fewer than 2 samples for owner " +
                                    series.owner_id);
    std::vector<double> rates;
    rates.reserve(series.samples.size() - 1);
    for (std::size_t i = 1; i < series.samples.size(); ++i) {
        const auto& [t0, s0] = series.samples[i - 1];
        const auto& [t1, s1] = series.samples[i];
        rates.push_back((s1 - s0) / static_cast<double>(t1 - t0));
    }
    return normalized_entropy_eub(rates, bins);
}

double reliability_score(double eub, double pb) {
    if (eub < 0.0 || eub > 1.0) throw ValidationError("eub: out of [0,1]");
    if (pb < 0.0 || pb > 1.0) throw ValidationError("pb: out of [0,1]");
    return eub * pb;
}

}  // namespace elastic
