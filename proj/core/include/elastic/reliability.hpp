#pragma once

#include <utility>
#include <vector>

#include "elastic/model.hpp"

namespace elastic {

struct SocSeries {
    std::string owner_id;
    // (time in minutes, state of charge in [0,1]); times strictly increasing.
    std::vector<std::pair<Minutes, double>> samples;
};

SocSeries validate_soc_series(SocSeries raw);

inline constexpr int kDefaultEubBins = 10;

// PB = SS/TPS; a provider with no history defaults to 1.0 so newcomers are
// not excluded (their risk is carried by EUB).
double provision_success(long long ss, long long tps);

// 1 - H/log(bins) over an equal-width histogram of the deltas' observed
// range. All-equal deltas give 1.0, a uniform spread gives 0.0.
double normalized_entropy_eub(const std::vector<double>& deltas, int bins);

// EUB from the per-minute discharge-rate deltas of a SoC time series.
double eub_from_soc(const SocSeries& series, int bins = kDefaultEubBins);

// Rel = EUB * PB.
double reliability_score(double eub, double pb);

}  // namespace elastic
