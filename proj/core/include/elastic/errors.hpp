#pragma once

#include <stdexcept>
#include <string>

namespace elastic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A record violated a type invariant; the message names the offending field.
struct ValidationError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

// agr() over a zero-energy composite; the caller treats it as infeasible.
struct UndefinedAggregateError : Error {
    using Error::Error;
};

struct UndefinedMetricError : Error {
    using Error::Error;
};

struct SearchSpaceOverflowError : Error {
    SearchSpaceOverflowError(const std::string& msg, double count)
        : Error(msg), count(count) {}
    double count;
};

struct NoFeasibleCompositionError : Error {
    NoFeasibleCompositionError(const std::string& msg,
                               std::string nearest_signature,
                               double nearest_ext_q)
        : Error(msg),
          nearest_signature(std::move(nearest_signature)),
          nearest_ext_q(nearest_ext_q) {}
    NoFeasibleCompositionError(const std::string& msg) : Error(msg) {}
    std::string nearest_signature;
    double nearest_ext_q = -1.0;
};

}  // namespace elastic
