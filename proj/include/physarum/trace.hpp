#pragma once

#include <optional>
#include <vector>

#include "physarum/types.hpp"

namespace physarum {

/// One sampled point of an integration run. kl and potential are present
/// only when the run was given a reference optimum.
struct TraceRecord {
    double t = 0.0;
    Vector x;
    double cost = 0.0;
    double energy = 0.0;
    double infeasibility = 0.0;  // ||A x - b||_2
    std::optional<double> kl;
    std::optional<double> potential;
};

struct IntegrationStats {
    long steps = 0;
    long rejections = 0;
    long regularizations = 0;
    bool converged = false;
};

struct TrajectoryTrace {
    std::vector<TraceRecord> records;
    IntegrationStats stats;

    const TraceRecord& front() const { return records.front(); }
    const TraceRecord& back() const { return records.back(); }
    std::size_t size() const { return records.size(); }
};

}  // namespace physarum
