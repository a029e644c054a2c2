#pragma once

#include <cstdint>
#include <vector>

#include "subnetx/mask.hpp"

namespace subnetx {

// Per-generation record: best-so-far fitness plus the current
// population's mean, minimum, and pairwise-Hamming diversity.
struct GenerationStats {
    double global_max_fitness = 0.0;
    double local_mean_fitness = 0.0;
    double local_min_fitness = 0.0;
    long long diversity = 0;
};

enum class StopReason {
    none,
    max_generations,
    stagnation,
    diversity_floor,
    mean_converged,
};

struct RunHistory {
    std::vector<GenerationStats> generations;
    SubnetMask best_mask;
    double best_fitness = 0.0;
    std::uint64_t seed = 0;
    long evaluations = 0;
    long cache_hits = 0;
    StopReason stop_reason = StopReason::none;
};

inline const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::none: return "none";
        case StopReason::max_generations: return "max_generations";
        case StopReason::stagnation: return "stagnation";
        case StopReason::diversity_floor: return "diversity_floor";
        case StopReason::mean_converged: return "mean_converged";
    }
    return "unknown";
}

} // namespace subnetx
