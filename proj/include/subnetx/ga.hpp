#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subnetx/errors.hpp"
#include "subnetx/mask.hpp"
#include "subnetx/ml.hpp"
#include "subnetx/pipeline.hpp"
#include "subnetx/rng.hpp"
#include "subnetx/run_history.hpp"

namespace subnetx {

struct GAConfig {
    int population_size = 100;
    double crossover_prob = 0.30;
    double mutation_prob = 0.30;
    double per_gene_mutation_prob = 0.05;
    double truncation_fraction = 0.5;
    int elite_count = 1;
    int max_generations = 100;
    int stagnation_patience = 20;
    // diversity floor = factor * population pairs * genotype length
    double diversity_floor_factor = 0.01;
    int min_nodes = 2;
    ModelKind classifier = ModelKind::knn();
    int cv_folds = 5;
    int restarts = 20;
    std::uint64_t seed = 1;
    int workers = 1;

    void validate() const {
        const bool probs_ok = crossover_prob >= 0.0 && crossover_prob <= 1.0 &&
                              mutation_prob >= 0.0 && mutation_prob <= 1.0 &&
                              per_gene_mutation_prob >= 0.0 && per_gene_mutation_prob <= 1.0;
        if (!probs_ok) throw ConfigError("GA probabilities must lie in [0,1]");
        if (population_size < 4) throw ConfigError("population size must be at least 4");
        if (!(truncation_fraction > 0.0) || truncation_fraction > 1.0) {
            throw ConfigError("truncation fraction must lie in (0,1]");
        }
        if (elite_count < 0 || elite_count >= population_size) {
            throw ConfigError("elite count must lie in [0, population size)");
        }
        if (max_generations < 1) throw ConfigError("max generations must be positive");
        if (stagnation_patience < 0) throw ConfigError("stagnation patience must be nonnegative");
        if (diversity_floor_factor < 0.0) throw ConfigError("diversity floor must be nonnegative");
        if (min_nodes < 1) throw ConfigError("min nodes must be positive");
        if (cv_folds < 2) throw ConfigError("cv folds must exceed 1");
        if (restarts < 1) throw ConfigError("restarts must be positive");
        if (workers < 1) throw ConfigError("workers must be positive");
        classifier.validate();
    }
};

// Random genotypes, each bit Bernoulli(0.5); masks under min_nodes are
// redrawn.
inline std::vector<SubnetMask> init_population(int atlas_size, const GAConfig& cfg, Rng& rng) {
    if (atlas_size < 2) throw DataError("atlas size must be at least 2");
    std::vector<SubnetMask> pop;
    pop.reserve(static_cast<std::size_t>(cfg.population_size));
    while (pop.size() < static_cast<std::size_t>(cfg.population_size)) {
        SubnetMask m(static_cast<std::size_t>(atlas_size));
        for (std::size_t i = 0; i < m.size(); ++i) m.set(i, rng.bernoulli(0.5));
        if (m.popcount() >= static_cast<std::size_t>(cfg.min_nodes)) pop.push_back(std::move(m));
    }
    return pop;
}

inline std::vector<SubnetMask> init_population(int atlas_size, const GAConfig& cfg) {
    Rng rng(cfg.seed);
    return init_population(atlas_size, cfg, rng);
}

// Memoized fitness: cross-validated accuracy of the configured classifier
// on entropy features of the mask-induced sub-networks. The CV seed is
// derived from (run seed, mask hash), so a mask scores identically no
// matter when or on which worker it is evaluated. Masks under min_nodes
// score 0.
class FitnessEvaluator {
public:
    FitnessEvaluator(const FeaturePipeline& pipeline, const GAConfig& cfg)
        : pipeline_(pipeline), cfg_(cfg) {}

    double fitness(const SubnetMask& mask) {
        const std::string key = mask.to_string();
        {
            std::lock_guard<std::mutex> lock(mutex_);
            const auto it = cache_.find(key);
            if (it != cache_.end()) {
                ++cache_hits_;
                return it->second;
            }
        }
        const double value = compute(mask);
        std::lock_guard<std::mutex> lock(mutex_);
        cache_.emplace(key, value);
        ++evaluations_;
        return value;
    }

    // Population evaluation with a fixed-order cache pass so results and
    // counters are identical for any worker count.
    std::vector<double> evaluate_population(const std::vector<SubnetMask>& pop, int workers) {
        std::vector<double> fits(pop.size(), 0.0);
        std::vector<std::string> keys(pop.size());
        std::vector<std::size_t> pending; // first occurrence of each uncached key
        {
            std::lock_guard<std::mutex> lock(mutex_);
            std::unordered_map<std::string, std::size_t> scheduled;
            for (std::size_t i = 0; i < pop.size(); ++i) {
                keys[i] = pop[i].to_string();
                if (cache_.count(keys[i]) || scheduled.count(keys[i])) {
                    ++cache_hits_;
                } else {
                    scheduled.emplace(keys[i], i);
                    pending.push_back(i);
                }
            }
        }

        std::vector<double> computed(pending.size(), 0.0);
        const int used = std::max(1, std::min<int>(workers, static_cast<int>(pending.size())));
        if (used <= 1) {
            for (std::size_t j = 0; j < pending.size(); ++j) computed[j] = compute(pop[pending[j]]);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> threads;
            threads.reserve(static_cast<std::size_t>(used));
            for (int t = 0; t < used; ++t) {
                threads.emplace_back([&]() {
                    for (std::size_t j = next.fetch_add(1); j < pending.size();
                         j = next.fetch_add(1)) {
                        computed[j] = compute(pop[pending[j]]);
                    }
                });
            }
            for (auto& t : threads) t.join();
        }

        {
            std::lock_guard<std::mutex> lock(mutex_);
            for (std::size_t j = 0; j < pending.size(); ++j) {
                cache_.emplace(keys[pending[j]], computed[j]);
                ++evaluations_;
            }
            for (std::size_t i = 0; i < pop.size(); ++i) fits[i] = cache_.at(keys[i]);
        }
        return fits;
    }

    long evaluations() const { return evaluations_; }
    long cache_hits() const { return cache_hits_; }

private:
    double compute(const SubnetMask& mask) const {
        if (mask.popcount() < static_cast<std::size_t>(cfg_.min_nodes)) return 0.0;
        const auto fm = pipeline_.features_for(mask);
        return cross_val_accuracy(cfg_.classifier, fm.X, fm.y, cfg_.cv_folds,
                                  derive_seed(cfg_.seed, mask.hash64()));
    }

    const FeaturePipeline& pipeline_;
    GAConfig cfg_;
    std::unordered_map<std::string, double> cache_;
    mutable std::mutex mutex_;
    long evaluations_ = 0;
    long cache_hits_ = 0;
};

// Indices sorted by fitness descending; ties rank the lexicographically
// smaller mask first.
inline std::vector<std::size_t> rank_order(const std::vector<SubnetMask>& pop,
                                           const std::vector<double>& fits) {
    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (fits[a] != fits[b]) return fits[a] > fits[b];
        return pop[a] < pop[b];
    });
    return idx;
}

// Truncated rank selection: the top ceil(truncation_fraction * N) masks
// form the parent pool.
inline std::vector<SubnetMask> select_survivors(const std::vector<SubnetMask>& pop,
                                                const std::vector<double>& fits,
                                                const GAConfig& cfg) {
    if (pop.empty() || pop.size() != fits.size()) {
        throw DataError("population and fitness sizes differ");
    }
    const auto order = rank_order(pop, fits);
    const auto keep = static_cast<std::size_t>(
        std::ceil(cfg.truncation_fraction * static_cast<double>(pop.size())));
    std::vector<SubnetMask> pool;
    pool.reserve(keep);
    for (std::size_t i = 0; i < keep && i < order.size(); ++i) pool.push_back(pop[order[i]]);
    return pool;
}

enum class CrossoverMode { single_point, two_point };

// Single-point: swap suffixes at a cut in [1, L-1]. Two-point: swap the
// segment [u, v) for cuts 1 <= u < v <= L-1.
inline std::pair<SubnetMask, SubnetMask> crossover(const SubnetMask& a, const SubnetMask& b,
                                                   CrossoverMode mode, Rng& rng) {
    if (a.size() != b.size()) throw DataError("mask length mismatch");
    const std::size_t len = a.size();
    if (len < 2) throw DataError("masks must have length at least 2");

    std::size_t lo = 0;
    std::size_t hi = len;
    if (mode == CrossoverMode::single_point) {
        lo = 1 + static_cast<std::size_t>(rng.uniform_int(len - 1));
    } else {
        if (len < 3) throw DataError("two-point crossover needs length at least 3");
        std::size_t u = 1 + static_cast<std::size_t>(rng.uniform_int(len - 1));
        std::size_t v;
        do {
            v = 1 + static_cast<std::size_t>(rng.uniform_int(len - 1));
        } while (v == u);
        lo = std::min(u, v);
        hi = std::max(u, v);
    }

    SubnetMask c1 = a;
    SubnetMask c2 = b;
    for (std::size_t i = lo; i < hi; ++i) {
        c1.set(i, b.test(i));
        c2.set(i, a.test(i));
    }
    return {std::move(c1), std::move(c2)};
}

// Deterministic fixed-cut variant used by tests and exhaustive checks.
inline std::pair<SubnetMask, SubnetMask> crossover_at(const SubnetMask& a, const SubnetMask& b,
                                                      std::size_t lo, std::size_t hi) {
    if (a.size() != b.size()) throw DataError("mask length mismatch");
    if (lo < 1 || lo > hi || hi > a.size()) throw DataError("bad crossover cuts");
    SubnetMask c1 = a;
    SubnetMask c2 = b;
    for (std::size_t i = lo; i < hi; ++i) {
        c1.set(i, b.test(i));
        c2.set(i, a.test(i));
    }
    return {std::move(c1), std::move(c2)};
}

// Per-individual mutation gate, then independent per-gene flips; results
// under min_nodes are redrawn from the original, with a forced repair
// after 256 attempts to keep the operator total.
inline SubnetMask mutate(const SubnetMask& mask, const GAConfig& cfg, Rng& rng) {
    if (!rng.bernoulli(cfg.mutation_prob)) return mask;
    SubnetMask child = mask;
    for (int attempt = 0; attempt < 256; ++attempt) {
        child = mask;
        for (std::size_t i = 0; i < child.size(); ++i) {
            if (rng.bernoulli(cfg.per_gene_mutation_prob)) child.flip(i);
        }
        if (child.popcount() >= static_cast<std::size_t>(cfg.min_nodes)) return child;
    }
    while (child.popcount() < static_cast<std::size_t>(cfg.min_nodes)) {
        const auto i = static_cast<std::size_t>(rng.uniform_int(child.size()));
        child.set(i, true);
    }
    return child;
}

// Sum of Hamming distances over unordered pairs.
inline long long diversity(const std::vector<SubnetMask>& pop) {
    if (pop.empty()) throw DataError("empty population");
    long long total = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        for (std::size_t j = i + 1; j < pop.size(); ++j) {
            total += static_cast<long long>(pop[i].hamming_distance(pop[j]));
        }
    }
    return total;
}

// Generational loop: evaluate, record stats, test stop conditions, then
// truncation selection, crossover, mutation, with the elite copied
// through unmodified (this makes the global-max curve non-decreasing).
inline RunHistory evolve(const FeaturePipeline& pipeline, const GAConfig& cfg,
                         const std::vector<SubnetMask>* initial_population = nullptr) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<SubnetMask> pop = initial_population
                                      ? *initial_population
                                      : init_population(pipeline.atlas_size(), cfg, rng);
    if (pop.empty()) throw DataError("empty initial population");
    const std::size_t pop_size = pop.size();
    const std::size_t len = pop.front().size();

    FitnessEvaluator evaluator(pipeline, cfg);
    RunHistory history;
    history.seed = cfg.seed;
    history.best_fitness = -std::numeric_limits<double>::infinity();

    const double pairs = static_cast<double>(pop_size) * (static_cast<double>(pop_size) - 1) / 2.0;
    const double diversity_floor = cfg.diversity_floor_factor * pairs * static_cast<double>(len);
    int since_improvement = 0;

    for (int gen = 0; gen < cfg.max_generations; ++gen) {
        const auto fits = evaluator.evaluate_population(pop, cfg.workers);
        const auto order = rank_order(pop, fits);
        const std::size_t best_i = order.front();

        if (fits[best_i] > history.best_fitness) {
            history.best_fitness = fits[best_i];
            history.best_mask = pop[best_i];
            since_improvement = 0;
        } else {
            ++since_improvement;
        }

        GenerationStats stats;
        stats.global_max_fitness = history.best_fitness;
        stats.local_min_fitness = *std::min_element(fits.begin(), fits.end());
        stats.local_mean_fitness =
            std::accumulate(fits.begin(), fits.end(), 0.0) / static_cast<double>(fits.size());
        stats.diversity = diversity(pop);
        history.generations.push_back(stats);

        const double local_max = fits[best_i];
        if (gen == cfg.max_generations - 1) {
            history.stop_reason = StopReason::max_generations;
        } else if (since_improvement >= cfg.stagnation_patience) {
            history.stop_reason = StopReason::stagnation;
        } else if (static_cast<double>(stats.diversity) < diversity_floor) {
            history.stop_reason = StopReason::diversity_floor;
        } else if (local_max - stats.local_mean_fitness <= 1e-6) {
            history.stop_reason = StopReason::mean_converged;
        }
        if (history.stop_reason != StopReason::none) break;

        std::vector<SubnetMask> next;
        next.reserve(pop_size);
        for (int e = 0; e < cfg.elite_count; ++e) {
            next.push_back(pop[order[static_cast<std::size_t>(e)]]);
        }
        const auto pool = select_survivors(pop, fits, cfg);
        while (next.size() < pop_size) {
            const auto& pa = pool[static_cast<std::size_t>(rng.uniform_int(pool.size()))];
            const auto& pb = pool[static_cast<std::size_t>(rng.uniform_int(pool.size()))];
            SubnetMask c1 = pa;
            SubnetMask c2 = pb;
            if (rng.bernoulli(cfg.crossover_prob)) {
                const auto mode = (len >= 3 && rng.bernoulli(0.5)) ? CrossoverMode::two_point
                                                                   : CrossoverMode::single_point;
                std::tie(c1, c2) = crossover(pa, pb, mode, rng);
            }
            next.push_back(mutate(c1, cfg, rng));
            if (next.size() < pop_size) next.push_back(mutate(c2, cfg, rng));
        }
        pop = std::move(next);
    }

    history.evaluations = evaluator.evaluations();
    history.cache_hits = evaluator.cache_hits();
    return history;
}

inline RunHistory evolve(const Dataset& ds, const PipelineConfig& pipeline_cfg,
                         const GAConfig& cfg) {
    FeaturePipeline pipeline(ds, pipeline_cfg);
    return evolve(pipeline, cfg);
}

struct MultiRestartResult {
    std::vector<RunHistory> runs;
    std::size_t best_index = 0;

    const RunHistory& best() const { return runs[best_index]; }
};

// Independent runs with seeds seed+0 .. seed+restarts-1; the best final
// fitness wins, ties to the lowest seed.
inline MultiRestartResult multi_restart(const FeaturePipeline& pipeline, const GAConfig& cfg) {
    cfg.validate();
    MultiRestartResult result;
    result.runs.reserve(static_cast<std::size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r) {
        GAConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(r);
        result.runs.push_back(evolve(pipeline, run_cfg));
        if (result.runs.back().best_fitness > result.runs[result.best_index].best_fitness) {
            result.best_index = result.runs.size() - 1;
        }
    }
    return result;
}

inline MultiRestartResult multi_restart(const Dataset& ds, const PipelineConfig& pipeline_cfg,
                                        const GAConfig& cfg) {
    FeaturePipeline pipeline(ds, pipeline_cfg);
    return multi_restart(pipeline, cfg);
}

} // namespace subnetx
