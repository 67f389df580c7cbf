#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "aeroea/chromosome.hpp"
#include "aeroea/decoder.hpp"
#include "aeroea/domain.hpp"
#include "aeroea/rng.hpp"

namespace aeroea {

struct EaParams {
    int pop_size = 1500;
    long long eval_budget = 200000;
    int ks = 2; // selection tournament size
    int kr = 2; // replacement tournament size
    int lp_penalty = 10;
    int wp_penalty = 1;
    double clone_probability = 0.5; // otherwise crossover
    bool single_shift = false;
    bool record_trace = false; // keep the population-minimum fitness trace
    std::uint64_t seed = 0;

    void validate() const {
        if (pop_size < 2) throw Error("ea params: pop_size must be >= 2");
        if (ks < 1 || kr < 1) throw Error("ea params: tournament sizes must be >= 1");
        if (eval_budget < pop_size) throw Error("ea params: eval_budget must cover the initial population");
    }
};

struct Individual {
    Chromosome chromosome;
    long long fitness = 0;
    FitnessReport report;
};

struct RunResult {
    Individual best;
    long long best_fitness = 0;
    long long evaluations = 0;
    long long last_improvement_eval = 0; // 1-based evaluation index
    std::vector<long long> min_trace;    // population minimum after each evaluation
};

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

/// Uniform random permutation plus a uniform qualified technician per entry.
inline Chromosome random_chromosome(const InstanceLayout& layout, Rng& rng) {
    Chromosome chrom;
    chrom.order.resize(static_cast<std::size_t>(layout.n_pairings()));
    std::iota(chrom.order.begin(), chrom.order.end(), std::uint16_t{0});
    rng.shuffle(chrom.order);
    chrom.techs.resize(static_cast<std::size_t>(layout.total_entries()));
    for (int p = 0; p < layout.n_pairings(); ++p) {
        const int base = layout.entry_offset(p);
        for (int e = 0; e < layout.n_entries(p); ++e) {
            const auto& pool = layout.qualified(p, e);
            if (pool.empty()) {
                throw Error("instance unsolvable: a staff slot has no qualified technician");
            }
            chrom.techs[static_cast<std::size_t>(base + e)] = pool[rng.uniform_index(pool.size())];
        }
    }
    return chrom;
}

inline Individual init_individual(const DecodeContext& ctx, Schedule& scratch, const EaParams& params,
                                  Rng& rng) {
    Individual ind;
    ind.chromosome = random_chromosome(ctx.layout(), rng);
    decode_into(ctx, ind.chromosome, scratch);
    ind.report = evaluate(scratch, ctx.layout(), params.wp_penalty, params.lp_penalty);
    ind.fitness = ind.report.fitness;
    return ind;
}

inline Individual init_individual(const ProblemInstance& instance, Rng& rng) {
    InstanceLayout layout(instance);
    DecodeContext ctx(layout);
    Schedule scratch;
    EaParams params;
    return init_individual(ctx, scratch, params, rng);
}

/// k draws with replacement; best fitness wins, first drawn wins ties.
inline std::size_t tournament_select_index(const std::vector<Individual>& population, int k, Rng& rng) {
    std::size_t best = rng.uniform_index(population.size());
    for (int i = 1; i < k; ++i) {
        const std::size_t candidate = rng.uniform_index(population.size());
        if (population[candidate].fitness < population[best].fitness) best = candidate;
    }
    return best;
}

inline const Individual& tournament_select(const std::vector<Individual>& population, int k, Rng& rng) {
    if (population.empty()) throw Error("tournament_select: empty population");
    return population[tournament_select_index(population, k, rng)];
}

/// k draws with replacement; worst fitness wins, first drawn wins ties.
inline std::size_t replacement_tournament_index(const std::vector<Individual>& population, int k,
                                                Rng& rng) {
    std::size_t worst = rng.uniform_index(population.size());
    for (int i = 1; i < k; ++i) {
        const std::size_t candidate = rng.uniform_index(population.size());
        if (population[candidate].fitness > population[worst].fitness) worst = candidate;
    }
    return worst;
}

/// Priority-preserving crossover: scan the parents front to back, alternating
/// pa then pb, appending each gene not yet in the child. A gene carries its
/// staff allocations from whichever parent contributed it.
inline Chromosome crossover(const Chromosome& pa, const Chromosome& pb, const InstanceLayout& layout) {
    const std::size_t n = pa.order.size();
    if (pb.order.size() != n || pa.order.size() != static_cast<std::size_t>(layout.n_pairings()) ||
        pa.techs.size() != pb.techs.size()) {
        throw Error("crossover: parents are not permutations of the same gene multiset");
    }
    Chromosome child;
    child.order.reserve(n);
    child.techs.resize(pa.techs.size());
    std::vector<bool> seen(n, false);

    auto take = [&](const Chromosome& parent, std::uint16_t p) {
        if (p >= n || seen[p]) return;
        seen[p] = true;
        child.order.push_back(p);
        const std::size_t base = static_cast<std::size_t>(layout.entry_offset(p));
        const std::size_t count = static_cast<std::size_t>(layout.n_entries(p));
        std::copy_n(parent.techs.begin() + static_cast<std::ptrdiff_t>(base), count,
                    child.techs.begin() + static_cast<std::ptrdiff_t>(base));
    };
    for (std::size_t i = 0; i < n; ++i) {
        take(pa, pa.order[i]);
        take(pb, pb.order[i]);
    }
    if (child.order.size() != n) {
        throw Error("crossover: parents are not permutations of the same gene multiset");
    }
    return child;
}

/// Exactly one mutation event: with equal probability either re-assign one
/// random staff entry to a random qualified technician, or relocate one
/// random gene to a random position.
inline void mutate(Chromosome& chrom, const InstanceLayout& layout, Rng& rng) {
    if (rng.bernoulli(0.5)) {
        const std::size_t position = rng.uniform_index(chrom.order.size());
        const int p = chrom.order[position];
        const int e = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(layout.n_entries(p))));
        const auto& pool = layout.qualified(p, e);
        chrom.techs[static_cast<std::size_t>(layout.entry_offset(p) + e)] =
            pool[rng.uniform_index(pool.size())];
    } else {
        const std::size_t from = rng.uniform_index(chrom.order.size());
        const std::size_t to = rng.uniform_index(chrom.order.size());
        const std::uint16_t gene = chrom.order[from];
        chrom.order.erase(chrom.order.begin() + static_cast<std::ptrdiff_t>(from));
        chrom.order.insert(chrom.order.begin() + static_cast<std::ptrdiff_t>(to), gene);
    }
}

inline Individual mutate(const Individual& ind, const ProblemInstance& instance, Rng& rng) {
    const EaParams defaults;
    InstanceLayout layout(instance);
    DecodeContext ctx(layout);
    Individual out = ind;
    mutate(out.chromosome, layout, rng);
    Schedule scratch;
    decode_into(ctx, out.chromosome, scratch);
    out.report = evaluate(scratch, layout, defaults.wp_penalty, defaults.lp_penalty);
    out.fitness = out.report.fitness;
    return out;
}

// ---------------------------------------------------------------------------
// Steady-state loop
// ---------------------------------------------------------------------------

/// One child per generation: clone or crossover of tournament-selected
/// parents, one mutation, then a replacement tournament that evicts the worst
/// of kr draws only if the child is strictly better. Runs until the
/// evaluation budget (initial population included) is consumed, or until a
/// zero-penalty schedule appears — fitness is bounded below by zero, so no
/// later evaluation can change the reported result.
inline RunResult run_ea(const ProblemInstance& instance, const EaParams& params) {
    params.validate();
    InstanceLayout layout(instance);
    DecodeContext ctx(layout, params.single_shift);
    Rng rng(params.seed);
    Schedule scratch;

    RunResult result;
    std::vector<Individual> population;
    population.reserve(static_cast<std::size_t>(params.pop_size));

    long long evals = 0;
    long long best_fitness = 0;
    long long pop_min = 0;
    std::size_t best_index = 0;

    auto note_eval = [&](long long fitness) {
        ++evals;
        if (evals == 1 || fitness < best_fitness) {
            best_fitness = fitness;
            result.last_improvement_eval = evals;
        }
        if (params.record_trace) result.min_trace.push_back(pop_min);
    };

    for (int i = 0; i < params.pop_size; ++i) {
        population.push_back(init_individual(ctx, scratch, params, rng));
        const long long f = population.back().fitness;
        if (i == 0 || f < pop_min) {
            pop_min = f;
            best_index = population.size() - 1;
        }
        note_eval(f);
    }

    Chromosome child;
    while (evals < params.eval_budget && pop_min > 0) {
        if (rng.bernoulli(params.clone_probability)) {
            child = population[tournament_select_index(population, params.ks, rng)].chromosome;
        } else {
            const std::size_t pa = tournament_select_index(population, params.ks, rng);
            const std::size_t pb = tournament_select_index(population, params.ks, rng);
            child = crossover(population[pa].chromosome, population[pb].chromosome, layout);
        }
        mutate(child, layout, rng);
        decode_into(ctx, child, scratch);
        const FitnessReport report = evaluate(scratch, layout, params.wp_penalty, params.lp_penalty);

        const std::size_t victim = replacement_tournament_index(population, params.kr, rng);
        if (report.fitness < population[victim].fitness) {
            population[victim].chromosome = std::move(child);
            population[victim].fitness = report.fitness;
            population[victim].report = report;
            if (report.fitness < pop_min) {
                pop_min = report.fitness;
                best_index = victim;
            } else if (victim == best_index) {
                // The displaced slot held the tracked best; find it again.
                best_index = 0;
                pop_min = population[0].fitness;
                for (std::size_t i = 1; i < population.size(); ++i) {
                    if (population[i].fitness < pop_min) {
                        pop_min = population[i].fitness;
                        best_index = i;
                    }
                }
            }
        }
        note_eval(report.fitness);
    }

    result.best = population[best_index];
    result.best_fitness = population[best_index].fitness;
    result.evaluations = evals;
    return result;
}

} // namespace aeroea
