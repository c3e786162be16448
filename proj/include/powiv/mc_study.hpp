#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "powiv/iv_closed_form.hpp"
#include "powiv/pricing.hpp"

namespace powiv {

/// Parameters of the Monte-Carlo study. Defaults reproduce the published
/// experiment: S0 = 1, T = 1, sigma = 15%, r = 0.001, N = M = 100, alpha in
/// {0.4, 0.6, ..., 2.0}, K in {0.9, 1.0, 1.01}.
struct StudyConfig {
    double s0 = 1.0;
    double horizon = 1.0;
    double true_sigma = 0.15;
    double rate = 0.001;
    int num_steps = 100;
    int num_reps = 100;
    std::uint64_t seed = 42;
    std::vector<double> alphas{0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
    std::vector<double> strikes{0.9, 1.0, 1.01};
    std::vector<PowerKind> kinds{PowerKind::Type1, PowerKind::Type2};
    /// Worker threads for run_study; 0 picks the hardware concurrency.
    int threads = 0;
    ClosedFormOptions closed_form;

    /// Throws InvalidConfig on any out-of-range field.
    void validate() const;
};

/// Normal variates for one (cell, repetition) pair.
///
/// Generator: std::mt19937_64 seeded with a SplitMix64 hash of
/// (seed, strike bits, alpha bits, repetition). Normals are drawn by
/// inversion, z = -sqrt(2) erfc^-1(2u) with u = (k + 0.5) 2^-53 built from the
/// top 53 bits of one 64-bit output. Both pieces are fully specified, so
/// streams are bit-reproducible across platforms. Stream version: 1.
class RandomStream {
public:
    static constexpr int kVersion = 1;

    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Stream for one study cell and repetition. The payoff kind is not part
    /// of the key, so Type1 and Type2 cells at the same (K, alpha) see the
    /// same paths.
    static RandomStream for_cell(std::uint64_t master_seed, double strike, double alpha, std::uint64_t rep);

    double uniform_open();
    double standard_normal();

private:
    std::mt19937_64 engine_;
};

struct GbmPath {
    std::vector<double> times;
    std::vector<double> values;
};

/// Exact lognormal stepping: S_{t+dt} = S_t exp((r - sigma^2/2) dt + sigma dB), dB ~ N(0, dt).
GbmPath simulate_gbm_path(const StudyConfig& config, RandomStream& stream);

/// One observation along a path.
struct PathObservation {
    double spot = 0.0;
    double tau = 0.0;
    double price = 0.0;
    QuadraticIV quadratic;
    double discriminant = 0.0; ///< after noise clamp / optional repair
    IVOutcome outcome;
};

/// Prices the option at t_0, ..., t_{N-1} with the true sigma and inverts
/// each price with the closed form. Observation i uses the spot at t_{i-1}
/// and tau = T - (i-1) T / N.
std::vector<PathObservation> observe_path(const StudyConfig& config, const PowerOptionSpec& spec,
                                          const GbmPath& path);

struct BranchCounts {
    long plus_root = 0;
    long minus_root = 0;
    long linear = 0;
    long wrong_sign = 0;
    long non_positive = 0;
};

/// Indexes for one simulated path.
struct StudyStats {
    double dnr = 0.0;                 ///< L / N
    std::optional<double> mean_sigma; ///< mean of solved sigma-hat
    std::optional<double> std_sigma;  ///< RMS deviation (1/n normalisation)
    int usable = 0;                   ///< L = #{i : discriminant >= 0}
    int solved = 0;                   ///< observations with a positive root
    BranchCounts branches;
};

StudyStats summarize(const std::vector<PathObservation>& observations);

StudyStats run_single_experiment(const StudyConfig& config, const PowerOptionSpec& spec, RandomStream& stream);

/// Averages over the repetitions of one (kind, K, alpha) cell. Repetitions
/// with no solved observation count towards dnr only.
struct CellResult {
    PowerKind kind = PowerKind::Type1;
    double strike = 0.0;
    double alpha = 0.0;
    double dnr = 0.0;
    std::optional<double> mean_sigma;
    std::optional<double> std_sigma;
    int reps = 0;
    int reps_with_solutions = 0;
    double solved_rate = 0.0; ///< mean fraction of steps with a positive root
    BranchCounts branches;    ///< totals over all repetitions
};

/// Cells in kinds x strikes x alphas order (alpha fastest).
struct StudyTable {
    std::vector<CellResult> cells;
};

CellResult run_cell(const StudyConfig& config, const PowerOptionSpec& spec);

/// Runs every cell, possibly on several threads. Output depends only on the
/// configuration, not on thread count or scheduling.
StudyTable run_study(const StudyConfig& config);

} // namespace powiv
