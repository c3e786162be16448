#include "powiv/mc_study.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "powiv/error.hpp"

namespace powiv {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void require(bool ok, const char* message)
{
    if (!ok) throw Error(ErrorCode::InvalidConfig, message);
}

} // namespace

void StudyConfig::validate() const
{
    require(s0 > 0.0 && std::isfinite(s0), "s0 must be > 0");
    require(horizon > 0.0 && std::isfinite(horizon), "horizon must be > 0");
    require(true_sigma > 0.0 && std::isfinite(true_sigma), "sigma must be > 0");
    require(std::isfinite(rate), "rate must be finite");
    require(num_steps >= 1, "steps must be >= 1");
    require(num_reps >= 1, "reps must be >= 1");
    require(!alphas.empty(), "alphas must not be empty");
    require(!strikes.empty(), "strikes must not be empty");
    require(!kinds.empty(), "kinds must not be empty");
    require(threads >= 0, "threads must be >= 0");
    for (double a : alphas) require(a > 0.0 && std::isfinite(a), "every alpha must be > 0");
    for (double k : strikes) require(k > 0.0 && std::isfinite(k), "every strike must be > 0");
}

RandomStream RandomStream::for_cell(std::uint64_t master_seed, double strike, double alpha, std::uint64_t rep)
{
    std::uint64_t state = master_seed;
    std::uint64_t key = splitmix64(state);
    for (std::uint64_t word : {std::bit_cast<std::uint64_t>(strike), std::bit_cast<std::uint64_t>(alpha), rep}) {
        state = key ^ word;
        key = splitmix64(state);
    }
    return RandomStream(key);
}

double RandomStream::uniform_open()
{
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::standard_normal()
{
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * uniform_open());
}

GbmPath simulate_gbm_path(const StudyConfig& config, RandomStream& stream)
{
    const int n = config.num_steps;
    const double dt = config.horizon / n;
    const double drift = (config.rate - 0.5 * config.true_sigma * config.true_sigma) * dt;
    const double vol = config.true_sigma * std::sqrt(dt);

    GbmPath path;
    path.times.resize(n + 1);
    path.values.resize(n + 1);
    path.values[0] = config.s0;
    double log_s = std::log(config.s0);
    for (int i = 1; i <= n; ++i) {
        path.times[i] = i == n ? config.horizon : i * dt;
        log_s += drift + vol * stream.standard_normal();
        path.values[i] = std::exp(log_s);
    }
    return path;
}

std::vector<PathObservation> observe_path(const StudyConfig& config, const PowerOptionSpec& spec,
                                          const GbmPath& path)
{
    const int n = config.num_steps;
    std::vector<PathObservation> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) {
        PathObservation obs;
        obs.spot = path.values[i - 1];
        obs.tau = config.horizon - (i - 1) * config.horizon / n;
        const MarketState market{obs.spot, config.rate, obs.tau, config.true_sigma};
        obs.price = price_power_call(market, spec).price;

        const MarketState quote{obs.spot, config.rate, obs.tau, std::nullopt};
        const Intermediates inter = compute_intermediates(quote, spec);
        if (obs.price > 0.0) {
            obs.quadratic = quadratic_coefficients(inter, obs.price, spec.alpha);
            obs.discriminant = effective_discriminant(obs.quadratic, config.closed_form);
            obs.outcome = solve_largest_admissible_root(obs.quadratic, config.closed_form);
            if (obs.outcome.solved()) obs.outcome.sigma = *obs.outcome.xi / std::sqrt(obs.tau);
        } else {
            // A quote that underflowed to zero carries no volatility information.
            obs.discriminant = -1.0;
            obs.outcome.status = IVStatus::NegativeDiscriminant;
        }
        out.push_back(std::move(obs));
    }
    return out;
}

StudyStats summarize(const std::vector<PathObservation>& observations)
{
    StudyStats stats;
    double sum = 0.0;
    for (const auto& obs : observations) {
        if (obs.discriminant >= 0.0) ++stats.usable;
        const IVOutcome& o = obs.outcome;
        if (o.solved()) {
            ++stats.solved;
            sum += *o.sigma;
            switch (*o.branch) {
            case RootBranch::PlusRoot: ++stats.branches.plus_root; break;
            case RootBranch::MinusRoot: ++stats.branches.minus_root; break;
            case RootBranch::Linear: ++stats.branches.linear; break;
            }
        } else if (o.status == IVStatus::WrongSignCondition) {
            ++stats.branches.wrong_sign;
        } else if (o.status == IVStatus::NonPositiveRoot || o.status == IVStatus::DegenerateLinear) {
            ++stats.branches.non_positive;
        }
    }
    if (!observations.empty())
        stats.dnr = static_cast<double>(stats.usable) / static_cast<double>(observations.size());
    if (stats.solved > 0) {
        const double mean = sum / stats.solved;
        double sq = 0.0;
        for (const auto& obs : observations)
            if (obs.outcome.solved()) sq += (*obs.outcome.sigma - mean) * (*obs.outcome.sigma - mean);
        stats.mean_sigma = mean;
        stats.std_sigma = std::sqrt(sq / stats.solved);
    }
    return stats;
}

StudyStats run_single_experiment(const StudyConfig& config, const PowerOptionSpec& spec, RandomStream& stream)
{
    const GbmPath path = simulate_gbm_path(config, stream);
    return summarize(observe_path(config, spec, path));
}

CellResult run_cell(const StudyConfig& config, const PowerOptionSpec& spec)
{
    CellResult cell;
    cell.kind = spec.kind;
    cell.strike = spec.strike;
    cell.alpha = spec.alpha;
    cell.reps = config.num_reps;

    double dnr_sum = 0.0;
    double solved_sum = 0.0;
    double mean_sum = 0.0;
    double std_sum = 0.0;
    for (int rep = 0; rep < config.num_reps; ++rep) {
        RandomStream stream = RandomStream::for_cell(config.seed, spec.strike, spec.alpha,
                                                     static_cast<std::uint64_t>(rep));
        const StudyStats stats = run_single_experiment(config, spec, stream);
        dnr_sum += stats.dnr;
        solved_sum += static_cast<double>(stats.solved) / config.num_steps;
        cell.branches.plus_root += stats.branches.plus_root;
        cell.branches.minus_root += stats.branches.minus_root;
        cell.branches.linear += stats.branches.linear;
        cell.branches.wrong_sign += stats.branches.wrong_sign;
        cell.branches.non_positive += stats.branches.non_positive;
        if (stats.mean_sigma) {
            ++cell.reps_with_solutions;
            mean_sum += *stats.mean_sigma;
            std_sum += *stats.std_sigma;
        }
    }
    cell.dnr = dnr_sum / config.num_reps;
    cell.solved_rate = solved_sum / config.num_reps;
    if (cell.reps_with_solutions > 0) {
        cell.mean_sigma = mean_sum / cell.reps_with_solutions;
        cell.std_sigma = std_sum / cell.reps_with_solutions;
    }
    return cell;
}

StudyTable run_study(const StudyConfig& config)
{
    config.validate();

    std::vector<PowerOptionSpec> specs;
    for (PowerKind kind : config.kinds)
        for (double strike : config.strikes)
            for (double alpha : config.alphas)
                specs.push_back(PowerOptionSpec{alpha, strike, kind});

    StudyTable table;
    table.cells.resize(specs.size());

    unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(specs.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < specs.size(); i = next++)
                table.cells[i] = run_cell(config, specs[i]);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = specs.size();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

} // namespace powiv
