/**
 * Monte Carlo trials over the random complex process and the campaigns
 * that aggregate them.
 *
 * Every trial is a pure function of its parameters and seed. Campaigns run
 * trial i with seed seed_base + i on a worker pool and aggregate in trial
 * order, so output never depends on the number of workers.
 */
#ifndef HOMOFORGE_EXPERIMENTS_HPP
#define HOMOFORGE_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "homoforge/complex.hpp"
#include "homoforge/homology.hpp"
#include "homoforge/shady.hpp"

namespace homoforge {

/// Hitting times along one run of the 2-complex process. Steps are 1-based
/// counts of added faces.
struct ProcessTrace
{
    Vertex n = 0;
    std::uint64_t seed = 0;
    Rank h_delta = 0;   ///< first step with every edge covered
    Rank h_f2 = 0;      ///< first step with H_1(Y; F_2) = 0
    Rank h_z = 0;       ///< first step with H_1(Y; Z) = 0
    std::uint64_t betti_f2_before = 0;      ///< F_2 Betti at step h_delta - 1
    bool trivial_before = false;            ///< H_1(Y; Z) = 0 at step h_delta - 1 (never expected)
    std::uint64_t betti_f2_at_h_delta = 0;
    std::uint64_t betti_z_at_h_delta = 0;
    std::vector<Integer> torsion_at_h_delta;

    bool equal_flag() const { return h_z == h_delta; }
    bool chain_holds() const { return h_delta <= h_f2 && h_f2 <= h_z; }
};

ProcessTrace hitting_time_trial(Vertex n, std::uint64_t seed);

/// M = ceil((ln n / n) C(n,3)), the process length at which shadow growth is measured.
Rank shadow_growth_steps(Vertex n);
/// n^3 / ln ln n.
double shadow_deficit_bound(Vertex n);

struct ShadowGrowthRow
{
    std::uint64_t seed = 0;
    std::uint64_t prime = 2;
    Rank steps = 0;
    std::size_t faces = 0;
    std::uint64_t deficit = 0;
    bool exceeds_bound = false;
    // shadow-derived partition diagnostics
    std::size_t bad_edges = 0;
    std::size_t bad_vertices = 0;
    bool elementary = true;
    std::size_t claim_violations = 0;
    bool cond_ii = true;
    bool cond_iii = true;
    bool cond_i_cone = true;
};

/// `full_complex` replaces the sampled complex by the complete one.
ShadowGrowthRow shadow_growth_trial(Vertex n, std::uint64_t prime, std::uint64_t seed, const Thresholds& t,
                                    bool full_complex = false);
std::vector<ShadowGrowthRow> shadow_growth_run(Vertex n, std::uint64_t prime, const std::vector<std::uint64_t>& seeds,
                                               const Thresholds& t, bool full_complex = false);

struct UncoveredRankRow
{
    std::uint64_t seed = 0;
    double p = 0.0;
    std::size_t faces = 0;
    std::uint64_t betti = 0;
    std::size_t uncovered = 0;
    std::vector<Integer> torsion;

    bool torsion_free() const { return torsion.empty(); }
    bool rank_equals_uncovered() const { return betti == uncovered; }
    bool betti_at_least_uncovered() const { return betti >= uncovered; }
};

/// Y_2(n, p) with p = p_scale ln n / n (clamped to 1).
UncoveredRankRow uncovered_rank_trial(Vertex n, double p_scale, std::uint64_t seed, bool full_complex = false);
std::vector<UncoveredRankRow> uncovered_rank_check(Vertex n, double p_scale, const std::vector<std::uint64_t>& seeds,
                                                   bool full_complex = false);

struct TorsionSample
{
    Rank step = 0;
    std::uint64_t betti = 0;
    double log_torsion = 0.0;
    std::vector<Integer> torsion;
};

struct TorsionTrace
{
    Vertex n = 0;
    unsigned d = 2;
    std::uint64_t seed = 0;
    Rank stride = 1;
    std::vector<TorsionSample> samples;   ///< steps 0, stride, 2 stride, ..., and the final step

    double max_log_torsion() const;
    std::optional<Rank> argmax_step() const;          ///< first step attaining the maximum, if positive
    std::optional<Rank> torsion_first_step() const;
    std::optional<Rank> torsion_last_step() const;
    std::optional<Rank> torsion_vanish_step() const;  ///< first sample after the last torsion sample
};

/// Throws std::invalid_argument when the scan would be too large to run.
TorsionTrace torsion_scan(Vertex n, unsigned d, Rank stride, std::uint64_t seed);

/// Wilson score interval at 95%.
struct Proportion
{
    std::size_t successes = 0;
    std::size_t trials = 0;
    double fraction() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
    double ci_low() const;
    double ci_high() const;
};
nlohmann::json to_json(const Proportion& p);

enum class CampaignKind
{
    HittingTime,
    ShadowGrowth,
    UncoveredRank,
    TorsionScan,
};

const char* campaign_name(CampaignKind kind);

struct CampaignConfig
{
    CampaignKind kind = CampaignKind::HittingTime;
    Vertex n = 10;
    std::size_t trials = 1;
    std::uint64_t seed_base = 0;
    std::vector<std::uint64_t> primes{2};
    std::optional<Thresholds> thresholds;   ///< defaults(n) when unset
    unsigned d = 2;
    Rank stride = 5;
    double p_scale = 2.0;
    bool full_complex = false;   ///< debug: replace sampled complexes by the complete one
    bool verbose = false;        ///< exact torsion factors in torsion traces
    unsigned jobs = 1;

    /// Throws std::invalid_argument on any invalid parameter.
    void validate() const;
};

struct CampaignReport
{
    nlohmann::json summary;
    std::string csv;        ///< one row per trial
    std::string long_csv;   ///< torsion scans only: seed,step,metric,value
    std::vector<ProcessTrace> hitting;
    std::vector<ShadowGrowthRow> shadow_rows;
    std::vector<UncoveredRankRow> uncovered_rows;
    std::vector<TorsionTrace> torsion_traces;
};

CampaignReport run_campaign(const CampaignConfig& cfg);

/**
 * Writes <prefix>.csv, <prefix>.json and, for torsion scans,
 * <prefix>_trace.csv. Files are written in that order; a failure throws
 * std::runtime_error naming the file, leaving earlier files in place.
 */
void write_campaign_outputs(const CampaignReport& report, const std::string& prefix);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; results in index
/// order. The first exception thrown by any call is rethrown after all
/// workers finish.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, unsigned jobs, Fn&& fn)
{
    std::vector<std::optional<Result>> slots(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;)
        {
            try
            {
                slots[i].emplace(fn(i));
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(jobs, 1u), count));
    if (workers <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

/// Worker count from HOMOFORGE_JOBS, else the hardware concurrency.
unsigned default_jobs();

} // namespace homoforge

#endif
