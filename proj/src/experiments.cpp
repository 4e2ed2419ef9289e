#include "homoforge/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace homoforge {

namespace {

// Fixed-format reals so that reports are byte-stable.
std::string real(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string optional_step(const std::optional<Rank>& s)
{
    return s ? std::to_string(*s) : std::string();
}

nlohmann::json optional_json(const std::optional<Rank>& s)
{
    return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
}

double rounded(double x)
{
    // summaries carry six decimals, matching the CSV
    return std::round(x * 1e6) / 1e6;
}

double mean(const std::vector<double>& xs)
{
    double total = 0.0;
    for (double x : xs)
        total += x;
    return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

} // namespace

ProcessTrace hitting_time_trial(Vertex n, std::uint64_t seed)
{
    if (n < 4)
        throw std::invalid_argument("hitting-time trials need n >= 4");
    ProcessTrace trace;
    trace.n = n;
    trace.seed = seed;

    ProcessStream stream(n, seed);
    Complex y(n);
    EchelonBasis f2(binomial(n, 2), 2);
    const std::uint64_t cycles = cycle_space_dim(n, 2);

    Rank step = 0;
    std::optional<HomologySummary> at_h_delta;
    while (auto face = stream.next())
    {
        const std::uint64_t betti_before = cycles - f2.rank();
        ++step;
        y.add_rank(*face);
        f2.insert(simplex_boundary_mod_p(unrank_subset(*face, 3), 2));
        const std::uint64_t betti_f2 = cycles - f2.rank();

        if (trace.h_delta == 0 && y.uncovered_count() == 0)
        {
            trace.h_delta = step;
            trace.betti_f2_before = betti_before;
            Complex before(n);
            for (std::size_t i = 0; i + 1 < y.face_ranks().size(); ++i)
                before.add_rank(y.face_ranks()[i]);
            trace.trivial_before = is_H1_trivial_Z(before);
            trace.betti_f2_at_h_delta = betti_f2;
            at_h_delta = homology_Z(y);
            trace.betti_z_at_h_delta = at_h_delta->betti;
            trace.torsion_at_h_delta = at_h_delta->torsion;
        }
        if (trace.h_f2 == 0 && betti_f2 == 0)
        {
            if (trace.h_delta == 0)
                throw std::logic_error("F_2 homology vanished with an uncovered edge");
            trace.h_f2 = step;
        }
        if (trace.h_f2 != 0)
        {
            const bool trivial = step == trace.h_delta ? at_h_delta->trivial() : homology_Z(y).trivial();
            if (trivial)
            {
                trace.h_z = step;
                break;
            }
        }
    }
    return trace;
}

Rank shadow_growth_steps(Vertex n)
{
    const double m = std::log(static_cast<double>(n)) / n * static_cast<double>(binomial(n, 3));
    return std::min<Rank>(binomial(n, 3), static_cast<Rank>(std::ceil(m)));
}

double shadow_deficit_bound(Vertex n)
{
    const double x = static_cast<double>(n);
    return x * x * x / std::log(std::log(x));
}

ShadowGrowthRow shadow_growth_trial(Vertex n, std::uint64_t prime, std::uint64_t seed, const Thresholds& t,
                                    bool full_complex)
{
    if (n < 6)
        throw std::invalid_argument("shadow growth runs need n >= 6");
    ShadowGrowthRow row;
    row.seed = seed;
    row.prime = prime;
    row.steps = full_complex ? binomial(n, 3) : shadow_growth_steps(n);
    const Complex y = full_complex ? Complex::full(n) : sample_process_prefix(n, row.steps, seed);
    row.faces = y.size();

    const ShadowSet s = shadow(y, prime);
    row.deficit = s.deficit();
    row.exceeds_bound = static_cast<double>(row.deficit) > shadow_deficit_bound(n);

    const PartitionLabels labels = PartitionLabels::from_shadow(s);
    const CascadeResult c = cascade(labels, t);
    row.bad_edges = c.bad_edges.size();
    row.bad_vertices = c.bad_vertices.size();
    row.elementary = is_elementary(c);
    row.claim_violations = claim_three_good_edges(labels, c).size();
    const ShadyReport report = verify_shady(y, labels, t);
    row.cond_ii = report.cond_ii;
    row.cond_iii = report.cond_iii;
    row.cond_i_cone = report.cond_i_cone;
    return row;
}

std::vector<ShadowGrowthRow> shadow_growth_run(Vertex n, std::uint64_t prime, const std::vector<std::uint64_t>& seeds,
                                               const Thresholds& t, bool full_complex)
{
    std::vector<ShadowGrowthRow> rows;
    for (auto seed : seeds)
        rows.push_back(shadow_growth_trial(n, prime, seed, t, full_complex));
    return rows;
}

UncoveredRankRow uncovered_rank_trial(Vertex n, double p_scale, std::uint64_t seed, bool full_complex)
{
    if (n < 3)
        throw std::invalid_argument("uncovered-rank trials need n >= 3");
    UncoveredRankRow row;
    row.seed = seed;
    row.p = std::min(1.0, p_scale * std::log(static_cast<double>(n)) / n);
    const Complex y = full_complex ? Complex::full(n) : sample_binomial(n, row.p, seed);
    row.faces = y.size();
    row.uncovered = y.uncovered_count();
    const HomologySummary h = homology_Z(y);
    row.betti = h.betti;
    row.torsion = h.torsion;
    return row;
}

std::vector<UncoveredRankRow> uncovered_rank_check(Vertex n, double p_scale, const std::vector<std::uint64_t>& seeds,
                                                   bool full_complex)
{
    std::vector<UncoveredRankRow> rows;
    for (auto seed : seeds)
        rows.push_back(uncovered_rank_trial(n, p_scale, seed, full_complex));
    return rows;
}

double TorsionTrace::max_log_torsion() const
{
    double best = 0.0;
    for (const auto& s : samples)
        best = std::max(best, s.log_torsion);
    return best;
}

std::optional<Rank> TorsionTrace::argmax_step() const
{
    const double best = max_log_torsion();
    if (best <= 0.0)
        return std::nullopt;
    for (const auto& s : samples)
        if (s.log_torsion == best)
            return s.step;
    return std::nullopt;
}

std::optional<Rank> TorsionTrace::torsion_first_step() const
{
    for (const auto& s : samples)
        if (!s.torsion.empty())
            return s.step;
    return std::nullopt;
}

std::optional<Rank> TorsionTrace::torsion_last_step() const
{
    for (auto it = samples.rbegin(); it != samples.rend(); ++it)
        if (!it->torsion.empty())
            return it->step;
    return std::nullopt;
}

std::optional<Rank> TorsionTrace::torsion_vanish_step() const
{
    for (std::size_t i = samples.size(); i-- > 0;)
        if (!samples[i].torsion.empty())
            return i + 1 < samples.size() ? std::optional<Rank>(samples[i + 1].step) : std::nullopt;
    return std::nullopt;
}

TorsionTrace torsion_scan(Vertex n, unsigned d, Rank stride, std::uint64_t seed)
{
    if (d < 2)
        throw std::invalid_argument("torsion scans need d >= 2");
    if (stride == 0)
        throw std::invalid_argument("stride must be positive");
    if (n <= d + 1)
        throw std::invalid_argument("torsion scans need n > d + 1");
    const std::uint64_t rows = binomial(n, d);
    const std::uint64_t faces = binomial(n, d + 1);
    // one elimination per sample, each roughly rows x faces
    const double cost = static_cast<double>(faces / stride + 2) * static_cast<double>(rows) * static_cast<double>(faces);
    if (rows > 2000 || cost > 2e9)
        throw std::invalid_argument("torsion scan too large: C(n,d) = " + std::to_string(rows) + ", C(n,d+1) = " +
                                    std::to_string(faces) + ", " + std::to_string(faces / stride + 2) +
                                    " samples; reduce n or raise --stride (guideline n <= 31 for d = 2, stride 5)");

    TorsionTrace trace;
    trace.n = n;
    trace.d = d;
    trace.seed = seed;
    trace.stride = stride;

    ProcessStream stream(n, seed, d);
    Complex y(n, d);
    auto sample = [&] {
        const HomologySummary h = homology_Z(y);
        trace.samples.push_back({static_cast<Rank>(y.size()), h.betti, h.log_torsion_order(), h.torsion});
    };
    sample();
    while (auto face = stream.next())
    {
        y.add_rank(*face);
        if (y.size() % stride == 0 || stream.done())
            sample();
    }
    return trace;
}

double Proportion::ci_low() const
{
    if (trials == 0)
        return 0.0;
    const double z = 1.959963984540054, nn = static_cast<double>(trials), ph = fraction();
    const double centre = ph + z * z / (2 * nn);
    const double spread = z * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn));
    return std::max(0.0, (centre - spread) / (1 + z * z / nn));
}

double Proportion::ci_high() const
{
    if (trials == 0)
        return 1.0;
    const double z = 1.959963984540054, nn = static_cast<double>(trials), ph = fraction();
    const double centre = ph + z * z / (2 * nn);
    const double spread = z * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn));
    return std::min(1.0, (centre + spread) / (1 + z * z / nn));
}

nlohmann::json to_json(const Proportion& p)
{
    return {{"successes", p.successes},
            {"trials", p.trials},
            {"fraction", rounded(p.fraction())},
            {"ci95_low", rounded(p.ci_low())},
            {"ci95_high", rounded(p.ci_high())}};
}

const char* campaign_name(CampaignKind kind)
{
    switch (kind)
    {
    case CampaignKind::HittingTime: return "hitting-time";
    case CampaignKind::ShadowGrowth: return "shadow-growth";
    case CampaignKind::UncoveredRank: return "uncovered-rank";
    case CampaignKind::TorsionScan: return "torsion-scan";
    }
    return "unknown";
}

void CampaignConfig::validate() const
{
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (n > kMaxVertices)
        throw std::invalid_argument("n too large");
    for (auto p : primes)
        if (p > UINT32_MAX || !is_prime(p))
            throw std::invalid_argument("not a word-size prime: " + std::to_string(p));
    if (primes.empty())
        throw std::invalid_argument("at least one prime is required");
    if (thresholds)
        thresholds->validate();
    switch (kind)
    {
    case CampaignKind::HittingTime:
        if (n < 4)
            throw std::invalid_argument("hitting-time needs n >= 4");
        break;
    case CampaignKind::ShadowGrowth:
        if (n < 6)
            throw std::invalid_argument("shadow-growth needs n >= 6");
        break;
    case CampaignKind::UncoveredRank:
        if (n < 3)
            throw std::invalid_argument("uncovered-rank needs n >= 3");
        if (!(p_scale >= 0.0) || !std::isfinite(p_scale))
            throw std::invalid_argument("p-scale must be a nonnegative number");
        break;
    case CampaignKind::TorsionScan:
        if (d < 2 || n <= d + 1)
            throw std::invalid_argument("torsion-scan needs d >= 2 and n > d + 1");
        if (stride == 0)
            throw std::invalid_argument("stride must be positive");
        break;
    }
}

namespace {

void run_hitting(const CampaignConfig& cfg, CampaignReport& report)
{
    report.hitting = parallel_map<ProcessTrace>(cfg.trials, cfg.jobs,
                                                [&](std::size_t i) { return hitting_time_trial(cfg.n, cfg.seed_base + i); });
    std::ostringstream csv;
    csv << "n,seed,h_delta,h_f2,h_z,equal,betti_f2_before,trivial_before,betti_f2_at_h_delta,betti_z_at_h_delta,"
           "torsion_at_h_delta\n";
    Proportion equal{0, cfg.trials};
    std::size_t chain_violations = 0, trivial_before = 0, torsion_at_delta = 0;
    std::vector<double> h_delta, h_z;
    for (const auto& t : report.hitting)
    {
        csv << t.n << ',' << t.seed << ',' << t.h_delta << ',' << t.h_f2 << ',' << t.h_z << ',' << t.equal_flag()
            << ',' << t.betti_f2_before << ',' << t.trivial_before << ',' << t.betti_f2_at_h_delta << ','
            << t.betti_z_at_h_delta << ',' << join_integers(t.torsion_at_h_delta, ";") << '\n';
        equal.successes += t.equal_flag();
        chain_violations += !t.chain_holds();
        trivial_before += t.trivial_before;
        torsion_at_delta += !t.torsion_at_h_delta.empty();
        h_delta.push_back(static_cast<double>(t.h_delta));
        h_z.push_back(static_cast<double>(t.h_z));
    }
    report.csv = csv.str();
    report.summary["equal"] = to_json(equal);
    report.summary["chain_violations"] = chain_violations;
    report.summary["trivial_before_h_delta"] = trivial_before;
    report.summary["trials_with_torsion_at_h_delta"] = torsion_at_delta;
    report.summary["mean_h_delta"] = rounded(mean(h_delta));
    report.summary["mean_h_z"] = rounded(mean(h_z));
}

void run_shadow_growth(const CampaignConfig& cfg, CampaignReport& report)
{
    const Thresholds t = cfg.thresholds.value_or(Thresholds::defaults(cfg.n));
    const std::size_t per_prime = cfg.trials;
    report.shadow_rows = parallel_map<ShadowGrowthRow>(per_prime * cfg.primes.size(), cfg.jobs, [&](std::size_t i) {
        return shadow_growth_trial(cfg.n, cfg.primes[i / per_prime], cfg.seed_base + i % per_prime, t,
                                   cfg.full_complex);
    });
    std::ostringstream csv;
    csv << "n,seed,prime,steps,faces,deficit,deficit_bound,exceeds_bound,bad_edges,bad_vertices,elementary,"
           "claim_violations,condII,condIII,condI_cone\n";
    const double bound = shadow_deficit_bound(cfg.n);
    auto per_prime_summary = nlohmann::json::array();
    for (std::size_t k = 0; k < cfg.primes.size(); ++k)
    {
        Proportion exceeds{0, per_prime};
        std::vector<double> deficits;
        std::uint64_t max_deficit = 0;
        std::size_t shady_failures = 0, non_elementary = 0, claim_total = 0;
        for (std::size_t i = 0; i < per_prime; ++i)
        {
            const auto& r = report.shadow_rows[k * per_prime + i];
            csv << cfg.n << ',' << r.seed << ',' << r.prime << ',' << r.steps << ',' << r.faces << ',' << r.deficit
                << ',' << real(bound) << ',' << r.exceeds_bound << ',' << r.bad_edges << ',' << r.bad_vertices << ','
                << r.elementary << ',' << r.claim_violations << ',' << r.cond_ii << ',' << r.cond_iii << ','
                << r.cond_i_cone << '\n';
            exceeds.successes += r.exceeds_bound;
            deficits.push_back(static_cast<double>(r.deficit));
            max_deficit = std::max(max_deficit, r.deficit);
            shady_failures += !(r.cond_ii && r.cond_i_cone);
            non_elementary += !r.elementary;
            claim_total += r.claim_violations;
        }
        per_prime_summary.push_back({{"prime", cfg.primes[k]},
                                     {"mean_deficit", rounded(mean(deficits))},
                                     {"max_deficit", max_deficit},
                                     {"exceeds_bound", to_json(exceeds)},
                                     {"shady_condition_failures", shady_failures},
                                     {"non_elementary", non_elementary},
                                     {"claim_violations", claim_total}});
    }
    report.csv = csv.str();
    report.summary["steps"] = cfg.full_complex ? binomial(cfg.n, 3) : shadow_growth_steps(cfg.n);
    report.summary["triples"] = binomial(cfg.n, 3);
    report.summary["deficit_bound"] = rounded(bound);
    report.summary["thresholds"] = {
        {"theta_edge", t.theta_edge}, {"theta_vertex", t.theta_vertex}, {"max_bad_triples", t.max_bad_triples}};
    report.summary["per_prime"] = per_prime_summary;
}

void run_uncovered(const CampaignConfig& cfg, CampaignReport& report)
{
    report.uncovered_rows = parallel_map<UncoveredRankRow>(cfg.trials, cfg.jobs, [&](std::size_t i) {
        return uncovered_rank_trial(cfg.n, cfg.p_scale, cfg.seed_base + i, cfg.full_complex);
    });
    std::ostringstream csv;
    csv << "n,seed,p,faces,betti,uncovered,torsion,torsion_free,rank_equals_uncovered,betti_ge_uncovered\n";
    Proportion both{0, cfg.trials}, free{0, cfg.trials};
    std::size_t lower_bound_failures = 0;
    for (const auto& r : report.uncovered_rows)
    {
        csv << cfg.n << ',' << r.seed << ',' << real(r.p) << ',' << r.faces << ',' << r.betti << ',' << r.uncovered
            << ',' << join_integers(r.torsion, ";") << ',' << r.torsion_free() << ',' << r.rank_equals_uncovered()
            << ',' << r.betti_at_least_uncovered() << '\n';
        both.successes += r.torsion_free() && r.rank_equals_uncovered();
        free.successes += r.torsion_free();
        lower_bound_failures += !r.betti_at_least_uncovered();
    }
    report.csv = csv.str();
    report.summary["p"] = rounded(report.uncovered_rows.front().p);
    report.summary["p_scale"] = rounded(cfg.p_scale);
    report.summary["torsion_free_and_rank_equal"] = to_json(both);
    report.summary["torsion_free"] = to_json(free);
    report.summary["betti_below_uncovered"] = lower_bound_failures;
}

void run_torsion(const CampaignConfig& cfg, CampaignReport& report)
{
    report.torsion_traces = parallel_map<TorsionTrace>(
        cfg.trials, cfg.jobs, [&](std::size_t i) { return torsion_scan(cfg.n, cfg.d, cfg.stride, cfg.seed_base + i); });
    std::ostringstream csv, long_csv;
    csv << "n,d,seed,stride,samples,initial_betti,final_trivial,torsion_present,max_log_torsion,argmax_step,"
           "torsion_first_step,torsion_last_step,torsion_vanish_step\n";
    long_csv << "seed,step,metric,value\n";
    Proportion present{0, cfg.trials};
    std::size_t endpoint_failures = 0;
    auto per_seed = nlohmann::json::array();
    for (const auto& t : report.torsion_traces)
    {
        const auto& first = t.samples.front();
        const auto& last = t.samples.back();
        const bool final_trivial = last.betti == 0 && last.torsion.empty();
        const bool has_torsion = t.torsion_first_step().has_value();
        csv << t.n << ',' << t.d << ',' << t.seed << ',' << t.stride << ',' << t.samples.size() << ',' << first.betti
            << ',' << final_trivial << ',' << has_torsion << ',' << real(t.max_log_torsion()) << ','
            << optional_step(t.argmax_step()) << ',' << optional_step(t.torsion_first_step()) << ','
            << optional_step(t.torsion_last_step()) << ',' << optional_step(t.torsion_vanish_step()) << '\n';
        for (const auto& s : t.samples)
        {
            long_csv << t.seed << ',' << s.step << ",betti," << s.betti << '\n';
            long_csv << t.seed << ',' << s.step << ",log_torsion," << real(s.log_torsion) << '\n';
            if (cfg.verbose && !s.torsion.empty())
                long_csv << t.seed << ',' << s.step << ",torsion," << join_integers(s.torsion, ";") << '\n';
        }
        present.successes += has_torsion;
        endpoint_failures += !(first.torsion.empty() && final_trivial);
        per_seed.push_back({{"seed", t.seed},
                            {"max_log_torsion", rounded(t.max_log_torsion())},
                            {"argmax_step", optional_json(t.argmax_step())},
                            {"torsion_first_step", optional_json(t.torsion_first_step())},
                            {"torsion_last_step", optional_json(t.torsion_last_step())},
                            {"torsion_vanish_step", optional_json(t.torsion_vanish_step())}});
    }
    report.csv = csv.str();
    report.long_csv = long_csv.str();
    report.summary["d"] = cfg.d;
    report.summary["stride"] = cfg.stride;
    report.summary["faces"] = binomial(cfg.n, cfg.d + 1);
    report.summary["torsion_present"] = to_json(present);
    report.summary["endpoint_failures"] = endpoint_failures;
    report.summary["per_seed"] = per_seed;
}

} // namespace

CampaignReport run_campaign(const CampaignConfig& cfg)
{
    cfg.validate();
    CampaignReport report;
    report.summary = {{"campaign", campaign_name(cfg.kind)},
                      {"n", cfg.n},
                      {"trials", cfg.trials},
                      {"seed_base", cfg.seed_base}};
    switch (cfg.kind)
    {
    case CampaignKind::HittingTime: run_hitting(cfg, report); break;
    case CampaignKind::ShadowGrowth: run_shadow_growth(cfg, report); break;
    case CampaignKind::UncoveredRank: run_uncovered(cfg, report); break;
    case CampaignKind::TorsionScan: run_torsion(cfg, report); break;
    }
    if (cfg.full_complex)
        report.summary["full_complex"] = true;
    return report;
}

void write_campaign_outputs(const CampaignReport& report, const std::string& prefix)
{
    auto write = [](const std::string& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!(out << text) || !out.flush())
            throw std::runtime_error("cannot write " + path);
    };
    write(prefix + ".csv", report.csv);
    write(prefix + ".json", report.summary.dump(2) + "\n");
    if (!report.long_csv.empty())
        write(prefix + "_trace.csv", report.long_csv);
}

unsigned default_jobs()
{
    if (const char* env = std::getenv("HOMOFORGE_JOBS"))
    {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace homoforge
