#include "homoforge/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "homoforge/errors.hpp"
#include "homoforge/experiments.hpp"
#include "homoforge/homology.hpp"
#include "homoforge/shady.hpp"
#include "homoforge/snf.hpp"

namespace homoforge {

namespace {

// Errors detected while validating arguments, before any work starts.
struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

std::string fixed(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

void require_prime(std::uint64_t p)
{
    if (p > UINT32_MAX || !is_prime(p))
        throw UsageError("not a word-size prime: " + std::to_string(p));
}

std::ifstream open_input(const std::string& path, std::ios::openmode mode = std::ios::in)
{
    std::ifstream in(path, mode);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return in;
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!(out << data) || !out.flush())
        throw std::runtime_error("cannot write " + path);
}

Complex load_complex(const std::string& path)
{
    auto in = open_input(path);
    return read_complex(in);
}

struct Options
{
    // shared
    std::uint32_t n = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    unsigned jobs = 0;
    std::string out_path;
    std::string format;
    std::string in_path;
    std::vector<std::uint64_t> primes;
    // sampling
    double p = -1.0;
    std::uint64_t m = 0;
    unsigned d = 2;
    // campaigns
    std::uint64_t stride = 5;
    double p_scale = 2.0;
    bool full = false;
    bool verbose = false;
    // partitions
    std::uint64_t theta_edge = 0;
    std::uint64_t theta_vertex = 0;
    std::uint64_t max_bad = 0;
    std::string labels_path;
    std::string json_path;
    std::string labels_out;
};

Thresholds thresholds_from(const Options& o, Vertex n)
{
    Thresholds t = Thresholds::defaults(n);
    if (o.theta_edge)
        t.theta_edge = o.theta_edge;
    if (o.theta_vertex)
        t.theta_vertex = o.theta_vertex;
    if (o.max_bad)
        t.max_bad_triples = o.max_bad;
    return t;
}

int cmd_sample(const Options& o, CLI::App& sub, std::ostream& out)
{
    const bool has_p = sub.count("--p") > 0, has_m = sub.count("--m") > 0;
    if (has_p == has_m)
        throw UsageError("sample needs exactly one of --p or --m");
    if (o.n <= o.d)
        throw UsageError("--n must exceed --d");
    if (has_p && !(o.p >= 0.0 && o.p <= 1.0))
        throw UsageError("--p must lie in [0, 1]");
    if (has_m && o.m > binomial(o.n, o.d + 1))
        throw UsageError("--m exceeds the number of faces");
    const Complex y = has_p ? sample_binomial(o.n, o.p, o.seed, o.d) : sample_process_prefix(o.n, o.m, o.seed, o.d);
    std::ostringstream text;
    if (o.format == "text")
        write_complex_text(text, y);
    else
        write_complex_json(text, y);
    if (o.out_path.empty())
        out << text.str();
    else
        write_file(o.out_path, text.str());
    return kExitOk;
}

int cmd_homology(const Options& o, std::ostream& out)
{
    for (auto p : o.primes)
        require_prime(p);
    const Complex y = load_complex(o.in_path);
    const HomologySummary h = homology_Z(y);
    nlohmann::json j = {{"n", y.n()},
                        {"dim", y.dim()},
                        {"faces", y.size()},
                        {"betti", h.betti},
                        {"torsion", nlohmann::json::array()},
                        {"log_torsion_order", std::round(h.log_torsion_order() * 1e6) / 1e6},
                        {"trivial", h.trivial()}};
    for (const auto& t : h.torsion)
        j["torsion"].push_back(t.get_str());
    for (auto p : o.primes)
        j["betti_mod_p"][std::to_string(p)] = betti_mod_p(y, p);
    if (y.dim() == 2)
        j["uncovered_edges"] = y.uncovered_count();

    if (o.format == "json")
        out << j.dump() << '\n';
    else
    {
        out << "betti=" << h.betti << " torsion=" << (h.torsion.empty() ? "none" : join_integers(h.torsion, ";"))
            << " trivial=" << h.trivial() << '\n';
        for (auto p : o.primes)
            out << "betti_mod_" << p << '=' << betti_mod_p(y, p) << '\n';
    }
    return kExitOk;
}

int cmd_snf(const Options& o, std::ostream& out)
{
    auto in = open_input(o.in_path);
    const SnfResult r = smith_normal_form(read_matrix(in));
    for (const auto& d : r.invariant_factors)
        out << d << '\n';
    return kExitOk;
}

int cmd_shadow(const Options& o, std::ostream& out)
{
    if (o.primes.size() != 1)
        throw UsageError("shadow takes exactly one --prime");
    require_prime(o.primes.front());
    const Complex y = load_complex(o.in_path);
    if (y.dim() != 2)
        throw UsageError("shadow needs a 2-dimensional complex");
    const ShadowSet s = shadow(y, o.primes.front());
    if (!o.out_path.empty())
    {
        std::ostringstream bits;
        write_bitset(bits, s.bits());
        write_file(o.out_path, bits.str());
    }
    if (!o.json_path.empty())
        write_file(o.json_path, shadow_summary(s).dump() + "\n");
    if (!o.labels_out.empty())
    {
        std::ostringstream labels;
        write_labels(labels, PartitionLabels::from_shadow(s));
        write_file(o.labels_out, labels.str());
    }
    out << "size=" << s.size() << " deficit=" << s.deficit() << '\n';
    return kExitOk;
}

int cmd_verify_partition(const Options& o, std::ostream& out)
{
    const Complex y = load_complex(o.in_path);
    auto in = open_input(o.labels_path);
    const PartitionLabels labels = read_labels(in);
    if (labels.n != y.n())
        throw UsageError("labels are for n = " + std::to_string(labels.n) + " but the complex has n = " +
                         std::to_string(y.n()));
    if (y.dim() != 2)
        throw UsageError("verify-partition needs a 2-dimensional complex");
    const Thresholds t = thresholds_from(o, y.n());
    const ShadyReport report = verify_shady(y, labels, t);
    const std::string text = to_json(report).dump() + "\n";
    if (o.out_path.empty())
        out << text;
    else
        write_file(o.out_path, text);
    return report.pass() ? kExitOk : kExitFailure;
}

int cmd_campaign(CampaignKind kind, const Options& o, CLI::App& sub, std::ostream& out, std::ostream& err)
{
    CampaignConfig cfg;
    cfg.kind = kind;
    cfg.n = o.n;
    cfg.trials = o.trials;
    cfg.seed_base = o.seed;
    if (!o.primes.empty())
        cfg.primes = o.primes;
    cfg.d = o.d;
    cfg.stride = o.stride;
    cfg.p_scale = o.p_scale;
    cfg.full_complex = o.full;
    cfg.verbose = o.verbose;
    cfg.jobs = o.jobs ? o.jobs : default_jobs();
    auto given = [&](const char* name) {
        const CLI::Option* opt = sub.get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--theta-edge") || given("--theta-vertex") || given("--max-bad"))
        cfg.thresholds = thresholds_from(o, o.n);
    try
    {
        cfg.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }

    const CampaignReport report = run_campaign(cfg);
    int status = kExitOk;
    if (!o.out_path.empty())
    {
        try
        {
            write_campaign_outputs(report, o.out_path);
        }
        catch (const std::runtime_error& e)
        {
            err << "error: " << e.what() << '\n';
            status = kExitFailure;
        }
    }

    const auto& s = report.summary;
    if (o.format == "json")
        out << s.dump(2) << '\n';
    else if (o.format == "csv")
        out << report.csv;
    else
        switch (kind)
        {
        case CampaignKind::HittingTime:
            out << "equal_fraction=" << fixed(s["equal"]["fraction"].get<double>()) << " trials=" << o.trials
                << " n=" << o.n << '\n';
            break;
        case CampaignKind::ShadowGrowth:
            for (const auto& row : s["per_prime"])
                out << "prime=" << row["prime"] << " mean_deficit=" << fixed(row["mean_deficit"].get<double>())
                    << " max_deficit=" << row["max_deficit"]
                    << " exceeds_fraction=" << fixed(row["exceeds_bound"]["fraction"].get<double>())
                    << " trials=" << o.trials << " n=" << o.n << '\n';
            break;
        case CampaignKind::UncoveredRank:
            out << "torsion_free_rank_fraction="
                << fixed(s["torsion_free_and_rank_equal"]["fraction"].get<double>())
                << " betti_below_uncovered=" << s["betti_below_uncovered"] << " trials=" << o.trials
                << " n=" << o.n << '\n';
            break;
        case CampaignKind::TorsionScan:
        {
            double best = 0.0;
            for (const auto& row : s["per_seed"])
                best = std::max(best, row["max_log_torsion"].get<double>());
            out << "torsion_present_fraction=" << fixed(s["torsion_present"]["fraction"].get<double>())
                << " max_log_torsion=" << fixed(best) << " trials=" << o.trials << " n=" << o.n << " d=" << o.d
                << '\n';
            break;
        }
        }

    // hard invariants of each campaign
    bool shady_failures = false;
    if (kind == CampaignKind::ShadowGrowth)
        for (const auto& row : s["per_prime"])
            shady_failures = shady_failures || row["shady_condition_failures"] != 0;
    const bool violated = shady_failures ||
                          (kind == CampaignKind::HittingTime &&
                           (s["chain_violations"] != 0 || s["trivial_before_h_delta"] != 0)) ||
                          (kind == CampaignKind::UncoveredRank && s["betti_below_uncovered"] != 0) ||
                          (kind == CampaignKind::TorsionScan && s["endpoint_failures"] != 0);
    if (violated)
    {
        err << "error: a hard invariant failed; see the summary\n";
        status = kExitFailure;
    }
    return status;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Random 2-complex process: homology over Z and F_p, shadows, shady partitions, campaigns",
                 "homoforge"};
    app.require_subcommand(1);
    Options o;

    auto add_n = [&](CLI::App* sub, bool required = true) {
        auto* opt = sub->add_option("-n,--n", o.n, "Number of vertices");
        if (required)
            opt->required();
    };
    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "RNG seed (base seed for campaigns)")->required(); };
    auto add_in = [&](CLI::App* sub, const char* what) {
        sub->add_option("--in,input", o.in_path, what)->required();
    };
    auto add_campaign = [&](CLI::App* sub) {
        add_n(sub);
        add_seed(sub);
        sub->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
        sub->add_option("--jobs", o.jobs, "Worker threads (default: HOMOFORGE_JOBS or all cores)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", o.out_path, "Output prefix for <out>.csv and <out>.json");
        sub->add_option("--format", o.format, "Stdout format")->check(CLI::IsMember({"text", "json", "csv"}));
    };
    auto add_thresholds = [&](CLI::App* sub) {
        sub->add_option("--theta-edge", o.theta_edge, "Bad-triple count above which an edge is bad")
            ->check(CLI::PositiveNumber);
        sub->add_option("--theta-vertex", o.theta_vertex, "Bad-edge count above which a vertex is bad")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-bad", o.max_bad, "Budget of bad triangles for condition (III)")
            ->check(CLI::PositiveNumber);
    };

    auto* sample = app.add_subcommand("sample", "Sample Y(n,p) or the first M faces of the process");
    add_n(sample);
    add_seed(sample);
    sample->add_option("--p", o.p, "Face probability");
    sample->add_option("--m", o.m, "Number of process steps");
    sample->add_option("--d", o.d, "Face dimension")->check(CLI::Range(1u, 16u));
    sample->add_option("--out", o.out_path, "Output file (default stdout)");
    sample->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* homology = app.add_subcommand("homology", "H_{d-1} over Z (and F_p) of a complex file");
    add_in(homology, "Complex file (JSON or text)");
    homology->add_option("--prime,--primes", o.primes, "Primes for F_p Betti numbers");
    homology->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* snf = app.add_subcommand("snf", "Invariant factors of an integer matrix file");
    add_in(snf, "Matrix file: \"rows cols\" then \"row col value\" lines");

    auto* shadow_cmd = app.add_subcommand("shadow", "F_p-shadow of a complex");
    add_in(shadow_cmd, "Complex file");
    shadow_cmd->add_option("--prime,--primes", o.primes, "Field characteristic")->required();
    shadow_cmd->add_option("--out", o.out_path, "Bitset output file");
    shadow_cmd->add_option("--json", o.json_path, "JSON summary output file");
    shadow_cmd->add_option("--labels-out", o.labels_out, "Write the shadow as a partition labels file");

    auto* verify = app.add_subcommand("verify-partition", "Check the shady conditions for a labeling");
    add_in(verify, "Complex file");
    verify->add_option("--labels", o.labels_path, "Labels file")->required();
    verify->add_option("--out", o.out_path, "Report output file (default stdout)");
    add_thresholds(verify);

    auto* hitting = app.add_subcommand("hitting-time", "Hitting times of delta > 0, H_1(F_2) = 0 and H_1(Z) = 0");
    add_campaign(hitting);

    auto* growth = app.add_subcommand("shadow-growth", "Shadow deficit at M = (ln n / n) C(n,3)");
    add_campaign(growth);
    growth->add_option("--prime,--primes", o.primes, "Field characteristics (default 2)");
    growth->add_flag("--full", o.full, "Use the complete complex instead of a sample");
    add_thresholds(growth);

    auto* uncovered = app.add_subcommand("uncovered-rank", "Torsion-freeness and rank of H_1(Y(n, p); Z)");
    add_campaign(uncovered);
    uncovered->add_option("--p-scale", o.p_scale, "p = p_scale ln n / n (default 2)");
    uncovered->add_flag("--full", o.full, "Use the complete complex instead of a sample");

    auto* torsion = app.add_subcommand("torsion-scan", "Torsion of H_{d-1} along the d-dimensional process");
    add_campaign(torsion);
    torsion->add_option("--d", o.d, "Face dimension (>= 2)");
    torsion->add_option("--stride", o.stride, "Steps between samples")->check(CLI::PositiveNumber);
    torsion->add_flag("--verbose", o.verbose, "Include exact torsion factors in the trace CSV");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e, out, err);
        err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitUsage;
    }

    try
    {
        if (sample->parsed())
            return cmd_sample(o, *sample, out);
        if (homology->parsed())
            return cmd_homology(o, out);
        if (snf->parsed())
            return cmd_snf(o, out);
        if (shadow_cmd->parsed())
            return cmd_shadow(o, out);
        if (verify->parsed())
            return cmd_verify_partition(o, out);
        if (hitting->parsed())
            return cmd_campaign(CampaignKind::HittingTime, o, *hitting, out, err);
        if (growth->parsed())
            return cmd_campaign(CampaignKind::ShadowGrowth, o, *growth, out, err);
        if (uncovered->parsed())
            return cmd_campaign(CampaignKind::UncoveredRank, o, *uncovered, out, err);
        if (torsion->parsed())
            return cmd_campaign(CampaignKind::TorsionScan, o, *torsion, out, err);
    }
    catch (const UsageError& e)
    {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const ParseError& e)
    {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::invalid_argument& e)
    {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace homoforge
