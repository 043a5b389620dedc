// Command-line driver: free-energy sweeps, bond profiles and their empirical
// CDF, annealed and single-site free energies, the di-block joint law,
// undirected-walk experiments, and the self-test battery. Every data command
// writes a CSV (deterministic for a fixed seed, byte-identical across thread
// counts) plus a sibling .manifest.json; plots are optional SVG sidecars.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcp/charges.hpp"
#include "qcp/diblock.hpp"
#include "qcp/free_energy.hpp"
#include "qcp/io.hpp"
#include "qcp/observables.hpp"
#include "qcp/selfcheck.hpp"
#include "qcp/undirected.hpp"
#include "qcp/version.hpp"

namespace {

constexpr double log2_c = std::numbers::ln2;

// "a:b:k" -> k evenly spaced points from a to b inclusive
std::vector<double> parse_grid(const std::string& spec) {
    double a = 0.0, b = 0.0;
    int k = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> k) || c1 != ':' || c2 != ':' || !in.eof() || k < 1)
        throw CLI::ValidationError("--beta-grid", "expected a:b:k with k >= 1, got '" + spec + "'");
    std::vector<double> grid(k);
    for (int j = 0; j < k; ++j)
        grid[j] = k == 1 ? a : a + (b - a) * (static_cast<double>(j) / (k - 1));
    return grid;
}

qcp::ChargeSequence draw_charges(const std::string& dist, int n, std::uint64_t seed) {
    return dist == "binary" ? qcp::make_binary(n, seed) : qcp::make_gaussian(n, seed);
}

std::string fmt(double v) { return qcp::format_g17(v); }

struct OutputPaths {
    std::string csv;
    std::string svg;  // empty = no plot
};

void emit(const OutputPaths& paths, const qcp::CsvTable& table, const std::string& command,
          const std::vector<std::pair<std::string, std::string>>& params, std::uint64_t seed,
          const std::string& plot_title) {
    qcp::write_csv_file(paths.csv, table);
    qcp::write_manifest(paths.csv, command, params, seed);
    if (!paths.svg.empty()) qcp::write_svg(paths.svg, table, plot_title);
    std::cout << "wrote " << paths.csv << " (" << table.rows.size() << " rows)\n";
}

// ------- fe-sweep -------

int cmd_fe_sweep(const std::string& dist, int n, int samples, const std::string& grid_spec,
                 std::uint64_t seed, int threads, const OutputPaths& paths) {
    const std::vector<double> grid = parse_grid(grid_spec);
    const qcp::AnnealedDist ann =
        dist == "binary" ? qcp::AnnealedDist::binary : qcp::AnnealedDist::gaussian;
    qcp::CsvTable table;
    table.comments = {"quenched free-energy sweep (site-energy convention, per monomer)",
                      "dist=" + dist + " n=" + std::to_string(n) +
                          " samples=" + std::to_string(samples),
                      "the same " + std::to_string(samples) +
                          " charge sequences are reused at every temperature"};
    table.columns = {"beta",    "n",           "samples",        "fe_mean",
                     "fe_stderr", "lb_elementary", "lb_variational", "ub_annealed"};
    for (double beta : grid) {
        const qcp::McFeResult mc = qcp::mc_quenched_fe(
            n, beta, samples, seed,
            dist == "binary" ? qcp::ChargeDist::binary : qcp::ChargeDist::gaussian, threads);
        table.rows.push_back({beta, static_cast<double>(n), static_cast<double>(samples),
                              mc.mean, mc.std_error, std::max(-beta, -log2_c),
                              qcp::variational_lb(beta), qcp::annealed_fe(beta, ann)});
    }
    emit(paths, table, "fe-sweep',",
         {{"dist", dist},
          {"n", std::to_string(n)},
          {"samples", std::to_string(samples)},
          {"beta_grid", grid_spec},
          {"threads", std::to_string(threads)}},
         seed, "free energy vs beta");
    return 0;
}

// ------- bonds / cdf -------

int cmd_bonds(const std::string& dist, int n, double beta, std::uint64_t seed,
              const OutputPaths& paths) {
    const qcp::ChargeSequence cs = draw_charges(dist, n, seed);
    const qcp::BondProfile prof = qcp::bond_profile(cs, beta);
    qcp::CsvTable table;
    table.comments = {"per-bond stretch probabilities p_{i,n} (pair-interaction convention)",
                      "dist=" + dist + " n=" + std::to_string(n) + " beta=" + fmt(beta),
                      "uniform lower bound at this beta: " + fmt(qcp::dgh2_bound(beta))};
    table.columns = {"i", "p"};
    for (int i = 1; i < n; ++i)
        table.rows.push_back({static_cast<double>(i), prof.p[i - 1]});
    emit(paths, table, "bonds",
         {{"dist", dist}, {"n", std::to_string(n)}, {"beta", fmt(beta)}}, seed,
         "bond stretch probabilities");
    return 0;
}

int cmd_cdf(const std::string& dist, int n, double beta, int points, std::uint64_t seed,
            const OutputPaths& paths) {
    const qcp::ChargeSequence cs = draw_charges(dist, n, seed);
    const qcp::BondProfile prof = qcp::bond_profile(cs, beta);
    qcp::CsvTable table;
    table.comments = {"empirical CDF of the bond probabilities",
                      "dist=" + dist + " n=" + std::to_string(n) + " beta=" + fmt(beta)};
    table.columns = {"p", "cdf"};
    for (int j = 0; j <= points; ++j) {
        const double p = static_cast<double>(j) / points;
        table.rows.push_back({p, qcp::empirical_cdf(prof, p)});
    }
    emit(paths, table, "cdf",
         {{"dist", dist},
          {"n", std::to_string(n)},
          {"beta", fmt(beta)},
          {"points", std::to_string(points)}},
         seed, "empirical CDF of bond probabilities");
    return 0;
}

// ------- annealed / wsaw -------

int cmd_annealed(const std::string& dist, const std::string& grid_spec,
                 const OutputPaths& paths) {
    const std::vector<double> grid = parse_grid(grid_spec);
    const qcp::AnnealedDist ann =
        dist == "binary" ? qcp::AnnealedDist::binary : qcp::AnnealedDist::gaussian;
    qcp::CsvTable table;
    table.comments = {"annealed free energy (site-energy convention, per monomer)",
                      "dist=" + dist};
    table.columns = {"beta", "fe_ann"};
    for (double beta : grid) table.rows.push_back({beta, qcp::annealed_fe(beta, ann)});
    emit(paths, table, "annealed", {{"dist", dist}, {"beta_grid", grid_spec}}, 0,
         "annealed free energy");
    return 0;
}

int cmd_wsaw(const std::string& grid_spec, const OutputPaths& paths) {
    const std::vector<double> grid = parse_grid(grid_spec);
    qcp::CsvTable table;
    table.comments = {"single-site chain: site free energy, S(beta), collapse rate C(beta)",
                      "critical point beta0 (root of S = 1): " + fmt(qcp::beta0())};
    table.columns = {"beta", "site_fe", "s_sum", "collapse_rate"};
    for (double beta : grid) {
        if (!(beta > 0.0))
            throw std::invalid_argument("wsaw: the beta grid must be strictly positive");
        const double f = qcp::wsaw_fe(beta);
        table.rows.push_back({beta, f, qcp::s_of_beta(beta), 2.0 * std::exp(-f)});
    }
    emit(paths, table, "wsaw", {{"beta_grid", grid_spec}}, 0, "single-site chain");
    return 0;
}

// ------- diblock -------

int cmd_diblock(int half_n, double beta_bar, const OutputPaths& paths) {
    const qcp::DiblockJoint joint = qcp::diblock_joint(half_n, beta_bar);
    qcp::CsvTable table;
    double total = 0.0;
    for (int i = 0; i < half_n; ++i)
        for (int j = 0; j <= half_n; ++j) total += joint.prob(i, j);
    table.comments = {"di-block joint law of the renewal indices (i, j)",
                      "half_n=" + std::to_string(half_n) + " beta_bar=" + fmt(beta_bar),
                      "log_norm=" + fmt(joint.log_norm) +
                          " normalization_residual=" + fmt(total - 1.0)};
    table.columns = {"i", "j", "log_weight", "prob"};
    for (int i = 0; i < half_n; ++i)
        for (int j = 0; j <= half_n; ++j)
            table.rows.push_back({static_cast<double>(i), static_cast<double>(j),
                                  joint.log_weight[i][j], joint.prob(i, j)});
    emit(paths, table, "diblock",
         {{"half_n", std::to_string(half_n)}, {"beta_bar", fmt(beta_bar)}}, 0,
         "di-block joint law");
    return 0;
}

// ------- undirected -------

int cmd_undirected(int n, int d, double beta, double delta, int samples, double c1,
                   std::uint64_t seed, int threads, const OutputPaths& paths) {
    qcp::CsvTable table;
    if (samples == 0) {
        const qcp::ChargeSequence cs =
            qcp::make_tilted(n, delta, seed, qcp::ChargeDist::gaussian);
        const qcp::UndirectedEnumeration en = qcp::enumerate_undirected(cs, beta, d, c1);
        table.comments = {"undirected-walk exhaustive enumeration",
                          "n=" + std::to_string(n) + " d=" + std::to_string(d) +
                              " beta=" + fmt(beta) + " delta=" + fmt(delta)};
        table.columns = {"n",        "d",          "beta",
                         "log_zbar", "prob_small_range", "mean_speed_given_pos",
                         "min_range_energy_margin", "eq2_margin"};
        table.rows.push_back({static_cast<double>(n), static_cast<double>(d), beta, en.log_zbar,
                              en.prob_small_range, en.mean_speed_given_pos,
                              en.min_range_energy_margin, en.eq2_margin});
    } else {
        const qcp::UndirectedMcResult mc =
            qcp::mc_undirected(n, beta, delta, d, samples, seed, c1, threads);
        table.comments = {"undirected-walk importance sampling (simple-random-walk proposal)",
                          "n=" + std::to_string(n) + " d=" + std::to_string(d) + " beta=" +
                              fmt(beta) + " delta=" + fmt(delta) +
                              " samples=" + std::to_string(samples)};
        table.columns = {"n",   "d",   "beta", "prob_small_range", "prob_small_range_stderr",
                         "ess", "reliable", "once_fraction_mean"};
        table.rows.push_back({static_cast<double>(n), static_cast<double>(d), beta,
                              mc.prob_small_range, mc.prob_small_range_stderr, mc.ess,
                              mc.reliable ? 1.0 : 0.0, mc.once_fraction_mean});
    }
    emit(paths, table, "undirected",
         {{"n", std::to_string(n)},
          {"d", std::to_string(d)},
          {"beta", fmt(beta)},
          {"delta", fmt(delta)},
          {"samples", std::to_string(samples)},
          {"c1", fmt(c1)},
          {"threads", std::to_string(threads)}},
         seed, "undirected walk");
    return 0;
}

// ------- selftest -------

int cmd_selftest(int threads, const std::string& out, std::uint64_t /*unused*/) {
    const std::vector<qcp::CheckResult> results = qcp::run_selfchecks(threads, &std::cout);
    const bool ok = qcp::all_pass(results);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    std::cout << results.size() << " checks, " << failed << " failed\n";
    if (!out.empty()) {
        qcp::CsvTable table;
        table.comments = {"self-test results; value is each check's summary metric"};
        for (std::size_t i = 0; i < results.size(); ++i)
            table.comments.push_back("check " + std::to_string(i) + ": " + results[i].name);
        table.columns = {"check_id", "pass", "value"};
        for (std::size_t i = 0; i < results.size(); ++i)
            table.rows.push_back(
                {static_cast<double>(i), results[i].pass ? 1.0 : 0.0, results[i].value});
        qcp::write_csv_file(out, table);
        qcp::write_manifest(out, "selftest", {{"threads", std::to_string(threads)}}, 0);
        std::cout << "wrote " << out << "\n";
    }
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quenched charged-polymer numerics"};
    app.set_version_flag("--version", qcp::version);
    app.require_subcommand(1);

    std::string dist = "binary", grid_spec = "0:5:26", out, svg;
    int n = 200, samples = 50, threads = 1, points = 200, half_n = 20, d = 1;
    double beta = 1.0, delta = 0.0, c1 = 0.5;
    std::uint64_t seed = 1;

    const auto add_common = [&](CLI::App* sub, bool with_seed, bool with_threads) {
        sub->add_option("--out", out, "output CSV path")->required();
        sub->add_option("--svg", svg, "optional SVG plot path");
        if (with_seed) sub->add_option("--seed", seed, "random seed");
        if (with_threads) sub->add_option("--threads", threads, "worker threads");
    };
    const auto add_dist = [&](CLI::App* sub) {
        sub->add_option("--dist", dist, "charge law")
            ->check(CLI::IsMember({"binary", "gaussian"}));
    };

    CLI::App* fe = app.add_subcommand("fe-sweep", "quenched free energy over a beta grid");
    add_dist(fe);
    fe->add_option("--n", n, "chain length")->check(CLI::PositiveNumber);
    fe->add_option("--samples", samples, "charge sequences per temperature")
        ->check(CLI::Range(2, 1 << 24));
    fe->add_option("--beta-grid", grid_spec, "a:b:k inclusive grid (site-energy convention)");
    add_common(fe, true, true);

    CLI::App* bonds = app.add_subcommand("bonds", "per-bond stretch probabilities");
    add_dist(bonds);
    bonds->add_option("--n", n, "chain length")->check(CLI::Range(2, 1 << 20));
    bonds->add_option("--beta", beta, "pair-interaction inverse temperature");
    add_common(bonds, true, false);

    CLI::App* cdf = app.add_subcommand("cdf", "empirical CDF of the bond probabilities");
    add_dist(cdf);
    cdf->add_option("--n", n, "chain length")->check(CLI::Range(2, 1 << 20));
    cdf->add_option("--beta", beta, "pair-interaction inverse temperature");
    cdf->add_option("--points", points, "CDF evaluation points")->check(CLI::Range(1, 1 << 20));
    add_common(cdf, true, false);

    CLI::App* ann = app.add_subcommand("annealed", "annealed free energy over a beta grid");
    add_dist(ann);
    ann->add_option("--beta-grid", grid_spec, "a:b:k inclusive grid (site-energy convention)");
    add_common(ann, false, false);

    CLI::App* wsaw = app.add_subcommand("wsaw", "single-site chain free energy and collapse");
    wsaw->add_option("--beta-grid", grid_spec, "a:b:k inclusive grid, strictly positive");
    add_common(wsaw, false, false);

    CLI::App* dib = app.add_subcommand("diblock", "di-block renewal-index joint law");
    dib->add_option("--half-n", half_n, "block length n (chain is 2n)")
        ->check(CLI::Range(1, 2000));
    dib->add_option("--beta", beta, "site-energy inverse temperature")
        ->check(CLI::PositiveNumber);
    add_common(dib, false, false);

    CLI::App* und = app.add_subcommand("undirected", "undirected-walk collapse experiments");
    und->add_option("--n", n, "walk length")->check(CLI::PositiveNumber);
    und->add_option("--d", d, "lattice dimension")->check(CLI::Range(1, 4));
    und->add_option("--beta", beta, "site-energy inverse temperature");
    und->add_option("--delta", delta, "charge-mean tilt");
    und->add_option("--samples", samples, "0 = exhaustive enumeration")
        ->check(CLI::Range(0, 1 << 24));
    und->add_option("--c1", c1, "small-range cutoff fraction");
    add_common(und, true, true);

    CLI::App* st = app.add_subcommand("selftest", "run the deterministic check battery");
    st->add_option("--threads", threads, "worker threads");
    st->add_option("--out", out, "optional results CSV path");

    samples = 50;  // defaults above; undirected switches meaning, so reset per parse
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const OutputPaths paths{out, svg};
    try {
        if (fe->parsed()) return cmd_fe_sweep(dist, n, samples, grid_spec, seed, threads, paths);
        if (bonds->parsed()) return cmd_bonds(dist, n, beta, seed, paths);
        if (cdf->parsed()) return cmd_cdf(dist, n, beta, points, seed, paths);
        if (ann->parsed()) return cmd_annealed(dist, grid_spec, paths);
        if (wsaw->parsed()) return cmd_wsaw(grid_spec, paths);
        if (dib->parsed()) return cmd_diblock(half_n, beta, paths);
        if (und->parsed())
            return cmd_undirected(n, d, beta, delta, samples, c1, seed, threads, paths);
        if (st->parsed()) return cmd_selftest(threads, out, 0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
