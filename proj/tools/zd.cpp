// zd: analysis, simulation, and planning for the voter model with zealots
// on a complete graph. Subcommands write plot-ready CSV or JSON.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zd/equilibrium.hpp"
#include "zd/mixing.hpp"
#include "zd/model.hpp"
#include "zd/planner.hpp"
#include "zd/simulate.hpp"
#include "zd/transient.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int log_level() {
    static const int level = [] {
        const char* v = std::getenv("ZD_LOG");
        return v ? std::atoi(v) : 0;
    }();
    return level;
}

void log_note(const std::string& msg) {
    if (log_level() > 0) std::cerr << "[zd] " << msg << "\n";
}

// CSV numbers carry 12 significant digits.
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }

    void write_csv(std::ostream& os) const {
        for (size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows)
            for (size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
};

void write_output(const Table& table, const json& j, const std::string& out,
                  const std::string& format) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw std::runtime_error("cannot open output path: " + out);
        os = &file;
    }
    if (format == "json")
        *os << j.dump(2) << "\n";
    else
        table.write_csv(*os);
    if (!out.empty() && !*os) throw std::runtime_error("write failed: " + out);
}

struct ModelFlags {
    long long n = 100, z0 = 10, z1 = 5, n1 = 25;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "total number of users")->capture_default_str();
        cmd->add_option("--z0", z0, "number of 0-zealots")->capture_default_str();
        cmd->add_option("--z1", z1, "number of 1-zealots")->capture_default_str();
        cmd->add_option("--n1", n1, "initial opinion-1 holders (zealots included)")
            ->capture_default_str();
    }
    zd::ModelParams params() const { return zd::new_model(n, z0, z1, n1); }
};

json dist_json(const zd::Distribution& d) {
    json states = json::array(), probs = json::array();
    for (long long i = 0; i < d.space.size(); ++i) {
        states.push_back(d.space.state_of(i));
        probs.push_back(d.probs[i]);
    }
    return json{{"state", states}, {"prob", probs}};
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const ModelFlags& mf, const std::vector<double>& times,
                const std::string& out, const std::string& format) {
    const zd::ModelParams p = mf.params();
    Table table;
    table.header = {"t", "k", "prob", "expectation"};
    json rows = json::array();
    for (double t : times) {
        const zd::Distribution d = zd::transient_distribution(p, t);
        const double expectation = zd::mean(d);
        for (long long i = 0; i < d.space.size(); ++i)
            table.add_row({num(t), std::to_string(d.space.state_of(i)), num(d.probs[i]),
                           num(expectation)});
        rows.push_back(
            {{"t", t}, {"expectation", expectation}, {"distribution", dist_json(d)}});
    }
    const json j{{"n", p.n}, {"z0", p.z0}, {"z1", p.z1}, {"n1", p.n1}, {"results", rows}};
    write_output(table, j, out, format);
    return 0;
}

// -------------------------------------------------------------- stationary

int cmd_stationary(const ModelFlags& mf, const std::string& out,
                   const std::string& format) {
    const zd::ModelParams p = mf.params();
    const zd::Distribution pi = zd::stationary_distribution(p);
    Table table;
    table.header = {"k", "prob"};
    for (long long i = 0; i < pi.space.size(); ++i)
        table.add_row({std::to_string(pi.space.state_of(i)), num(pi.probs[i])});
    const json j{{"n", p.n},
                 {"z0", p.z0},
                 {"z1", p.z1},
                 {"stationary", dist_json(pi)},
                 {"expectation", zd::equilibrium_expectation(p)}};
    write_output(table, j, out, format);
    return 0;
}

// ------------------------------------------------------------------ mixing

int cmd_mixing(const ModelFlags& mf, double eps, double t_resolution,
               std::optional<double> t_max, const std::string& out,
               const std::string& format) {
    const zd::ModelParams p = mf.params();
    const zd::MixingResult r =
        t_max ? zd::mixing_time(p, eps, t_resolution, *t_max)
              : zd::mixing_time(p, eps, t_resolution);
    Table table;
    table.header = {"eps", "t_mix", "t_low", "t_high", "evaluations"};
    table.add_row({num(r.eps), num(r.t_mix), num(r.t_low), num(r.t_high),
                   std::to_string(r.evaluations)});
    const json j{{"eps", r.eps},
                 {"t_mix", r.t_mix},
                 {"t_low", r.t_low},
                 {"t_high", r.t_high},
                 {"evaluations", r.evaluations}};
    write_output(table, j, out, format);
    return 0;
}

// ---------------------------------------------------------------- simulate

zd::SimLevel parse_level(const std::string& level) {
    if (level == "agent") return zd::SimLevel::agent;
    if (level == "aggregate") return zd::SimLevel::aggregate;
    throw std::runtime_error("unknown level: " + level);
}

int cmd_simulate(const ModelFlags& mf, double horizon, std::uint64_t seed,
                 const std::string& level, const std::string& out,
                 const std::string& format) {
    const zd::ModelParams p = mf.params();
    const zd::Trajectory traj = parse_level(level) == zd::SimLevel::agent
                                    ? zd::simulate_agents(p, horizon, seed)
                                    : zd::simulate_aggregate(p, horizon, seed);
    Table table;
    table.header = {"time", "state"};
    json jt = json::array(), js = json::array();
    for (const auto& e : traj.events) {
        table.add_row({num(e.time), std::to_string(e.state)});
        jt.push_back(e.time);
        js.push_back(e.state);
    }
    const json j{{"seed", traj.seed}, {"time", jt}, {"state", js}};
    write_output(table, j, out, format);
    return 0;
}

// ---------------------------------------------------------------- ensemble

int cmd_ensemble(const ModelFlags& mf, long long m, const std::vector<double>& times,
                 std::uint64_t seed, const std::string& level, double phi, int jobs,
                 const std::string& out, const std::string& format) {
    const zd::ModelParams p = mf.params();
    log_note("ensemble: " + std::to_string(m) + " replicas");
    const zd::EnsembleStats stats =
        zd::run_ensemble(p, m, times, seed, parse_level(level), jobs);
    const auto band = zd::confidence_interval(stats, phi);

    Table table;
    table.header = {"t", "mean", "std", "ci_low", "ci_high", "tv_gap"};
    json rows = json::array();
    for (size_t s = 0; s < times.size(); ++s) {
        const zd::Distribution theo = zd::transient_distribution(p, times[s]);
        const double tv = zd::total_variation(stats.empirical_dists[s], theo);
        table.add_row({num(times[s]), num(stats.mean[s]), num(stats.stddev[s]),
                       num(band[s].first), num(band[s].second), num(tv)});
        rows.push_back({{"t", times[s]},
                        {"mean", stats.mean[s]},
                        {"std", stats.stddev[s]},
                        {"ci_low", band[s].first},
                        {"ci_high", band[s].second},
                        {"tv_gap", tv},
                        {"empirical", dist_json(stats.empirical_dists[s])}});
    }
    const json j{{"n", p.n},     {"z0", p.z0},     {"z1", p.z1}, {"n1", p.n1},
                 {"m", stats.m}, {"seed", seed},   {"phi", phi}, {"rows", rows}};
    write_output(table, j, out, format);
    return 0;
}

// -------------------------------------------------------------------- plan

int cmd_plan(long long n, long long z0, double lambda, double alpha,
             std::optional<double> z_max, const std::string& mode, const std::string& out,
             const std::string& format) {
    zd::PlanRequest req;
    req.n = n;
    req.z0 = z0;
    req.lambda = lambda;
    req.alpha = alpha;
    req.z_max = z_max;
    if (mode == "inject")
        req.mode = zd::PlanMode::inject;
    else if (mode == "convert")
        req.mode = zd::PlanMode::convert;
    else
        throw std::runtime_error("unknown mode: " + mode);

    const zd::PlanOutcome o = zd::optimal_injection(req);

    std::cout << "z1_star_real=" << num(o.z1_star_real) << "\n";
    std::cout << "z1_star=" << (o.z1_star ? std::to_string(*o.z1_star) : "unbounded")
              << "\n";
    std::cout << "D=" << num(o.discriminant) << "\n";
    std::cout << "feasible_exact=" << (o.feasible_exact ? "true" : "false") << "\n";
    std::cout << "achieved_lambda=" << num(o.achieved_lambda) << "\n";
    std::cout << "capped=" << (o.capped ? "true" : "false") << "\n";
    std::cout << "unbounded=" << (o.unbounded ? "true" : "false") << "\n";
    if (mode == "convert")
        std::cout << "conversion_feasible="
                  << (zd::conversion_feasible(n, z0, lambda, alpha) ? "true" : "false")
                  << "\n";

    if (!out.empty()) {
        Table table;
        table.header = {"z1_star_real", "z1_star", "D",
                        "feasible_exact", "achieved_lambda", "capped"};
        table.add_row({num(o.z1_star_real),
                       o.z1_star ? std::to_string(*o.z1_star) : "nan",
                       num(o.discriminant), o.feasible_exact ? "1" : "0",
                       num(o.achieved_lambda), o.capped ? "1" : "0"});
        json j{{"z1_star_real", o.z1_star_real},
               {"D", o.discriminant},
               {"feasible_exact", o.feasible_exact},
               {"achieved_lambda", o.achieved_lambda},
               {"capped", o.capped},
               {"unbounded", o.unbounded}};
        if (o.z1_star) j["z1_star"] = *o.z1_star;
        write_output(table, j, out, format);
    }
    return 0;
}

// ----------------------------------------------------------------- figures

void write_table(const Table& table, const json& j, const fs::path& dir,
                 const std::string& stem, const std::string& format) {
    const fs::path path = dir / (stem + (format == "json" ? ".json" : ".csv"));
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output path: " + path.string());
    if (format == "json")
        os << j.dump(2) << "\n";
    else
        table.write_csv(os);
    log_note("wrote " + path.string());
}

// Consensus in an echo chamber: n=50, n1=10, z0=5, z1=0.
void figure1(const fs::path& dir, std::uint64_t seed, const std::string& format) {
    const zd::ModelParams p = zd::new_model(50, 5, 0, 10);
    const double horizon = 50.0 * static_cast<double>(p.n);
    Table table;
    table.header = {"replica", "seed", "final_time", "final_state", "events"};
    json rows = json::array();
    for (int r = 0; r < 100; ++r) {
        const std::uint64_t s = zd::replica_seed(seed, static_cast<std::uint64_t>(r));
        const zd::Trajectory traj = zd::simulate_agents(p, horizon, s);
        const auto& last = traj.events.back();
        table.add_row({std::to_string(r), std::to_string(s), num(last.time),
                       std::to_string(last.state),
                       std::to_string(traj.events.size())});
        rows.push_back({{"replica", r},
                        {"seed", s},
                        {"final_time", last.time},
                        {"final_state", last.state}});
        if (r == 0) {
            Table tt;
            tt.header = {"time", "state"};
            json jt = json::array(), js = json::array();
            for (const auto& e : traj.events) {
                tt.add_row({num(e.time), std::to_string(e.state)});
                jt.push_back(e.time);
                js.push_back(e.state);
            }
            write_table(tt, json{{"time", jt}, {"state", js}}, dir, "fig1_trajectory",
                        format);
        }
    }
    write_table(table, json{{"replicas", rows}}, dir, "fig1", format);
}

// Fluctuating equilibrium once both camps hold zealots: z1 = 2.
void figure2(const fs::path& dir, std::uint64_t seed, const std::string& format) {
    const zd::ModelParams p = zd::new_model(50, 5, 2, 10);
    const zd::Trajectory traj = zd::simulate_agents(p, 100.0, seed);
    Table table;
    table.header = {"time", "state"};
    json jt = json::array(), js = json::array();
    for (const auto& e : traj.events) {
        table.add_row({num(e.time), std::to_string(e.state)});
        jt.push_back(e.time);
        js.push_back(e.state);
    }
    const json j{{"time", jt},
                 {"state", js},
                 {"equilibrium_expectation", zd::equilibrium_expectation(p)}};
    write_table(table, j, dir, "fig2", format);
}

// Shared grid for figures 3 and 4.
struct GridCase {
    long long z0, z1, n1;
};

const GridCase kGrid[] = {{10, 5, 25}, {10, 5, 75}, {20, 25, 25}, {20, 25, 75}};

void figures34(const fs::path& dir, long long m, double eps, std::uint64_t seed,
               int jobs, const std::string& format) {
    std::vector<double> times;
    for (int i = 0; i <= 60; ++i) times.push_back(0.5 * i);  // 0, 0.5, ..., 30
    const std::vector<double> snap_times = {2.0, 4.0, 6.0, 20.0};

    Table f3;
    f3.header = {"z0", "z1", "n1", "t", "k", "empirical", "theoretical", "stationary"};
    Table f4;
    f4.header = {"z0", "z1", "n1", "t", "empirical_mean", "std", "ci_low", "ci_high",
                 "theoretical_mean", "equilibrium", "t_mix"};
    json j3 = json::array(), j4 = json::array();

    int ci = 0;
    for (const GridCase& g : kGrid) {
        const zd::ModelParams p = zd::new_model(100, g.z0, g.z1, g.n1);
        log_note("fig3/fig4: z0=" + std::to_string(g.z0) + " z1=" + std::to_string(g.z1) +
                 " n1=" + std::to_string(g.n1));
        const zd::EnsembleStats stats = zd::run_ensemble(
            p, m, times, seed + 1000 * static_cast<std::uint64_t>(ci), zd::SimLevel::agent,
            jobs);
        ++ci;
        const auto band = zd::confidence_interval(stats, 1.96);
        const zd::Distribution pi = zd::stationary_distribution(p);
        const double equilibrium = zd::equilibrium_expectation(p);
        const double t_mix = zd::mixing_time(p, eps, 0.05).t_mix;

        for (size_t s = 0; s < times.size(); ++s) {
            const double theo_mean = zd::expected_opinion1(p, times[s]);
            f4.add_row({std::to_string(g.z0), std::to_string(g.z1), std::to_string(g.n1),
                        num(times[s]), num(stats.mean[s]), num(stats.stddev[s]),
                        num(band[s].first), num(band[s].second), num(theo_mean),
                        num(equilibrium), num(t_mix)});
            j4.push_back({{"z0", g.z0},
                          {"z1", g.z1},
                          {"n1", g.n1},
                          {"t", times[s]},
                          {"empirical_mean", stats.mean[s]},
                          {"std", stats.stddev[s]},
                          {"ci_low", band[s].first},
                          {"ci_high", band[s].second},
                          {"theoretical_mean", theo_mean},
                          {"equilibrium", equilibrium},
                          {"t_mix", t_mix}});

            if (std::find(snap_times.begin(), snap_times.end(), times[s]) ==
                snap_times.end())
                continue;
            const zd::Distribution theo = zd::transient_distribution(p, times[s]);
            const zd::Distribution& emp = stats.empirical_dists[s];
            for (long long i = 0; i < theo.space.size(); ++i)
                f3.add_row({std::to_string(g.z0), std::to_string(g.z1),
                            std::to_string(g.n1), num(times[s]),
                            std::to_string(theo.space.state_of(i)), num(emp.probs[i]),
                            num(theo.probs[i]), num(pi.probs[i])});
            j3.push_back({{"z0", g.z0},
                          {"z1", g.z1},
                          {"n1", g.n1},
                          {"t", times[s]},
                          {"empirical", dist_json(emp)},
                          {"theoretical", dist_json(theo)},
                          {"stationary", dist_json(pi)}});
        }
    }
    write_table(f3, json{{"snapshots", j3}}, dir, "fig3", format);
    write_table(f4, json{{"curves", j4}}, dir, "fig4", format);
}

// Planner heat map over (z0, alpha) plus the conversion frontier.
void figure5(const fs::path& dir, const std::string& format) {
    const long long n = 100;
    const double lambda = 0.5;
    std::vector<double> alphas;
    for (int j = 0; j <= 24; ++j) alphas.push_back(std::pow(10.0, -2.0 + 2.0 * j / 24.0));

    Table f5;
    f5.header = {"z0", "alpha", "z1_star", "feasible", "conversion_ok"};
    json cells = json::array();
    for (long long z0 = 1; z0 <= 100; ++z0) {
        for (double alpha : alphas) {
            zd::PlanRequest req;
            req.n = n;
            req.z0 = z0;
            req.lambda = lambda;
            req.alpha = alpha;
            const zd::PlanOutcome o = zd::optimal_injection(req);
            const bool feasible = o.discriminant > 0.0;
            const bool conv = zd::conversion_feasible(n, z0, lambda, alpha);
            f5.add_row({std::to_string(z0), num(alpha),
                        feasible ? num(o.z1_star_real) : "nan", feasible ? "1" : "0",
                        conv ? "1" : "0"});
            cells.push_back({{"z0", z0},
                             {"alpha", alpha},
                             {"z1_star", feasible ? json(o.z1_star_real) : json()},
                             {"feasible", feasible},
                             {"conversion_ok", conv}});
        }
    }
    write_table(f5, json{{"n", n}, {"lambda", lambda}, {"cells", cells}}, dir, "fig5",
                format);

    Table frontier;
    frontier.header = {"z0", "alpha_max"};
    json jf = json::array();
    for (long long z0 = 1; z0 <= 100; ++z0) {
        const auto a = zd::max_alpha_for_conversion(n, z0, lambda);
        frontier.add_row({std::to_string(z0), a ? num(*a) : "nan"});
        jf.push_back({{"z0", z0}, {"alpha_max", a ? json(*a) : json()}});
    }
    write_table(frontier, json{{"frontier", jf}}, dir, "fig5_frontier", format);
}

int cmd_figures(const std::string& out, long long m, double eps, std::uint64_t seed,
                int jobs, const std::string& format) {
    const fs::path dir = out.empty() ? fs::path("figures") : fs::path(out);
    fs::create_directories(dir);
    figure1(dir, seed, format);
    figure2(dir, seed, format);
    figures34(dir, m, eps, seed, jobs, format);
    figure5(dir, format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voter model with zealots on a complete graph"};
    app.require_subcommand(1);

    std::string out, format = "csv";
    const auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "output path (default: stdout)");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };

    ModelFlags mf;
    std::vector<double> times{2.0, 4.0, 6.0, 20.0};
    double horizon = 20.0, eps = 1e-2, t_resolution = 0.05, lambda = 0.5, alpha = 0.0;
    double phi = 1.96;
    std::optional<double> t_max, z_max;
    std::uint64_t seed = 1;
    long long m = 1000, plan_n = 100, plan_z0 = 10;
    int jobs = 1;
    std::string level = "agent", mode = "inject";

    CLI::App* analyze = app.add_subcommand("analyze", "transient distribution and mean");
    mf.attach(analyze);
    analyze->add_option("--times", times, "evaluation times")
        ->delimiter(',')
        ->capture_default_str();
    add_io(analyze);

    CLI::App* stationary = app.add_subcommand("stationary", "stationary distribution");
    mf.attach(stationary);
    add_io(stationary);

    CLI::App* mixing = app.add_subcommand("mixing", "mixing time at precision eps");
    mf.attach(mixing);
    mixing->add_option("--eps", eps, "precision level")->capture_default_str();
    mixing->add_option("--t-resolution", t_resolution, "time resolution")
        ->capture_default_str();
    mixing->add_option("--t-max", t_max, "search horizon");
    add_io(mixing);

    CLI::App* simulate = app.add_subcommand("simulate", "one sample trajectory");
    mf.attach(simulate);
    simulate->add_option("--horizon", horizon, "simulation horizon")->capture_default_str();
    simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
    simulate->add_option("--level", level, "agent or aggregate")
        ->check(CLI::IsMember({"agent", "aggregate"}))
        ->capture_default_str();
    add_io(simulate);

    CLI::App* ensemble = app.add_subcommand("ensemble", "replica statistics over time");
    mf.attach(ensemble);
    ensemble->add_option("--m", m, "number of replicas")->capture_default_str();
    ensemble->add_option("--times", times, "snapshot times")
        ->delimiter(',')
        ->capture_default_str();
    ensemble->add_option("--seed", seed, "base seed")->capture_default_str();
    ensemble->add_option("--level", level, "agent or aggregate")
        ->check(CLI::IsMember({"agent", "aggregate"}))
        ->capture_default_str();
    ensemble->add_option("--phi", phi, "normal quantile for the confidence band")
        ->capture_default_str();
    ensemble->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    add_io(ensemble);

    CLI::App* plan = app.add_subcommand("plan", "optimal zealot injection");
    plan->add_option("--n", plan_n, "group size (convert mode)")->capture_default_str();
    plan->add_option("--z0", plan_z0, "existing 0-zealots")->capture_default_str();
    plan->add_option("--lambda", lambda, "target heterogeneity in (0,1)")
        ->capture_default_str();
    plan->add_option("--alpha", alpha, "backfire rate")->capture_default_str();
    plan->add_option("--zmax", z_max, "injection budget");
    plan->add_option("--mode", mode, "inject or convert")
        ->check(CLI::IsMember({"inject", "convert"}))
        ->capture_default_str();
    add_io(plan);

    CLI::App* figures = app.add_subcommand(
        "figures", "emit the data behind the reference experiment figures");
    figures->add_option("--out", out, "output directory (default: figures)");
    figures->add_option("--m", m, "replicas per ensemble")->capture_default_str();
    figures->add_option("--eps", eps, "mixing precision")->capture_default_str();
    figures->add_option("--seed", seed, "base seed")->capture_default_str();
    figures->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    figures->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(mf, times, out, format);
        if (app.got_subcommand(stationary)) return cmd_stationary(mf, out, format);
        if (app.got_subcommand(mixing))
            return cmd_mixing(mf, eps, t_resolution, t_max, out, format);
        if (app.got_subcommand(simulate))
            return cmd_simulate(mf, horizon, seed, level, out, format);
        if (app.got_subcommand(ensemble))
            return cmd_ensemble(mf, m, times, seed, level, phi, jobs, out, format);
        if (app.got_subcommand(plan))
            return cmd_plan(plan_n, plan_z0, lambda, alpha, z_max, mode, out, format);
        if (app.got_subcommand(figures))
            return cmd_figures(out, m, eps, seed, jobs, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
