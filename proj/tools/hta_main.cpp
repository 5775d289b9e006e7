// Command-line front end: every analysis of the library as a reproducible,
// file-emitting command. Exit codes: 0 success, 2 invalid parameters,
// 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "hta/basins.hpp"
#include "hta/bifurcation.hpp"
#include "hta/blowup.hpp"
#include "hta/export.hpp"
#include "hta/integrate.hpp"
#include "hta/manifolds.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    CLI::App* cmd = nullptr;

    double A = 0, M = 0, Q = 0, S = 0;
    double r = 0, s = 0, K = 0, q = 0, n = 0, a = 0, m = 0;
    std::string config_path;
    std::string out_dir = ".";
    double rel_tol = 1e-8, abs_tol = 1e-10, max_time = 5e4, attractor_radius = 1e-4;

    void attach(CLI::App* c, bool with_S = true) {
        cmd = c;
        c->add_option("--A", A, "dimensionless half-saturation, in (0,1)");
        c->add_option("--M", M, "dimensionless Allee threshold, in (0,1)");
        c->add_option("--Q", Q, "dimensionless predation pressure, > 0");
        if (with_S) c->add_option("--S", S, "dimensionless predator growth ratio, > 0");
        c->add_option("--r", r, "prey intrinsic growth rate");
        c->add_option("--s", s, "predator intrinsic growth rate");
        c->add_option("--K", K, "prey carrying capacity");
        c->add_option("--q", q, "maximum per-capita predation rate");
        c->add_option("--n", n, "prey-to-predator conversion quality");
        c->add_option("--a", a, "half-saturation constant");
        c->add_option("--m", m, "Allee threshold population");
        c->add_option("--config", config_path, "JSON config file; explicit flags override it");
        c->add_option("--out", out_dir, "output directory")->capture_default_str();
        c->add_option("--rel-tol", rel_tol, "solver relative tolerance")->capture_default_str();
        c->add_option("--abs-tol", abs_tol, "solver absolute tolerance")->capture_default_str();
        c->add_option("--max-time", max_time, "integration horizon")->capture_default_str();
        c->add_option("--attractor-radius", attractor_radius, "convergence radius")
            ->capture_default_str();
    }

    bool given(const char* name) const { return cmd->count(name) > 0; }

    /// Merges the config file under the flags; flags win.
    json merged() const {
        json cfg = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot read config file: " + config_path);
            in >> cfg;
        }
        auto set = [&](const char* flag, const char* key, double value) {
            if (given(flag)) cfg[key] = value;
        };
        set("--A", "A", A);
        set("--M", "M", M);
        set("--Q", "Q", Q);
        set("--S", "S", S);
        set("--r", "r", r);
        set("--s", "s", s);
        set("--K", "K", K);
        set("--q", "q", q);
        set("--n", "n", n);
        set("--a", "a", a);
        set("--m", "m", m);
        set("--rel-tol", "rel_tol", rel_tol);
        set("--abs-tol", "abs_tol", abs_tol);
        set("--max-time", "max_time", max_time);
        set("--attractor-radius", "attractor_radius", attractor_radius);
        return cfg;
    }

    hta::NondimParams params(json* dimensional_echo = nullptr) const {
        const json cfg = merged();
        auto has_all = [&](std::initializer_list<const char*> keys) {
            for (const char* k : keys)
                if (!cfg.contains(k)) return false;
            return true;
        };
        auto has_any = [&](std::initializer_list<const char*> keys) {
            for (const char* k : keys)
                if (cfg.contains(k)) return true;
            return false;
        };
        const bool nondim_any = has_any({"A", "M", "Q", "S"});
        const bool dim_any = has_any({"r", "s", "K", "q", "n", "a", "m"});
        if (nondim_any && dim_any)
            throw std::invalid_argument("give either nondimensional (A,M,Q,S) or dimensional "
                                        "(r,s,K,q,n,a,m) parameters, not both");
        if (dim_any) {
            if (!has_all({"r", "s", "K", "q", "n", "a", "m"}))
                throw std::invalid_argument("incomplete dimensional parameter block");
            hta::DimensionalParams dp{cfg["r"], cfg["s"], cfg["K"], cfg["q"],
                                      cfg["n"], cfg["a"], cfg["m"]};
            if (dimensional_echo)
                *dimensional_echo = {{"r", dp.r}, {"s", dp.s}, {"K", dp.K}, {"q", dp.q},
                                     {"n", dp.n}, {"a", dp.a}, {"m", dp.m}};
            return hta::nondimensionalize(dp);
        }
        if (!has_all({"A", "M", "Q", "S"}))
            throw std::invalid_argument("incomplete nondimensional parameter block (need A,M,Q,S)");
        hta::NondimParams p{cfg["A"], cfg["M"], cfg["Q"], cfg["S"]};
        p.validate();
        return p;
    }

    hta::IntegrationConfig integration() const {
        const json cfg = merged();
        hta::IntegrationConfig ic;
        ic.rel_tol = cfg.value("rel_tol", rel_tol);
        ic.abs_tol = cfg.value("abs_tol", abs_tol);
        ic.max_time = cfg.value("max_time", max_time);
        ic.attractor_radius = cfg.value("attractor_radius", attractor_radius);
        ic.validate();
        return ic;
    }

    fs::path outfile(const std::string& name) const {
        fs::create_directories(out_dir);
        return fs::path(out_dir) / name;
    }
};

void emit(const fs::path& path, const std::string& content) {
    hta::write_text_file(path.string(), content);
    std::cout << "wrote " << path.string() << "\n";
}

// ---------------------------------------------------------------- analyze

void run_analyze(const CommonOpts& opts) {
    json dim_echo;
    const hta::NondimParams p = opts.params(&dim_echo);
    const hta::EquilibriumReport rep = hta::classify_all(p);
    json j = hta::equilibrium_report_json(p, rep);
    if (!dim_echo.is_null()) j["dimensional_params"] = dim_echo;
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    hta::write_text_file(opts.outfile("analysis.json").string(), text);
}

// ---------------------------------------------------------------- portrait

struct PortraitOpts {
    CommonOpts common;
    std::vector<std::vector<double>> seeds;
    int seed_grid = 0;
    std::vector<double> box{0.0, 1.0, 0.0, 1.0};
    double horizon = 200.0;
};

void run_portrait(const PortraitOpts& o) {
    const hta::NondimParams p = o.common.params();
    const hta::IntegrationConfig cfg = o.common.integration();
    if (o.box.size() != 4) throw std::invalid_argument("--box needs umin umax vmin vmax");

    std::vector<hta::Vec2> seeds;
    for (const auto& s : o.seeds) {
        if (s.size() != 2) throw std::invalid_argument("--seed needs two coordinates");
        seeds.push_back({s[0], s[1]});
    }
    for (int i = 0; i < o.seed_grid; ++i)
        for (int j = 0; j < o.seed_grid; ++j)
            seeds.push_back({o.box[0] + (i + 0.5) * (o.box[1] - o.box[0]) / o.seed_grid,
                             o.box[2] + (j + 0.5) * (o.box[3] - o.box[2]) / o.seed_grid});
    if (seeds.empty()) throw std::invalid_argument("portrait needs --seed or --seed-grid");

    for (std::size_t k = 0; k < seeds.size(); ++k) {
        const hta::Trajectory traj = hta::integrate(p, seeds[k], cfg, o.horizon);
        char name[64];
        std::snprintf(name, sizeof name, "trajectory_%03zu.csv", k);
        emit(o.common.outfile(name), hta::trajectory_csv(traj));
    }

    const int samples = 400;
    std::vector<hta::Vec2> prey, pred;
    for (int i = 0; i <= samples; ++i) {
        const double u = i / static_cast<double>(samples);
        prey.push_back({u, hta::growth_g(p, u) / p.Q});
        pred.push_back({u, u});
    }
    emit(o.common.outfile("nullcline_prey.csv"), hta::polyline_csv(prey));
    emit(o.common.outfile("nullcline_predator.csv"), hta::polyline_csv(pred));

    const hta::EquilibriumReport rep = hta::classify_all(p);
    std::string eq = "u,v,kind,classification\n";
    for (const auto& e : rep.points) {
        eq += hta::format_double(e.location.u);
        eq += ',';
        eq += hta::format_double(e.location.v);
        eq += ',';
        eq += hta::to_string(e.kind);
        eq += ',';
        eq += hta::to_string(e.classification);
        eq += '\n';
    }
    emit(o.common.outfile("equilibria.csv"), eq);
}

// ---------------------------------------------------------------- basin

struct BasinOpts {
    CommonOpts common;
    std::vector<double> box{0.0, 1.0, 0.0, 1.0};
    int resolution = 200;
    int threads = 0;
};

void run_basin(const BasinOpts& o) {
    const hta::NondimParams p = o.common.params();
    const hta::IntegrationConfig cfg = o.common.integration();
    if (o.box.size() != 4) throw std::invalid_argument("--box needs umin umax vmin vmax");
    const hta::BasinBox box{o.box[0], o.box[1], o.box[2], o.box[3]};
    const hta::BasinGrid grid = hta::compute_basins(p, box, o.resolution, cfg, o.threads);
    emit(o.common.outfile("basin.csv"), hta::basin_csv(grid));
    emit(o.common.outfile("basin_labels.txt"), hta::basin_label_file(grid));
    const hta::BasinFractions f = hta::basin_area_fraction(grid);
    std::cout << "fractions: to_p2=" << hta::format_double(f.to_p2)
              << " to_origin=" << hta::format_double(f.to_origin)
              << " to_cycle=" << hta::format_double(f.to_cycle)
              << " undecided=" << hta::format_double(f.undecided) << "\n";
}

// ---------------------------------------------------------------- manifolds

struct ManifoldOpts {
    CommonOpts common;
    double eps = 1e-6;
};

void run_manifolds(const ManifoldOpts& o) {
    const hta::NondimParams p = o.common.params();
    hta::ManifoldConfig cfg;
    cfg.seed_offset = o.eps;
    cfg.integration = o.common.integration();

    const struct {
        hta::BranchId id;
        const char* file;
    } branches[] = {
        {hta::BranchId::StableP2Side, "manifold_stable_p2side.csv"},
        {hta::BranchId::StableMSide, "manifold_stable_mside.csv"},
        {hta::BranchId::UnstableP2Side, "manifold_unstable_p2side.csv"},
        {hta::BranchId::UnstableOriginSide, "manifold_unstable_originside.csv"},
    };
    json info;
    for (const auto& b : branches) {
        const hta::ManifoldBranch branch = hta::trace_branch(p, b.id, cfg);
        emit(o.common.outfile(b.file), hta::polyline_csv(branch.points));
        json bj = {{"termination", hta::to_string(branch.termination)}};
        if (branch.hit) bj["hit"] = hta::to_string(*branch.hit);
        info[hta::to_string(b.id)] = bj;
    }
    const hta::ConnectionReport rep = hta::classify_connection(p, cfg);
    info["connection_case"] = hta::to_string(rep.label);
    info["hom_match_distance"] = rep.hom_match_distance;
    info["schema_version"] = hta::kSchemaVersion;
    const std::string text = info.dump(2) + "\n";
    std::cout << text;
    hta::write_text_file(o.common.outfile("connection.json").string(), text);

    try {
        const std::vector<hta::Vec2> sep = hta::separatrix(p, cfg);
        emit(o.common.outfile("separatrix.csv"), hta::polyline_csv(sep));
    } catch (const hta::NumericalError&) {
        std::cout << "no separatrix: S <= S*, the origin attracts all of Phi\n";
    }
}

// ---------------------------------------------------------------- bifurcate

struct BifurcateOpts {
    CommonOpts common;
    std::string find;
    std::vector<double> bracket;
    double tol = 1e-4;
};

void run_bifurcate(const BifurcateOpts& o) {
    const json cfg = o.common.merged();
    if (!cfg.contains("A") || !cfg.contains("M"))
        throw std::invalid_argument("bifurcate needs --A and --M");
    const double A = cfg["A"], M = cfg["M"];

    hta::ManifoldConfig mcfg;
    mcfg.integration = o.common.integration();

    json out = {{"schema_version", hta::kSchemaVersion}, {"A", A}, {"M", M}, {"find", o.find}};
    if (o.find == "sn") {
        out["Q_sn"] = hta::find_saddle_node_Q(A, M);
    } else if (o.find == "bt") {
        const hta::BTPoint bt = hta::find_bt_point(A, M);
        out["Q_sn"] = bt.Q;
        out["S_bt"] = bt.S;
    } else if (o.find == "hopf") {
        if (!cfg.contains("Q")) throw std::invalid_argument("hopf needs --Q");
        const hta::NondimParams p{A, M, cfg["Q"], 1.0};
        out["Q"] = p.Q;
        out["S_star"] = hta::hopf_threshold(p);
    } else if (o.find == "hom" || o.find == "het") {
        if (!cfg.contains("Q")) throw std::invalid_argument(o.find + " needs --Q");
        if (o.bracket.size() != 2) throw std::invalid_argument(o.find + " needs --bracket lo hi");
        const double Q = cfg["Q"];
        out["Q"] = Q;
        if (o.find == "hom")
            out["S_hom"] = hta::find_homoclinic_S(A, M, Q, o.bracket[0], o.bracket[1], mcfg, o.tol);
        else
            out["S_het"] = hta::find_heteroclinic_S(A, M, Q, o.bracket[0], o.bracket[1], mcfg, o.tol);
    } else {
        throw std::invalid_argument("--find must be one of sn, bt, hopf, hom, het");
    }
    const std::string text = out.dump(2) + "\n";
    std::cout << text;
    hta::write_text_file(o.common.outfile("bifurcation.json").string(), text);
}

// ---------------------------------------------------------------- diagram

struct DiagramOpts {
    CommonOpts common;
    std::vector<double> q_range;
    std::vector<double> s_range;
    int nq = 24;
    int ns = 24;
    int curve_samples = 5;
};

void run_diagram(const DiagramOpts& o) {
    const json cfg = o.common.merged();
    if (!cfg.contains("A") || !cfg.contains("M"))
        throw std::invalid_argument("diagram needs --A and --M");
    const double A = cfg["A"], M = cfg["M"];
    if (o.q_range.size() != 2 || o.s_range.size() != 2)
        throw std::invalid_argument("diagram needs --q-range lo hi and --s-range lo hi");

    hta::ManifoldConfig mcfg;
    mcfg.integration = o.common.integration();

    const hta::RegionDiagram d = hta::region_diagram(A, M, o.q_range[0], o.q_range[1], o.s_range[0],
                                                     o.s_range[1], o.nq, o.ns, mcfg);
    emit(o.common.outfile("region.csv"), hta::region_csv(d));

    std::vector<double> samples;
    for (int i = 0; i < o.curve_samples; ++i)
        samples.push_back(o.q_range[0] +
                          (i + 0.5) * (o.q_range[1] - o.q_range[0]) / o.curve_samples);
    const hta::BifurcationSet set = hta::compute_bifurcation_set(A, M, samples, mcfg);
    const std::string text = hta::region_curves_json(d, set).dump(2) + "\n";
    std::cout << text;
    hta::write_text_file(o.common.outfile("region_curves.json").string(), text);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desingularised Holling-Tanner model with strong Allee effect: equilibria, "
                 "manifolds, basins and bifurcation structure"};
    app.require_subcommand(1);

    CommonOpts analyze_opts;
    analyze_opts.attach(app.add_subcommand("analyze", "equilibrium report (JSON)"));

    PortraitOpts portrait_opts;
    {
        CLI::App* c = app.add_subcommand("portrait", "trajectories + nullclines (CSV bundle)");
        portrait_opts.common.attach(c);
        c->add_option("--seed", portrait_opts.seeds, "initial state u v")
            ->expected(-1)
            ->delimiter(',');
        c->add_option("--seed-grid", portrait_opts.seed_grid, "N x N grid of seeds over --box");
        c->add_option("--box", portrait_opts.box, "umin umax vmin vmax")->expected(4);
        c->add_option("--horizon", portrait_opts.horizon, "integration span per seed")
            ->capture_default_str();
    }

    BasinOpts basin_opts;
    {
        CLI::App* c = app.add_subcommand("basin", "basin-of-attraction grid (CSV + label file)");
        basin_opts.common.attach(c);
        c->add_option("--box", basin_opts.box, "umin umax vmin vmax")->expected(4);
        c->add_option("--resolution", basin_opts.resolution, "cells per axis")->capture_default_str();
        c->add_option("--threads", basin_opts.threads, "worker threads (0 = hardware)");
    }

    ManifoldOpts manifold_opts;
    {
        CLI::App* c = app.add_subcommand("manifolds", "stable/unstable manifolds of P1 (CSV)");
        manifold_opts.common.attach(c);
        c->add_option("--eps", manifold_opts.eps, "seed offset along the eigenvectors")
            ->capture_default_str();
    }

    BifurcateOpts bifurcate_opts;
    {
        CLI::App* c = app.add_subcommand("bifurcate", "locate bifurcation values");
        bifurcate_opts.common.attach(c, /*with_S=*/false);
        c->add_option("--find", bifurcate_opts.find, "sn | bt | hopf | hom | het")->required();
        c->add_option("--bracket", bifurcate_opts.bracket, "S bracket lo hi for hom/het")
            ->expected(2);
        c->add_option("--tol", bifurcate_opts.tol, "bisection tolerance")->capture_default_str();
    }

    DiagramOpts diagram_opts;
    {
        CLI::App* c = app.add_subcommand("diagram", "region diagram of the (Q,S) plane");
        diagram_opts.common.attach(c, /*with_S=*/false);
        c->add_option("--q-range", diagram_opts.q_range, "Q range lo hi")->expected(2)->required();
        c->add_option("--s-range", diagram_opts.s_range, "S range lo hi")->expected(2)->required();
        c->add_option("--nq", diagram_opts.nq, "grid columns")->capture_default_str();
        c->add_option("--ns", diagram_opts.ns, "grid rows")->capture_default_str();
        c->add_option("--curve-samples", diagram_opts.curve_samples,
                      "Q samples for the HOM/HET curves")
            ->capture_default_str();
    }

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("analyze")) run_analyze(analyze_opts);
        if (app.got_subcommand("portrait")) run_portrait(portrait_opts);
        if (app.got_subcommand("basin")) run_basin(basin_opts);
        if (app.got_subcommand("manifolds")) run_manifolds(manifold_opts);
        if (app.got_subcommand("bifurcate")) run_bifurcate(bifurcate_opts);
        if (app.got_subcommand("diagram")) run_diagram(diagram_opts);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hta::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
