#include "hta/export.hpp"

#include <cstdio>
#include <fstream>

namespace hta {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string s = "tau,u,v\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        s += format_double(traj.tau[i]);
        s += ',';
        s += format_double(traj.states[i].u);
        s += ',';
        s += format_double(traj.states[i].v);
        s += '\n';
    }
    return s;
}

std::string polyline_csv(const std::vector<Vec2>& pts) {
    std::string s = "u,v\n";
    for (const auto& q : pts) {
        s += format_double(q.u);
        s += ',';
        s += format_double(q.v);
        s += '\n';
    }
    return s;
}

namespace {

char label_code(FateLabel l) {
    switch (l) {
        case FateLabel::ToOrigin: return 'O';
        case FateLabel::ToP2: return 'P';
        case FateLabel::ToCycle: return 'C';
        case FateLabel::Undecided: return 'U';
    }
    return '?';
}

nlohmann::json params_json(const NondimParams& p) {
    return {{"A", p.A}, {"M", p.M}, {"Q", p.Q}, {"S", p.S}};
}

} // namespace

std::string basin_csv(const BasinGrid& grid) {
    std::string s = "u,v,label\n";
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            s += format_double(grid.u_at(i));
            s += ',';
            s += format_double(grid.v_at(j));
            s += ',';
            s += to_string(grid.at(i, j));
            s += '\n';
        }
    return s;
}

std::string basin_label_file(const BasinGrid& grid) {
    const BasinFractions f = basin_area_fraction(grid);
    nlohmann::json header = {
        {"schema_version", kSchemaVersion},
        {"box", {grid.box.u_lo, grid.box.u_hi, grid.box.v_lo, grid.box.v_hi}},
        {"resolution", grid.nu},
        {"params", params_json(grid.params)},
        {"fractions",
         {{"to_p2", f.to_p2}, {"to_origin", f.to_origin}, {"to_cycle", f.to_cycle}, {"undecided", f.undecided}}},
    };
    std::string s = header.dump();
    s += '\n';
    for (int j = 0; j < grid.nv; ++j) {
        for (int i = 0; i < grid.nu; ++i) s += label_code(grid.at(i, j));
        s += '\n';
    }
    return s;
}

std::string region_csv(const RegionDiagram& d) {
    std::string s = "Q,S,label\n";
    for (int j = 0; j < d.ns; ++j)
        for (int i = 0; i < d.nq; ++i) {
            s += format_double(d.q_at(i));
            s += ',';
            s += format_double(d.s_at(j));
            s += ',';
            s += to_string(d.at(i, j));
            s += '\n';
        }
    return s;
}

namespace {

nlohmann::json complex_json(const std::complex<double>& z) { return {z.real(), z.imag()}; }

nlohmann::json equilibrium_json(const Equilibrium& e) {
    nlohmann::json j = {
        {"kind", to_string(e.kind)},
        {"location", {e.location.u, e.location.v}},
        {"classification", to_string(e.classification)},
    };
    if (e.kind == EquilibriumKind::Origin) {
        j["eigenvalues"] = nullptr; // zero Jacobian
        j["eigenvectors"] = nullptr;
        return j;
    }
    j["eigenvalues"] = {complex_json(e.lambda1), complex_json(e.lambda2)};
    if (e.eigenvectors) {
        j["eigenvectors"] = {{e.eigenvectors->first.u, e.eigenvectors->first.v},
                             {e.eigenvectors->second.u, e.eigenvectors->second.v}};
    } else {
        j["eigenvectors"] = nullptr;
    }
    return j;
}

} // namespace

nlohmann::json equilibrium_report_json(const NondimParams& p, const EquilibriumReport& rep) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = params_json(p);
    j["cubic"] = {{"H", rep.cubic.H},
                  {"delta", rep.cubic.delta},
                  {"u1", rep.cubic.has_pair() ? nlohmann::json(rep.cubic.u1) : nlohmann::json(nullptr)},
                  {"u2", rep.cubic.has_pair() ? nlohmann::json(rep.cubic.u2) : nlohmann::json(nullptr)},
                  {"E", rep.cubic.E}};
    j["equilibria"] = nlohmann::json::array();
    for (const auto& e : rep.points) j["equilibria"].push_back(equilibrium_json(e));
    j["hopf_threshold"] = rep.hopf_S ? nlohmann::json(*rep.hopf_S) : nlohmann::json(nullptr);
    j["f_E"] = rep.f_E ? nlohmann::json(*rep.f_E) : nlohmann::json(nullptr);
    if (rep.cubic.no_interior())
        j["summary"] = "no interior equilibria; origin globally attracting";
    else if (rep.cubic.is_double_root())
        j["summary"] = "interior equilibria collapsed to the double point (E,E)";
    else
        j["summary"] = std::string("two interior equilibria; P2 is ") +
                       (p.S < *rep.hopf_S ? "a repeller (S < S*)" : "an attractor (S > S*)");
    return j;
}

nlohmann::json bifurcation_set_json(const BifurcationSet& set) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["A"] = set.A;
    j["M"] = set.M;
    j["Q_sn"] = set.Q_sn;
    j["bt"] = {set.bt.Q, set.bt.S};
    auto curve = [](const std::vector<std::pair<double, double>>& c) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [q, s] : c) arr.push_back({q, s});
        return arr;
    };
    j["hopf"] = curve(set.hopf_curve);
    j["hom"] = curve(set.homoclinic);
    j["het"] = curve(set.heteroclinic);
    j["q_readings"] = {
        {"hopf_at_zero", set.q_hopf_at_zero ? nlohmann::json(*set.q_hopf_at_zero) : nlohmann::json(nullptr)},
        {"bt_abscissa", set.q_bt_abscissa}};
    return j;
}

nlohmann::json region_curves_json(const RegionDiagram& d, const BifurcationSet& set) {
    nlohmann::json j = bifurcation_set_json(set);
    j["grid"] = {{"q_range", {d.q_lo, d.q_hi}},
                 {"s_range", {d.s_lo, d.s_hi}},
                 {"nq", d.nq},
                 {"ns", d.ns},
                 {"undecided_cells", d.undecided_count}};
    j["sn_curve"] = {{set.Q_sn, d.s_lo}, {set.Q_sn, d.s_hi}};
    return j;
}

} // namespace hta
