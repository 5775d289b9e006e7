#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hta/basins.hpp"
#include "hta/bifurcation.hpp"
#include "hta/blowup.hpp"
#include "hta/integrate.hpp"
#include "hta/manifolds.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

py::array_t<double> polyline_array(const std::vector<hta::Vec2>& pts) {
    py::array_t<double> arr({static_cast<py::ssize_t>(pts.size()), py::ssize_t(2)});
    auto view = arr.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < view.shape(0); ++i) {
        view(i, 0) = pts[static_cast<std::size_t>(i)].u;
        view(i, 1) = pts[static_cast<std::size_t>(i)].v;
    }
    return arr;
}

py::array_t<double> trajectory_array(const hta::Trajectory& traj) {
    py::array_t<double> arr({static_cast<py::ssize_t>(traj.size()), py::ssize_t(3)});
    auto view = arr.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < view.shape(0); ++i) {
        const auto k = static_cast<std::size_t>(i);
        view(i, 0) = traj.tau[k];
        view(i, 1) = traj.states[k].u;
        view(i, 2) = traj.states[k].v;
    }
    return arr;
}

hta::Vec2 as_vec2(std::pair<double, double> p) { return {p.first, p.second}; }

} // namespace

PYBIND11_MODULE(pyhta, mod) {
    mod.doc() = "Desingularised Holling-Tanner predator-prey model with strong Allee effect: "
                "equilibria, manifolds, basins and bifurcation structure";

    py::register_exception<hta::NumericalError>(mod, "NumericalError", PyExc_RuntimeError);

    py::class_<hta::DimensionalParams>(mod, "DimensionalParams")
        .def(py::init([](double r, double s, double K, double q, double n, double a, double m) {
                 hta::DimensionalParams p{r, s, K, q, n, a, m};
                 p.validate();
                 return p;
             }),
             "r"_a, "s"_a, "K"_a, "q"_a, "n"_a, "a"_a, "m"_a)
        .def_readonly("r", &hta::DimensionalParams::r)
        .def_readonly("s", &hta::DimensionalParams::s)
        .def_readonly("K", &hta::DimensionalParams::K)
        .def_readonly("q", &hta::DimensionalParams::q)
        .def_readonly("n", &hta::DimensionalParams::n)
        .def_readonly("a", &hta::DimensionalParams::a)
        .def_readonly("m", &hta::DimensionalParams::m);

    py::class_<hta::NondimParams>(mod, "Params")
        .def(py::init([](double A, double M, double Q, double S) {
                 hta::NondimParams p{A, M, Q, S};
                 p.validate();
                 return p;
             }),
             "A"_a, "M"_a, "Q"_a, "S"_a)
        .def_readonly("A", &hta::NondimParams::A)
        .def_readonly("M", &hta::NondimParams::M)
        .def_readonly("Q", &hta::NondimParams::Q)
        .def_readonly("S", &hta::NondimParams::S)
        .def("__repr__", [](const hta::NondimParams& p) {
            return "Params(A=" + std::to_string(p.A) + ", M=" + std::to_string(p.M) +
                   ", Q=" + std::to_string(p.Q) + ", S=" + std::to_string(p.S) + ")";
        });

    py::class_<hta::IntegrationConfig>(mod, "IntegrationConfig")
        .def(py::init<>())
        .def_readwrite("rel_tol", &hta::IntegrationConfig::rel_tol)
        .def_readwrite("abs_tol", &hta::IntegrationConfig::abs_tol)
        .def_readwrite("max_time", &hta::IntegrationConfig::max_time)
        .def_readwrite("attractor_radius", &hta::IntegrationConfig::attractor_radius)
        .def_readwrite("cycle_detection", &hta::IntegrationConfig::cycle_detection);

    mod.def("nondimensionalize", &hta::nondimensionalize, "p"_a,
            "A=a/K, M=m/K, Q=nq/(rK), S=s/(rK)");
    mod.def(
        "vector_field",
        [](const hta::NondimParams& p, double u, double v) {
            const hta::Vec2 f = hta::vector_field(p, {u, v});
            return std::make_pair(f.u, f.v);
        },
        "p"_a, "u"_a, "v"_a);
    mod.def(
        "dimensional_vector_field",
        [](const hta::DimensionalParams& p, double x, double y) {
            const hta::Vec2 f = hta::dimensional_vector_field(p, x, y);
            return std::make_pair(f.u, f.v);
        },
        "p"_a, "x"_a, "y"_a);
    mod.def(
        "jacobian",
        [](const hta::NondimParams& p, double u, double v) {
            const hta::Mat2 j = hta::jacobian(p, {u, v});
            py::array_t<double> arr({py::ssize_t(2), py::ssize_t(2)});
            auto m = arr.mutable_unchecked<2>();
            m(0, 0) = j.a11;
            m(0, 1) = j.a12;
            m(1, 0) = j.a21;
            m(1, 1) = j.a22;
            return arr;
        },
        "p"_a, "u"_a, "v"_a);

    py::class_<hta::CubicStructure>(mod, "CubicStructure")
        .def_readonly("H", &hta::CubicStructure::H)
        .def_readonly("delta", &hta::CubicStructure::delta)
        .def_readonly("u1", &hta::CubicStructure::u1)
        .def_readonly("u2", &hta::CubicStructure::u2)
        .def_readonly("E", &hta::CubicStructure::E)
        .def("has_pair", &hta::CubicStructure::has_pair)
        .def("is_double_root", &hta::CubicStructure::is_double_root);

    mod.def("solve_cubic_structure", &hta::solve_cubic_structure, "p"_a);
    mod.def("f_trace", &hta::f_trace, "p"_a, "u"_a);
    mod.def("hopf_threshold", &hta::hopf_threshold, "p"_a);

    mod.def("classify_all", [](const hta::NondimParams& p) {
        const hta::EquilibriumReport rep = hta::classify_all(p);
        py::list points;
        for (const auto& e : rep.points) {
            py::dict d;
            d["kind"] = hta::to_string(e.kind);
            d["location"] = std::make_pair(e.location.u, e.location.v);
            d["classification"] = hta::to_string(e.classification);
            if (e.kind != hta::EquilibriumKind::Origin)
                d["eigenvalues"] = std::make_pair(e.lambda1, e.lambda2);
            points.append(d);
        }
        py::dict out;
        out["equilibria"] = points;
        out["H"] = rep.cubic.H;
        out["delta"] = rep.cubic.delta;
        out["u1"] = rep.cubic.u1;
        out["u2"] = rep.cubic.u2;
        out["E"] = rep.cubic.E;
        if (rep.hopf_S) out["hopf_threshold"] = *rep.hopf_S;
        return out;
    });

    mod.def("p1_eigen_data", [](const hta::NondimParams& p) {
        const hta::SaddleEigenData d = hta::p1_eigen_data(p);
        py::dict out;
        out["lambda_unstable"] = d.lambda_unstable;
        out["lambda_stable"] = d.lambda_stable;
        out["psi_unstable"] = std::make_pair(d.psi_unstable.u, d.psi_unstable.v);
        out["psi_stable"] = std::make_pair(d.psi_stable.u, d.psi_stable.v);
        return out;
    });

    mod.def(
        "blowup_field",
        [](const hta::NondimParams& p, double x, double y) {
            const hta::Vec2 f = hta::blowup_field(p, {x, y});
            return std::make_pair(f.u, f.v);
        },
        "p"_a, "x"_a, "y"_a);
    mod.def("blowup_equilibria", [](const hta::NondimParams& p) {
        const hta::BlowupReport rep = hta::blowup_equilibria(p);
        py::dict out;
        out["origin_eigenvalues"] = std::make_pair(rep.origin.lambda1, rep.origin.lambda2);
        out["mu"] = rep.mu.location.x;
        out["mu_eigenvalues"] = std::make_pair(rep.mu.lambda1, rep.mu.lambda2);
        return out;
    });

    mod.def(
        "integrate",
        [](const hta::NondimParams& p, std::pair<double, double> s0, const hta::IntegrationConfig& cfg,
           std::optional<double> horizon) {
            return trajectory_array(hta::integrate(p, as_vec2(s0), cfg, horizon));
        },
        "p"_a, "s0"_a, "cfg"_a = hta::IntegrationConfig{}, "horizon"_a = py::none(),
        "Columns: tau, u, v");

    mod.def(
        "classify_fate",
        [](const hta::NondimParams& p, std::pair<double, double> s0,
           const hta::IntegrationConfig& cfg) {
            const hta::Fate f = hta::classify_fate(p, as_vec2(s0), cfg);
            py::dict out;
            out["label"] = hta::to_string(f.label);
            out["criterion"] = hta::to_string(f.criterion);
            out["time_to_decision"] = f.time_to_decision;
            out["terminal_state"] = std::make_pair(f.terminal_state.u, f.terminal_state.v);
            return out;
        },
        "p"_a, "s0"_a, "cfg"_a = hta::IntegrationConfig{});

    py::enum_<hta::BranchId>(mod, "BranchId")
        .value("StableP2Side", hta::BranchId::StableP2Side)
        .value("StableMSide", hta::BranchId::StableMSide)
        .value("UnstableP2Side", hta::BranchId::UnstableP2Side)
        .value("UnstableOriginSide", hta::BranchId::UnstableOriginSide);

    mod.def(
        "trace_branch",
        [](const hta::NondimParams& p, hta::BranchId which, double eps) {
            hta::ManifoldConfig cfg;
            cfg.seed_offset = eps;
            const hta::ManifoldBranch b = hta::trace_branch(p, which, cfg);
            py::dict out;
            out["points"] = polyline_array(b.points);
            out["termination"] = hta::to_string(b.termination);
            if (b.hit) out["hit"] = hta::to_string(*b.hit);
            return out;
        },
        "p"_a, "which"_a, "eps"_a = 1e-6);

    mod.def(
        "classify_connection",
        [](const hta::NondimParams& p) {
            hta::ManifoldConfig cfg;
            const hta::ConnectionReport rep = hta::classify_connection(p, cfg);
            py::dict out;
            out["label"] = hta::to_string(rep.label);
            out["hom_match_distance"] = rep.hom_match_distance;
            return out;
        },
        "p"_a);

    mod.def(
        "separatrix",
        [](const hta::NondimParams& p) {
            hta::ManifoldConfig cfg;
            return polyline_array(hta::separatrix(p, cfg));
        },
        "p"_a);

    mod.def("find_saddle_node_Q", &hta::find_saddle_node_Q, "A"_a, "M"_a);
    mod.def(
        "sotomayor_check",
        [](double A, double M, double Q_sn, double S) {
            const hta::SotomayorQuantities q = hta::sotomayor_check(A, M, Q_sn, S);
            return std::make_pair(q.w_dot_Fq, q.w_dot_hessian);
        },
        "A"_a, "M"_a, "Q_sn"_a, "S"_a);
    mod.def(
        "find_bt_point",
        [](double A, double M) {
            const hta::BTPoint bt = hta::find_bt_point(A, M);
            return std::make_pair(bt.Q, bt.S);
        },
        "A"_a, "M"_a);
    mod.def(
        "find_homoclinic_S",
        [](double A, double M, double Q, double lo, double hi, double tol) {
            hta::ManifoldConfig cfg;
            return hta::find_homoclinic_S(A, M, Q, lo, hi, cfg, tol);
        },
        "A"_a, "M"_a, "Q"_a, "lo"_a, "hi"_a, "tol"_a = 1e-4);
    mod.def(
        "find_heteroclinic_S",
        [](double A, double M, double Q, double lo, double hi, double tol) {
            hta::ManifoldConfig cfg;
            return hta::find_heteroclinic_S(A, M, Q, lo, hi, cfg, tol);
        },
        "A"_a, "M"_a, "Q"_a, "lo"_a, "hi"_a, "tol"_a = 1e-4);

    mod.def(
        "region_diagram",
        [](double A, double M, std::pair<double, double> q_range, std::pair<double, double> s_range,
           int nq, int ns) {
            hta::ManifoldConfig cfg;
            const hta::RegionDiagram d =
                hta::region_diagram(A, M, q_range.first, q_range.second, s_range.first,
                                    s_range.second, nq, ns, cfg);
            py::list rows;
            for (int j = 0; j < d.ns; ++j) {
                py::list row;
                for (int i = 0; i < d.nq; ++i) row.append(hta::to_string(d.at(i, j)));
                rows.append(row);
            }
            return rows;
        },
        "A"_a, "M"_a, "q_range"_a, "s_range"_a, "nq"_a = 16, "ns"_a = 16);

    mod.def(
        "compute_basins",
        [](const hta::NondimParams& p, std::pair<double, double> u_range,
           std::pair<double, double> v_range, int resolution, const hta::IntegrationConfig& cfg,
           int threads) {
            const hta::BasinBox box{u_range.first, u_range.second, v_range.first, v_range.second};
            const hta::BasinGrid grid = hta::compute_basins(p, box, resolution, cfg, threads);
            py::array_t<int8_t> arr({grid.nv, grid.nu});
            auto view = arr.mutable_unchecked<2>();
            for (int j = 0; j < grid.nv; ++j)
                for (int i = 0; i < grid.nu; ++i) {
                    int8_t code = 3;
                    switch (grid.at(i, j)) {
                        case hta::FateLabel::ToOrigin: code = 0; break;
                        case hta::FateLabel::ToP2: code = 1; break;
                        case hta::FateLabel::ToCycle: code = 2; break;
                        case hta::FateLabel::Undecided: code = 3; break;
                    }
                    view(j, i) = code;
                }
            const hta::BasinFractions f = hta::basin_area_fraction(grid);
            py::dict out;
            out["labels"] = arr;
            out["legend"] = "0=ToOrigin 1=ToP2 2=ToCycle 3=Undecided";
            out["fractions"] =
                py::dict("to_p2"_a = f.to_p2, "to_origin"_a = f.to_origin, "to_cycle"_a = f.to_cycle,
                         "undecided"_a = f.undecided);
            return out;
        },
        "p"_a, "u_range"_a = std::make_pair(0.0, 1.0), "v_range"_a = std::make_pair(0.0, 1.0),
        "resolution"_a = 100, "cfg"_a = hta::IntegrationConfig{}, "threads"_a = 0);

    mod.def(
        "extract_unstable_cycle",
        [](const hta::NondimParams& p, const hta::IntegrationConfig& cfg, double displacement) {
            const hta::LimitCycle cycle = hta::extract_unstable_cycle(p, cfg, displacement);
            py::dict out;
            out["points"] = polyline_array(cycle.points);
            out["period"] = cycle.period;
            out["closure_defect"] = cycle.closure_defect;
            out["amplitude"] = cycle.amplitude;
            return out;
        },
        "p"_a, "cfg"_a = hta::IntegrationConfig{}, "displacement"_a = 1e-2);
}
