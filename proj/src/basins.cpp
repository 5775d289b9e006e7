#include "hta/basins.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <thread>

#include "hta/trace.hpp"

namespace hta {

std::vector<Vec2> BasinGrid::boundary_cells() const {
    std::vector<Vec2> out;
    auto decided = [](FateLabel l) { return l == FateLabel::ToP2 || l == FateLabel::ToOrigin; };
    for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < nu; ++i) {
            const FateLabel l = at(i, j);
            if (!decided(l)) continue;
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                const int ii = i + di[k];
                const int jj = j + dj[k];
                if (ii < 0 || ii >= nu || jj < 0 || jj >= nv) continue;
                const FateLabel ln = at(ii, jj);
                if (decided(ln) && ln != l) {
                    out.push_back({u_at(i), v_at(j)});
                    break;
                }
            }
        }
    }
    return out;
}

BasinGrid compute_basins(const NondimParams& p, const BasinBox& box, int resolution,
                         const IntegrationConfig& cfg, int threads) {
    if (resolution <= 0) throw std::invalid_argument("resolution must be positive");
    if (!(box.u_lo < box.u_hi && box.v_lo < box.v_hi) || box.u_lo < 0.0 || box.v_lo < 0.0)
        throw std::invalid_argument("basin box must be nonnegative with lo < hi");

    BasinGrid grid;
    grid.params = p;
    grid.box = box;
    grid.nu = grid.nv = resolution;
    grid.labels.assign(static_cast<std::size_t>(resolution) * resolution, FateLabel::Undecided);

    const FateClassifier classifier(p, cfg);
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, resolution));

    std::atomic<int> next_row{0};
    auto worker = [&]() {
        for (;;) {
            const int j = next_row.fetch_add(1);
            if (j >= grid.nv) return;
            for (int i = 0; i < grid.nu; ++i) {
                const Fate fate = classifier.classify({grid.u_at(i), grid.v_at(j)});
                grid.labels[static_cast<std::size_t>(j) * grid.nu + i] = fate.label;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return grid;
}

BasinFractions basin_area_fraction(const BasinGrid& grid) {
    BasinFractions f;
    const double total = static_cast<double>(grid.labels.size());
    for (FateLabel l : grid.labels) {
        switch (l) {
            case FateLabel::ToP2: f.to_p2 += 1.0; break;
            case FateLabel::ToOrigin: f.to_origin += 1.0; break;
            case FateLabel::ToCycle: f.to_cycle += 1.0; break;
            case FateLabel::Undecided: f.undecided += 1.0; break;
        }
    }
    f.to_p2 /= total;
    f.to_origin /= total;
    f.to_cycle /= total;
    f.undecided /= total;
    return f;
}

LimitCycle extract_unstable_cycle(const NondimParams& p, const IntegrationConfig& cfg,
                                  double displacement) {
    const CubicStructure c = solve_cubic_structure(p);
    if (!c.has_pair()) throw NumericalError("extract_unstable_cycle: delta <= 0");
    const Vec2 p2{c.u2, c.u2};

    TraceSpec spec;
    spec.backward = true;
    spec.horizon = cfg.max_time;
    spec.record_path = false;
    spec.section_enabled = true;
    spec.section_u_min = c.u2;
    spec.balls = {{{0.0, 0.0}, cfg.eq_radius, 0, true},
                  {{p.M, 0.0}, cfg.eq_radius, 1, true},
                  {{1.0, 0.0}, cfg.eq_radius, 2, true},
                  {{c.u1, c.u1}, cfg.eq_radius, 3, true},
                  {p2, cfg.attractor_radius, 4, true}};

    const TraceOutcome out = trace_orbit(p, p2 + Vec2{displacement, 0.0}, cfg, spec);
    if (out.end != TraceOutcome::End::CycleConverged)
        throw NumericalError("extract_unstable_cycle: backward returns did not converge onto a cycle "
                             "(S outside (S*, S**))");

    LimitCycle cycle;
    cycle.points = out.loop;
    cycle.period = out.period;
    cycle.closure_defect = out.closure_defect;
    cycle.amplitude = out.loop.front().u - c.u2;
    return cycle;
}

int winding_number(const std::vector<Vec2>& loop, const Vec2& center) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
        const Vec2 a = loop[i] - center;
        const Vec2 b = loop[i + 1] - center;
        total += std::atan2(a.u * b.v - a.v * b.u, a.u * b.u + a.v * b.v);
    }
    return static_cast<int>(std::lround(total / two_pi));
}

double cycle_max_floquet_multiplier(const NondimParams& p, const LimitCycle& cycle,
                                    const IntegrationConfig& cfg) {
    (void)cfg;
    if (cycle.points.empty()) throw std::invalid_argument("empty cycle");
    // state + variational equation, fixed-step RK4 over one period
    using Y = std::array<double, 6>; // u, v, m11, m12, m21, m22
    const NondimParams pp = p;
    auto rhs = [&pp](const Y& y) -> Y {
        const Vec2 f = vector_field(pp, {y[0], y[1]});
        const Mat2 j = jacobian(pp, {y[0], y[1]});
        return {f.u,
                f.v,
                j.a11 * y[2] + j.a12 * y[4],
                j.a11 * y[3] + j.a12 * y[5],
                j.a21 * y[2] + j.a22 * y[4],
                j.a21 * y[3] + j.a22 * y[5]};
    };
    auto axpy = [](const Y& a, double c, const Y& b) {
        Y r;
        for (int i = 0; i < 6; ++i) r[i] = a[i] + c * b[i];
        return r;
    };

    Y y{cycle.points.front().u, cycle.points.front().v, 1.0, 0.0, 0.0, 1.0};
    const int steps = std::max(20000, static_cast<int>(cycle.period / 0.005));
    const double h = cycle.period / steps;
    for (int s = 0; s < steps; ++s) {
        const Y k1 = rhs(y);
        const Y k2 = rhs(axpy(y, 0.5 * h, k1));
        const Y k3 = rhs(axpy(y, 0.5 * h, k2));
        const Y k4 = rhs(axpy(y, h, k3));
        for (int i = 0; i < 6; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const Mat2 monodromy{y[2], y[3], y[4], y[5]};
    const EigenDecomposition e = eigen_2x2(monodromy);
    return std::max(std::abs(e.lambda1), std::abs(e.lambda2));
}

} // namespace hta
