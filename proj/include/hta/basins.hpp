#ifndef HTA_BASINS_HPP
#define HTA_BASINS_HPP

#include <vector>

#include "hta/integrate.hpp"

namespace hta {

struct BasinBox {
    double u_lo = 0.0;
    double u_hi = 1.0;
    double v_lo = 0.0;
    double v_hi = 1.0;
};

struct BasinFractions {
    double to_p2 = 0.0;
    double to_origin = 0.0;
    double to_cycle = 0.0;
    double undecided = 0.0;
};

/// Cell-centre fate labels over a rectangular grid.
struct BasinGrid {
    NondimParams params;
    BasinBox box;
    int nu = 0;
    int nv = 0;
    std::vector<FateLabel> labels; ///< row-major, labels[j*nu + i]

    double u_at(int i) const { return box.u_lo + (i + 0.5) * (box.u_hi - box.u_lo) / nu; }
    double v_at(int j) const { return box.v_lo + (j + 0.5) * (box.v_hi - box.v_lo) / nv; }
    FateLabel at(int i, int j) const { return labels[static_cast<std::size_t>(j) * nu + i]; }
    double cell_width() const { return (box.u_hi - box.u_lo) / nu; }

    /// Centres of decided cells having a 4-neighbour with the opposite
    /// attractor label (the discrete basin boundary).
    std::vector<Vec2> boundary_cells() const;
};

/// Classifies every cell centre with integrate's fate machinery; cells are
/// processed in parallel (the classifier is shared read-only).
BasinGrid compute_basins(const NondimParams& p, const BasinBox& box, int resolution,
                         const IntegrationConfig& cfg, int threads = 0);

BasinFractions basin_area_fraction(const BasinGrid& grid);

/// The unstable limit cycle of case ii, reached by backward integration from
/// a point displaced from P2 (unstable cycles attract in reversed time).
struct LimitCycle {
    std::vector<Vec2> points; ///< closed polyline (first ~ last)
    double period = 0.0;
    double closure_defect = 0.0;
    double amplitude = 0.0; ///< section radius relative to P2
};

/// Throws NumericalError when the backward returns do not converge onto a
/// cycle (S outside (S*, S**)); that failure is the bisection probe for S**.
LimitCycle extract_unstable_cycle(const NondimParams& p, const IntegrationConfig& cfg,
                                  double displacement = 1e-2);

/// Winding number of a closed polyline around a point.
int winding_number(const std::vector<Vec2>& loop, const Vec2& center);

/// Largest Floquet multiplier magnitude: the linearised flow (variational
/// equation) integrated over one period along the cycle.
double cycle_max_floquet_multiplier(const NondimParams& p, const LimitCycle& cycle,
                                    const IntegrationConfig& cfg);

} // namespace hta

#endif
