#ifndef HTA_EXPORT_HPP
#define HTA_EXPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hta/basins.hpp"
#include "hta/bifurcation.hpp"
#include "hta/equilibria.hpp"
#include "hta/integrate.hpp"
#include "hta/manifolds.hpp"

namespace hta {

inline constexpr int kSchemaVersion = 1;

/// Fixed "%.17g" rendering so identical runs emit byte-identical files.
std::string format_double(double x);

void write_text_file(const std::string& path, const std::string& content);

std::string trajectory_csv(const Trajectory& traj);          // tau,u,v
std::string polyline_csv(const std::vector<Vec2>& pts);      // u,v
std::string basin_csv(const BasinGrid& grid);                // u,v,label
std::string basin_label_file(const BasinGrid& grid);         // JSON header + row-major codes
std::string region_csv(const RegionDiagram& d);              // Q,S,label

nlohmann::json equilibrium_report_json(const NondimParams& p, const EquilibriumReport& rep);
nlohmann::json bifurcation_set_json(const BifurcationSet& set);
nlohmann::json region_curves_json(const RegionDiagram& d, const BifurcationSet& set);

} // namespace hta

#endif
