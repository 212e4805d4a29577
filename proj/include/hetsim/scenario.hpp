// Deployment geometry and UE mobility.
//
// One macro site carries `sectors_per_site` co-located sector cells; picos are
// dropped uniformly inside their parent sector wedge subject to minimum
// separation constraints. UEs start inside pico hotspots and move on straight
// lines, reflecting at the simulation region boundary.
#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/rng.hpp"
#include "hetsim/types.hpp"

namespace hetsim {

struct Region {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  bool contains(const Vec2& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

struct Cell {
  CellId id = 0;
  Tier tier = Tier::macro_cell;
  int site = 0;    // parent macro site
  int sector = 0;  // sector index within the site (owning sector for picos)
  Vec2 position;
  double azimuth_rad = 0.0;  // sector boresight; unused for picos
  double tx_power_dbm = 0.0;
  double reb_db = 0.0;    // current learned range-expansion bias
  bool sectored = true;   // single-sector macro sites radiate omnidirectionally
};

struct MacroSite {
  Vec2 position;
  std::vector<double> sector_azimuth_rad;
};

struct PicoSite {
  Vec2 position;
  int site = 0;
  int sector = 0;
};

struct Topology {
  std::vector<MacroSite> sites;
  std::vector<PicoSite> picos;
  double hotspot_radius_m = 0.0;
  double inter_site_distance_m = 0.0;
  int sectors_per_site = 3;
  double sector_radius_m = 0.0;  // wedge radius used for pico/UE placement
  Region region;
  std::vector<Cell> cells;  // macro sector cells first, then picos

  int macro_cell_count() const {
    return static_cast<int>(sites.size()) * sectors_per_site;
  }
};

struct UEState {
  UeId id = 0;
  Vec2 position;
  double speed_kmh = 0.0;
  double direction_rad = 0.0;  // [0, 2*pi)
  CellId serving_cell = -1;
  double avg_rate_bps = 0.0;   // windowed average rate
  double inst_rate_bps = 0.0;  // rate served this TTI
};

class ConfigurationError : public std::runtime_error {
 public:
  explicit ConfigurationError(const std::string& what) : std::runtime_error(what) {}
};

// Places sites, sector cells and picos. Pico positions are rejection-sampled
// inside the parent sector wedge until the macro-pico and pico-pico
// separations hold; a bounded number of attempts guards against infeasible
// configs (throws ConfigurationError naming the violated constraint).
Topology build_topology(const ScenarioConfig& sc, const RadioConfig& rc, RngStream& rng);

// Drops ues_per_sector UEs per sector, uniform in the hotspot disc of the
// sector's picos (round-robin across picos; uniform in the sector wedge when
// the sector has none). Speeds come from the velocity set unless
// fixed_velocity_kmh pins them. serving_cell is left unset (-1); callers
// attach UEs via strongest biased RSRP once the channel exists.
std::vector<UEState> drop_ues(const Topology& topo, const ScenarioConfig& sc, RngStream& rng);

// Picks the strongest-biased-RSRP serving cell for each UE.
// rsrp_dbm(ue_index, cell_id) must return the biased measurement.
void assign_initial_serving(std::vector<UEState>& ues,
                            const std::vector<Cell>& cells,
                            const std::function<double(int, CellId)>& biased_rsrp_dbm);

// Advances one UE by dt along its heading, reflecting at the region border.
// Speed is preserved exactly; direction changes only on reflection.
void step_mobility(UEState& ue, int dt_ms, const Region& region);

}  // namespace hetsim
