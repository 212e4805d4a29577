#include "hetsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hetsim {

namespace {

constexpr int kMaxPlacementAttempts = 10000;

// Hexagonal-grid site offsets around the origin, in units of ISD.
const Vec2 kSiteOffsets[7] = {
    {0.0, 0.0},          {1.0, 0.0},           {0.5, 0.8660254038},
    {-0.5, 0.8660254038}, {-1.0, 0.0},          {-0.5, -0.8660254038},
    {0.5, -0.8660254038}};

// Uniform point in the 2*pi/sectors wedge of radius `radius` around
// `azimuth`, area-uniform in r.
Vec2 sample_in_wedge(const Vec2& center, double azimuth, double wedge_halfwidth,
                     double radius, double min_radius, RngStream& rng) {
  const double a = azimuth + rng.uniform(-wedge_halfwidth, wedge_halfwidth);
  const double lo = min_radius / radius;
  const double u = rng.uniform(lo * lo, 1.0);
  const double r = radius * std::sqrt(u);
  return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

Vec2 sample_in_disc(const Vec2& center, double radius, RngStream& rng) {
  const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = radius * std::sqrt(rng.uniform());
  return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

}  // namespace

Topology build_topology(const ScenarioConfig& sc, const RadioConfig& rc, RngStream& rng) {
  Topology topo;
  topo.hotspot_radius_m = sc.hotspot_radius_m;
  topo.inter_site_distance_m = sc.isd_m;
  topo.sectors_per_site = sc.sectors_per_site;
  topo.sector_radius_m = sc.isd_m / std::sqrt(3.0);

  for (int s = 0; s < sc.site_count; ++s) {
    MacroSite site;
    site.position = kSiteOffsets[s] * sc.isd_m;
    for (int k = 0; k < sc.sectors_per_site; ++k)
      site.sector_azimuth_rad.push_back(2.0 * std::numbers::pi * k / sc.sectors_per_site);
    topo.sites.push_back(site);
  }

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const auto& site : topo.sites) {
    min_x = std::min(min_x, site.position.x);
    max_x = std::max(max_x, site.position.x);
    min_y = std::min(min_y, site.position.y);
    max_y = std::max(max_y, site.position.y);
  }
  const double extent = topo.sector_radius_m + sc.region_margin_m;
  topo.region = Region{min_x - extent, min_y - extent, max_x + extent, max_y + extent};

  const double wedge_halfwidth = std::numbers::pi / sc.sectors_per_site;
  const double pico_ring_m = topo.sector_radius_m - sc.hotspot_radius_m;
  if (sc.picos_per_sector > 0 && pico_ring_m <= sc.min_macro_pico_m)
    throw ConfigurationError(
        "pico placement infeasible: sector radius minus hotspot radius (" +
        std::to_string(pico_ring_m) + " m) does not exceed min_macro_pico_m=" +
        std::to_string(sc.min_macro_pico_m));
  for (int s = 0; s < sc.site_count; ++s) {
    for (int k = 0; k < sc.sectors_per_site; ++k) {
      for (int p = 0; p < sc.picos_per_sector; ++p) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
          // Keep the hotspot disc inside the placement wedge/region.
          const Vec2 pos = sample_in_wedge(
              topo.sites[static_cast<size_t>(s)].position,
              topo.sites[static_cast<size_t>(s)].sector_azimuth_rad[static_cast<size_t>(k)],
              wedge_halfwidth, pico_ring_m, sc.min_macro_pico_m, rng);
          bool ok = distance(pos, topo.sites[static_cast<size_t>(s)].position) >=
                    sc.min_macro_pico_m;
          for (const auto& other : topo.picos)
            ok = ok && distance(pos, other.position) >= sc.min_pico_pico_m;
          if (ok) {
            topo.picos.push_back(PicoSite{pos, s, k});
            placed = true;
          }
        }
        if (!placed)
          throw ConfigurationError(
              "pico placement failed: cannot satisfy min_macro_pico_m=" +
              std::to_string(sc.min_macro_pico_m) + " / min_pico_pico_m=" +
              std::to_string(sc.min_pico_pico_m) + " within the sector wedge");
      }
    }
  }

  CellId next_id = 0;
  for (int s = 0; s < sc.site_count; ++s) {
    for (int k = 0; k < sc.sectors_per_site; ++k) {
      Cell cell;
      cell.id = next_id++;
      cell.tier = Tier::macro_cell;
      cell.site = s;
      cell.sector = k;
      cell.position = topo.sites[static_cast<size_t>(s)].position;
      cell.azimuth_rad = topo.sites[static_cast<size_t>(s)].sector_azimuth_rad[static_cast<size_t>(k)];
      cell.tx_power_dbm = rc.macro_tx_power_dbm;
      cell.sectored = sc.sectors_per_site > 1;
      topo.cells.push_back(cell);
    }
  }
  for (const auto& pico : topo.picos) {
    Cell cell;
    cell.id = next_id++;
    cell.tier = Tier::pico_cell;
    cell.site = pico.site;
    cell.sector = pico.sector;
    cell.position = pico.position;
    cell.tx_power_dbm = rc.pico_tx_power_dbm;
    topo.cells.push_back(cell);
  }
  return topo;
}

std::vector<UEState> drop_ues(const Topology& topo, const ScenarioConfig& sc, RngStream& rng) {
  std::vector<UEState> ues;
  const double wedge_halfwidth = std::numbers::pi / sc.sectors_per_site;
  UeId next_id = 0;
  for (int s = 0; s < sc.site_count; ++s) {
    for (int k = 0; k < sc.sectors_per_site; ++k) {
      std::vector<const PicoSite*> sector_picos;
      for (const auto& p : topo.picos)
        if (p.site == s && p.sector == k) sector_picos.push_back(&p);

      for (int u = 0; u < sc.ues_per_sector; ++u) {
        UEState ue;
        ue.id = next_id++;
        if (!sector_picos.empty()) {
          const PicoSite* hotspot = sector_picos[static_cast<size_t>(u) % sector_picos.size()];
          ue.position = sample_in_disc(hotspot->position, topo.hotspot_radius_m, rng);
        } else {
          ue.position = sample_in_wedge(
              topo.sites[static_cast<size_t>(s)].position,
              topo.sites[static_cast<size_t>(s)].sector_azimuth_rad[static_cast<size_t>(k)],
              wedge_halfwidth, topo.sector_radius_m, 10.0, rng);
        }
        ue.speed_kmh = sc.fixed_velocity_kmh > 0.0 ? sc.fixed_velocity_kmh
                                                   : rng.pick(sc.velocity_set_kmh);
        ue.direction_rad = rng.uniform(0.0, 2.0 * std::numbers::pi);
        ue.serving_cell = -1;
        ues.push_back(ue);
      }
    }
  }
  return ues;
}

void assign_initial_serving(std::vector<UEState>& ues, const std::vector<Cell>& cells,
                            const std::function<double(int, CellId)>& biased_rsrp_dbm) {
  for (size_t i = 0; i < ues.size(); ++i) {
    double best = -1e300;
    CellId best_cell = -1;
    for (const auto& cell : cells) {
      const double r = biased_rsrp_dbm(static_cast<int>(i), cell.id);
      if (r > best) {
        best = r;
        best_cell = cell.id;
      }
    }
    ues[i].serving_cell = best_cell;
  }
}

void step_mobility(UEState& ue, int dt_ms, const Region& region) {
  const double dist = kmh_to_mps(ue.speed_kmh) * (dt_ms * 1e-3);
  double x = ue.position.x + dist * std::cos(ue.direction_rad);
  double y = ue.position.y + dist * std::sin(ue.direction_rad);
  double dir = ue.direction_rad;

  // Mirror reflection; the loop absorbs multi-bounce steps.
  bool bounced = true;
  while (bounced) {
    bounced = false;
    if (x < region.min_x) {
      x = 2.0 * region.min_x - x;
      dir = std::numbers::pi - dir;
      bounced = true;
    } else if (x > region.max_x) {
      x = 2.0 * region.max_x - x;
      dir = std::numbers::pi - dir;
      bounced = true;
    }
    if (y < region.min_y) {
      y = 2.0 * region.min_y - y;
      dir = -dir;
      bounced = true;
    } else if (y > region.max_y) {
      y = 2.0 * region.max_y - y;
      dir = -dir;
      bounced = true;
    }
  }
  ue.position = {x, y};
  ue.direction_rad = wrap_angle(dir);
}

}  // namespace hetsim
