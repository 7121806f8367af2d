#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bandsim/core.hpp"

namespace bandsim {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b) noexcept;

/// Hexagonal lattice with inter-site distance sqrt(3) * radius. Sites are
/// taken ring by ring around the origin (a site at the centre, then 6, 12, ...)
/// with the last ring filled partially when `count` falls inside it; within a
/// ring sites are ordered by angle. The layout is then translated by
/// offset * radius.
std::vector<Point> hex_layout(std::size_t count, double radius_m, Point offset_radius_units);

// Log-distance macro-cell pathloss, PL(dB) = intercept + slope * log10(d_km)
// with d floored at min_distance_m.
struct PathlossModel {
  double intercept_db = 128.1;
  double slope_db = 37.6;
  double min_distance_m = 35.0;

  double loss_db(double distance_m) const noexcept;
};

struct RadioParameters {
  PathlossModel pathloss;
  double antenna_gain_db = 0.0;
  double noise_dbm_per_10mhz = -101.0;
  double spectral_efficiency_cap = 6.0;  // bit/s/Hz

  /// Thermal noise over `bandwidth_hz`, scaled from the 10 MHz reference.
  double noise_dbm(double bandwidth_hz) const noexcept;
};

class NetworkModel {
 public:
  NetworkModel(std::vector<Point> bs_positions, double tx_power_dbm, double bandwidth_hz,
               double cell_radius_m = 0.0, Point grid_offset = {});

  std::span<const Point> bs_positions() const noexcept { return bs_; }
  std::size_t size() const noexcept { return bs_.size(); }
  double tx_power_dbm() const noexcept { return tx_power_dbm_; }
  double bandwidth_hz() const noexcept { return bandwidth_hz_; }
  double cell_radius_m() const noexcept { return cell_radius_m_; }
  Point grid_offset() const noexcept { return grid_offset_; }

  std::span<const std::size_t> attached() const noexcept { return attached_; }
  void attach(std::size_t bs, std::size_t count = 1);
  void clear_attachments();

  double received_dbm(Point ue, std::size_t bs, const RadioParameters& radio) const;

 private:
  std::vector<Point> bs_;
  double tx_power_dbm_;
  double bandwidth_hz_;
  double cell_radius_m_;
  Point grid_offset_;
  std::vector<std::size_t> attached_;
};

struct SinrResult {
  double linear = 0.0;
  std::size_t serving = 0;  // index of the max-received-power BS
};

/// Serving BS = strongest received power; every other BS of the same network
/// interferes. Linear SINR.
SinrResult sinr(Point ue, const NetworkModel& net, const RadioParameters& radio);
SinrResult sinr(Point ue, const NetworkModel& net, double noise_dbm,
                const RadioParameters& radio = {});

/// Shannon rate capped at `efficiency_cap`, shared equally among the
/// `n_attached` UEs on the serving BS, in Mbps.
double max_throughput_mbps(double sinr_linear, double bandwidth_hz, std::size_t n_attached,
                           double efficiency_cap = 6.0);

struct MobilityState {
  Point position;
  double angle_rad = 0.0;
  double walk_length_m = 0.0;
};

/// Straight-line step along the fixed heading.
MobilityState mobility_step(const MobilityState& m) noexcept;

/// Uniform point in a disc of the given radius around the origin.
Point uniform_in_disc(double radius_m, Rng& rng);

double dbm_to_mw(double dbm) noexcept;
double mw_to_dbm(double mw) noexcept;

}  // namespace bandsim
