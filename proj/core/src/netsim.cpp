#include "bandsim/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace bandsim {

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

double dbm_to_mw(double dbm) noexcept { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) noexcept { return 10.0 * std::log10(mw); }

std::vector<Point> hex_layout(std::size_t count, double radius_m, Point offset_radius_units) {
  if (!(radius_m > 0.0)) throw Error(ErrorCode::invalid_argument, "cell radius must be positive");
  const double isd = std::sqrt(3.0) * radius_m;
  // axial coordinates (q, r); ring index is the hex distance from the origin
  struct Site {
    int ring;
    double angle;
    Point p;
  };
  std::vector<Site> sites;
  int rings = 0;
  while (static_cast<std::size_t>(1 + 3 * rings * (rings + 1)) < count) ++rings;
  for (int q = -rings; q <= rings; ++q) {
    for (int r = -rings; r <= rings; ++r) {
      const int ring = std::max({std::abs(q), std::abs(r), std::abs(q + r)});
      if (ring > rings) continue;
      const Point p{isd * (q + 0.5 * r), isd * (std::sqrt(3.0) / 2.0 * r)};
      double angle = std::atan2(p.y, p.x);
      if (angle < 0.0) angle += 2.0 * std::numbers::pi;
      // snap so that lattice round-off cannot reorder equal angles
      angle = std::round(angle * 1e9) / 1e9;
      sites.push_back({ring, ring == 0 ? 0.0 : angle, p});
    }
  }
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    return std::tie(a.ring, a.angle) < std::tie(b.ring, b.angle);
  });
  const Point shift = radius_m * offset_radius_units;
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sites[i].p + shift);
  return out;
}

double PathlossModel::loss_db(double distance_m) const noexcept {
  const double d_km = std::max(distance_m, min_distance_m) / 1000.0;
  return intercept_db + slope_db * std::log10(d_km);
}

double RadioParameters::noise_dbm(double bandwidth_hz) const noexcept {
  return noise_dbm_per_10mhz + 10.0 * std::log10(bandwidth_hz / 10e6);
}

NetworkModel::NetworkModel(std::vector<Point> bs_positions, double tx_power_dbm,
                           double bandwidth_hz, double cell_radius_m, Point grid_offset)
    : bs_(std::move(bs_positions)),
      tx_power_dbm_(tx_power_dbm),
      bandwidth_hz_(bandwidth_hz),
      cell_radius_m_(cell_radius_m),
      grid_offset_(grid_offset),
      attached_(bs_.size(), 0) {
  if (bs_.empty()) throw Error(ErrorCode::invalid_argument, "network without base stations");
  if (!(bandwidth_hz > 0.0)) throw Error(ErrorCode::invalid_argument, "bandwidth must be positive");
}

void NetworkModel::attach(std::size_t bs, std::size_t count) {
  if (bs >= attached_.size()) throw Error(ErrorCode::invalid_argument, "BS index out of range");
  attached_[bs] += count;
}

void NetworkModel::clear_attachments() { std::fill(attached_.begin(), attached_.end(), 0); }

double NetworkModel::received_dbm(Point ue, std::size_t bs, const RadioParameters& radio) const {
  return tx_power_dbm_ + radio.antenna_gain_db - radio.pathloss.loss_db(distance(ue, bs_.at(bs)));
}

SinrResult sinr(Point ue, const NetworkModel& net, double noise_dbm, const RadioParameters& radio) {
  double total = 0.0;
  double best = -1.0;
  std::size_t serving = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double p = dbm_to_mw(net.received_dbm(ue, i, radio));
    total += p;
    if (p > best) {
      best = p;
      serving = i;
    }
  }
  const double interference = std::max(0.0, total - best);
  return {best / (dbm_to_mw(noise_dbm) + interference), serving};
}

SinrResult sinr(Point ue, const NetworkModel& net, const RadioParameters& radio) {
  return sinr(ue, net, radio.noise_dbm(net.bandwidth_hz()), radio);
}

double max_throughput_mbps(double sinr_linear, double bandwidth_hz, std::size_t n_attached,
                           double efficiency_cap) {
  if (n_attached == 0) throw Error(ErrorCode::invalid_argument, "at least one UE must be attached");
  if (sinr_linear < 0.0) throw Error(ErrorCode::invalid_argument, "SINR must be non-negative");
  const double efficiency = std::min(std::log2(1.0 + sinr_linear), efficiency_cap);
  return bandwidth_hz * efficiency / static_cast<double>(n_attached) / 1e6;
}

MobilityState mobility_step(const MobilityState& m) noexcept {
  MobilityState next = m;
  next.position = m.position + m.walk_length_m * Point{std::cos(m.angle_rad), std::sin(m.angle_rad)};
  return next;
}

Point uniform_in_disc(double radius_m, Rng& rng) {
  const double r = radius_m * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace bandsim
