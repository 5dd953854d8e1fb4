#pragma once

#include <string_view>
#include <vector>

#include "holocity/geo/geometry.hpp"
#include "holocity/sdm/entity.hpp"

namespace holocity::traffic {

enum class RouteStatus { NotDeparted, InTransit, Arrived };

std::string_view route_status_name(RouteStatus status) noexcept;

// Schedule-driven vehicle on a polyline: departs at t0 and runs each leg
// (polyline segment) at a constant speed.
class RouteSchedule {
 public:
  // Throws InvalidArgument unless there is one positive speed per leg, and
  // InvalidGeometry if any leg has zero length.
  RouteSchedule(EntityId line_id, geo::Polyline path, Millis departure, std::vector<double> leg_speeds_kmh);

  const EntityId& line_id() const noexcept { return line_id_; }
  const geo::Polyline& path() const noexcept { return path_; }
  Millis departure() const noexcept { return departure_; }
  const std::vector<double>& leg_speeds_kmh() const noexcept { return speeds_; }
  // cumulative_m()[i] is the arc length from the origin to vertex i.
  const std::vector<double>& cumulative_m() const noexcept { return cumulative_; }
  double total_length_m() const noexcept { return cumulative_.back(); }
  double total_duration_s() const noexcept { return leg_end_s_.back(); }

  // Same route driven from the terminal back to the origin with the legs'
  // speeds mirrored.
  RouteSchedule reversed(Millis departure) const;

  // Arc length covered by time t: the integral of the speed profile.
  double distance_at(Millis t) const noexcept;

 private:
  EntityId line_id_;
  geo::Polyline path_;
  Millis departure_;
  std::vector<double> speeds_;
  std::vector<double> cumulative_;
  std::vector<double> leg_end_s_;  // elapsed seconds at the end of each leg
};

struct RoutePosition {
  geo::GeoPoint point;
  RouteStatus status = RouteStatus::NotDeparted;
  double arc_m = 0.0;
};

// Linear interpolation in lon/lat along the leg holding distance_at(t).
RoutePosition route_position(const RouteSchedule& schedule, Millis t);

}  // namespace holocity::traffic
