#include "holocity/traffic/route.hpp"

#include <algorithm>
#include <cmath>

#include "holocity/error.hpp"

namespace holocity::traffic {

std::string_view route_status_name(RouteStatus status) noexcept {
  switch (status) {
    case RouteStatus::NotDeparted: return "NotDeparted";
    case RouteStatus::InTransit: return "InTransit";
    case RouteStatus::Arrived: return "Arrived";
  }
  return "NotDeparted";
}

RouteSchedule::RouteSchedule(EntityId line_id, geo::Polyline path, Millis departure,
                             std::vector<double> leg_speeds_kmh)
    : line_id_(std::move(line_id)), path_(std::move(path)), departure_(departure), speeds_(std::move(leg_speeds_kmh)) {
  const auto& pts = path_.points();
  if (speeds_.size() != pts.size() - 1) {
    throw Error(ErrorCode::InvalidArgument, "need one speed per leg");
  }
  for (double s : speeds_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "leg speeds must be positive");
  }
  cumulative_.reserve(pts.size());
  leg_end_s_.reserve(speeds_.size());
  cumulative_.push_back(0.0);
  double elapsed = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double leg = geo::haversine_m(pts[i - 1], pts[i]);
    if (!(leg > 0.0)) throw Error(ErrorCode::InvalidGeometry, "route has a zero-length leg");
    cumulative_.push_back(cumulative_.back() + leg);
    elapsed += leg / (speeds_[i - 1] / 3.6);
    leg_end_s_.push_back(elapsed);
  }
}

RouteSchedule RouteSchedule::reversed(Millis departure) const {
  auto pts = path_.points();
  std::reverse(pts.begin(), pts.end());
  auto speeds = speeds_;
  std::reverse(speeds.begin(), speeds.end());
  return RouteSchedule(line_id_, geo::Polyline(std::move(pts)), departure, std::move(speeds));
}

double RouteSchedule::distance_at(Millis t) const noexcept {
  const double elapsed = static_cast<double>(t - departure_) / 1000.0;
  if (elapsed <= 0.0) return 0.0;
  if (elapsed >= leg_end_s_.back()) return cumulative_.back();
  const auto leg = static_cast<std::size_t>(
      std::upper_bound(leg_end_s_.begin(), leg_end_s_.end(), elapsed) - leg_end_s_.begin());
  const double leg_start_s = leg == 0 ? 0.0 : leg_end_s_[leg - 1];
  const double d = cumulative_[leg] + (elapsed - leg_start_s) * speeds_[leg] / 3.6;
  return std::min(d, cumulative_[leg + 1]);
}

RoutePosition route_position(const RouteSchedule& schedule, Millis t) {
  const auto& pts = schedule.path().points();
  const auto& cum = schedule.cumulative_m();
  RoutePosition pos;
  if (t <= schedule.departure()) {
    pos.point = pts.front();
    pos.status = RouteStatus::NotDeparted;
    return pos;
  }
  const double arc = schedule.distance_at(t);
  pos.arc_m = arc;
  if (arc >= schedule.total_length_m()) {
    pos.point = pts.back();
    pos.status = RouteStatus::Arrived;
    return pos;
  }
  pos.status = RouteStatus::InTransit;
  const auto leg = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), arc) - cum.begin()) - 1;
  const double f = (arc - cum[leg]) / (cum[leg + 1] - cum[leg]);
  const auto& a = pts[leg];
  const auto& b = pts[leg + 1];
  pos.point.lon = a.lon + f * (b.lon - a.lon);
  pos.point.lat = a.lat + f * (b.lat - a.lat);
  pos.point.alt = a.alt + f * (b.alt - a.alt);
  return pos;
}

}  // namespace holocity::traffic
