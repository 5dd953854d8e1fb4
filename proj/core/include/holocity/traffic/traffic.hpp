#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "holocity/analytics/heat.hpp"
#include "holocity/geo/geometry.hpp"
#include "holocity/sdm/entity.hpp"

namespace holocity::traffic {

inline constexpr double kSmoothKmh = 40.0;
inline constexpr double kSlowKmh = 20.0;
inline constexpr Millis kStalenessMs = 10 * 60 * 1000;

enum class CongestionLevel { Smooth, Slow, Congested, Unknown };

std::string_view level_name(CongestionLevel level) noexcept;

// >= 40 km/h Smooth, [20, 40) Slow, below 20 Congested.
CongestionLevel level_of(double speed_kmh) noexcept;

struct CongestionSample {
  EntityId segment_id;
  Millis t = 0;
  double speed_kmh = 0.0;
};

// Line form: one level per registered segment.
struct Frame {
  Millis t = 0;
  std::map<EntityId, CongestionLevel> levels;

  friend bool operator==(const Frame&, const Frame&) = default;
};

// Plane form: one level per grid cell, row-major like HeatGrid.
struct ArealFrame {
  Millis t = 0;
  analytics::GridShape shape;
  std::vector<CongestionLevel> levels;
  std::vector<std::optional<double>> mean_speed_kmh;
};

// Per-segment speed time series. Ingest is serialized by the caller; const
// members may run concurrently.
class TrafficStore {
 public:
  // Re-registering a segment replaces its geometry and keeps its samples.
  void register_segment(const EntityId& segment, geo::Polyline geometry);
  bool has_segment(const EntityId& segment) const noexcept { return segments_.contains(segment); }
  std::vector<EntityId> segment_ids() const;

  // Throws UnknownSegment or NegativeSpeed (also for non-finite speeds).
  // A second sample at the same (segment, t) replaces the first.
  void ingest(const CongestionSample& sample);
  // Validates the whole batch before storing any of it.
  void ingest_batch(const std::vector<CongestionSample>& samples);

  // Latest sample with sample.t <= t, if it is at most 10 minutes old.
  std::optional<double> fresh_speed(const EntityId& segment, Millis t) const;
  const std::map<Millis, double>* samples(const EntityId& segment) const;
  std::optional<Millis> latest_sample_time() const;

  Frame conditions_at(Millis t) const;
  ArealFrame areal_conditions(Millis t, const geo::BBox& box, double cell_size) const;
  // Frames at t0, t0 + step, ... up to t1. Throws InvalidRange unless
  // t0 <= t1 and step > 0.
  std::vector<Frame> replay_frames(Millis t0, Millis t1, Millis step) const;

 private:
  void check(const CongestionSample& sample) const;

  struct Segment {
    geo::Polyline geometry;
    std::map<Millis, double> samples;
  };
  std::map<EntityId, Segment> segments_;
};

}  // namespace holocity::traffic
