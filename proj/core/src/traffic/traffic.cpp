#include "holocity/traffic/traffic.hpp"

#include <cmath>

#include "holocity/error.hpp"

namespace holocity::traffic {

std::string_view level_name(CongestionLevel level) noexcept {
  switch (level) {
    case CongestionLevel::Smooth: return "Smooth";
    case CongestionLevel::Slow: return "Slow";
    case CongestionLevel::Congested: return "Congested";
    case CongestionLevel::Unknown: return "Unknown";
  }
  return "Unknown";
}

CongestionLevel level_of(double speed_kmh) noexcept {
  if (speed_kmh >= kSmoothKmh) return CongestionLevel::Smooth;
  if (speed_kmh >= kSlowKmh) return CongestionLevel::Slow;
  return CongestionLevel::Congested;
}

void TrafficStore::register_segment(const EntityId& segment, geo::Polyline geometry) {
  if (segment.kind() != EntityKind::RoadSegment) {
    throw Error(ErrorCode::WrongKind, segment.str() + " is not a RoadSegment");
  }
  auto it = segments_.find(segment);
  if (it == segments_.end()) {
    segments_.emplace(segment, Segment{std::move(geometry), {}});
  } else {
    it->second.geometry = std::move(geometry);
  }
}

std::vector<EntityId> TrafficStore::segment_ids() const {
  std::vector<EntityId> ids;
  for (const auto& [id, seg] : segments_) ids.push_back(id);
  return ids;
}

void TrafficStore::check(const CongestionSample& s) const {
  if (!segments_.contains(s.segment_id)) throw Error(ErrorCode::UnknownSegment, s.segment_id.str());
  if (!(s.speed_kmh >= 0.0) || !std::isfinite(s.speed_kmh)) {
    throw Error(ErrorCode::NegativeSpeed, s.segment_id.str() + " speed " + std::to_string(s.speed_kmh));
  }
}

void TrafficStore::ingest(const CongestionSample& sample) {
  check(sample);
  segments_.at(sample.segment_id).samples.insert_or_assign(sample.t, sample.speed_kmh);
}

void TrafficStore::ingest_batch(const std::vector<CongestionSample>& samples) {
  for (const auto& s : samples) check(s);
  for (const auto& s : samples) segments_.at(s.segment_id).samples.insert_or_assign(s.t, s.speed_kmh);
}

const std::map<Millis, double>* TrafficStore::samples(const EntityId& segment) const {
  auto it = segments_.find(segment);
  return it == segments_.end() ? nullptr : &it->second.samples;
}

std::optional<Millis> TrafficStore::latest_sample_time() const {
  std::optional<Millis> latest;
  for (const auto& [id, seg] : segments_) {
    if (!seg.samples.empty() && (!latest || seg.samples.rbegin()->first > *latest)) {
      latest = seg.samples.rbegin()->first;
    }
  }
  return latest;
}

std::optional<double> TrafficStore::fresh_speed(const EntityId& segment, Millis t) const {
  auto it = segments_.find(segment);
  if (it == segments_.end()) return std::nullopt;
  const auto& samples = it->second.samples;
  auto s = samples.upper_bound(t);
  if (s == samples.begin()) return std::nullopt;
  --s;
  if (t - s->first > kStalenessMs) return std::nullopt;
  return s->second;
}

Frame TrafficStore::conditions_at(Millis t) const {
  Frame f;
  f.t = t;
  for (const auto& [id, seg] : segments_) {
    auto speed = fresh_speed(id, t);
    f.levels.emplace(id, speed ? level_of(*speed) : CongestionLevel::Unknown);
  }
  return f;
}

ArealFrame TrafficStore::areal_conditions(Millis t, const geo::BBox& box, double cell_size) const {
  ArealFrame a;
  a.t = t;
  a.shape = analytics::GridShape::covering(box, cell_size);
  const std::size_t cells = a.shape.rows * a.shape.cols;
  std::vector<double> sum(cells, 0.0);
  std::vector<std::size_t> count(cells, 0);
  for (const auto& [id, seg] : segments_) {
    auto speed = fresh_speed(id, t);
    if (!speed) continue;
    const auto& bb = seg.geometry.bbox();
    if (!bb.intersects(box)) continue;
    const geo::Geometry geom = seg.geometry;
    // Only cells overlapping the segment's bbox can intersect it.
    const std::size_t c0 = a.shape.col_of(std::max(bb.min_lon, box.min_lon));
    const std::size_t c1 = a.shape.col_of(std::min(bb.max_lon, box.max_lon));
    const std::size_t r0 = a.shape.row_of(std::max(bb.min_lat, box.min_lat));
    const std::size_t r1 = a.shape.row_of(std::min(bb.max_lat, box.max_lat));
    for (std::size_t r = (r0 > 0 ? r0 - 1 : 0); r <= std::min(r1 + 1, a.shape.rows - 1); ++r) {
      for (std::size_t c = (c0 > 0 ? c0 - 1 : 0); c <= std::min(c1 + 1, a.shape.cols - 1); ++c) {
        if (!geo::intersects(geom, a.shape.cell_box(r, c))) continue;
        sum[r * a.shape.cols + c] += *speed;
        ++count[r * a.shape.cols + c];
      }
    }
  }
  a.levels.assign(cells, CongestionLevel::Unknown);
  a.mean_speed_kmh.assign(cells, std::nullopt);
  for (std::size_t i = 0; i < cells; ++i) {
    if (count[i] == 0) continue;
    const double mean = sum[i] / static_cast<double>(count[i]);
    a.mean_speed_kmh[i] = mean;
    a.levels[i] = level_of(mean);
  }
  return a;
}

std::vector<Frame> TrafficStore::replay_frames(Millis t0, Millis t1, Millis step) const {
  if (t0 > t1) throw Error(ErrorCode::InvalidRange, "replay needs from <= to");
  if (step <= 0) throw Error(ErrorCode::InvalidRange, "replay step must be positive");
  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>((t1 - t0) / step) + 1);
  for (Millis t = t0; t <= t1; t += step) {
    frames.push_back(conditions_at(t));
    if (t > t1 - step) break;  // next step would overflow past t1
  }
  return frames;
}

}  // namespace holocity::traffic
