#include <benchmark/benchmark.h>

#include <random>

#include "holocity/analytics/heat.hpp"
#include "holocity/data/generator.hpp"
#include "holocity/geo/index.hpp"
#include "holocity/scene/catalog.hpp"
#include "holocity/sdm/event_codec.hpp"
#include "holocity/sdm/store.hpp"

using namespace holocity;

namespace {

std::vector<geo::IndexEntry> boxes(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<geo::IndexEntry> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 113.9 + 0.2 * u(rng), y = 22.5 + 0.12 * u(rng), w = 2e-4 + 1e-3 * u(rng);
    out.push_back({EntityId(EntityKind::Building, "b" + std::to_string(i)),
                   geo::Footprint({{x, y}, {x + w, y}, {x + w, y + w}, {x, y + w}}), geo::Band::Above});
  }
  return out;
}

const data::GeneratedCity& city() {
  static const data::GeneratedCity c = data::generate_city(data::GenSpec{});
  return c;
}

void BM_IndexBBox(benchmark::State& state) {
  geo::GeoIndex idx;
  idx.bulk_load(boxes(static_cast<std::size_t>(state.range(0))));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (auto _ : state) {
    const double x = 113.9 + 0.19 * u(rng), y = 22.5 + 0.11 * u(rng);
    benchmark::DoNotOptimize(idx.query_bbox(geo::BBox(x, y, x + 0.01, y + 0.01)));
  }
}
BENCHMARK(BM_IndexBBox)->Arg(1000)->Arg(100000);

void BM_IndexPoint(benchmark::State& state) {
  geo::GeoIndex idx;
  idx.bulk_load(boxes(static_cast<std::size_t>(state.range(0))));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(idx.query_point(geo::GeoPoint(113.9 + 0.2 * u(rng), 22.5 + 0.12 * u(rng))));
  }
}
BENCHMARK(BM_IndexPoint)->Arg(1000)->Arg(100000);

void BM_ReplayCity(benchmark::State& state) {
  const auto& events = city().events;
  for (auto _ : state) {
    Store store;
    for (const auto& e : events) store.apply_event(e);
    benchmark::DoNotOptimize(store.last_event_id());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(BM_ReplayCity)->Unit(benchmark::kMillisecond);

void BM_DecodeEvents(benchmark::State& state) {
  std::vector<std::string> lines;
  for (const auto& e : city().events) lines.push_back(encode_event_line(e));
  for (auto _ : state) {
    for (const auto& l : lines) benchmark::DoNotOptimize(decode_event_line(l));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
}
BENCHMARK(BM_DecodeEvents)->Unit(benchmark::kMillisecond);

void BM_StateAt(benchmark::State& state) {
  Store store;
  for (const auto& e : city().events) store.apply_event(e);
  const auto ids = store.entity_ids(EntityKind::Person);
  std::mt19937_64 rng(4);
  const Millis end = store.latest_timestamp();
  for (auto _ : state) {
    benchmark::DoNotOptimize(store.state_at(ids[rng() % ids.size()], end - static_cast<Millis>(rng() % 3'600'000)));
  }
}
BENCHMARK(BM_StateAt);

void BM_TileKey(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-85, 85);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scene::tile_key_for(geo::GeoPoint(lon(rng), lat(rng)), 16));
  }
}
BENCHMARK(BM_TileKey);

void BM_TileManifest(benchmark::State& state) {
  scene::SceneCatalog cat;
  for (auto& e : boxes(20000)) {
    scene::SceneObject o;
    o.entity_id = e.id;
    o.layer_id = "above-ground/buildings";
    o.geometry = e.geometry;
    cat.add(std::move(o));
  }
  const auto tree = scene::build_layer_tree(cat);
  const auto key = scene::tile_key_for(geo::GeoPoint(114.0, 22.56), 13);
  for (auto _ : state) benchmark::DoNotOptimize(scene::objects_for_tile(cat, key, tree));
}
BENCHMARK(BM_TileManifest);

void BM_HeatGrid(benchmark::State& state) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<geo::GeoPoint> pts;
  for (int i = 0; i < 5000; ++i) pts.emplace_back(113.9 + 0.2 * u(rng), 22.5 + 0.12 * u(rng));
  const geo::BBox box(113.9, 22.5, 114.1, 22.62);
  const double sigma = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(analytics::heat_grid(pts, box, 0.002, sigma));
}
BENCHMARK(BM_HeatGrid)->Arg(0)->Arg(2);

}  // namespace
BENCHMARK_MAIN();
