#include "holocity/analytics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "holocity/error.hpp"

namespace holocity::analytics {

CategoryMap CategoryMap::identity() { return CategoryMap{}; }

CategoryMap CategoryMap::ranges(std::vector<double> breaks, std::vector<std::string> labels) {
  if (labels.size() != breaks.size() + 1) {
    throw Error(ErrorCode::InvalidArgument, "range categories need one more label than breaks");
  }
  if (!std::is_sorted(breaks.begin(), breaks.end()) ||
      std::adjacent_find(breaks.begin(), breaks.end()) != breaks.end()) {
    throw Error(ErrorCode::InvalidArgument, "range breaks must be strictly ascending");
  }
  CategoryMap m;
  m.mode_ = Mode::Ranges;
  m.breaks_ = std::move(breaks);
  m.declared_ = std::move(labels);
  return m;
}

CategoryMap CategoryMap::values(std::vector<std::pair<std::string, std::string>> mapping, std::string other) {
  CategoryMap m;
  m.mode_ = Mode::Values;
  for (const auto& [value, label] : mapping) {
    if (std::find(m.declared_.begin(), m.declared_.end(), label) == m.declared_.end()) m.declared_.push_back(label);
  }
  if (std::find(m.declared_.begin(), m.declared_.end(), other) == m.declared_.end()) m.declared_.push_back(other);
  m.mapping_ = std::move(mapping);
  m.other_ = std::move(other);
  return m;
}

std::string CategoryMap::label(const std::optional<Scalar>& value) const {
  if (!value) return std::string(kUnknownLabel);
  switch (mode_) {
    case Mode::Identity:
      return scalar_label(*value);
    case Mode::Ranges: {
      auto num = scalar_number(*value);
      if (!num || std::isnan(*num)) return std::string(kUnknownLabel);
      const auto pos = std::upper_bound(breaks_.begin(), breaks_.end(), *num) - breaks_.begin();
      return declared_[static_cast<std::size_t>(pos)];
    }
    case Mode::Values: {
      const auto text = scalar_label(*value);
      for (const auto& [v, label] : mapping_)
        if (v == text) return label;
      return other_;
    }
  }
  return std::string(kUnknownLabel);
}

CompositionBreakdown composition(const Store& store, std::span<const EntityId> entities,
                                 const std::string& attribute, const CategoryMap& categories, Millis t) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& id : entities) {
    std::optional<Scalar> value;
    if (auto state = store.state_at(id, t)) {
      if (auto it = state->attributes.find(attribute); it != state->attributes.end()) value = it->second;
    }
    ++counts[categories.label(value)];
  }

  CompositionBreakdown out;
  out.attribute = attribute;
  out.total = entities.size();
  if (out.total == 0) return out;

  auto emit = [&](const std::string& label) {
    auto it = counts.find(label);
    if (it == counts.end()) return;
    out.categories.push_back({label, it->second, static_cast<double>(it->second) / static_cast<double>(out.total)});
    counts.erase(it);
  };
  for (const auto& label : categories.declared_labels())
    if (label != kUnknownLabel) emit(label);
  const auto unknown = counts.extract(std::string(kUnknownLabel));
  while (!counts.empty()) emit(counts.begin()->first);
  if (!unknown.empty()) {
    out.categories.push_back({std::string(kUnknownLabel), unknown.mapped(),
                              static_cast<double>(unknown.mapped()) / static_cast<double>(out.total)});
  }
  return out;
}

HistogramSpec HistogramSpec::make(double min, double max, std::size_t bin_count) {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw Error(ErrorCode::InvalidRange, "histogram needs finite min < max");
  }
  if (bin_count < 1) throw Error(ErrorCode::InvalidRange, "histogram needs at least one bin");
  return HistogramSpec{min, max, bin_count};
}

std::vector<std::uint64_t> histogram(std::span<const double> values, const HistogramSpec& spec) {
  std::vector<std::uint64_t> counts(spec.bin_count, 0);
  const double span = spec.max - spec.min;
  const auto last = spec.bin_count - 1;
  for (double v : values) {
    if (!(v >= spec.min && v <= spec.max)) {
      throw Error(ErrorCode::OutOfRange, std::to_string(v) + " outside [" + std::to_string(spec.min) + ", " +
                                             std::to_string(spec.max) + "]");
    }
    const double pos = (v - spec.min) / span * static_cast<double>(spec.bin_count);
    const auto bin = std::min(static_cast<std::size_t>(std::floor(pos)), last);
    ++counts[bin];
  }
  return counts;
}

NormalFit fit_normal(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorCode::TooFewValues, "need at least 2 values");
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double x : values) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  NormalFit fit;
  fit.mean = mean;
  fit.stddev = std::sqrt(std::max(0.0, m2 / static_cast<double>(n)));
  fit.degenerate = fit.stddev == 0.0;
  return fit;
}

std::vector<double> numeric_values(const Store& store, std::span<const EntityId> entities,
                                   const std::string& attribute, Millis t) {
  std::vector<double> out;
  for (const auto& id : entities) {
    auto state = store.state_at(id, t);
    if (!state) continue;
    auto it = state->attributes.find(attribute);
    if (it == state->attributes.end()) continue;
    if (auto num = scalar_number(it->second)) out.push_back(*num);
  }
  return out;
}

}  // namespace holocity::analytics
