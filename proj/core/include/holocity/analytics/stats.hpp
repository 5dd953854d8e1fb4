#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holocity/sdm/store.hpp"

namespace holocity::analytics {

inline constexpr std::string_view kUnknownLabel = "unknown";

// Total mapping from attribute values to category labels. A missing value,
// or one of the wrong type for the mapping, always maps to "unknown".
class CategoryMap {
 public:
  // Label is the value itself (see scalar_label).
  static CategoryMap identity();
  // Numeric bins: value < breaks[0] -> labels[0], breaks[i-1] <= value <
  // breaks[i] -> labels[i], value >= breaks.back() -> labels.back().
  // Requires labels.size() == breaks.size() + 1 and ascending breaks.
  static CategoryMap ranges(std::vector<double> breaks, std::vector<std::string> labels);
  // Exact string matches; anything else gets `other`.
  static CategoryMap values(std::vector<std::pair<std::string, std::string>> mapping, std::string other);

  std::string label(const std::optional<Scalar>& value) const;
  // Declared labels in presentation order (empty for identity).
  const std::vector<std::string>& declared_labels() const noexcept { return declared_; }

 private:
  enum class Mode { Identity, Ranges, Values };
  Mode mode_ = Mode::Identity;
  std::vector<double> breaks_;
  std::vector<std::pair<std::string, std::string>> mapping_;
  std::string other_;
  std::vector<std::string> declared_;
};

struct Category {
  std::string label;
  std::uint64_t count = 0;
  double fraction = 0.0;
};

struct CompositionBreakdown {
  std::string attribute;
  std::uint64_t total = 0;
  // Non-empty categories: declared labels first in declaration order, then
  // other labels lexically, "unknown" last.
  std::vector<Category> categories;
};

CompositionBreakdown composition(const Store& store, std::span<const EntityId> entities,
                                 const std::string& attribute, const CategoryMap& categories, Millis t);

// Uniform bins over [min, max]; the last bin is closed on the right.
struct HistogramSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t bin_count = 1;

  // Throws Error(InvalidRange) unless min < max (both finite) and bins >= 1.
  static HistogramSpec make(double min, double max, std::size_t bin_count);
  double bin_width() const noexcept { return (max - min) / static_cast<double>(bin_count); }
};

// Throws Error(OutOfRange) for a value outside [min, max].
std::vector<std::uint64_t> histogram(std::span<const double> values, const HistogramSpec& spec);

struct NormalFit {
  double mean = 0.0;
  double stddev = 0.0;  // population: divides by n
  bool degenerate = false;
};

// Single pass (Welford). Throws Error(TooFewValues) for n < 2.
NormalFit fit_normal(std::span<const double> values);

// Numeric values of `attribute` for the live entities among `entities`;
// entities without a numeric value are skipped.
std::vector<double> numeric_values(const Store& store, std::span<const EntityId> entities,
                                   const std::string& attribute, Millis t);

}  // namespace holocity::analytics
