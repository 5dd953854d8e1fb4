#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holocity::scene {

struct LayerNode {
  std::string layer_id;
  std::string name;
  std::optional<std::string> parent;
  bool visible = true;
  std::vector<std::string> children;
};

// The layer tree shown in the client's tree-view control. The shape is fixed:
//
//   city
//   ├── above-ground: buildings, roads
//   ├── underground: pipelines, subway
//   ├── networks: power
//   ├── admin
//   └── overlays: heatmap, traffic
//
// Leaf ids are slash paths ("above-ground/buildings"); "admin" is itself a
// leaf. Only visibility flags change.
class LayerTree {
 public:
  static LayerTree canonical();

  const LayerNode& node(std::string_view layer_id) const;  // throws UnknownLayer
  bool contains(std::string_view layer_id) const noexcept;
  bool is_leaf(std::string_view layer_id) const;
  const std::vector<LayerNode>& nodes() const noexcept { return nodes_; }  // pre-order
  std::vector<std::string> leaves() const;

  void set_visible(std::string_view layer_id, bool visible);

  // AND of the layer's own flag and every ancestor's.
  bool effective_visibility(std::string_view layer_id) const;

 private:
  LayerNode& mutable_node(std::string_view layer_id);
  std::vector<LayerNode> nodes_;
};

inline constexpr std::string_view kRootLayer = "city";

}  // namespace holocity::scene
