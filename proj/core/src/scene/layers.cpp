#include "holocity/scene/layers.hpp"

#include <algorithm>

#include "holocity/error.hpp"

namespace holocity::scene {

LayerTree LayerTree::canonical() {
  LayerTree t;
  auto add = [&t](std::string id, std::string name, std::optional<std::string> parent) {
    if (parent) t.mutable_node(*parent).children.push_back(id);
    t.nodes_.push_back(LayerNode{std::move(id), std::move(name), std::move(parent), true, {}});
  };
  add("city", "City", std::nullopt);
  add("above-ground", "Above ground", "city");
  add("above-ground/buildings", "Buildings", "above-ground");
  add("above-ground/roads", "Roads", "above-ground");
  add("underground", "Underground", "city");
  add("underground/pipelines", "Pipelines", "underground");
  add("underground/subway", "Subway", "underground");
  add("networks", "Networks", "city");
  add("networks/power", "Power grid", "networks");
  add("admin", "Administrative regions", "city");
  add("overlays", "Overlays", "city");
  add("overlays/heatmap", "Heat map", "overlays");
  add("overlays/traffic", "Traffic", "overlays");
  return t;
}

bool LayerTree::contains(std::string_view layer_id) const noexcept {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const LayerNode& n) { return n.layer_id == layer_id; });
}

const LayerNode& LayerTree::node(std::string_view layer_id) const {
  for (const auto& n : nodes_)
    if (n.layer_id == layer_id) return n;
  throw Error(ErrorCode::UnknownLayer, std::string(layer_id));
}

LayerNode& LayerTree::mutable_node(std::string_view layer_id) {
  return const_cast<LayerNode&>(std::as_const(*this).node(layer_id));
}

bool LayerTree::is_leaf(std::string_view layer_id) const { return node(layer_id).children.empty(); }

std::vector<std::string> LayerTree::leaves() const {
  std::vector<std::string> out;
  for (const auto& n : nodes_)
    if (n.children.empty()) out.push_back(n.layer_id);
  return out;
}

void LayerTree::set_visible(std::string_view layer_id, bool visible) { mutable_node(layer_id).visible = visible; }

bool LayerTree::effective_visibility(std::string_view layer_id) const {
  const LayerNode* n = &node(layer_id);
  while (true) {
    if (!n->visible) return false;
    if (!n->parent) return true;
    n = &node(*n->parent);
  }
}

}  // namespace holocity::scene
