#pragma once

#include <json.hpp>

#include "holocity/error.hpp"
#include "holocity/sdm/entity.hpp"

namespace holocity::detail {

inline nlohmann::json scalar_to_json(const Scalar& value) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, value);
}

inline nlohmann::json attributes_to_json(const Attributes& attrs) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : attrs) j[key] = scalar_to_json(value);
  return j;
}

inline Scalar scalar_from_json(const nlohmann::json& j, const std::string& key) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return j.get<double>();
  throw Error(ErrorCode::ParseError, "attribute '" + key + "' is not a scalar");
}

inline Attributes attributes_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "attributes must be an object");
  Attributes attrs;
  for (auto it = j.begin(); it != j.end(); ++it) attrs.emplace(it.key(), scalar_from_json(it.value(), it.key()));
  return attrs;
}

}  // namespace holocity::detail
