#pragma once

#include <array>
#include <string>

#include "json.hpp"
#include "xdock/errors.hpp"
#include "xdock/grid.hpp"

namespace xdock::detail {

template <std::size_t Rank>
nlohmann::json grid_to_json(const Grid<int, Rank>& grid) {
  auto values = grid.values();
  std::size_t pos = 0;
  auto build = [&](auto&& self, std::size_t axis) -> nlohmann::json {
    nlohmann::json arr = nlohmann::json::array();
    for (int a = 0; a < grid.dim(axis); ++a) {
      if (axis + 1 == Rank) {
        arr.push_back(values[pos++]);
      } else {
        arr.push_back(self(self, axis + 1));
      }
    }
    return arr;
  };
  return build(build, 0);
}

template <std::size_t Rank>
Grid<int, Rank> grid_from_json(const nlohmann::json& doc, const std::array<int, Rank>& dims,
                               const std::string& what) {
  Grid<int, Rank> grid(dims);
  auto values = grid.values();
  std::size_t pos = 0;
  auto walk = [&](auto&& self, const nlohmann::json& node, std::size_t axis) -> void {
    if (!node.is_array() || static_cast<int>(node.size()) != dims[axis]) {
      throw DimensionError(what + ": expected array of length " + std::to_string(dims[axis]) +
                           " on axis " + std::to_string(axis));
    }
    for (const auto& child : node) {
      if (axis + 1 == Rank) {
        if (!child.is_number_integer()) throw DimensionError(what + ": non-integer entry");
        values[pos++] = child.get<int>();
      } else {
        self(self, child, axis + 1);
      }
    }
  };
  if (dims[0] == 0) {
    if (!doc.is_array() || !doc.empty()) throw DimensionError(what + ": expected empty array");
    return grid;
  }
  walk(walk, doc, 0);
  return grid;
}

}  // namespace xdock::detail
