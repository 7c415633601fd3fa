#pragma once

// Board files: UTF-8 JSON documents.
//
//   {
//     "name": "twist5",
//     "euler_characteristic": 2,                       (optional)
//     "crossings": ["c1", ...],
//     "regions": [{"id": "r1", "kind": "face", "crossings": ["c1", ...]}, ...],
//     "embedding": {"rotations": {...}, "endpoints": {...}, "twisted": [...]},   (optional)
//     "connected_states": ["0100110011", ...],        (optional)
//     "connected_states_complete": false,              (optional)
//     "start_state": "11001"                           (optional)
//   }

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "swapgame/board.hpp"
#include "swapgame/errors.hpp"

namespace swapgame {

namespace detail {

using ojson = nlohmann::ordered_json;

template <typename Json>
const Json& require_field(const Json& obj, const char* field, const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end())
    throw ParseError(where + ": missing required field \"" + field + "\"");
  return *it;
}

template <typename Json>
std::string require_string(const Json& v, const std::string& where) {
  if (!v.is_string())
    throw ParseError(where + ": expected a string");
  return v.template get<std::string>();
}

template <typename Json>
std::vector<std::string> require_string_array(const Json& v, const std::string& where) {
  if (!v.is_array())
    throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(require_string(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline EmbeddingSpec parse_embedding(const nlohmann::json& j) {
  if (!j.is_object())
    throw ParseError("embedding: expected an object");
  EmbeddingSpec spec;
  const auto& rot = require_field(j, "rotations", "embedding");
  if (!rot.is_object())
    throw ParseError("embedding.rotations: expected an object");
  for (auto it = rot.begin(); it != rot.end(); ++it) {
    const std::string where = "embedding.rotations." + it.key();
    if (!it.value().is_array())
      throw ParseError(where + ": expected an array of [crossing, end] pairs");
    auto& darts = spec.rotations[it.key()];
    for (const auto& d : it.value()) {
      if (!d.is_array() || d.size() != 2 || !d[0].is_string() || !d[1].is_number_integer())
        throw ParseError(where + ": each entry must be [\"<crossing>\", 0|1]");
      const int end = d[1].get<int>();
      if (end != 0 && end != 1)
        throw ParseError(where + ": dart end must be 0 or 1");
      darts.emplace_back(d[0].get<std::string>(), end);
    }
  }
  const auto& ends = require_field(j, "endpoints", "embedding");
  if (!ends.is_object())
    throw ParseError("embedding.endpoints: expected an object");
  for (auto it = ends.begin(); it != ends.end(); ++it) {
    const auto pair = require_string_array(it.value(), "embedding.endpoints." + it.key());
    if (pair.size() != 2)
      throw ParseError("embedding.endpoints." + it.key() + ": expected two region ids");
    spec.endpoints[it.key()] = {pair[0], pair[1]};
  }
  if (auto it = j.find("twisted"); it != j.end())
    spec.twisted = require_string_array(*it, "embedding.twisted");
  return spec;
}

} // namespace detail

inline BoardData parse_board_data(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("board file is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ParseError("board file: top level must be an object");

  BoardData d;
  d.name = detail::require_string(detail::require_field(j, "name", "board"), "name");
  if (auto it = j.find("euler_characteristic"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer())
      throw ParseError("euler_characteristic: expected an integer");
    d.euler_characteristic = it->get<int>();
  }
  d.crossings =
      detail::require_string_array(detail::require_field(j, "crossings", "board"), "crossings");
  const auto& regions = detail::require_field(j, "regions", "board");
  if (!regions.is_array())
    throw ParseError("regions: expected an array");
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const std::string where = "regions[" + std::to_string(i) + "]";
    const auto& r = regions[i];
    if (!r.is_object())
      throw ParseError(where + ": expected an object");
    Region region;
    region.id = detail::require_string(detail::require_field(r, "id", where), where + ".id");
    if (auto it = r.find("kind"); it != r.end())
      region.kind = region_kind_from_string(detail::require_string(*it, where + ".kind"));
    region.crossings =
        detail::require_string_array(detail::require_field(r, "crossings", where), where + ".crossings");
    d.regions.push_back(std::move(region));
  }
  if (auto it = j.find("embedding"); it != j.end() && !it->is_null())
    d.embedding = detail::parse_embedding(*it);
  if (auto it = j.find("connected_states"); it != j.end() && !it->is_null())
    d.connected_states = detail::require_string_array(*it, "connected_states");
  if (auto it = j.find("connected_states_complete"); it != j.end()) {
    if (!it->is_boolean())
      throw ParseError("connected_states_complete: expected a boolean");
    d.connected_states_complete = it->get<bool>();
  }
  if (auto it = j.find("start_state"); it != j.end() && !it->is_null())
    d.start_state = detail::require_string(*it, "start_state");

  auto check_bits = [](const std::string& where, const std::string& s) {
    if (s.find_first_not_of("01") != std::string::npos)
      throw ParseError(where + ": '" + s + "' is not a bitstring");
  };
  if (d.connected_states)
    for (std::size_t i = 0; i < d.connected_states->size(); ++i)
      check_bits("connected_states[" + std::to_string(i) + "]", (*d.connected_states)[i]);
  if (d.start_state)
    check_bits("start_state", *d.start_state);
  return d;
}

inline BoardPtr parse_board(const std::string& text) { return make_board(parse_board_data(text)); }

inline nlohmann::ordered_json board_to_json(const Board& b) {
  detail::ojson j;
  j["name"] = b.name();
  if (b.euler_characteristic())
    j["euler_characteristic"] = *b.euler_characteristic();
  j["crossings"] = b.crossings();
  auto regions = detail::ojson::array();
  for (const auto& r : b.regions()) {
    detail::ojson jr;
    jr["id"] = r.id;
    jr["kind"] = std::string(to_string(r.kind));
    jr["crossings"] = r.crossings;
    regions.push_back(std::move(jr));
  }
  j["regions"] = std::move(regions);

  if (const auto& spec = b.data().embedding) {
    detail::ojson je;
    detail::ojson rot = detail::ojson::object();
    // Vertex order follows the board's region order.
    for (const auto& r : b.regions()) {
      auto it = spec->rotations.find(r.id);
      if (it == spec->rotations.end())
        continue;
      auto darts = detail::ojson::array();
      for (const auto& [c, end] : it->second)
        darts.push_back(detail::ojson::array({c, end}));
      rot[r.id] = std::move(darts);
    }
    for (const auto& [vid, darts] : spec->rotations) {
      if (rot.contains(vid))
        continue;
      auto arr = detail::ojson::array();
      for (const auto& [c, end] : darts)
        arr.push_back(detail::ojson::array({c, end}));
      rot[vid] = std::move(arr);
    }
    je["rotations"] = std::move(rot);
    detail::ojson ends = detail::ojson::object();
    for (const auto& c : b.crossings())
      if (auto it = spec->endpoints.find(c); it != spec->endpoints.end())
        ends[c] = detail::ojson::array({it->second.first, it->second.second});
    je["endpoints"] = std::move(ends);
    std::vector<std::string> twisted;
    for (const auto& c : b.crossings())
      if (std::find(spec->twisted.begin(), spec->twisted.end(), c) != spec->twisted.end())
        twisted.push_back(c);
    je["twisted"] = twisted;
    j["embedding"] = std::move(je);
  }
  if (const auto& states = b.data().connected_states) {
    j["connected_states"] = *states;
    j["connected_states_complete"] = b.designated_complete();
  }
  if (const auto& s = b.data().start_state)
    j["start_state"] = *s;
  return j;
}

inline std::string write_board(const Board& b) { return board_to_json(b).dump(2) + "\n"; }

inline BoardPtr load_board_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open board file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_board(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

} // namespace swapgame
