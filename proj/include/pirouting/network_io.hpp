#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pirouting/error.hpp"
#include "pirouting/network.hpp"

namespace pirouting {

/// Hubs and arcs read from a network document, before graph validation.
/// `violations` holds problems found while reading individual entries
/// (e.g. out-of-range coordinates).
struct NetworkDocument {
  std::vector<Hub> hubs;
  std::vector<Arc> arcs;
  std::vector<std::string> violations;
};

namespace detail {

template <typename T>
T required(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key '" + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(where + ": key '" + key + "' has the wrong type");
  }
}

}  // namespace detail

/// Reads the document structure. Throws ParseError on malformed structure;
/// semantic problems are left for collect_violations.
inline NetworkDocument parse_network_document(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("network document must be an object");
  if (!doc.contains("hubs") || !doc["hubs"].is_array()) throw ParseError("network document needs a 'hubs' list");
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw ParseError("network document needs an 'edges' list");

  NetworkDocument out;
  std::size_t i = 0;
  for (const auto& h : doc["hubs"]) {
    const std::string where = "hubs[" + std::to_string(i++) + "]";
    if (!h.is_object()) throw ParseError(where + ": expected an object");
    auto id = detail::required<std::string>(h, "id", where);
    auto lat = detail::required<double>(h, "lat", where);
    auto lon = detail::required<double>(h, "lon", where);
    std::string name = h.contains("name") ? detail::required<std::string>(h, "name", where) : id;
    bool terminal = h.contains("terminal") ? detail::required<bool>(h, "terminal", where) : false;
    try {
      out.hubs.push_back(Hub{HubId(id), std::move(name), geo::GeoPoint(lat, lon), terminal});
    } catch (const ValidationError& e) {
      out.violations.push_back("hub " + id + ": " + e.what());
    }
  }

  i = 0;
  for (const auto& e : doc["edges"]) {
    const std::string where = "edges[" + std::to_string(i++) + "]";
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    HubId from(detail::required<std::string>(e, "from", where));
    HubId to(detail::required<std::string>(e, "to", where));
    const auto time = detail::required<double>(e, "travel_time_h", where);
    const auto dist = detail::required<double>(e, "distance_mi", where);
    const bool directed = e.contains("directed") ? detail::required<bool>(e, "directed", where) : false;
    out.arcs.push_back(Arc{from, to, time, dist});
    if (!directed) out.arcs.push_back(Arc{to, from, time, dist});
  }
  return out;
}

inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Every violation in a document: entry-level problems plus graph invariants.
inline std::vector<std::string> validate_network_document(const nlohmann::json& doc) {
  auto parsed = parse_network_document(doc);
  auto v = std::move(parsed.violations);
  auto graph = collect_violations(parsed.hubs, parsed.arcs);
  v.insert(v.end(), graph.begin(), graph.end());
  return v;
}

inline Network load_network(const nlohmann::json& doc) {
  auto parsed = parse_network_document(doc);
  if (!parsed.violations.empty()) {
    auto graph = collect_violations(parsed.hubs, parsed.arcs);
    parsed.violations.insert(parsed.violations.end(), graph.begin(), graph.end());
    throw ValidationError(std::move(parsed.violations));
  }
  return Network::build(std::move(parsed.hubs), std::move(parsed.arcs));
}

inline Network load_network_file(const std::string& path) {
  return load_network(parse_json_text(read_text_file(path)));
}

inline nlohmann::json to_json(const Network& net) {
  nlohmann::json hubs = nlohmann::json::array();
  for (const auto& h : net.hubs()) {
    hubs.push_back({{"id", h.id.str()},
                    {"name", h.name},
                    {"lat", h.location.lat()},
                    {"lon", h.location.lon()},
                    {"terminal", h.is_destination_terminal}});
  }
  // Symmetric arc pairs with equal time and distance collapse back into one
  // undirected edge; everything else is written as directed.
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& a : net.arcs()) {
    const Arc* back = net.find_arc(a.to, a.from);
    const bool symmetric = back && back->travel_time == a.travel_time && back->distance == a.distance;
    if (symmetric && a.to < a.from) continue;
    edges.push_back({{"from", a.from.str()},
                     {"to", a.to.str()},
                     {"travel_time_h", a.travel_time},
                     {"distance_mi", a.distance},
                     {"directed", !symmetric}});
  }
  return {{"hubs", std::move(hubs)}, {"edges", std::move(edges)}};
}

/// Byte-stable serialization: sorted keys, hubs and edges in id order.
inline std::string emit(const Network& net) { return to_json(net).dump(2) + "\n"; }

}  // namespace pirouting
