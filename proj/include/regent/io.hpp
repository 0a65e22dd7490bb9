#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "regent/cover.hpp"
#include "regent/entropy.hpp"
#include "regent/error.hpp"
#include "regent/finite_space.hpp"
#include "regent/min_cover.hpp"
#include "regent/point_set.hpp"
#include "regent/r_map.hpp"
#include "regent/sft.hpp"
#include "regent/theorem_suite.hpp"

namespace regent {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Documents. All serialisation is canonical: sets are emitted as ascending
// index arrays, families sorted lexicographically, object keys
// alphabetically. Reparsing a canonical document reproduces it byte for
// byte.
// ---------------------------------------------------------------------------

namespace io_detail {

inline Json set_to_json(const PointSet& s) {
  Json arr = Json::array();
  s.for_each([&](int i) { arr.push_back(i); });
  return arr;
}

inline PointSet set_from_json(const Json& j, int width, const char* what) {
  if (!j.is_array()) fail(ErrorKind::parse_error, std::string(what) + " must be an array of point indices");
  PointSet s = PointSet::empty_set(width);
  for (const Json& v : j) {
    if (!v.is_number_integer()) fail(ErrorKind::parse_error, std::string(what) + " contains a non-integer index");
    const long long i = v.get<long long>();
    if (i < 0 || i >= width)
      fail(ErrorKind::parse_error, std::string(what) + " index " + std::to_string(i) + " outside universe of size " + std::to_string(width));
    s.add(static_cast<int>(i));
  }
  return s;
}

inline std::vector<PointSet> sets_from_json(const Json& j, int width, const char* what) {
  if (!j.is_array()) fail(ErrorKind::parse_error, std::string(what) + " must be an array of sets");
  std::vector<PointSet> out;
  out.reserve(j.size());
  for (const Json& s : j) out.push_back(set_from_json(s, width, what));
  return out;
}

}  // namespace io_detail

inline SpacePtr space_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::parse_error, "space document must be an object");
  std::vector<std::string> names;
  int n = -1;
  if (j.contains("points")) {
    if (!j.at("points").is_array()) fail(ErrorKind::parse_error, "\"points\" must be an array of labels");
    for (const Json& p : j.at("points")) names.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    n = static_cast<int>(names.size());
  }
  if (j.contains("n")) n = j.at("n").get<int>();
  const bool has_opens = j.contains("opens");
  const bool has_nbhds = j.contains("min_nbhds");
  if (has_opens == has_nbhds)
    fail(ErrorKind::parse_error, "space document needs exactly one of \"opens\" or \"min_nbhds\"");
  if (has_nbhds) {
    if (n < 0) n = static_cast<int>(j.at("min_nbhds").size());
    if (n != static_cast<int>(j.at("min_nbhds").size()))
      fail(ErrorKind::parse_error, "\"min_nbhds\" length disagrees with the point count");
    return make_space_from_min_nbhds(io_detail::sets_from_json(j.at("min_nbhds"), n, "min_nbhds"), std::move(names));
  }
  if (n < 0) fail(ErrorKind::parse_error, "space document with \"opens\" needs \"points\" or \"n\"");
  return make_space(n, io_detail::sets_from_json(j.at("opens"), n, "opens"), std::move(names));
}

inline Json space_to_json(const FiniteSpace& space) {
  Json j;
  Json points = Json::array();
  for (int i = 0; i < space.point_count(); ++i) {
    points.push_back(space.names().empty() ? std::to_string(i) : space.names()[static_cast<std::size_t>(i)]);
  }
  j["points"] = std::move(points);
  Json opens = Json::array();
  for (const PointSet& u : space.opens()) opens.push_back(io_detail::set_to_json(u));
  j["opens"] = std::move(opens);
  return j;
}

/// Map document: {"map":[...]} with an optional inline "space"; when both
/// the document and the caller provide a space they must agree.
inline RMap map_from_json(const Json& j, SpacePtr space) {
  if (!j.is_object() || !j.contains("map")) fail(ErrorKind::parse_error, "map document needs a \"map\" array");
  if (j.contains("space")) {
    SpacePtr inline_space = space_from_json(j.at("space"));
    if (space && !space->same_space(*inline_space))
      fail(ErrorKind::space_mismatch, "map document's space disagrees with the provided space");
    if (!space) space = std::move(inline_space);
  }
  if (!space) fail(ErrorKind::parse_error, "map document has no space");
  std::vector<int> table;
  for (const Json& v : j.at("map")) {
    if (!v.is_number_integer()) fail(ErrorKind::parse_error, "\"map\" contains a non-integer image");
    table.push_back(v.get<int>());
  }
  return try_r_map(std::move(space), std::move(table));
}

inline Json map_to_json(const RMap& f, bool inline_space = true) {
  Json j;
  if (inline_space) j["space"] = space_to_json(*f.space);
  j["map"] = f.table;
  return j;
}

inline Cover cover_from_json(const Json& j, SpacePtr space) {
  if (!j.is_object() || !j.contains("sets")) fail(ErrorKind::parse_error, "cover document needs a \"sets\" array");
  if (j.contains("space")) {
    SpacePtr inline_space = space_from_json(j.at("space"));
    if (space && !space->same_space(*inline_space))
      fail(ErrorKind::space_mismatch, "cover document's space disagrees with the provided space");
    if (!space) space = std::move(inline_space);
  }
  if (!space) fail(ErrorKind::parse_error, "cover document has no space");
  const int n = space->point_count();
  return make_cover(std::move(space), io_detail::sets_from_json(j.at("sets"), n, "sets"));
}

inline Json cover_to_json(const Cover& u, bool inline_space = false) {
  Json j;
  if (inline_space) j["space"] = space_to_json(*u.space());
  Json sets = Json::array();
  std::vector<PointSet> sorted = u.raw();
  std::sort(sorted.begin(), sorted.end(), PointSetLexLess{});
  for (const PointSet& a : sorted) sets.push_back(io_detail::set_to_json(a));
  j["sets"] = std::move(sets);
  return j;
}

inline SftSystem sft_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::parse_error, "shift document must be an object");
  std::string description = j.value("description", std::string());
  if (j.contains("matrix")) {
    if (!j.contains("alphabet")) fail(ErrorKind::parse_error, "matrix form needs \"alphabet\"");
    const int k = j.at("alphabet").get<int>();
    std::vector<std::vector<int>> matrix;
    for (const Json& row : j.at("matrix")) matrix.push_back(row.get<std::vector<int>>());
    return build_sft(k, std::move(matrix), std::move(description));
  }
  if (j.contains("forbidden")) {
    return build_sft_from_forbidden(j.at("forbidden").get<std::vector<std::string>>(), j.value("alphabet", 0),
                                    std::move(description));
  }
  fail(ErrorKind::parse_error, "shift document needs \"matrix\" or \"forbidden\"");
}

inline Json sft_to_json(const SftSystem& sft) {
  Json j;
  j["alphabet"] = sft.alphabet;
  Json rows = Json::array();
  for (const auto& row : sft.matrix) rows.push_back(row);
  j["matrix"] = std::move(rows);
  if (!sft.description.empty()) j["description"] = sft.description;
  return j;
}

inline Json entropy_report_to_json(const EntropyReport& r) {
  Json j;
  j["a_seq"] = r.a_seq;
  j["fekete_inf"] = r.fekete_inf;
  if (r.cycle) {
    j["cycle"] = Json{{"preperiod", r.cycle->preperiod}, {"period", r.cycle->period}};
  } else {
    j["cycle"] = nullptr;
  }
  j["value"] = r.value;
  j["exact"] = r.exact;
  j["log_base"] = to_string(r.log_base);
  j["certificate"] = r.certificate;
  return j;
}

// ---------------------------------------------------------------------------
// Suite configuration and report
// ---------------------------------------------------------------------------

inline SuiteConfig suite_config_from_json(const Json& j) {
  SuiteConfig config;
  if (j.is_null()) return config;
  if (!j.is_object()) fail(ErrorKind::parse_error, "suite config must be an object");
  config.seed = j.value("seed", config.seed);
  config.instances = j.value("instances", config.instances);
  config.max_points = j.value("max_points", config.max_points);
  config.product_max_points = j.value("product_max_points", config.product_max_points);
  config.m_depth = j.value("m_depth", config.m_depth);
  config.threads = j.value("threads", config.threads);
  if (j.contains("theorems")) config.theorems = j.at("theorems").get<std::vector<std::string>>();
  if (j.contains("overrides")) {
    for (const auto& [key, value] : j.at("overrides").items()) config.instance_overrides[key] = value.get<int>();
  }
  return config;
}

inline Json suite_config_to_json(const SuiteConfig& config) {
  // The thread count is an execution detail, deliberately left out so that
  // reports stay byte-identical no matter how the work was scheduled.
  Json j;
  j["seed"] = config.seed;
  j["instances"] = config.instances;
  j["max_points"] = config.max_points;
  j["product_max_points"] = config.product_max_points;
  j["m_depth"] = config.m_depth;
  j["theorems"] = config.theorems;
  Json overrides = Json::object();
  for (const auto& [key, value] : config.instance_overrides) overrides[key] = value;
  j["overrides"] = std::move(overrides);
  return j;
}

inline Json suite_report_to_json(const SuiteReport& report) {
  Json j;
  j["config"] = suite_config_to_json(report.config);
  Json results = Json::array();
  for (const TheoremOutcome& outcome : report.results) {
    Json r;
    r["theorem"] = outcome.id;
    r["tried"] = outcome.tried;
    r["applicable"] = outcome.applicable;
    r["passed"] = outcome.passed;
    r["failed"] = outcome.failed;
    r["skipped"] = outcome.skipped;
    Json counters = Json::object();
    for (const auto& [key, value] : outcome.counters) counters[key] = value;
    r["counters"] = std::move(counters);
    Json failures = Json::array();
    for (const SuiteFailure& f : outcome.failures) {
      failures.push_back(Json{{"seed", f.seed}, {"instance", f.instance}, {"detail", f.detail}});
    }
    r["failures"] = std::move(failures);
    results.push_back(std::move(r));
  }
  j["results"] = std::move(results);
  j["all_passed"] = report.all_passed;
  return j;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse_error, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorKind::parse_error, path + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::parse_error, "cannot write " + path);
  out << text;
}

/// Canonical rendering used everywhere a document or report hits disk.
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace regent
