#pragma once

// Graph text format and JSON result documents.
//
// Graph files:
//   # comment
//   n <vertex count>
//   e <i> <j> <p>        (0-based indices)
//
// Result documents are JSON objects with stable key order; doubles are
// written in shortest round-trip form.

#include <charconv>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "probconn/bounds.hpp"
#include "probconn/graph.hpp"
#include "probconn/monte_carlo.hpp"
#include "probconn/sensitivity.hpp"
#include "probconn/spectral.hpp"
#include "probconn/walk.hpp"

namespace probconn {

inline constexpr const char* tool_version = "1.0.0";
inline constexpr int schema_version = 1;

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t' && s[end] != '\r') ++end;
    if (end > pos) out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline ProbGraph parse_graph_file(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (tok[0] == "n") {
      if (n) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 2) throw ParseError(line_no, "header must be 'n <count>'");
      n = detail::parse_number<std::size_t>(tok[1], line_no, "vertex count");
      if (*n == 0) throw ParseError(line_no, "graph must have at least one vertex");
    } else if (tok[0] == "e") {
      if (!n) throw ParseError(line_no, "edge before header 'n <count>'");
      if (tok.size() != 4) throw ParseError(line_no, "edge must be 'e <i> <j> <p>'");
      const auto i = detail::parse_number<std::size_t>(tok[1], line_no, "vertex index");
      const auto j = detail::parse_number<std::size_t>(tok[2], line_no, "vertex index");
      const auto p = detail::parse_number<double>(tok[3], line_no, "probability");
      try {
        validate_edge(*n, i, j, p);
      } catch (const InvalidGraph& e) {
        throw ParseError(line_no, e.what());
      }
      if (!seen.emplace(std::min(i, j), std::max(i, j)).second)
        throw ParseError(line_no, "duplicate edge (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
      edges.push_back({i, j, p});
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!n) throw ParseError(line_no, "missing header 'n <count>'");
  return build_graph(*n, std::move(edges));
}

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Canonical text form; parse_graph_file reads it back exactly.
inline std::string serialize_graph(const ProbGraph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges())
    out << "e " << e.i << ' ' << e.j << ' ' << format_double(e.p) << '\n';
  return out.str();
}

using Json = nlohmann::ordered_json;

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json document_header(const std::string& command, const ProbGraph& g) {
  Json doc;
  doc["schema_version"] = schema_version;
  doc["tool_version"] = tool_version;
  doc["command"] = command;
  doc["n"] = g.vertex_count();
  doc["m"] = g.edge_count();
  return doc;
}

inline void add_spectrum(Json& doc, const SpectralReport& r, const ComponentPartition& part) {
  doc["eigenvalues"] = r.eigenvalues;
  doc["lambda_max"] = r.lambda_max;
  doc["lambda_max_normalized"] = r.lambda_max_normalized;
  doc["psd"] = r.psd;
  doc["definite"] = r.definite;
  Json comps = Json::array();
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    Json c;
    c["vertices"] = part.blocks[b];
    c["lambda_max"] = r.component_lambdas[b];
    comps.push_back(std::move(c));
  }
  doc["components"] = std::move(comps);
}

inline Json to_json(const BoundsReport& r) {
  Json b;
  b["tolerance"] = r.tolerance;
  b["lower"] = to_json(r.lower);
  b["upper"] = to_json(r.upper);
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"i", x.i}, {"j", x.j}, {"kind", to_string(x.kind)}, {"magnitude", x.magnitude}});
  b["violations"] = std::move(v);
  Json u = Json::array();
  for (const auto& [i, j] : r.unconstrained) u.push_back({i, j});
  b["unconstrained"] = std::move(u);
  return b;
}

inline Json to_json(const CriticalAnalysis& c) {
  Json out;
  out["tolerance"] = c.tolerance;
  out["statistical"] = c.statistical;
  Json list = Json::array();
  for (const auto& f : c.findings) {
    Json item;
    item["vertex"] = f.k;
    Json w = Json::array();
    for (const auto& [i, j] : f.witnesses) w.push_back({i, j});
    item["witnesses"] = std::move(w);
    if (f.partition_hint) {
      item["v1"] = f.partition_hint->first;
      item["v3"] = f.partition_hint->second;
    }
    if (f.support_articulation) item["support_articulation"] = *f.support_articulation;
    list.push_back(std::move(item));
  }
  out["vertices"] = std::move(list);
  out["warnings"] = c.warnings;
  return out;
}

inline Json to_json(const SensitivityRanking& r) {
  Json list = Json::array();
  for (const auto& e : r.entries) {
    Json item;
    item["i"] = e.i;
    item["j"] = e.j;
    item["edge"] = e.edge ? Json(*e.edge) : Json(nullptr);
    item["probability"] = e.probability;
    item["dlambda"] = e.dlambda;
    item["finite_difference"] = e.finite_difference;
    item["headroom"] = e.headroom;
    item["projected_gain"] = e.projected_gain;
    list.push_back(std::move(item));
  }
  return list;
}

inline Json to_json(const McEstimate& est) {
  Json mc;
  mc["samples"] = est.samples;
  mc["seed"] = est.seed;
  mc["std_err"] = to_json(est.std_err);
  return mc;
}

}  // namespace probconn
