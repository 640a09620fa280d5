#pragma once

// Command-line front end. Exit codes: 0 success, 2 input or usage error,
// 3 graph too large for exact enumeration.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "probconn/bounds.hpp"
#include "probconn/exact.hpp"
#include "probconn/io.hpp"
#include "probconn/monte_carlo.hpp"
#include "probconn/sensitivity.hpp"
#include "probconn/spectral.hpp"
#include "probconn/walk.hpp"

namespace probconn {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_edge_limit = 3;

namespace detail {

struct CommonFlags {
  std::string input;
  std::size_t max_edges = ExactOptions{}.max_edges;
  std::optional<double> tolerance;
  bool pretty = false;
};

inline void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--input", f.input, "graph file")->required();
  cmd->add_option("--max-edges", f.max_edges, "exact enumeration limit per component");
  cmd->add_option("--tolerance", f.tolerance, "numerical slack for bound and equality checks")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--pretty", f.pretty, "indent the JSON output");
}

inline ProbGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_file(buf.str());
}

}  // namespace detail

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic connectivity analysis of networks with unreliable links",
               "probconn"};
  app.require_subcommand(1);

  detail::CommonFlags flags;
  std::uint64_t samples = 100000;
  std::uint64_t seed = default_mc_seed;
  std::size_t z = 2;
  bool include_absent = false;

  auto* compute = app.add_subcommand("compute", "exact Q, spectrum, bounds, critical vertices");
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of Q with spectrum");
  auto* bounds = app.add_subcommand("bounds", "exact Q and entry bounds");
  auto* spectrum = app.add_subcommand("spectrum", "exact Q and its spectrum");
  auto* critical = app.add_subcommand("critical", "critical vertices from exact Q");
  auto* walk = app.add_subcommand("walk", "z-step walk probability matrix");
  auto* rank = app.add_subcommand("rank", "rank link improvements by lambda_max gain");
  for (auto* cmd : {compute, mc, bounds, spectrum, critical, walk, rank}) detail::add_common(cmd, flags);
  mc->add_option("--samples", samples, "number of sampled edge states")
      ->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed, "random seed");
  walk->add_option("--z", z, "walk length")->check(CLI::PositiveNumber);
  rank->add_flag("--include-absent", include_absent, "also evaluate pairs with no link");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return exit_ok;
    err << app.help();
    return exit_input_error;
  }

  try {
    const ProbGraph g = detail::load_graph(flags.input);
    const ExactOptions exact_opts{flags.max_edges, 0};
    const ComponentPartition part = support_components(g);
    auto tol_or = [&](double fallback) { return flags.tolerance.value_or(fallback); };

    Json doc;
    if (walk->parsed()) {
      doc = document_header("walk", g);
      doc["z"] = z;
      doc["walk"] = to_json(walk_probabilities(walk_matrix(g), z).entries);
    } else if (mc->parsed()) {
      const McEstimate est = mc_connectivity(g, samples, seed);
      doc = document_header("mc", g);
      doc["engine"] = "mc";
      doc["q"] = to_json(est.q_hat);
      add_spectrum(doc, spectral_report(est.q_hat, part, tol_or(1e-9)), part);
      CriticalOptions copts;
      copts.tolerance = tol_or(1e-9);
      copts.statistical = true;
      copts.graph = &g;
      doc["critical_vertices"] = to_json(find_critical_vertices(est.q_hat, copts));
      doc["mc"] = to_json(est);
    } else if (rank->parsed()) {
      const SensitivityRanking r = rank_improvements(g, include_absent, exact_opts);
      doc = document_header("rank", g);
      doc["engine"] = "exact";
      doc["lambda_max"] = r.lambda_max;
      doc["ranking"] = to_json(r);
    } else {
      const ConnectivityMatrix q = exact_connectivity(g, exact_opts);
      const std::string name = app.get_subcommands().front()->get_name();
      doc = document_header(name, g);
      doc["engine"] = "exact";
      if (!critical->parsed()) doc["q"] = to_json(q);
      if (compute->parsed() || spectrum->parsed())
        add_spectrum(doc, spectral_report(q, part, tol_or(1e-9)), part);
      if (compute->parsed() || bounds->parsed())
        doc["bounds"] = to_json(compute_bounds(adjacency_matrix(g), q, tol_or(1e-12)));
      if (compute->parsed() || critical->parsed()) {
        CriticalOptions copts;
        copts.tolerance = tol_or(1e-9);
        copts.graph = &g;
        doc["critical_vertices"] = to_json(find_critical_vertices(q, copts));
      }
    }
    out << doc.dump(flags.pretty ? 2 : -1) << '\n';
    return exit_ok;
  } catch (const EdgeLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return exit_edge_limit;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
}

}  // namespace probconn
