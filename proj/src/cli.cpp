#include "gcx/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcx/invariance.hpp"
#include "gcx/json_io.hpp"

namespace gcx {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream f(output);
    require(f.good(), "cannot write '" + output + "'");
    f << text;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Whitehead partitions and blowup complexes for RAAGs"};
  app.require_subcommand(1);

  std::string graph_file, collection_file, problem_file, certificate_file;
  std::string output;
  int threads = 1;
  int max_entries = -1;
  int radius = -1;
  double time_limit = 120.0;

  auto* partitions_cmd =
      app.add_subcommand("partitions", "list all Γ-Whitehead partitions");
  partitions_cmd->add_option("graph", graph_file)->required();
  partitions_cmd->add_option("-o,--output", output);

  auto* inv_cmd = app.add_subcommand("invariant-subgraphs",
                                     "list all U0-invariant subgraphs");
  inv_cmd->add_option("graph", graph_file)->required();
  inv_cmd->add_option("-o,--output", output);
  bool dot = false;
  inv_cmd->add_flag("--dot", dot, "emit the poset as a DOT digraph");

  auto* blowup_cmd =
      app.add_subcommand("blowup", "build the blowup of a compatible collection");
  blowup_cmd->add_option("graph", graph_file)->required();
  blowup_cmd->add_option("collection", collection_file)->required();
  blowup_cmd->add_option("-o,--output", output);

  auto* types_cmd =
      app.add_subcommand("types", "enumerate combinatorial types of Γ-complexes");
  types_cmd->add_option("graph", graph_file)->required();
  types_cmd->add_option("--max-entries", max_entries);
  types_cmd->add_option("--threads", threads);
  types_cmd->add_option("-o,--output", output);

  auto* realize_cmd =
      app.add_subcommand("realize", "search for a realization certificate");
  realize_cmd->add_option("problem", problem_file)->required();
  realize_cmd->add_option("--threads", threads);
  realize_cmd->add_option("--radius", radius);
  realize_cmd->add_option("--time-limit", time_limit);
  realize_cmd->add_option("-o,--output", output);

  auto* check_cmd =
      app.add_subcommand("check", "re-verify a realization certificate");
  check_cmd->add_option("certificate", certificate_file)->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (partitions_cmd->parsed()) {
      SimplicialGraph g = graph_from_text(slurp(graph_file));
      PartitionMultiset pi{std::vector<WhiteheadPartition>{}};
      pi.entries = all_partitions(g);
      emit(collection_to_json(g, pi), output, out);
      return 0;
    }
    if (inv_cmd->parsed()) {
      SimplicialGraph g = graph_from_text(slurp(graph_file));
      if (dot) {
        emit(invariant_poset_to_dot(g), output, out);
        return 0;
      }
      std::ostringstream os;
      os << "[";
      auto subs = u0_invariant_subgraphs(g);
      for (std::size_t i = 0; i < subs.size(); ++i) {
        if (i) os << ",";
        os << "[";
        bool first = true;
        for_each_bit(subs[i], [&](int v) {
          if (!first) os << ",";
          os << "\"" << g.name(v) << "\"";
          first = false;
        });
        os << "]";
      }
      os << "]\n";
      emit(os.str(), output, out);
      return 0;
    }
    if (blowup_cmd->parsed()) {
      SimplicialGraph g = graph_from_text(slurp(graph_file));
      PartitionMultiset pi = collection_from_json(g, slurp(collection_file));
      emit(blowup_to_json(build_blowup(g, pi)), output, out);
      return 0;
    }
    if (types_cmd->parsed()) {
      SimplicialGraph g = graph_from_text(slurp(graph_file));
      TypeCatalog cat = enumerate_complex_types(g, max_entries, threads);
      emit(catalog_to_json(g, cat), output, out);
      return 0;
    }
    if (realize_cmd->parsed()) {
      RealizationProblem p = problem_from_json(slurp(problem_file));
      if (threads > 1) p.budget.threads = threads;
      if (radius >= 0) p.budget.radius = radius;
      p.budget.time_limit_seconds = time_limit;
      auto cert = realize(p);
      if (!cert) {
        emit("{\"status\":\"not-found-within-budget\"}\n", output, out);
        return 3;
      }
      emit(certificate_to_json(*cert), output, out);
      return 0;
    }
    if (check_cmd->parsed()) {
      RealizationCertificate c = certificate_from_json(slurp(certificate_file));
      CheckResult r = check_certificate(c);
      if (r.ok) {
        out << "{\"ok\":true}\n";
        return 0;
      }
      out << "{\"ok\":false,\"reason\":\"" << r.reason << "\"}\n";
      return 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace gcx
