#include "sgf/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "sgf/counting.hpp"
#include "sgf/experiments.hpp"
#include "sgf/graphon.hpp"
#include "sgf/io.hpp"
#include "sgf/motif.hpp"
#include "sgf/sampler.hpp"

namespace sgf {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string edge_list_text(const Motif& m) {
  std::string s;
  for (const auto& [a, b] : m.edges()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(a + 1) + '-' + std::to_string(b + 1);
  }
  return s.empty() ? "(no edges)" : s;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string fraction_text(const Rational& r) {
  std::ostringstream os;
  os << r.to_string() << " (" << std::fixed << std::setprecision(6) << r.to_double() << ")";
  return os.str();
}

void analyze_motif(const std::string& spec, const std::string& format, std::ostream& out) {
  const Motif m = load_motif(spec);
  const std::uint64_t aut = automorphism_count(m);
  if (m.edge_count() < 1) throw std::invalid_argument("motif analysis needs at least one edge");
  const DensityProfile p = density_exponents(m);
  if (format == "json") {
    Json j;
    j["motif"] = motif_to_json(m);
    j["automorphisms"] = aut;
    j["m"] = p.m.to_string();
    j["m1"] = p.m1.to_string();
    j["balanced"] = p.balanced;
    j["strictly_balanced"] = p.strictly_balanced;
    j["strongly_balanced"] = p.strongly_balanced;
    j["strictly_strongly_balanced"] = p.strictly_strongly_balanced;
    Json mm = Json::array(), m1m = Json::array();
    for (const Motif& f : p.m_maximizers) mm.push_back(motif_to_json(f));
    for (const Motif& f : p.m1_maximizers) m1m.push_back(motif_to_json(f));
    j["m_maximizers"] = mm;
    j["m1_maximizers"] = m1m;
    out << j.dump(2) << '\n';
    return;
  }
  out << "motif: " << m.vertex_count() << " vertices, " << m.edge_count() << " edges\n"
      << "edges: " << edge_list_text(m) << '\n'
      << "automorphisms: " << aut << '\n'
      << "m(H)  = " << fraction_text(p.m) << '\n'
      << "m1(H) = " << fraction_text(p.m1) << '\n'
      << "balanced: " << yes_no(p.balanced) << '\n'
      << "strictly balanced: " << yes_no(p.strictly_balanced) << '\n'
      << "strongly balanced: " << yes_no(p.strongly_balanced) << '\n'
      << "strictly strongly balanced: " << yes_no(p.strictly_strongly_balanced) << '\n';
  out << "m maximizers:\n";
  for (const Motif& f : p.m_maximizers) {
    out << "  " << f.vertex_count() << " vertices: " << edge_list_text(f) << '\n';
  }
  out << "m1 maximizers S(H):\n";
  for (const Motif& f : p.m1_maximizers) {
    out << "  " << f.vertex_count() << " vertices: " << edge_list_text(f) << '\n';
  }
}

void analyze_graphon(const std::string& graphon_spec, const std::string& motif_spec,
                     std::ostream& out) {
  const StepGraphon w = load_graphon(graphon_spec);
  const Motif m = load_motif(motif_spec);
  const RegularityReport reg = is_H_regular(m, w);
  out << std::setprecision(10);
  out << "blocks: " << w.block_count() << '\n' << "t(H,W) = " << reg.t << '\n';
  out << "degree function:";
  for (double d : degree_function(w)) out << ' ' << d;
  out << "\nmean rooted density per block:";
  for (double d : reg.per_block_mean_rooted) out << ' ' << d;
  out << "\nH-regular: " << yes_no(reg.is_regular) << " (max deviation " << reg.max_deviation
      << ")\n";
  if (m.edge_count() < 1) return;
  out << "xi1 = " << xi1(m, w) << '\n';
  for (double c : {0.5, 1.0, 2.0}) {
    out << "kappa(c=" << c << ") = ";
    if (reg.is_regular) {
      out << "undefined (regular case)\n";
      continue;
    }
    try {
      out << kappa(m, w, c) << '\n';
    } catch (const std::length_error& e) {
      out << "unavailable (" << e.what() << ")\n";
    }
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

struct ExperimentArgs {
  std::string config;
  std::string out_dir;
  std::size_t threads = 0;
  std::string format;
  std::optional<std::uint64_t> seed;
};

void run_experiment_command(const ExperimentArgs& a, std::ostream& out) {
  ExperimentConfig cfg = config_from_json(read_json_file(a.config));
  cfg.threads = a.threads;
  if (a.seed) cfg.seed = *a.seed;
  const ExperimentResult r = run_experiment(cfg);
  const std::filesystem::path dir(a.out_dir);
  std::filesystem::create_directories(dir);
  if (a.format.empty() || a.format == "json") {
    write_text_file(dir / "summary.json", result_to_json(r).dump(2) + "\n");
  }
  if (a.format.empty() || a.format == "csv") {
    write_text_file(dir / "summary.csv", summary_csv(r));
    if (cfg.keep_replicates) write_text_file(dir / "replicates.csv", replicate_csv(r));
  }
  out << to_string(cfg.kind) << ": " << r.cells.size() << " cells, " << cfg.replicates
      << " replicates each, " << std::fixed << std::setprecision(2) << r.runtime_seconds
      << " s\n";
  out << "wrote results to " << dir.string() << '\n';
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subgraph counts in sparse graphon random graphs", "sgf"};
  app.require_subcommand(1);

  std::string motif_spec, graphon_spec, format = "text", graph_path, out_path;
  std::size_t n = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;

  auto* am = app.add_subcommand("analyze-motif", "Density exponents, balancedness, automorphisms");
  am->add_option("motif", motif_spec, "Built-in name or motif JSON path")->required();
  am->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* ag = app.add_subcommand("analyze-graphon", "Densities, regularity, xi1 and kappa");
  ag->add_option("--graphon", graphon_spec, "Built-in name or graphon JSON path")->required();
  ag->add_option("--motif", motif_spec, "Built-in name or motif JSON path")->required();

  auto* sp = app.add_subcommand("sample", "Draw one graph from G(n, rho, W)");
  sp->add_option("--graphon", graphon_spec)->required();
  sp->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sp->add_option("--rho", rho)->required();
  sp->add_option("--seed", seed)->required();
  sp->add_option("--out", out_path, "Graph dump path (default: stdout)");

  auto* ct = app.add_subcommand("count", "Count copies of a motif in a dumped graph");
  ct->add_option("--graph", graph_path)->required();
  ct->add_option("--motif", motif_spec)->required();

  auto* dc = app.add_subcommand("decompose", "Sample once and split X - E[X] into Delta1 + Delta2");
  dc->add_option("--graphon", graphon_spec)->required();
  dc->add_option("--motif", motif_spec)->required();
  dc->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  dc->add_option("--rho", rho)->required();
  dc->add_option("--seed", seed)->required();

  ExperimentArgs ex;
  auto* re = app.add_subcommand("run-experiment", "Run a Monte Carlo experiment from a config");
  re->add_option("--config", ex.config)->required();
  re->add_option("--out-dir", ex.out_dir)->required();
  re->add_option("--threads", ex.threads, "Worker threads (default: available parallelism)");
  re->add_option("--format", ex.format, "Write only json or only csv")
      ->check(CLI::IsMember({"json", "csv"}));
  re->add_option("--seed", ex.seed, "Override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (am->parsed()) {
      analyze_motif(motif_spec, format, out);
    } else if (ag->parsed()) {
      analyze_graphon(graphon_spec, motif_spec, out);
    } else if (sp->parsed()) {
      const SampledGraph g = sample(load_graphon(graphon_spec), n, rho, seed);
      if (out_path.empty()) {
        write_graph_dump(out, g);
      } else {
        std::ostringstream os;
        write_graph_dump(os, g);
        write_text_file(out_path, os.str());
      }
    } else if (ct->parsed()) {
      std::ifstream in(graph_path);
      if (!in) throw std::invalid_argument("cannot open " + graph_path);
      const SampledGraph g = read_graph_dump(in);
      out << count(g, load_motif(motif_spec)) << '\n';
    } else if (dc->parsed()) {
      const StepGraphon w = load_graphon(graphon_spec);
      const Motif m = load_motif(motif_spec);
      const Decomposition d = decompose(sample(w, n, rho, seed), m, w);
      out << std::setprecision(12) << "x = " << d.x << '\n'
          << "expected = " << d.expected << '\n'
          << "conditional_expected = " << d.conditional_expected << '\n'
          << "delta = " << d.delta << '\n'
          << "delta1 = " << d.delta1 << '\n'
          << "delta2 = " << d.delta2 << '\n';
    } else if (re->parsed()) {
      run_experiment_command(ex, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace sgf
