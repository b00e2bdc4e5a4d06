#include "sgf/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sgf {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

// Runs f, turning library-level JSON exceptions into std::invalid_argument.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> optional_double(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

Json report_to_json(const std::optional<NormalityReport>& r) {
  if (!r) return nullptr;
  Json j;
  j["sample_size"] = r->sample_size;
  j["ks_statistic"] = r->ks_statistic;
  j["mean"] = r->mean;
  j["sd"] = r->sd;
  j["skewness"] = r->skewness;
  return j;
}

std::optional<NormalityReport> report_from_json(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  NormalityReport r;
  r.sample_size = field(*it, "sample_size").get<std::size_t>();
  r.ks_statistic = field(*it, "ks_statistic").get<double>();
  r.mean = field(*it, "mean").get<double>();
  r.sd = field(*it, "sd").get<double>();
  r.skewness = field(*it, "skewness").get<double>();
  return r;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json motif_to_json(const Motif& m) {
  Json edges = Json::array();
  for (const auto& [a, b] : m.edges()) edges.push_back({a + 1, b + 1});
  return Json{{"vertices", m.vertex_count()}, {"edges", edges}};
}

Motif motif_from_json(const Json& j) {
  return guarded("malformed motif", [&] {
    const Json& v = field(j, "vertices");
    if (!v.is_number_integer()) bad("motif \"vertices\" must be an integer");
    const auto k = v.get<long long>();
    if (k < 1 || k > kMaxMotifVertices) bad("motif vertex count out of range");
    std::vector<MotifEdge> edges;
    for (const Json& e : field(j, "edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        bad("motif edges must be pairs of integers");
      }
      const auto a = e[0].get<long long>(), b = e[1].get<long long>();
      if (a < 1 || a > k || b < 1 || b > k) bad("motif edge endpoint out of range");
      edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
    return Motif(static_cast<int>(k), std::move(edges));
  });
}

Json graphon_to_json(const StepGraphon& w) {
  return Json{{"pi", w.block_measures()}, {"values", w.values()}};
}

StepGraphon graphon_from_json(const Json& j) {
  return guarded("malformed graphon", [&] {
    auto pi = field(j, "pi").get<std::vector<double>>();
    auto values = field(j, "values").get<std::vector<std::vector<double>>>();
    return StepGraphon(std::move(pi), std::move(values));
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad("malformed JSON in " + path + ": " + e.what());
  }
}

Motif load_motif(std::string_view name_or_path) {
  if (auto m = named_motif(name_or_path)) return *m;
  const std::string path(name_or_path);
  if (!std::filesystem::exists(path)) bad("unknown motif name or missing file: " + path);
  return motif_from_json(read_json_file(path));
}

StepGraphon load_graphon(std::string_view name_or_path) {
  if (auto w = named_graphon(name_or_path)) return *w;
  const std::string path(name_or_path);
  if (!std::filesystem::exists(path)) bad("unknown graphon name or missing file: " + path);
  return graphon_from_json(read_json_file(path));
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["kind"] = std::string(to_string(cfg.kind));
  j["motif"] = motif_to_json(cfg.motif);
  j["graphon"] = graphon_to_json(cfg.graphon);
  j["schedule"] = {{"amplitude", cfg.schedule.amplitude}, {"exponent", cfg.schedule.exponent}};
  j["n_values"] = cfg.n_values;
  j["replicates"] = cfg.replicates;
  j["seed"] = cfg.seed;
  j["critical_c"] = optional_json(cfg.critical_c);
  j["keep_replicates"] = cfg.keep_replicates;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  return guarded("malformed experiment config", [&] {
    ExperimentConfig cfg;
    const auto kind = parse_experiment_kind(field(j, "kind").get<std::string>());
    if (!kind) bad("unknown experiment kind");
    cfg.kind = *kind;
    const Json& m = field(j, "motif");
    cfg.motif = m.is_string() ? load_motif(m.get<std::string>()) : motif_from_json(m);
    const Json& w = field(j, "graphon");
    cfg.graphon = w.is_string() ? load_graphon(w.get<std::string>()) : graphon_from_json(w);
    if (auto it = j.find("schedule"); it != j.end()) {
      cfg.schedule.amplitude = it->value("amplitude", 1.0);
      cfg.schedule.exponent = it->value("exponent", 0.0);
    }
    for (const Json& n : field(j, "n_values")) {
      if (!n.is_number_integer() || n.get<long long>() < 1) bad("n_values must be positive integers");
      cfg.n_values.push_back(n.get<std::size_t>());
    }
    const Json& reps = field(j, "replicates");
    if (!reps.is_number_integer() || reps.get<long long>() < 0) {
      bad("replicates must be a nonnegative integer");
    }
    cfg.replicates = reps.get<std::size_t>();
    const Json& seed = field(j, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
      bad("seed must be a nonnegative integer");
    }
    cfg.seed = seed.get<std::uint64_t>();
    cfg.critical_c = optional_double(j, "critical_c");
    cfg.threads = j.value("threads", std::size_t{0});
    cfg.keep_replicates = j.value("keep_replicates", false);
    cfg.validate();
    return cfg;
  });
}

Json result_to_json(const ExperimentResult& r) {
  Json j;
  j["config"] = config_to_json(r.config);
  Json cells = Json::array();
  for (const CellSummary& s : r.cells) {
    Json c;
    c["n"] = s.n;
    c["rho"] = s.rho;
    c["replicates"] = s.replicates;
    c["cell_seed"] = s.cell_seed;
    c["expected"] = s.expected;
    c["mean_x"] = s.mean_x;
    c["var_x"] = s.var_x;
    c["mean_x_se"] = s.mean_x_se;
    c["containment_fraction"] = s.containment_fraction;
    c["mean_delta1"] = s.mean_delta1;
    c["mean_delta2"] = s.mean_delta2;
    c["var_delta1"] = s.var_delta1;
    c["var_delta2"] = s.var_delta2;
    c["cov_delta12"] = s.cov_delta12;
    c["cov_delta12_se"] = s.cov_delta12_se;
    c["corr_delta12"] = optional_json(s.corr_delta12);
    c["r1"] = s.ratio ? Json(s.ratio->r1) : Json(nullptr);
    c["r2"] = s.ratio ? Json(s.ratio->r2) : Json(nullptr);
    c["ks_z"] = report_to_json(s.ks_z);
    c["ks_delta1"] = report_to_json(s.ks_delta1);
    c["ks_delta2"] = report_to_json(s.ks_delta2);
    c["kappa"] = optional_json(s.kappa);
    c["conditional_expected"] = optional_json(s.conditional_expected);
    c["conditional_variance_oracle"] = optional_json(s.conditional_variance_oracle);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return j;
}

ExperimentResult result_from_json(const Json& j) {
  return guarded("malformed experiment result", [&] {
    ExperimentResult r;
    r.config = config_from_json(field(j, "config"));
    for (const Json& c : field(j, "cells")) {
      CellSummary s;
      s.n = field(c, "n").get<std::size_t>();
      s.rho = field(c, "rho").get<double>();
      s.replicates = field(c, "replicates").get<std::size_t>();
      s.cell_seed = field(c, "cell_seed").get<std::uint64_t>();
      s.expected = field(c, "expected").get<double>();
      s.mean_x = field(c, "mean_x").get<double>();
      s.var_x = field(c, "var_x").get<double>();
      s.mean_x_se = field(c, "mean_x_se").get<double>();
      s.containment_fraction = field(c, "containment_fraction").get<double>();
      s.mean_delta1 = field(c, "mean_delta1").get<double>();
      s.mean_delta2 = field(c, "mean_delta2").get<double>();
      s.var_delta1 = field(c, "var_delta1").get<double>();
      s.var_delta2 = field(c, "var_delta2").get<double>();
      s.cov_delta12 = field(c, "cov_delta12").get<double>();
      s.cov_delta12_se = field(c, "cov_delta12_se").get<double>();
      s.corr_delta12 = optional_double(c, "corr_delta12");
      const auto r1 = optional_double(c, "r1");
      const auto r2 = optional_double(c, "r2");
      if (r1 && r2) s.ratio = VarianceRatio{*r1, *r2};
      s.ks_z = report_from_json(c, "ks_z");
      s.ks_delta1 = report_from_json(c, "ks_delta1");
      s.ks_delta2 = report_from_json(c, "ks_delta2");
      s.kappa = optional_double(c, "kappa");
      s.conditional_expected = optional_double(c, "conditional_expected");
      s.conditional_variance_oracle = optional_double(c, "conditional_variance_oracle");
      r.cells.push_back(std::move(s));
    }
    return r;
  });
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string ks(const std::optional<NormalityReport>& r) {
  return r ? format_double(r->ks_statistic) : std::string();
}

}  // namespace

std::string summary_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "n,rho,replicates,cell_seed,expected,mean_x,var_x,mean_x_se,containment_fraction,"
        "mean_delta1,mean_delta2,var_delta1,var_delta2,cov_delta12,cov_delta12_se,corr_delta12,"
        "r1,r2,ks_z,ks_delta1,ks_delta2,kappa,conditional_expected,conditional_variance_oracle\n";
  for (const CellSummary& s : r.cells) {
    os << s.n << ',' << format_double(s.rho) << ',' << s.replicates << ',' << s.cell_seed << ','
       << format_double(s.expected) << ',' << format_double(s.mean_x) << ','
       << format_double(s.var_x) << ',' << format_double(s.mean_x_se) << ','
       << format_double(s.containment_fraction) << ',' << format_double(s.mean_delta1) << ','
       << format_double(s.mean_delta2) << ',' << format_double(s.var_delta1) << ','
       << format_double(s.var_delta2) << ',' << format_double(s.cov_delta12) << ','
       << format_double(s.cov_delta12_se) << ',' << opt(s.corr_delta12) << ','
       << (s.ratio ? format_double(s.ratio->r1) : "") << ','
       << (s.ratio ? format_double(s.ratio->r2) : "") << ',' << ks(s.ks_z) << ','
       << ks(s.ks_delta1) << ',' << ks(s.ks_delta2) << ',' << opt(s.kappa) << ','
       << opt(s.conditional_expected) << ',' << opt(s.conditional_variance_oracle) << '\n';
  }
  return os.str();
}

std::string replicate_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "seed,n,rho,x,expected,cond_expected,delta,delta1,delta2\n";
  for (const auto& cell : r.replicate_rows) {
    for (const ReplicateRow& row : cell) {
      os << row.seed << ',' << row.n << ',' << format_double(row.rho) << ',' << row.d.x << ','
         << format_double(row.d.expected) << ',' << format_double(row.d.conditional_expected)
         << ',' << format_double(row.d.delta) << ',' << format_double(row.d.delta1) << ','
         << format_double(row.d.delta2) << '\n';
    }
  }
  return os.str();
}

void write_graph_dump(std::ostream& os, const SampledGraph& g) {
  os << g.n << ' ' << format_double(g.rho) << ' ' << g.seed << '\n';
  for (const auto& [i, j] : g.edges) os << i + 1 << ' ' << j + 1 << '\n';
  os << "latents\n";
  for (std::size_t v = 0; v < g.latents.size(); ++v) {
    os << format_double(g.latents.coords[v]) << ' ' << g.latents.blocks[v] + 1 << '\n';
  }
}

SampledGraph read_graph_dump(std::istream& is) {
  SampledGraph g;
  std::string line;
  if (!std::getline(is, line)) bad("empty graph dump");
  {
    std::istringstream header(line);
    if (!(header >> g.n >> g.rho >> g.seed)) bad("graph dump header must be \"n rho seed\"");
  }
  bool in_latents = false;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line == "latents") {
      in_latents = true;
      continue;
    }
    std::istringstream fields(line);
    if (in_latents) {
      double u = 0.0;
      std::uint64_t block = 0;
      if (!(fields >> u >> block) || block < 1) bad("bad latent on line " + std::to_string(line_no));
      g.latents.coords.push_back(u);
      g.latents.blocks.push_back(static_cast<std::uint32_t>(block - 1));
    } else {
      std::uint64_t i = 0, j = 0;
      if (!(fields >> i >> j) || i < 1 || j < 1 || i > g.n || j > g.n || i == j) {
        bad("bad edge on line " + std::to_string(line_no));
      }
      g.edges.emplace_back(static_cast<VertexId>(std::min(i, j) - 1),
                           static_cast<VertexId>(std::max(i, j) - 1));
    }
  }
  if (!g.latents.coords.empty() && g.latents.size() != g.n) {
    bad("graph dump has " + std::to_string(g.latents.size()) + " latents for n = " +
        std::to_string(g.n));
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) {
    bad("graph dump repeats an edge");
  }
  return g;
}

}  // namespace sgf
