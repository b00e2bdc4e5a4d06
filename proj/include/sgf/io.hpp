#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sgf/experiments.hpp"
#include "sgf/graphon.hpp"
#include "sgf/motif.hpp"
#include "sgf/sampler.hpp"

namespace sgf {

using Json = nlohmann::ordered_json;

// All readers throw std::invalid_argument on malformed input, so callers can
// report it as a validation error.

/// {"vertices": k, "edges": [[a, b], ...]} with 1-based endpoints.
Json motif_to_json(const Motif& m);
Motif motif_from_json(const Json& j);

/// {"pi": [...], "values": [[...], ...]}.
Json graphon_to_json(const StepGraphon& w);
StepGraphon graphon_from_json(const Json& j);

/// A built-in name, or else a path to a JSON file.
Motif load_motif(std::string_view name_or_path);
StepGraphon load_graphon(std::string_view name_or_path);

Json read_json_file(const std::string& path);

/// "motif" and "graphon" may be names or inline objects; the writer always
/// emits inline objects so the echo is self-contained.
Json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const Json& j);

/// Config echo plus per-n cells. Runtime and replicate rows are left out,
/// so the document depends only on the config.
Json result_to_json(const ExperimentResult& r);
ExperimentResult result_from_json(const Json& j);

/// One row per n.
std::string summary_csv(const ExperimentResult& r);
/// seed, n, rho, x, expected, cond_expected, delta, delta1, delta2.
std::string replicate_csv(const ExperimentResult& r);

/// %.17g, enough to round-trip a double.
std::string format_double(double x);

/// Header "n rho seed", then "i j" per edge (1-based, i < j, sorted), then a
/// "latents" line followed by one "u block" line per vertex (block 1-based).
void write_graph_dump(std::ostream& os, const SampledGraph& g);
SampledGraph read_graph_dump(std::istream& is);

}  // namespace sgf
