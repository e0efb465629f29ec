#pragma once

// File formats:
//   channel JSON  { "nx", "ny", "nz", "w": [x][y][z] }
//   triple JSON   { "nu", "nv", "nx", "puv": [u][v], "px_given_uv": [u][v][x] }
//   common-information JSON
//                 { "nu", "nv", "nw", "nx", "pu", "pv", "pw_given_uv": [u][v][w],
//                   "px_given_uvw": [u][v][w][x] }
//   time-sharing JSON
//                 { "nw", "nx", "pw", "px_given_w": [w][x] }
//   polygon CSV   header "r1,r2", one vertex per line, decreasing r1
// Probabilities are written with 17 significant digits.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bcbounds/auxdist.hpp"
#include "bcbounds/channel.hpp"
#include "bcbounds/optimize.hpp"
#include "bcbounds/polygon.hpp"

namespace bcbounds {

// Malformed input: bad JSON syntax or a structurally wrong document. The
// message carries the line (syntax errors) or the offending field path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string channel_to_json(const BroadcastChannel& c);
// Throws ParseError for malformed documents and ChannelError for documents
// that parse but violate the channel invariants.
BroadcastChannel channel_from_json(const std::string& text);
BroadcastChannel load_channel(const std::filesystem::path& path);
void save_channel(const BroadcastChannel& c, const std::filesystem::path& path);

std::string aux_to_json(const AuxTriple& a);
// Throws ParseError, or ProbabilityError / AuxError for invalid laws.
AuxTriple aux_from_json(const std::string& text);
AuxTriple load_aux(const std::filesystem::path& path);
void save_aux(const AuxTriple& a, const std::filesystem::path& path);

std::string common_aux_to_json(const CommonInfoAux& g);
CommonInfoAux common_aux_from_json(const std::string& text);

std::string time_share_to_json(const TimeShareLaw& t);
TimeShareLaw time_share_from_json(const std::string& text);

std::string polygon_to_csv(const PolygonRegion& p);
PolygonRegion polygon_from_csv(const std::string& text);

nlohmann::json aux_to_json_value(const BestAux& a);
// Sidecar for a traced region: per-angle objectives and best auxiliaries.
nlohmann::json trace_to_json(const TraceResult& t);

std::string read_text_file(const std::filesystem::path& path);
// Writes through a temporary file and renames, so a failed write leaves no
// partial artifact.
void write_text_file(const std::filesystem::path& path, const std::string& text);

// %.17g formatting.
std::string format_probability(double v);

}  // namespace bcbounds
