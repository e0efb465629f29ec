#include "bcbounds/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bcbounds {

using nlohmann::json;

std::string format_probability(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i)
      if (text[i] == '\n') ++line;
    std::ostringstream os;
    os << "line " << line << ": " << e.what();
    throw ParseError(os.str());
  }
}

std::size_t read_size(const json& doc, const char* field) {
  if (!doc.is_object()) throw ParseError("top-level value must be an object");
  auto it = doc.find(field);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + field + "\"");
  if (!it->is_number_integer() || it->get<long long>() <= 0) {
    throw ParseError(std::string("field \"") + field + "\" must be a positive integer");
  }
  return it->get<std::size_t>();
}

const json& read_field(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + field + "\"");
  return *it;
}

// Reads a nested array with the given shape into `out`, row-major. Errors
// name the index path, e.g. w[1][0].
void read_tensor(const json& node, std::span<const std::size_t> dims, const std::string& path,
                 std::vector<double>& out) {
  if (dims.empty()) {
    if (!node.is_number()) throw ParseError(path + ": expected a number");
    out.push_back(node.get<double>());
    return;
  }
  if (!node.is_array()) throw ParseError(path + ": expected an array");
  if (node.size() != dims[0]) {
    std::ostringstream os;
    os << path << ": expected " << dims[0] << " entries, found " << node.size();
    throw ParseError(os.str());
  }
  for (std::size_t i = 0; i < dims[0]; ++i) {
    read_tensor(node[i], dims.subspan(1), path + "[" + std::to_string(i) + "]", out);
  }
}

std::vector<double> read_tensor(const json& doc, const char* field, std::initializer_list<std::size_t> dims) {
  std::vector<double> out;
  read_tensor(read_field(doc, field), std::span<const std::size_t>(dims.begin(), dims.size()), field, out);
  return out;
}

// Writes values (row-major, shape `dims`) as a nested JSON array.
void write_tensor(std::ostream& os, std::span<const double> values, std::span<const std::size_t> dims,
                  std::size_t& pos, int indent) {
  if (dims.empty()) {
    os << format_probability(values[pos++]);
    return;
  }
  os << '[';
  for (std::size_t i = 0; i < dims[0]; ++i) {
    if (i) os << ',';
    if (dims.size() > 1) os << '\n' << std::string(indent + 2, ' ');
    else if (i) os << ' ';
    write_tensor(os, values, dims.subspan(1), pos, indent + 2);
  }
  if (dims.size() > 1) os << '\n' << std::string(indent, ' ');
  os << ']';
}

std::string tensor_text(std::span<const double> values, std::initializer_list<std::size_t> dims, int indent) {
  std::ostringstream os;
  std::size_t pos = 0;
  write_tensor(os, values, std::span<const std::size_t>(dims.begin(), dims.size()), pos, indent);
  return os.str();
}

std::vector<Dist> rows_of(const std::vector<double>& flat, std::size_t width, const char* field) {
  std::vector<Dist> rows;
  for (std::size_t r = 0; r * width < flat.size(); ++r) {
    std::vector<double> row(flat.begin() + r * width, flat.begin() + (r + 1) * width);
    try {
      rows.emplace_back(std::move(row));
    } catch (const ProbabilityError& e) {
      throw ProbabilityError(std::string(field) + " row " + std::to_string(r) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<double> flatten(const std::vector<Dist>& rows) {
  std::vector<double> out;
  for (const auto& r : rows) out.insert(out.end(), r.probs().begin(), r.probs().end());
  return out;
}

}  // namespace

std::string channel_to_json(const BroadcastChannel& c) {
  std::ostringstream os;
  os << "{\n  \"nx\": " << c.nx() << ",\n  \"ny\": " << c.ny() << ",\n  \"nz\": " << c.nz() << ",\n  \"w\": "
     << tensor_text(c.tensor(), {c.nx(), c.ny(), c.nz()}, 2) << "\n}\n";
  return os.str();
}

BroadcastChannel channel_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const std::size_t nx = read_size(doc, "nx"), ny = read_size(doc, "ny"), nz = read_size(doc, "nz");
  return BroadcastChannel(nx, ny, nz, read_tensor(doc, "w", {nx, ny, nz}));
}

BroadcastChannel load_channel(const std::filesystem::path& path) { return channel_from_json(read_text_file(path)); }

void save_channel(const BroadcastChannel& c, const std::filesystem::path& path) {
  write_text_file(path, channel_to_json(c));
}

std::string aux_to_json(const AuxTriple& a) {
  std::ostringstream os;
  os << "{\n  \"nu\": " << a.nu() << ",\n  \"nv\": " << a.nv() << ",\n  \"nx\": " << a.nx()
     << ",\n  \"puv\": " << tensor_text(a.puv().probs(), {a.nu(), a.nv()}, 2)
     << ",\n  \"px_given_uv\": " << tensor_text(flatten(a.rows()), {a.nu(), a.nv(), a.nx()}, 2) << "\n}\n";
  return os.str();
}

AuxTriple aux_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const std::size_t nu = read_size(doc, "nu"), nv = read_size(doc, "nv"), nx = read_size(doc, "nx");
  auto puv = read_tensor(doc, "puv", {nu, nv});
  auto rows = read_tensor(doc, "px_given_uv", {nu, nv, nx});
  return AuxTriple(JointDist({nu, nv}, std::move(puv), {"U", "V"}), rows_of(rows, nx, "px_given_uv"));
}

AuxTriple load_aux(const std::filesystem::path& path) { return aux_from_json(read_text_file(path)); }

void save_aux(const AuxTriple& a, const std::filesystem::path& path) { write_text_file(path, aux_to_json(a)); }

std::string common_aux_to_json(const CommonInfoAux& g) {
  g.check();
  std::ostringstream os;
  const auto pu = std::vector<double>(g.pu.probs().begin(), g.pu.probs().end());
  const auto pv = std::vector<double>(g.pv.probs().begin(), g.pv.probs().end());
  os << "{\n  \"nu\": " << g.nu() << ",\n  \"nv\": " << g.nv() << ",\n  \"nw\": " << g.nw()
     << ",\n  \"nx\": " << g.nx() << ",\n  \"pu\": " << tensor_text(pu, {g.nu()}, 2)
     << ",\n  \"pv\": " << tensor_text(pv, {g.nv()}, 2)
     << ",\n  \"pw_given_uv\": " << tensor_text(flatten(g.pw_given_uv), {g.nu(), g.nv(), g.nw()}, 2)
     << ",\n  \"px_given_uvw\": "
     << tensor_text(flatten(g.px_given_uvw), {g.nu(), g.nv(), g.nw(), g.nx()}, 2) << "\n}\n";
  return os.str();
}

CommonInfoAux common_aux_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const std::size_t nu = read_size(doc, "nu"), nv = read_size(doc, "nv"), nw = read_size(doc, "nw"),
                    nx = read_size(doc, "nx");
  CommonInfoAux g{Dist(read_tensor(doc, "pu", {nu})), Dist(read_tensor(doc, "pv", {nv})),
                  rows_of(read_tensor(doc, "pw_given_uv", {nu, nv, nw}), nw, "pw_given_uv"),
                  rows_of(read_tensor(doc, "px_given_uvw", {nu, nv, nw, nx}), nx, "px_given_uvw")};
  g.check();
  return g;
}

std::string time_share_to_json(const TimeShareLaw& t) {
  const std::size_t nw = t.pw.size(), nx = t.px_given_w.empty() ? 0 : t.px_given_w.front().size();
  const auto pw = std::vector<double>(t.pw.probs().begin(), t.pw.probs().end());
  std::ostringstream os;
  os << "{\n  \"nw\": " << nw << ",\n  \"nx\": " << nx << ",\n  \"pw\": " << tensor_text(pw, {nw}, 2)
     << ",\n  \"px_given_w\": " << tensor_text(flatten(t.px_given_w), {nw, nx}, 2) << "\n}\n";
  return os.str();
}

TimeShareLaw time_share_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const std::size_t nw = read_size(doc, "nw"), nx = read_size(doc, "nx");
  return {Dist(read_tensor(doc, "pw", {nw})), rows_of(read_tensor(doc, "px_given_w", {nw, nx}), nx, "px_given_w")};
}

std::string polygon_to_csv(const PolygonRegion& p) {
  std::ostringstream os;
  os << "r1,r2\n";
  char buf[64];
  for (const auto& v : p.vertices) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", v.r1, v.r2);
    os << buf;
  }
  return os.str();
}

PolygonRegion polygon_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("r1,r2", 0) != 0) throw ParseError("line 1: expected header r1,r2");
  PolygonRegion p;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t used = 0;
      const double r1 = std::stod(line.substr(0, comma), &used);
      const double r2 = std::stod(line.substr(comma + 1));
      p.vertices.push_back({r1, r2, std::nullopt});
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": expected two numbers r1,r2");
    }
  }
  return p;
}

json aux_to_json_value(const BestAux& a) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AuxTriple>) {
          return json::parse(aux_to_json(v));
        } else if constexpr (std::is_same_v<T, AuxPair>) {
          json rows = json::array();
          for (const auto& r : v.px_given_u) rows.push_back(std::vector<double>(r.probs().begin(), r.probs().end()));
          return {{"pa", std::vector<double>(v.pu.probs().begin(), v.pu.probs().end())}, {"px_given_a", rows}};
        } else if constexpr (std::is_same_v<T, TimeShareLaw>) {
          json rows = json::array();
          for (const auto& r : v.px_given_w) rows.push_back(std::vector<double>(r.probs().begin(), r.probs().end()));
          return {{"pw", std::vector<double>(v.pw.probs().begin(), v.pw.probs().end())}, {"px_given_w", rows}};
        } else {
          return nullptr;
        }
      },
      a);
}

json trace_to_json(const TraceResult& t) {
  json angles = json::array();
  for (const auto& a : t.angles) {
    angles.push_back({{"lambda", a.lambda}, {"value", a.value}, {"iterations", a.iterations},
                      {"best_aux", aux_to_json_value(a.best)}});
  }
  json out{{"bound", to_string(t.kind)}, {"sum_rate", t.sum_rate()}, {"angles", angles}};
  json verts = json::array();
  for (const auto& v : t.polygon.vertices) verts.push_back({v.r1, v.r2});
  out["vertices"] = verts;
  if (!t.parts.empty()) {
    json parts = json::array();
    for (const auto& p : t.parts) parts.push_back(trace_to_json(p));
    out["parts"] = parts;
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace bcbounds
