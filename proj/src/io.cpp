#include "vtergm/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace vtergm {
namespace {

/// Shortest round-trip decimal for a double.
std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool parse_unsigned(const std::string& token, std::uint64_t& value) {
  if (token.empty() || token.size() > 18) return false;
  value = 0;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

const char* to_string(ParseErrorCode code) noexcept {
  switch (code) {
    case ParseErrorCode::kMissingHeader:
      return "missing_header";
    case ParseErrorCode::kMalformedLine:
      return "malformed_line";
    case ParseErrorCode::kSelfLoop:
      return "self_loop";
    case ParseErrorCode::kDuplicateEdge:
      return "duplicate_edge";
    case ParseErrorCode::kVertexRange:
      return "vertex_range";
    case ParseErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorCode code, std::size_t line, const std::string& what)
    : Error(ErrorKind::kParse,
            std::string(to_string(code)) + (line ? " at line " + std::to_string(line) : "") +
                ": " + what),
      code_(code),
      line_(line) {}

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t n = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() != 1 || !parse_unsigned(tokens[0], n) || n == 0) {
      throw ParseError(ParseErrorCode::kMissingHeader, line_no,
                       "expected a positive vertex count, got '" + line + "'");
    }
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError(ParseErrorCode::kMissingHeader, 0, "empty graph file");

  Graph g(static_cast<std::size_t>(n));
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto tokens = split_ws(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (tokens.size() != 2 || !parse_unsigned(tokens[0], u) || !parse_unsigned(tokens[1], v)) {
      throw ParseError(ParseErrorCode::kMalformedLine, line_no,
                       "expected 'u v', got '" + line + "'");
    }
    if (u == 0 || v == 0 || u > n || v > n) {
      throw ParseError(ParseErrorCode::kVertexRange, line_no,
                       "vertex index outside 1.." + std::to_string(n) + " in '" + line + "'");
    }
    if (u == v) {
      throw ParseError(ParseErrorCode::kSelfLoop, line_no, "self-loop at vertex " + tokens[0]);
    }
    if (!g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1))) {
      throw ParseError(ParseErrorCode::kDuplicateEdge, line_no,
                       "duplicate edge " + tokens[0] + " " + tokens[1]);
    }
  }
  return g;
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(ParseErrorCode::kIo, 0, "cannot open " + path.string());
  return parse_graph(in);
}

void format_graph(const Graph& g, std::ostream& out) {
  out << g.n() << '\n';
  for (const auto& [u, v] : g.edges()) out << (u + 1) << ' ' << (v + 1) << '\n';
}

std::string format_graph(const Graph& g) {
  std::ostringstream ss;
  format_graph(g, ss);
  return ss.str();
}

void write_graph(const Graph& g, const std::filesystem::path& path) {
  write_text_file(path, format_graph(g));
}

nlohmann::json decomposition_to_json(const QBasicDecomposition& d) {
  auto one_based = [](const std::vector<Vertex>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (Vertex v : vs) arr.push_back(v + 1);
    return arr;
  };
  nlohmann::json w = nlohmann::json::array();
  for (const auto& [a, b] : d.w) w.push_back({a + 1, b + 1});
  return {{"v1", one_based(d.v1)},
          {"v2", one_based(d.v2)},
          {"v31", one_based(d.v31)},
          {"v32", one_based(d.v32)},
          {"w", w},
          {"config",
           {{"l1", d.config.l1}, {"l2", d.config.l2}, {"l31", d.config.l31}, {"l32", d.config.l32}}}};
}

QBasicDecomposition decomposition_from_json(const nlohmann::json& j) {
  auto vertex = [](const nlohmann::json& x) -> Vertex {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() == 0) {
      throw ParseError(ParseErrorCode::kVertexRange, 0, "decomposition vertices are 1-indexed");
    }
    return static_cast<Vertex>(x.get<std::uint64_t>() - 1);
  };
  auto vertices = [&](const char* key) {
    std::vector<Vertex> out;
    if (!j.contains(key) || !j.at(key).is_array()) {
      throw ParseError(ParseErrorCode::kMalformedLine, 0,
                       std::string("decomposition needs array '") + key + "'");
    }
    for (const auto& x : j.at(key)) out.push_back(vertex(x));
    return out;
  };
  QBasicDecomposition d;
  d.v1 = vertices("v1");
  d.v2 = vertices("v2");
  d.v31 = vertices("v31");
  d.v32 = vertices("v32");
  if (!j.contains("w") || !j.at("w").is_array()) {
    throw ParseError(ParseErrorCode::kMalformedLine, 0, "decomposition needs array 'w'");
  }
  for (const auto& e : j.at("w")) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError(ParseErrorCode::kMalformedLine, 0, "w entries must be [u, v] pairs");
    }
    d.w.emplace_back(vertex(e[0]), vertex(e[1]));
  }
  if (j.contains("config")) {
    const auto& c = j.at("config");
    try {
      d.config = {c.at("l1").get<std::size_t>(), c.at("l2").get<std::size_t>(),
                  c.at("l31").get<std::size_t>(), c.at("l32").get<std::size_t>()};
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(ParseErrorCode::kMalformedLine, 0,
                       std::string("bad decomposition config: ") + ex.what());
    }
  } else {
    d.config = {d.v1.size(), d.v2.size(), d.v31.size(), d.v32.size()};
  }
  return d;
}

void write_trace_csv(const ChainSummary& chain, std::ostream& out) {
  out << "step,v_t,e,dt_greedy,accepted\n";
  for (std::size_t i = 0; i < chain.step.size(); ++i) {
    out << chain.step[i] << ',';
    if (i < chain.v_t.size()) out << chain.v_t[i];
    out << ',';
    if (i < chain.e.size()) out << chain.e[i];
    out << ',';
    if (i < chain.dt_greedy.size()) out << chain.dt_greedy[i];
    out << ',' << chain.accepted[i] << '\n';
  }
}

void write_law_csv(const ExactLaw& law, std::ostream& out,
                   const std::vector<std::pair<std::string, const TiltedLaw*>>& tilted) {
  out << "v_t,e,count,mass";
  for (const auto& [name, table] : tilted) out << ',' << name;
  out << '\n';
  for (std::size_t v = 0; v <= law.n; ++v) {
    for (std::size_t e = 0; e <= law.pairs; ++e) {
      if (law.count[v][e] == 0) continue;
      out << v << ',' << e << ',' << law.count[v][e] << ',' << format_double(law.mass[v][e]);
      for (const auto& [name, table] : tilted) out << ',' << format_double(table->joint[v][e]);
      out << '\n';
    }
  }
}

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ParseErrorCode::kIo, 0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string file_digest(const std::filesystem::path& path) {
  return fnv1a64_hex(read_text_file(path));
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write output file " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DomainError("failed writing output file " + path.string());
}

}  // namespace vtergm
