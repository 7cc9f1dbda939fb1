#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "vtergm/error.hpp"
#include "vtergm/graph.hpp"
#include "vtergm/oracle.hpp"
#include "vtergm/sampler.hpp"
#include "vtergm/triangles.hpp"

namespace vtergm {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ParseErrorCode {
  kMissingHeader,
  kMalformedLine,
  kSelfLoop,
  kDuplicateEdge,
  kVertexRange,
  kIo,
};

const char* to_string(ParseErrorCode code) noexcept;

class ParseError : public Error {
 public:
  ParseError(ParseErrorCode code, std::size_t line, const std::string& what);

  ParseErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorCode code_;
  std::size_t line_;
};

/// Edge-list text: first line `n`, then one `u v` line per edge, 1-indexed.
/// Blank lines and lines starting with '#' are ignored.
Graph parse_graph(std::istream& in);
Graph read_graph(const std::filesystem::path& path);

/// Canonical form: `n`, then edges sorted with u < v.
void format_graph(const Graph& g, std::ostream& out);
std::string format_graph(const Graph& g);
void write_graph(const Graph& g, const std::filesystem::path& path);

/// 1-indexed JSON with arrays v1, v2, v31, v32, w and object config.
nlohmann::json decomposition_to_json(const QBasicDecomposition& d);
QBasicDecomposition decomposition_from_json(const nlohmann::json& j);

/// CSV with columns step,v_t,e,dt_greedy,accepted; unrecorded statistics are empty.
void write_trace_csv(const ChainSummary& chain, std::ostream& out);

/// CSV with columns v_t,e,count,mass plus one column per extra table.
void write_law_csv(const ExactLaw& law, std::ostream& out,
                   const std::vector<std::pair<std::string, const TiltedLaw*>>& tilted = {});

/// FNV-1a 64-bit digest, rendered as 16 hex digits. Not cryptographic.
std::string fnv1a64_hex(std::string_view data);
std::string file_digest(const std::filesystem::path& path);

/// Writes `contents` to `path`, throwing DomainError if it cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace vtergm
