#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "vtergm/io.hpp"
#include "vtergm/sampler.hpp"
#include "vtergm/triangles.hpp"

using namespace vtergm;
namespace fs = std::filesystem;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

ParseErrorCode parse_code(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseErrorCode::kIo;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "vtergm_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(ReadGraph, K3Canonical) {
  const Graph g = read_graph(fs::path(VTERGM_TEST_DATA) / "k3.txt");
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(format_graph(g), "3\n1 2\n1 3\n2 3\n");
}

TEST(ReadGraph, CommentsBlankLinesAndOrder) {
  const Graph g = parse("# bowtie\n5\n\n4 5\n3 1\n  2 3 \n1 2\n3 4\n5 3\n");
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_EQ(vertices_in_triangles(g).v_t, 5u);
  EXPECT_TRUE(g.has_edge(3, 4));
}

TEST(ReadGraph, DistinctErrors) {
  EXPECT_EQ(parse_code("3\n3 3\n"), ParseErrorCode::kSelfLoop);
  EXPECT_EQ(parse_code("5\n1 7\n"), ParseErrorCode::kVertexRange);
  EXPECT_EQ(parse_code("5\n0 2\n"), ParseErrorCode::kVertexRange);
  EXPECT_EQ(parse_code("5\n1 2\n2 1\n"), ParseErrorCode::kDuplicateEdge);
  EXPECT_EQ(parse_code("5\n1 2 3\n"), ParseErrorCode::kMalformedLine);
  EXPECT_EQ(parse_code("5\nx y\n"), ParseErrorCode::kMalformedLine);
  EXPECT_EQ(parse_code(""), ParseErrorCode::kMissingHeader);
  EXPECT_EQ(parse_code("1 2\n"), ParseErrorCode::kMissingHeader);
  EXPECT_EQ(parse_code("0\n"), ParseErrorCode::kMissingHeader);
}

TEST(ReadGraph, ErrorReportsLine) {
  try {
    parse("4\n1 2\n\n2 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ReadGraph, MissingFile) {
  try {
    read_graph(scratch("does_not_exist.txt"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ParseErrorCode::kIo);
  }
}

TEST(WriteGraph, RoundTrip) {
  const Graph g = sample_er(200, 3.0, 17);
  const fs::path path = scratch("roundtrip.txt");
  write_graph(g, path);
  const Graph h = read_graph(path);
  EXPECT_EQ(g, h);
  EXPECT_EQ(read_text_file(path), format_graph(g));
  EXPECT_EQ(format_graph(parse(format_graph(g))), format_graph(g));
}

TEST(DecompositionJson, RoundTripOneIndexed) {
  const Graph g = read_graph(fs::path(VTERGM_TEST_DATA) / "bowtie.txt");
  const auto d = decompose_q_basic(g);
  const auto j = decomposition_to_json(d);
  EXPECT_EQ(j.at("v1"), nlohmann::json::parse("[1,2,3]"));
  EXPECT_EQ(j.at("v2"), nlohmann::json::parse("[4,5]"));
  EXPECT_EQ(j.at("config").at("l2"), 2);
  EXPECT_EQ(decomposition_from_json(j), d);
}

TEST(DecompositionJson, Rejections) {
  EXPECT_THROW(decomposition_from_json(nlohmann::json::parse(R"({"v1":[0],"v2":[],"v31":[],"v32":[],"w":[]})")),
               ParseError);
  EXPECT_THROW(decomposition_from_json(nlohmann::json::parse(R"({"v1":[1]})")), ParseError);
  EXPECT_THROW(decomposition_from_json(nlohmann::json::parse(R"({"v1":[],"v2":[],"v31":[],"v32":[],"w":[[1]]})")),
               ParseError);
}

TEST(TraceCsv, HeaderAndRows) {
  ChainConfig c;
  c.steps = 100;
  c.thinning = 25;
  c.seed = 2;
  const auto s = mcmc_linear(30, LinearTilt{0.3, 1.0}, c);
  std::ostringstream out;
  write_trace_csv(s, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "step,v_t,e,dt_greedy,accepted");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(LawCsv, RowsSumToOne) {
  const auto law = enumerate_exact_law(4, 1.0);
  std::ostringstream out;
  write_law_csv(law, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "v_t,e,count,mass");
  double total = 0;
  std::uint64_t graphs = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string v, e, count, mass;
    std::getline(row, v, ',');
    std::getline(row, e, ',');
    std::getline(row, count, ',');
    std::getline(row, mass, ',');
    graphs += std::stoull(count);
    total += std::stod(mass);
  }
  EXPECT_EQ(graphs, 64u);
  EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
  const fs::path path = scratch("digest.txt");
  write_text_file(path, "a");
  EXPECT_EQ(file_digest(path), "af63dc4c8601ec8c");
}

TEST(WriteTextFile, UnwritablePath) {
  EXPECT_THROW(write_text_file(scratch("missing_dir") / "sub" / "x.txt", "z"), Error);
}
