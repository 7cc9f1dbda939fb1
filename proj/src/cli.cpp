#include "vtergm/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vtergm/error.hpp"
#include "vtergm/graph.hpp"
#include "vtergm/io.hpp"
#include "vtergm/oracle.hpp"
#include "vtergm/rates.hpp"
#include "vtergm/sampler.hpp"
#include "vtergm/triangles.hpp"

namespace vtergm {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kOutputDirEnv = "VTERGM_OUTPUT_DIR";

/// What a workflow produced: files to write plus the stdout summary.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  json summary;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  std::string manifest_stem;  // defaults to the first file's stem
  int exit_code = kExitOk;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct SampleArgs {
  std::string model = "er";
  std::size_t n = 0;
  double lambda = 0.0;
  double a = 0.0;
  std::uint64_t seed = 0;
  std::string out = "graph.txt";
};

struct McmcArgs {
  std::size_t n = 0;
  double lambda = 0.0;
  std::optional<double> theta, alpha, beta;
  std::uint64_t steps = 0, burn_in = 0, thinning = 1, seed = 0;
  std::size_t chains = 1;
  std::string init = "planted";
  bool no_dt = false;
  std::string out = "trace.csv";
};

struct RateArgs {
  std::optional<double> theta, alpha, beta, a, edge_x;
  double lambda = 1.0;
  std::optional<std::int64_t> n;
  std::string out = "rate.json";
};

struct SolveArgs {
  double q = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
  std::string out = "solve.json";
};

struct EstimateArgs {
  std::string graph;
  std::optional<std::int64_t> n, e, vt;
  std::optional<double> alpha;
  std::string out = "estimate.json";
};

struct EnumerateArgs {
  std::size_t n = 0;
  double lambda = 0.0;
  std::optional<double> theta, alpha, beta;
  std::size_t threads = 0;
  std::string out = "law.csv";
};

struct DecomposeArgs {
  std::string graph;
  std::string out = "decomposition.json";
};

struct ValidateArgs {
  std::string graph, decomposition, manifest;
  std::uint64_t exact_cap = PackingOptions{}.node_limit;
  std::string out = "validation.json";
};

Artifacts run_sample(const SampleArgs& a) {
  Graph g = a.model == "planted" ? sample_planted(a.n, a.a, a.lambda, a.seed)
                                 : sample_er(a.n, a.lambda, a.seed);
  const TriangleStats stats = vertices_in_triangles(g);
  Artifacts r;
  r.parameters = {{"model", a.model}, {"n", a.n}, {"lambda", a.lambda}, {"seed", a.seed}};
  if (a.model == "planted") r.parameters["a"] = a.a;
  r.seed = a.seed;
  r.files.emplace_back(a.out, format_graph(g));
  r.summary = {{"n", g.n()}, {"edges", g.edge_count()}, {"v_t", stats.v_t}, {"graph", a.out}};
  return r;
}

Artifacts run_mcmc(const McmcArgs& a) {
  const bool functional = a.alpha.has_value();
  if (functional && !a.beta) throw DomainError("--alpha needs --beta");
  if (!functional && !a.theta) throw DomainError("mcmc needs --theta or --alpha/--beta");
  ChainConfig config;
  config.steps = a.steps;
  config.burn_in = a.burn_in;
  config.thinning = a.thinning;
  config.seed = a.seed;
  config.record_dt = !a.no_dt;
  config.init = a.init == "empty" ? InitMode::kEmpty : InitMode::kPlanted;

  Artifacts r;
  r.seed = a.seed;
  r.parameters = {{"n", a.n},           {"lambda", a.lambda},     {"steps", a.steps},
                  {"burn_in", a.burn_in}, {"thinning", a.thinning}, {"seed", a.seed},
                  {"chains", a.chains},   {"init", a.init},         {"record_dt", !a.no_dt}};
  std::function<ChainSummary(const ChainConfig&)> one;
  if (functional) {
    const PowerLawTilt tilt{*a.alpha, *a.beta, a.lambda};
    tilt.validate();
    r.parameters["tilt"] = {{"kind", "power_law"}, {"alpha", *a.alpha}, {"beta", *a.beta}};
    one = [=, n = a.n](const ChainConfig& c) { return mcmc_functional(n, tilt, c); };
  } else {
    const LinearTilt tilt{*a.theta, a.lambda};
    tilt.validate();
    r.parameters["tilt"] = {{"kind", "linear"}, {"theta", *a.theta}};
    one = [=, n = a.n](const ChainConfig& c) { return mcmc_linear(n, tilt, c); };
  }
  const auto chains = run_chains(a.chains, config, one);

  const fs::path out(a.out);
  r.manifest_stem = (out.parent_path() / out.stem()).string();
  json per_chain = json::array();
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const auto& c = chains[i];
    std::ostringstream csv;
    write_trace_csv(c, csv);
    std::string name = a.out;
    if (chains.size() > 1) {
      name = (out.parent_path() / (out.stem().string() + ".chain" + std::to_string(i) +
                                   out.extension().string()))
                 .string();
    }
    r.files.emplace_back(name, csv.str());
    double mean_vt = 0.0, mean_e = 0.0;
    for (auto v : c.v_t) mean_vt += static_cast<double>(v);
    for (auto e : c.e) mean_e += static_cast<double>(e);
    const double samples = static_cast<double>(std::max<std::size_t>(1, c.step.size()));
    const double nd = static_cast<double>(a.n);
    per_chain.push_back({{"chain", i},
                         {"seed", c.seed},
                         {"trace", name},
                         {"samples", c.step.size()},
                         {"acceptance_rate", c.acceptance_rate},
                         {"mean_v_t_over_n", mean_vt / samples / nd},
                         {"mean_e_over_n", mean_e / samples / nd},
                         {"final_v_t", c.final_stats.v_t},
                         {"final_e", c.final_graph.edge_count()}});
  }
  r.summary = {{"chains", per_chain}};
  return r;
}

Artifacts run_rate(const RateArgs& a) {
  Artifacts r;
  json inputs = {{"lambda", a.lambda}};
  json result;
  if (a.alpha || a.beta) {
    if (!a.alpha || !a.beta) throw DomainError("power-law rate needs both --alpha and --beta");
    const PowerLawTilt tilt{*a.alpha, *a.beta, a.lambda};
    const RateResult opt = functional_optimum(tilt);
    inputs["alpha"] = *a.alpha;
    inputs["beta"] = *a.beta;
    result = {{"model", "power_law"},
              {"a_star", opt.a_star},
              {"lambda_max", opt.value},
              {"residual", opt.stationarity_residual},
              {"edge_density_limit", opt.a_star + a.lambda / 2.0},
              {"formula",
               {{"maximizer", "(3*alpha*beta)^(1/(1-alpha))"},
                {"admissible", "3*alpha*beta < 1"},
                {"value", "g(a*) - a*/3, rate n log n"}}}};
  } else {
    if (!a.theta) throw DomainError("rate needs --theta (or --alpha and --beta)");
    const RateResult opt = maximizer_a_star(*a.theta, a.lambda);
    inputs["theta"] = *a.theta;
    result = {{"model", "linear"},
              {"a_star", opt.a_star},
              {"lambda_max", opt.value},
              {"residual", opt.stationarity_residual},
              {"edge_density_limit", opt.a_star + a.lambda / 2.0},
              {"formula",
               {{"error_terms", "o(n^{19/20}) dropped; leading and second order only"},
                {"edge_rate_offset", "lambda/2"}}}};
    if (a.n) result["beta"] = LinearTilt{*a.theta, a.lambda}.beta(static_cast<std::size_t>(*a.n));
  }
  if (a.n && a.a) {
    inputs["n"] = *a.n;
    inputs["a"] = *a.a;
    result["log_prob_vt_tail"] = log_prob_vt_tail(*a.n, a.lambda, *a.a);
  } else if (a.n) {
    inputs["n"] = *a.n;
  }
  if (a.edge_x) {
    const double base = result["a_star"].get<double>();
    const EdgeRate er = edge_rate_function(*a.edge_x, base, a.lambda);
    inputs["edge_x"] = *a.edge_x;
    result["edge_rate"] = {
        {"finite", er.finite},
        {"numeric", er.finite ? json(er.numeric) : json("inf")},
        {"closed_form", er.finite ? json(er.closed_form) : json("inf")},
        {"closed_form_unit_offset",
         er.finite ? json(edge_rate_closed_form(*a.edge_x, base, a.lambda, EdgeRateOffset::kUnit))
                   : json("inf")}};
  }
  result["inputs"] = inputs;
  r.parameters = inputs;
  r.summary = result;
  r.files.emplace_back(a.out, dump(result));
  return r;
}

Artifacts run_solve(const SolveArgs& a) {
  const VariationalResult v = variational_min(a.q, a.c1, a.c2, a.c3);
  Artifacts r;
  r.parameters = {{"q", a.q}, {"c1", a.c1}, {"c2", a.c2}, {"c3", a.c3}};
  r.summary = {{"inputs", r.parameters}, {"x1", v.x1},       {"x2", v.x2},
               {"x3", v.x3},             {"min_value", v.min_value}, {"multiplier", v.multiplier},
               {"residual", v.residual}};
  r.files.emplace_back(a.out, dump(r.summary));
  return r;
}

Artifacts run_estimate(const EstimateArgs& a) {
  std::int64_t n = 0, e = 0, vt = 0;
  Artifacts r;
  if (!a.graph.empty()) {
    const Graph g = read_graph(a.graph);
    n = static_cast<std::int64_t>(g.n());
    e = static_cast<std::int64_t>(g.edge_count());
    vt = static_cast<std::int64_t>(vertices_in_triangles(g).v_t);
    r.parameters["graph"] = a.graph;
  } else {
    if (!a.n || !a.e || !a.vt) throw DomainError("estimate needs --graph or all of --n, --e, --vt");
    n = *a.n;
    e = *a.e;
    vt = *a.vt;
  }
  r.parameters["n"] = n;
  r.parameters["e"] = e;
  r.parameters["v_t"] = vt;
  r.summary = {{"n", n}, {"e", e}, {"v_t", vt}};
  if (a.alpha) {
    r.parameters["alpha"] = *a.alpha;
    const PowerLawEstimate est = estimate_power_law(n, e, vt, *a.alpha);
    r.summary["model"] = "power_law";
    r.summary["alpha"] = *a.alpha;
    r.summary["beta_hat"] = est.beta_hat;
    r.summary["lambda_hat"] = est.lambda_hat;
    r.summary["in_regime"] = est.in_regime;
  } else {
    const LinearEstimate est = estimate_linear(n, e, vt);
    r.summary["model"] = "linear";
    r.summary["lambda_hat"] = est.lambda_hat;
    r.summary["theta_hat"] = est.theta_hat;
  }
  r.files.emplace_back(a.out, dump(r.summary));
  return r;
}

Artifacts run_enumerate(const EnumerateArgs& a) {
  EnumerationOptions options;
  options.threads = a.threads;
  const ExactLaw law = enumerate_exact_law(a.n, a.lambda, options);
  Artifacts r;
  r.parameters = {{"n", a.n}, {"lambda", a.lambda}};
  r.summary = {{"n", a.n}, {"lambda", a.lambda}, {"total_mass", law.total_mass}, {"table", a.out}};
  std::optional<TiltedLaw> linear, power;
  std::vector<std::pair<std::string, const TiltedLaw*>> extra;
  if (a.theta) {
    linear = exact_partition_function(law, LinearTilt{*a.theta, a.lambda});
    r.parameters["theta"] = *a.theta;
    r.summary["linear"] = {{"theta", *a.theta},
                           {"partition_function", linear->partition_function},
                           {"mean_v_t", linear->mean_vt()},
                           {"mean_e", linear->mean_e()}};
    extra.emplace_back("tilted_linear", &*linear);
  }
  if (a.alpha || a.beta) {
    if (!a.alpha || !a.beta) throw DomainError("power-law tilt needs both --alpha and --beta");
    power = exact_partition_function(law, PowerLawTilt{*a.alpha, *a.beta, a.lambda});
    r.parameters["alpha"] = *a.alpha;
    r.parameters["beta"] = *a.beta;
    r.summary["power_law"] = {{"alpha", *a.alpha},
                              {"beta", *a.beta},
                              {"partition_function", power->partition_function},
                              {"mean_v_t", power->mean_vt()},
                              {"mean_e", power->mean_e()}};
    extra.emplace_back("tilted_power_law", &*power);
  }
  std::ostringstream csv;
  write_law_csv(law, csv, extra);
  r.files.emplace_back(a.out, csv.str());
  return r;
}

Artifacts run_decompose(const DecomposeArgs& a) {
  const Graph g = read_graph(a.graph);
  const QBasicDecomposition d = decompose_q_basic(g);
  const VerificationReport report = verify_decomposition(g, d);
  Artifacts r;
  r.parameters = {{"graph", a.graph}};
  r.summary = {{"n", g.n()},
               {"edges", g.edge_count()},
               {"q", d.config.q()},
               {"decomposition", decomposition_to_json(d)},
               {"verification", {{"valid", report.valid}, {"violation", report.violation}}}};
  r.files.emplace_back(a.out, dump(r.summary));
  return r;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

Artifacts run_validate(const ValidateArgs& a) {
  Artifacts r;
  r.summary = json::object();
  bool ok = true;
  if (!a.manifest.empty()) {
    r.parameters["manifest"] = a.manifest;
    const json manifest = json::parse(read_text_file(a.manifest));
    const fs::path tmp = fs::temp_directory_path() /
                         ("vtergm-replay-" + fnv1a64_hex(manifest.dump()) + "-" +
                          std::to_string(std::rand()));
    fs::create_directories(tmp);
    std::vector<std::string> replay = manifest.at("args").get<std::vector<std::string>>();
    replay.insert(replay.begin(), {"--out-dir", tmp.string()});
    std::ostringstream sink_out, sink_err;
    const int code = dispatch(replay, sink_out, sink_err);
    json outputs = json::array();
    bool reproduced = code == kExitOk;
    for (const auto& f : manifest.at("outputs")) {
      const std::string file = f.at("file");
      const std::string expected = f.at("fnv1a64");
      std::string actual;
      if (fs::exists(tmp / file)) actual = file_digest(tmp / file);
      reproduced = reproduced && actual == expected;
      outputs.push_back({{"file", file}, {"expected", expected}, {"actual", actual},
                         {"match", actual == expected}});
    }
    fs::remove_all(tmp);
    r.summary["manifest"] = {{"reproduced", reproduced}, {"outputs", outputs}};
    ok = ok && reproduced;
  }
  if (!a.graph.empty()) {
    r.parameters["graph"] = a.graph;
    const Graph g = read_graph(a.graph);
    const TriangleStats stats = vertices_in_triangles(g);
    const QBasicCheck qb = is_q_basic(g);
    PackingOptions options;
    options.node_limit = a.exact_cap;
    r.summary["graph"] = {{"n", g.n()},
                          {"edges", g.edge_count()},
                          {"v_t", stats.v_t},
                          {"dt_greedy", max_disjoint_triangles(g, PackingMode::kGreedy)},
                          {"dt_exact", max_disjoint_triangles(g, PackingMode::kExact, options)},
                          {"q_basic", qb.q_basic}};
    if (!a.decomposition.empty()) {
      r.parameters["decomposition"] = a.decomposition;
      json dj = json::parse(read_text_file(a.decomposition));
      if (dj.contains("decomposition")) dj = dj.at("decomposition");
      const VerificationReport report = verify_decomposition(g, decomposition_from_json(dj));
      r.summary["decomposition"] = {{"valid", report.valid}, {"violation", report.violation}};
      ok = ok && report.valid;
    }
  } else if (!a.decomposition.empty()) {
    throw DomainError("--decomposition needs --graph");
  }
  if (a.graph.empty() && a.manifest.empty()) throw DomainError("validate needs --graph or --manifest");
  r.summary["ok"] = ok;
  r.exit_code = ok ? kExitOk : kExitCheckFailed;
  r.files.emplace_back(a.out, dump(r.summary));
  return r;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

std::vector<std::string> without_out_dir(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out-dir") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out-dir=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

void write_outputs(const Artifacts& artifacts, const std::string& subcommand,
                   const std::vector<std::string>& args, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  json outputs = json::array();
  for (const auto& [name, contents] : artifacts.files) {
    const fs::path target = out_dir / name;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    write_text_file(target, contents);
    outputs.push_back({{"file", name}, {"fnv1a64", fnv1a64_hex(contents)}});
  }
  json manifest = {{"subcommand", subcommand},
                   {"args", without_out_dir(args)},
                   {"parameters", artifacts.parameters},
                   {"seed", artifacts.seed ? json(*artifacts.seed) : json(nullptr)},
                   {"tool_version", kToolVersion},
                   {"outputs", outputs}};
  const fs::path first(artifacts.files.front().first);
  const fs::path stem = artifacts.manifest_stem.empty()
                            ? first.parent_path() / first.stem()
                            : fs::path(artifacts.manifest_stem);
  write_text_file(out_dir / (stem.string() + ".manifest.json"), dump(manifest));
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse vertices-in-triangles exponential random graphs: samplers, exact "
               "oracles, rate functions, decompositions and estimators."};
  app.require_subcommand(1);
  const char* env_dir = std::getenv(kOutputDirEnv);
  std::string out_dir = env_dir ? env_dir : ".";
  app.add_option("--out-dir", out_dir,
                 std::string("Directory for artifacts and manifests (default $") + kOutputDirEnv +
                     " or .)");
  app.set_version_flag("--version", kToolVersion);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw an Erdos-Renyi or planted-triangle graph");
  sample->add_option("--model", sa.model, "er or planted")->check(CLI::IsMember({"er", "planted"}));
  sample->add_option("--n", sa.n, "Vertex count")->required();
  sample->add_option("--lambda", sa.lambda, "Edge probability is lambda/n")->required();
  sample->add_option("--a", sa.a, "Planted fraction of triangle vertices");
  sample->add_option("--seed", sa.seed, "64-bit seed");
  sample->add_option("--out", sa.out, "Edge-list output file name");

  McmcArgs ma;
  auto* mcmc = app.add_subcommand("mcmc", "Run Metropolis chains for the tilted measure");
  mcmc->add_option("--n", ma.n, "Vertex count")->required();
  mcmc->add_option("--lambda", ma.lambda, "Base edge parameter")->required();
  auto* theta_opt = mcmc->add_option("--theta", ma.theta, "Linear tilt, beta = 1/3 + theta/log n");
  auto* alpha_opt = mcmc->add_option("--alpha", ma.alpha, "Power-law tilt exponent");
  mcmc->add_option("--beta", ma.beta, "Power-law tilt coefficient");
  theta_opt->excludes(alpha_opt);
  mcmc->add_option("--steps", ma.steps, "Total proposals")->required();
  mcmc->add_option("--burn-in", ma.burn_in, "Proposals discarded before recording");
  mcmc->add_option("--thinning", ma.thinning, "Record every k-th step");
  mcmc->add_option("--seed", ma.seed, "Base seed; chain i uses seed + i");
  mcmc->add_option("--chains", ma.chains, "Independent chains");
  mcmc->add_option("--init", ma.init, "planted or empty")->check(CLI::IsMember({"planted", "empty"}));
  mcmc->add_flag("--no-dt", ma.no_dt, "Skip the greedy disjoint-triangle column");
  mcmc->add_option("--out", ma.out, "Trace CSV file name");

  RateArgs ra;
  auto* rate = app.add_subcommand("rate", "Maximiser a* and rate value for a tilt");
  rate->add_option("--theta", ra.theta, "Linear tilt parameter");
  rate->add_option("--lambda", ra.lambda, "Base edge parameter");
  rate->add_option("--alpha", ra.alpha, "Power-law exponent");
  rate->add_option("--beta", ra.beta, "Power-law coefficient");
  rate->add_option("--n", ra.n, "Graph size (reports beta and, with --a, the tail expansion)");
  rate->add_option("--a", ra.a, "Fraction for log P(V_T >= a n)");
  rate->add_option("--edge-x", ra.edge_x, "Evaluate the edge rate function at x");
  rate->add_option("--out", ra.out, "JSON output file name");

  SolveArgs va;
  auto* solve = app.add_subcommand("solve", "Constrained entropy minimisation over (x1, x2, x3)");
  solve->add_option("--q", va.q, "Constraint x1 + x2 + x3 = q")->required();
  solve->add_option("--c1", va.c1, "Linear coefficient of x1");
  solve->add_option("--c2", va.c2, "Linear coefficient of x2");
  solve->add_option("--c3", va.c3, "Linear coefficient of x3");
  solve->add_option("--out", va.out, "JSON output file name");

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "Estimate (lambda, theta) or (beta, lambda)");
  estimate->add_option("--graph", ea.graph, "Edge-list file")->check(CLI::ExistingFile);
  estimate->add_option("--n", ea.n, "Vertex count");
  estimate->add_option("--e", ea.e, "Edge count");
  estimate->add_option("--vt", ea.vt, "Vertices in triangles");
  estimate->add_option("--alpha", ea.alpha, "Known power-law exponent");
  estimate->add_option("--out", ea.out, "JSON output file name");

  EnumerateArgs na;
  auto* enumerate = app.add_subcommand("enumerate", "Exact (V_T, E) law by exhaustive enumeration");
  enumerate->add_option("--n", na.n, "Vertex count (<= 7)")->required();
  enumerate->add_option("--lambda", na.lambda, "Base edge parameter")->required();
  enumerate->add_option("--theta", na.theta, "Add a linear-tilt column");
  enumerate->add_option("--alpha", na.alpha, "Power-law exponent for a tilted column");
  enumerate->add_option("--beta", na.beta, "Power-law coefficient for a tilted column");
  enumerate->add_option("--threads", na.threads, "Worker threads (0 = all cores)");
  enumerate->add_option("--out", na.out, "CSV output file name");

  DecomposeArgs da;
  auto* decompose = app.add_subcommand("decompose", "Decompose a q-basic graph");
  decompose->add_option("--graph", da.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  decompose->add_option("--out", da.out, "JSON output file name");

  ValidateArgs xa;
  auto* validate = app.add_subcommand("validate", "Check a graph, a decomposition or a manifest");
  validate->add_option("--graph", xa.graph, "Edge-list file");
  validate->add_option("--decomposition", xa.decomposition, "Decomposition JSON to verify");
  validate->add_option("--manifest", xa.manifest, "Manifest to replay and compare");
  validate->add_option("--exact-cap", xa.exact_cap, "Node cap for exact packing");
  validate->add_option("--out", xa.out, "JSON output file name");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    Artifacts artifacts;
    std::string name;
    if (*sample) {
      name = "sample";
      artifacts = run_sample(sa);
    } else if (*mcmc) {
      name = "mcmc";
      artifacts = run_mcmc(ma);
    } else if (*rate) {
      name = "rate";
      artifacts = run_rate(ra);
    } else if (*solve) {
      name = "solve";
      artifacts = run_solve(va);
    } else if (*estimate) {
      name = "estimate";
      artifacts = run_estimate(ea);
    } else if (*enumerate) {
      name = "enumerate";
      artifacts = run_enumerate(na);
    } else if (*decompose) {
      name = "decompose";
      artifacts = run_decompose(da);
    } else {
      name = "validate";
      artifacts = run_validate(xa);
    }
    write_outputs(artifacts, name, args, out_dir);
    out << dump(artifacts.summary);
    return artifacts.exit_code;
  } catch (const ResourceError& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return kExitResource;
  } catch (const ConsistencyError& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return kExitCheckFailed;
  } catch (const Error& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    emit_error(err, "parse", e.what());
    return kExitDomain;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return kExitCheckFailed;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return dispatch(args, out, err);
}

}  // namespace vtergm
