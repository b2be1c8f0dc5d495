// Command-line front end: decompositions, symbol checks, Toeplitz blocks,
// and the verification suites, with JSON/CSV reports and CI exit codes.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bergtoep/bergman.hpp"
#include "json.hpp"

using namespace bergtoep;
using Json = nlohmann::ordered_json;

namespace {

// exit-code contract
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kAlgebraError = 2;   // MultiplicityViolation / DimensionMismatch / GramNotPD
constexpr int kConfigError = 3;
constexpr int kParseError = 4;
constexpr int kInconclusive = 5;

constexpr double kDefectTol = 5e-2;   // scalar/commutator/intertwining defect bound
constexpr double kExactTol = 1e-8;    // invariance pass threshold
constexpr int kInvarianceTrials = 100;
constexpr int kIntertwiningTrials = 20;

struct RunConfig {
  int n = 2;
  int dmax = 3;
  double lambda = 0.0;  // 0 = pick the per-n default
  long samples = 20000;
  std::uint64_t seed = 1;
  int shards = 1;
  std::string out = ".";
  std::string symbol;
  std::string mu;
  std::string group;
  std::string suite = "all";
  std::string config_file;
};

// plain key=value config file; command-line flags take precedence
void apply_config_file(const CLI::App* sub, RunConfig& cfg) {
  if (cfg.config_file.empty()) return;
  std::ifstream in(cfg.config_file);
  if (!in) throw ConfigError("cannot read config file " + cfg.config_file);
  auto trim = [](std::string s) {
    const char* ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
      s = s.substr(1, s.size() - 2);
    return s;
  };
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file line is not key=value: " + t);
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (sub->count("--" + key) > 0) continue;  // flag overrides file
    try {
      if (key == "n") cfg.n = std::stoi(val);
      else if (key == "dmax") cfg.dmax = std::stoi(val);
      else if (key == "lambda") cfg.lambda = std::stod(val);
      else if (key == "samples") cfg.samples = std::stol(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "shards") cfg.shards = std::stoi(val);
      else if (key == "out") cfg.out = val;
      else if (key == "symbol") cfg.symbol = val;
      else if (key == "mu") cfg.mu = val;
      else if (key == "group") cfg.group = val;
      else if (key == "suite") cfg.suite = val;
      else throw ConfigError("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad value for config key " + key + ": " + val);
    }
  }
}

double default_lambda(int n) {
  switch (n) {
    case 1: return 3.0;
    case 2: return 5.0;
    default: return 7.0;
  }
}

void validate(RunConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 3) throw ConfigError("--n must be in 1..3");
  if (cfg.dmax < 0 || cfg.dmax > 5) throw ConfigError("--dmax must be in 0..5");
  if (cfg.lambda == 0.0) cfg.lambda = default_lambda(cfg.n);
  if (cfg.lambda <= 2.0 * cfg.n - 1.0)
    throw ConfigError("--lambda must exceed 2n-1 = " + std::to_string(2 * cfg.n - 1) +
                      " (Bergman weight bound)");
  if (cfg.samples < 1000) throw ConfigError("--samples must be at least 1000");
  if (cfg.shards < 1) throw ConfigError("--shards must be positive");
}

MCConfig mc_config(const RunConfig& cfg) {
  return MCConfig{cfg.samples, cfg.seed, cfg.shards};
}

std::vector<int> parse_mu(const std::string& text) {
  std::vector<int> m;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      m.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ConfigError("--mu must be a comma-separated integer list");
    }
  }
  if (m.empty()) throw ConfigError("--mu is required for this command");
  for (std::size_t i = 0; i + 1 < m.size(); ++i)
    if (m[i] < m[i + 1]) throw ConfigError("--mu entries must be non-increasing");
  if (m.back() < 0) throw ConfigError("--mu entries must be non-negative");
  return m;
}

Group parse_group(const std::string& g) {
  if (g == "uun") return Group::UUn;
  if (g == "unl") return Group::UnL;
  if (g == "unr") return Group::UnR;
  throw ConfigError("--group must be one of uun, unl, unr");
}

Json record(const RunConfig& cfg, const std::vector<int>& mu, long dim,
            const std::string& symbol, const std::string& metric, double value,
            double stderr_bound, const std::string& verdict) {
  Json r;
  r["n"] = cfg.n;
  r["lambda"] = cfg.lambda;
  r["mc"] = Json{{"nsamples", cfg.samples}, {"seed", cfg.seed}};
  r["component"] = Json{{"mu", mu}, {"dim", dim}};
  r["symbol"] = symbol;
  r["metric"] = metric;
  r["value"] = value;
  r["stderr_bound"] = stderr_bound;
  r["verdict"] = verdict;
  return r;
}

// statistical verdicts: a quantity that should vanish passes below 3 sigma and
// fails above 5; a witness that should be nonzero passes above 5 sigma
std::string vanish_verdict(double value, double sigma) {
  if (value <= 3.0 * sigma) return "pass";
  if (value <= 5.0 * sigma) return "inconclusive";
  return "fail";
}

std::string witness_verdict(double value, double sigma) {
  if (value >= 5.0 * sigma) return "pass";
  if (value >= 3.0 * sigma) return "inconclusive";
  return "fail";
}

int verdicts_to_exit(const Json& records) {
  bool any_fail = false, any_inconclusive = false;
  for (const auto& r : records) {
    std::string v = r.at("verdict");
    if (v == "fail") any_fail = true;
    if (v == "inconclusive") any_inconclusive = true;
  }
  if (any_fail) return kFail;
  if (any_inconclusive) return kInconclusive;
  return kOk;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

// report.json is byte-identical across re-runs with the same config; wall-clock
// metadata lives in a sibling file
void write_report(const RunConfig& cfg, const std::string& command, Json body) {
  std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir);
  Json report;
  report["command"] = command;
  for (auto& [k, v] : body.items()) report[k] = v;
  write_text(dir / "report.json", report.dump(2) + "\n");
  auto now = std::chrono::system_clock::now().time_since_epoch();
  Json meta;
  meta["command"] = command;
  meta["timestamp_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  write_text(dir / "metadata.json", meta.dump(2) + "\n");
}

void write_block_csv(const RunConfig& cfg, const ToeplitzBlock& B) {
  std::ostringstream csv;
  csv << "row,col,re,im,stderr\n";
  csv.precision(17);
  for (int i = 0; i < B.matrix.rows(); ++i)
    for (int j = 0; j < B.matrix.cols(); ++j)
      csv << i << "," << j << "," << B.matrix(i, j).real() << ","
          << B.matrix(i, j).imag() << "," << B.stderrs(i, j) << "\n";
  write_text(std::filesystem::path(cfg.out) / "block.csv", csv.str());
}

const IsotypicComponent& find_component(const std::vector<IsotypicComponent>& comps,
                                        const std::vector<int>& mu) {
  for (const auto& c : comps) {
    std::vector<int> m = c.mu.m;
    while (m.size() > mu.size() && m.back() == 0) m.pop_back();
    std::vector<int> want = mu;
    while (want.size() > m.size() && want.back() == 0) want.pop_back();
    if (m == want) return c;
  }
  throw ConfigError("no component with the requested mu");
}

int cmd_decompose(RunConfig cfg) {
  validate(cfg);
  Json degrees = Json::array();
  Json records = Json::array();
  for (int d = 0; d <= cfg.dmax; ++d) {
    // decompose_degree performs the exact multiplicity/dimension/Cauchy checks
    // and throws on any violation
    auto comps = decompose_degree(cfg.n, d);
    long total = 0;
    Json clist = Json::array();
    for (const auto& c : comps) {
      total += c.expected_dim;
      Json cj = Json::parse(component_to_json(c, cfg.n));
      Json entry;
      entry["mu"] = c.mu.m;
      entry["weyl_dim"] = c.weyl_dim;
      entry["dim"] = c.expected_dim;
      entry["hwv"] = cj["basis"][0];
      clist.push_back(entry);
      records.push_back(record(cfg, c.mu.m, c.expected_dim, "", "component_dim",
                               static_cast<double>(c.expected_dim), 0.0, "pass"));
    }
    Json dj;
    dj["d"] = d;
    dj["dim_Pd"] = total;
    dj["cauchy_identity"] = "pass";
    dj["components"] = clist;
    degrees.push_back(dj);
  }
  Json body;
  body["degrees"] = degrees;
  body["records"] = records;
  body["verdict"] = "pass";
  write_report(cfg, "decompose", body);
  return kOk;
}

int cmd_symbol_check(RunConfig cfg) {
  validate(cfg);
  if (cfg.symbol.empty()) throw ConfigError("--symbol is required");
  CompiledSymbol sym = compile_symbol(cfg.symbol, cfg.n);

  std::vector<Group> groups;
  if (!cfg.group.empty()) {
    groups.push_back(parse_group(cfg.group));
  } else {
    switch (sym.kind()) {
      case SymbolKind::UUInvariant:
        groups = {Group::UUn, Group::UnL, Group::UnR};
        break;
      case SymbolKind::LeftInvariant: groups = {Group::UnL}; break;
      case SymbolKind::RightInvariant: groups = {Group::UnR}; break;
      case SymbolKind::General: break;
    }
  }

  Json checks = Json::array();
  Json records = Json::array();
  bool all_pass = true;
  for (Group g : groups) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(g));
    InvarianceReport rep = invariance_check(sym, g, rng, kInvarianceTrials);
    bool pass = rep.max_rel_deviation <= kExactTol;
    all_pass = all_pass && pass;
    checks.push_back(Json::parse(invariance_report_to_json(rep)));
    records.push_back(record(cfg, {}, 0, cfg.symbol,
                             "invariance_deviation_" + to_string(g),
                             rep.max_rel_deviation, kExactTol,
                             pass ? "pass" : "fail"));
  }
  Json body;
  body["symbol"] = cfg.symbol;
  body["kind"] = to_string(sym.kind());
  body["sup_bound"] = sym.sup_bound();
  body["checks"] = checks;
  body["records"] = records;
  body["verdict"] = all_pass ? "pass" : "fail";
  write_report(cfg, "symbol-check", body);
  return all_pass ? kOk : kFail;
}

int cmd_toeplitz(RunConfig cfg) {
  validate(cfg);
  if (cfg.symbol.empty()) throw ConfigError("--symbol is required");
  std::vector<int> mu = parse_mu(cfg.mu);
  int d = 0;
  for (int m : mu) d += m;
  if (d > cfg.dmax) throw ConfigError("|mu| exceeds --dmax");
  if (static_cast<int>(mu.size()) > cfg.n) throw ConfigError("mu has more parts than n");

  CompiledSymbol sym = compile_symbol(cfg.symbol, cfg.n);
  auto comps = decompose_degree(cfg.n, d);
  const IsotypicComponent& comp = find_component(comps, mu);
  SampleBatch batch(cfg.n, cfg.lambda, mc_config(cfg));
  ToeplitzBlock B = toeplitz_block(sym, comp, batch);

  Json records = Json::array();
  records.push_back(record(cfg, comp.mu.m, comp.expected_dim, cfg.symbol,
                           "scalar_defect", scalar_defect(B), scalar_noise(B),
                           "pass"));
  records.push_back(record(cfg, comp.mu.m, comp.expected_dim, cfg.symbol,
                           "normality_defect", normality_defect(B),
                           normality_noise(B), "pass"));
  Json body;
  body["symbol"] = cfg.symbol;
  body["mu"] = comp.mu.m;
  body["dim"] = comp.expected_dim;
  body["noise_bound"] = B.noise_bound;
  body["compression_only"] = B.compression_only;
  body["records"] = records;
  body["verdict"] = "pass";
  write_report(cfg, "toeplitz", body);
  write_block_csv(cfg, B);
  return kOk;
}

void suite_decomposition(const RunConfig& cfg, Json& records) {
  for (int d = 0; d <= cfg.dmax; ++d) {
    auto comps = decompose_degree(cfg.n, d);
    long total = 0;
    for (const auto& c : comps) total += c.expected_dim;
    RunConfig r = cfg;
    records.push_back(record(r, {}, total, "", "exact_decomposition_d" + std::to_string(d),
                             static_cast<double>(comps.size()), 0.0, "pass"));
    // pairwise Fischer orthogonality across distinct components
    for (std::size_t a = 0; a < comps.size(); ++a)
      for (std::size_t b = a + 1; b < comps.size(); ++b)
        for (const auto& p : comps[a].basis)
          for (const auto& q : comps[b].basis)
            if (!fischer_inner(p, q).is_zero())
              records.push_back(record(cfg, comps[a].mu.m, comps[a].expected_dim, "",
                                       "fischer_orthogonality", 1.0, 0.0, "fail"));
    records.push_back(record(cfg, {}, total, "", "fischer_orthogonality_d" + std::to_string(d),
                             0.0, 0.0, "pass"));
  }
}

void suite_disk_oracle(const RunConfig& cfg, Json& records) {
  RunConfig dc = cfg;
  dc.n = 1;
  dc.lambda = 3.0;
  SampleBatch batch(1, dc.lambda, mc_config(dc));
  CompiledSymbol a = compile_symbol("s1^2", 1);
  for (int k = 0; k <= 5; ++k) {
    auto comps = decompose_degree(1, k);
    ToeplitzBlock B = toeplitz_block(a, comps[0], batch);
    double expect = (k + 1.0) / (k + dc.lambda);
    double err = std::abs(B.matrix(0, 0) - std::complex<double>(expect, 0.0));
    records.push_back(record(dc, comps[0].mu.m, 1, "s1^2",
                             "disk_eigenvalue_error_k" + std::to_string(k), err,
                             B.noise_bound, vanish_verdict(err, B.noise_bound)));
  }
}

void suite_commutativity(const RunConfig& cfg, Json& records) {
  RunConfig c = cfg;
  c.n = 2;
  if (c.lambda <= 3.0) c.lambda = 5.0;
  SampleBatch batch(2, c.lambda, mc_config(c));
  for (const char* text : {"tr(G)", "det(G)"}) {
    CompiledSymbol a = compile_symbol(text, 2);
    for (int d : {1, 2}) {
      for (const auto& comp : decompose_degree(2, d)) {
        ToeplitzBlock B = toeplitz_block(a, comp, batch);
        double defect = scalar_defect(B);
        records.push_back(record(c, comp.mu.m, comp.expected_dim, text, "scalar_defect",
                                 defect, kDefectTol,
                                 defect <= kDefectTol ? "pass" : "fail"));
      }
    }
  }
}

void suite_centralizer(const RunConfig& cfg, Json& records) {
  RunConfig c = cfg;
  c.n = 2;
  if (c.lambda <= 3.0) c.lambda = 5.0;
  SampleBatch batch(2, c.lambda, mc_config(c));
  CompiledSymbol a = compile_symbol("G[1,2]", 2);
  CompiledSymbol b = compile_symbol("H[1,2]", 2);
  int dtop = std::min(c.dmax, 2);
  for (int d = 1; d <= dtop; ++d) {
    for (const auto& comp : decompose_degree(2, d)) {
      ToeplitzBlock Ba = toeplitz_block(a, comp, batch);
      ToeplitzBlock Bb = toeplitz_block(b, comp, batch);
      double defect = commutator_defect(Ba, Bb);
      records.push_back(record(c, comp.mu.m, comp.expected_dim, "[G[1,2], H[1,2]]",
                               "commutator_defect", defect, kDefectTol,
                               defect <= kDefectTol ? "pass" : "fail"));
    }
  }
}

void suite_nonnormal(const RunConfig& cfg, Json& records) {
  RunConfig c = cfg;
  c.n = 2;
  if (c.lambda <= 3.0) c.lambda = 5.0;
  SampleBatch batch(2, c.lambda, mc_config(c));
  CompiledSymbol a = compile_symbol("G[1,2]", 2);
  auto comps = decompose_degree(2, 1);
  ToeplitzBlock B = toeplitz_block(a, comps[0], batch);
  double defect = normality_defect(B);
  double sigma = normality_noise(B);
  records.push_back(record(c, comps[0].mu.m, comps[0].expected_dim, "G[1,2]",
                           "normality_defect", defect, sigma,
                           witness_verdict(defect, sigma)));
}

void suite_intertwining(const RunConfig& cfg, Json& records) {
  RunConfig c = cfg;
  c.n = 2;
  if (c.lambda <= 3.0) c.lambda = 5.0;
  SampleBatch batch(2, c.lambda, mc_config(c));
  auto comps = decompose_degree(2, 2);
  const IsotypicComponent& comp = find_component(comps, {2, 0});

  struct Case {
    const char* symbol;
    Group group;
    bool expect_invariant;
  };
  for (const Case& cs : {Case{"tr(G)", Group::UUn, true}, Case{"G[1,2]", Group::UnL, true},
                         Case{"G[1,2]", Group::UnR, false}}) {
    CompiledSymbol a = compile_symbol(cs.symbol, 2);
    ToeplitzBlock B = toeplitz_block(a, comp, batch);
    RngStream rng(c.seed ^ 0x9e3779b97f4a7c15ULL, static_cast<std::uint64_t>(cs.group));
    double defect = intertwining_defect(B, comp, cs.group, rng, kIntertwiningTrials);
    double sigma = intertwining_noise(B);
    std::string verdict = cs.expect_invariant
                              ? (defect <= kDefectTol ? "pass" : "fail")
                              : witness_verdict(defect, sigma);
    records.push_back(record(c, comp.mu.m, comp.expected_dim, cs.symbol,
                             std::string("intertwining_defect_") + to_string(cs.group),
                             defect, cs.expect_invariant ? kDefectTol : sigma, verdict));
  }
}

int cmd_verify(RunConfig cfg) {
  validate(cfg);
  if (cfg.suite.empty()) cfg.suite = "all";
  const std::vector<std::string> known = {"decomposition", "commutativity", "centralizer",
                                          "nonnormal",     "disk-oracle",   "intertwining"};
  std::vector<std::string> run;
  if (cfg.suite == "all") {
    run = known;
  } else {
    if (std::find(known.begin(), known.end(), cfg.suite) == known.end())
      throw ConfigError("unknown suite: " + cfg.suite);
    run = {cfg.suite};
  }
  Json records = Json::array();
  for (const std::string& s : run) {
    if (s == "decomposition") suite_decomposition(cfg, records);
    else if (s == "disk-oracle") suite_disk_oracle(cfg, records);
    else if (s == "commutativity") suite_commutativity(cfg, records);
    else if (s == "centralizer") suite_centralizer(cfg, records);
    else if (s == "nonnormal") suite_nonnormal(cfg, records);
    else if (s == "intertwining") suite_intertwining(cfg, records);
  }
  int code = verdicts_to_exit(records);
  Json body;
  body["suite"] = cfg.suite;
  body["records"] = records;
  body["verdict"] = code == kOk ? "pass" : (code == kFail ? "fail" : "inconclusive");
  write_report(cfg, "verify", body);
  return code;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "matrix size (1..3)");
  sub->add_option("--dmax", cfg.dmax, "maximum polynomial degree (0..5)");
  sub->add_option("--lambda", cfg.lambda, "Bergman weight (> 2n-1; 0 = per-n default)");
  sub->add_option("--samples", cfg.samples, "Monte-Carlo sample count (>= 1000)");
  sub->add_option("--seed", cfg.seed, "master RNG seed");
  sub->add_option("--shards", cfg.shards, "worker shard count (results are shard-independent)");
  sub->add_option("--out", cfg.out, "output directory for report.json / block.csv");
  sub->add_option("--symbol", cfg.symbol, "symbol expression text");
  sub->add_option("--mu", cfg.mu, "dominant weight, e.g. \"2,1\"");
  sub->add_option("--group", cfg.group, "invariance group: uun, unl, unr");
  sub->add_option("--suite", cfg.suite,
                  "verification suite: decomposition, commutativity, centralizer, "
                  "nonnormal, disk-oracle, intertwining, all");
  sub->add_option("--config", cfg.config_file, "plain key=value config file; flags override");
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const SymbolSyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const IndexOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const MultiplicityViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAlgebraError;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAlgebraError;
  } catch (const GramNotPD& e) {
    std::cerr << "error: " << e.what()
              << " (hint: raise --samples to stabilize the Gram matrix)\n";
    return kAlgebraError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz operators with radial-like symbols on weighted Bergman "
               "spaces over the matrix domain Z*Z < I"};
  app.require_subcommand(1);

  RunConfig cfg;
  CLI::App* sub_decompose =
      app.add_subcommand("decompose", "isotypic decomposition of polynomial degrees");
  CLI::App* sub_symbol =
      app.add_subcommand("symbol-check", "classify a symbol and verify its invariance");
  CLI::App* sub_toeplitz =
      app.add_subcommand("toeplitz", "Toeplitz block on one isotypic component");
  CLI::App* sub_verify = app.add_subcommand("verify", "run a named verification suite");
  for (CLI::App* sub : {sub_decompose, sub_symbol, sub_toeplitz, sub_verify})
    add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  return guarded([&] {
    if (sub_decompose->parsed()) {
      apply_config_file(sub_decompose, cfg);
      return cmd_decompose(cfg);
    }
    if (sub_symbol->parsed()) {
      apply_config_file(sub_symbol, cfg);
      return cmd_symbol_check(cfg);
    }
    if (sub_toeplitz->parsed()) {
      apply_config_file(sub_toeplitz, cfg);
      return cmd_toeplitz(cfg);
    }
    apply_config_file(sub_verify, cfg);
    return cmd_verify(cfg);
  });
}
