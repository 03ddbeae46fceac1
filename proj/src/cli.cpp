#include "ecw/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "ecw/ecw.hpp"
#include "json.hpp"

#ifndef ECW_DATA_DIR
#define ECW_DATA_DIR "data"
#endif

namespace ecw::cli {
namespace {

using Json = nlohmann::ordered_json;

// Failure to compute: bad input, malformed file, refused budget.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kProveCaveat =
    "no contraction map found; this is not a disproof of the inequality";
constexpr const char* kSearchCaveat =
    "no model found within the budget; larger budgets may still realize the vector";

struct Options {
  bool json = false;
  bool timing = false;
  std::string model;
  std::string graph;
  std::string vector;
  std::string ineq;
  std::string cert;
  std::string mode = "hypergraph";
  std::string encoding = "repeated";
  std::string budget;
  std::string out;
  std::string log;
  std::vector<std::string> families;
  std::vector<std::string> models;
  int index = 0;  // 1-based, 0 = unset
  int qubits = 6;
  double max_space = RealizationOptions{}.max_space;
  std::uint64_t max_nodes = 0;
  bool members = false;
};

struct Outcome {
  Json result;
  int exit_code = kSuccess;
  std::vector<std::string> notes;
};

class Session {
 public:
  explicit Session(RunReport& report) : report_(report) {}

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    report_.inputs.push_back({path, sha256_hex(text)});
    return text;
  }

  void record_output(const std::string& path) { report_.outputs.push_back(path); }

  void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError(path + ": cannot write file");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    report_.outputs.push_back(path);
  }

 private:
  RunReport& report_;
};

// Runs a parser on a file's contents and prefixes any error with the path.
template <typename F>
auto parse_file(Session& s, const std::string& path, F&& parse) {
  const std::string text = s.read(path);
  try {
    return parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
}

template <typename T>
const T& pick(const std::vector<T>& items, int index, const std::string& path, const char* what) {
  if (items.empty()) throw UsageError(path + ": no " + what + " in file");
  if (index == 0) {
    if (items.size() > 1) {
      throw UsageError(path + ": file holds " + std::to_string(items.size()) + " " + what +
                       "s; select one with --index");
    }
    return items.front();
  }
  if (index < 0 || static_cast<std::size_t>(index) > items.size()) {
    throw UsageError(path + ": --index " + std::to_string(index) + " out of range 1.." +
                     std::to_string(items.size()));
  }
  return items[static_cast<std::size_t>(index) - 1];
}

std::vector<NamedVector> load_vectors(Session& s, const std::string& path) {
  return parse_file(s, path, [](const std::string& t) { return parse_entropy_vector_file(t); });
}

std::vector<Inequality> load_inequalities(Session& s, const std::string& path) {
  return parse_file(s, path, [](const std::string& t) { return parse_inequality_file(t); });
}

std::string ineq_label(const Inequality& q, std::size_t position) {
  return q.name().empty() ? "#" + std::to_string(position + 1) : q.name();
}

Json vector_json(const EntropyVector& s) {
  Json entries = Json::object();
  const auto& index = SubsetIndex::get(s.parties());
  for (std::size_t i = 0; i < index.size(); ++i) {
    entries[subset_label(index.subset(i))] = format_rational(s[index.subset(i)]);
  }
  return entries;
}

Outcome cmd_entropy(Session& s, const Options& o) {
  require(o.model, "--model");
  const auto h = parse_file(s, o.model, [](const std::string& t) { return parse_hypergraph_json(t); });
  const auto v = entropy_vector(h);
  Outcome out;
  out.result["parties"] = h.parties();
  out.result["vector"] = format_entropy_vector(v);
  out.result["entries"] = vector_json(v);
  return out;
}

Outcome cmd_graphstate(Session& s, const Options& o) {
  require(o.graph, "--graph");
  PartyAssignment parts = PartyAssignment::one_per_qubit(2);
  const auto g = parse_file(s, o.graph, [&](const std::string& t) { return parse_graph_json(t, &parts); });
  const auto v = graph_state_entropy_vector(g, parts);
  Outcome out;
  out.result["qubits"] = g.qubits();
  out.result["parties"] = parts.parties();
  out.result["vector"] = format_entropy_vector(v);
  out.result["entries"] = vector_json(v);
  return out;
}

Outcome cmd_census(Session& s, const Options& o) {
  const std::string path = o.vector.empty() ? data_dir() + "/graph_states6.vec" : o.vector;
  const auto named = load_vectors(s, path);
  if (o.qubits < 2 || o.qubits > 8) throw UsageError("--qubits must be in 2..8");
  std::vector<EntropyVector> targets;
  for (const auto& nv : named) {
    if (nv.vector.parties() != o.qubits - 1) {
      throw UsageError(path + ": vector '" + nv.name + "' has " + std::to_string(nv.vector.parties()) +
                       " parties; " + std::to_string(o.qubits) + " qubits give " +
                       std::to_string(o.qubits - 1));
    }
    targets.push_back(nv.vector);
  }
  const auto hits = graph_census(targets, o.qubits);
  Outcome out;
  const int pairs = o.qubits * (o.qubits - 1) / 2;
  out.result["qubits"] = o.qubits;
  out.result["graphs_scanned"] = std::uint64_t{1} << pairs;
  Json rows = Json::array();
  std::size_t matched = 0;
  for (std::size_t i = 0; i < named.size(); ++i) {
    Json row;
    row["name"] = named[i].name;
    row["found"] = hits[i].has_value();
    if (hits[i]) {
      ++matched;
      row["code"] = hits[i]->code;
      Json edges = Json::array();
      for (auto [a, b] : hits[i]->graph.edges()) edges.push_back(Json::array({a, b}));
      row["edges"] = edges;
    }
    rows.push_back(row);
  }
  out.result["matched"] = matched;
  out.result["total"] = named.size();
  out.result["rows"] = rows;
  if (!o.out.empty()) s.write(o.out, out.result.dump(2));
  if (matched != named.size()) {
    out.exit_code = kNegative;
    out.notes.push_back("some vectors have no labeled graph state on " + std::to_string(o.qubits) + " qubits");
  }
  return out;
}

Outcome cmd_check(Session& s, const Options& o) {
  require(o.vector, "--vector");
  if (o.ineq.empty() && o.families.empty()) throw UsageError("check needs --ineq or --family");
  const auto named = load_vectors(s, o.vector);
  std::vector<NamedVector> selected;
  if (o.index == 0) {
    selected = named;
  } else {
    selected.push_back(pick(named, o.index, o.vector, "vector"));
  }
  std::vector<Inequality> from_file;
  if (!o.ineq.empty()) from_file = load_inequalities(s, o.ineq);

  Outcome out;
  Json vectors = Json::array();
  std::size_t total_violations = 0;
  for (const auto& nv : selected) {
    const int n = nv.vector.parties();
    std::vector<Inequality> qs;
    for (const auto& q : from_file) {
      if (q.parties() != n) {
        throw UsageError(o.ineq + ": inequality '" + ineq_label(q, qs.size()) + "' has " +
                         std::to_string(q.parties()) + " parties but vector '" + nv.name + "' has " +
                         std::to_string(n));
      }
      qs.push_back(q);
    }
    for (const auto& name : o.families) {
      const auto f = family_from_name(name);
      if (!f) throw UsageError("unknown family '" + name + "' (SA, SSA, WM, Ingleton, MMI)");
      try {
        for (auto& q : instantiate_family(*f, n)) qs.push_back(std::move(q));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    const auto report = check_vector(nv.vector, qs);
    Json entry;
    entry["name"] = nv.name;
    entry["checked"] = qs.size();
    entry["violated"] = report.violated.size();
    entry["saturated"] = report.saturated.size();
    Json values = Json::array();
    for (std::size_t i = 0; i < qs.size(); ++i) {
      // Family instances are listed only when violated, to keep reports short.
      const bool violated = report.values[i] < 0;
      if (i >= from_file.size() && !violated) continue;
      Json v;
      v["inequality"] = ineq_label(qs[i], i);
      v["value"] = format_rational(report.values[i]);
      v["status"] = violated ? "violated" : report.values[i] > 0 ? "strict" : "saturated";
      values.push_back(v);
    }
    entry["values"] = values;
    total_violations += report.violated.size();
    vectors.push_back(entry);
  }
  out.result["vectors"] = vectors;
  out.result["violations"] = total_violations;
  if (total_violations > 0) out.exit_code = kNegative;
  return out;
}

const Inequality& single_inequality(Session& s, const Options& o, std::vector<Inequality>& storage) {
  require(o.ineq, "--ineq");
  storage = load_inequalities(s, o.ineq);
  return pick(storage, o.index, o.ineq, "inequality");
}

Outcome cmd_orbit(Session& s, const Options& o) {
  std::vector<Inequality> storage;
  const auto& q = single_inequality(s, o, storage);
  if (q.parties() > 7) throw UsageError("orbit supports at most 7 parties");
  const auto orbit = symmetry_orbit(q);
  Outcome out;
  out.result["inequality"] = format_inequality(q);
  out.result["orbit_size"] = orbit.size();
  out.result["canonical"] = format_inequality(canonical_form(q).with_name({}));
  if (o.members) {
    Json members = Json::array();
    for (const auto& m : orbit) members.push_back(format_inequality(m.with_name({})));
    out.result["members"] = members;
  }
  return out;
}

Outcome cmd_balance(Session& s, const Options& o) {
  std::vector<Inequality> storage;
  const auto& q = single_inequality(s, o, storage);
  const auto sums = balance_check(q);
  Outcome out;
  out.result["inequality"] = format_inequality(q);
  Json by_party = Json::object();
  for (int p = 0; p < q.parties(); ++p) {
    by_party[subset_label(PartyMask{1} << p)] = format_rational(sums[static_cast<std::size_t>(p)]);
  }
  out.result["sums"] = by_party;
  Json unbalanced = Json::array();
  for (int p : unbalanced_parties(q)) unbalanced.push_back(subset_label(PartyMask{1} << p));
  out.result["balanced"] = unbalanced.empty();
  out.result["unbalanced"] = unbalanced;
  return out;
}

CoefficientEncoding parse_encoding(const std::string& name) {
  if (name == "repeated") return CoefficientEncoding::repeated;
  if (name == "weighted") return CoefficientEncoding::weighted;
  throw UsageError("--encoding must be 'repeated' or 'weighted'");
}

std::string encoding_name(CoefficientEncoding e) {
  return e == CoefficientEncoding::weighted ? "weighted" : "repeated";
}

Outcome cmd_prove(Session& s, const Options& o) {
  std::vector<Inequality> storage;
  const auto& q = single_inequality(s, o, storage);
  ContractionMode mode;
  try {
    mode = parse_mode(o.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const CoefficientEncoding encoding = parse_encoding(o.encoding);
  const ContractionInstance inst = [&] {
    try {
      return build_instance(q, encoding);
    } catch (const std::invalid_argument& e) {
      throw UsageError(o.ineq + ": " + e.what());
    }
  }();
  SearchOptions options;
  options.max_nodes = o.max_nodes;
  ContractionSearchResult found;
  try {
    found = search_contraction(inst, mode, options);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }

  Outcome out;
  out.result["inequality"] = format_inequality(q);
  out.result["mode"] = mode_name(mode);
  out.result["encoding"] = encoding_name(inst.encoding);
  out.result["lhs_bits"] = inst.lhs_size();
  out.result["rhs_bits"] = inst.rhs_size();
  out.result["found"] = found.certificate.has_value();
  out.result["exhausted"] = found.exhausted;
  out.result["nodes"] = found.nodes;
  if (found.certificate) {
    const auto check = check_contraction(*found.certificate, inst);
    out.result["verified"] = check.ok();
    if (!check.ok()) throw std::logic_error("search returned a map that fails verification: " +
                                            check.describe(inst.lhs_size(), inst.rhs_size()));
    if (!o.out.empty()) s.write(o.out, certificate_to_json(*found.certificate));
  } else {
    out.exit_code = kNegative;
    out.notes.push_back(kProveCaveat);
    if (!found.exhausted) out.notes.push_back("search stopped at the node limit before exhausting");
  }
  return out;
}

Outcome cmd_verify_cert(Session& s, const Options& o) {
  require(o.cert, "certificate path");
  const auto cert = parse_file(s, o.cert, [](const std::string& t) { return parse_certificate_json(t); });
  const ContractionInstance inst = [&] {
    try {
      return instance_for(cert);
    } catch (const std::invalid_argument& e) {
      throw UsageError(o.cert + ": " + e.what());
    }
  }();
  ContractionCheck check;
  try {
    check = check_contraction(cert, inst);
  } catch (const std::invalid_argument& e) {
    throw UsageError(o.cert + ": " + e.what());
  }
  Outcome out;
  out.result["inequality"] = cert.inequality;
  out.result["mode"] = mode_name(cert.mode);
  out.result["encoding"] = encoding_name(cert.encoding);
  out.result["lhs_bits"] = inst.lhs_size();
  out.result["rhs_bits"] = inst.rhs_size();
  out.result["valid"] = check.ok();
  out.result["examined"] = check.examined;
  if (!check.ok()) {
    out.result["failure"] = check.describe(inst.lhs_size(), inst.rhs_size());
    out.exit_code = kNegative;
  }
  if (!o.models.empty()) {
    std::vector<HypergraphModel> models;
    for (const auto& path : o.models) {
      models.push_back(parse_file(s, path, [](const std::string& t) { return parse_hypergraph_json(t); }));
      if (models.back().parties() != inst.source.parties()) {
        throw UsageError(path + ": model has " + std::to_string(models.back().parties()) +
                         " parties, inequality has " + std::to_string(inst.source.parties()));
      }
    }
    const auto violation = soundness_spot_check(inst.source, models);
    Json spot;
    spot["models"] = models.size();
    spot["sound"] = !violation.has_value();
    if (violation) {
      spot["model"] = o.models[violation->model_index];
      spot["value"] = format_rational(violation->value);
      out.exit_code = kNegative;
    }
    out.result["spot_check"] = spot;
  }
  return out;
}

Outcome cmd_search(Session& s, const Options& o) {
  require(o.vector, "--vector");
  const auto named = load_vectors(s, o.vector);
  const auto& target = pick(named, o.index, o.vector, "vector");
  SearchBudget budget;
  if (!o.budget.empty()) {
    try {
      budget = parse_budget(o.budget);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--budget: ") + e.what());
    }
  }
  RealizationOptions options;
  options.max_space = o.max_space;
  std::ofstream log;
  if (!o.log.empty()) {
    log.open(o.log, std::ios::binary);
    if (!log) throw UsageError(o.log + ": cannot write file");
    options.log = [&log](const std::string& line) { log << line << '\n'; };
  }
  RealizationResult found;
  try {
    found = search_realization(target.vector, budget, options);
  } catch (const BudgetExceeded& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!o.log.empty()) s.record_output(o.log);
  Outcome out;
  out.result["target"] = target.name;
  out.result["budget"] = budget.describe();
  out.result["space_size"] = found.space_size;
  out.result["nodes"] = found.nodes;
  out.result["pruned"] = found.pruned;
  out.result["found"] = found.model.has_value();
  if (found.model) {
    out.result["model"] = Json::parse(hypergraph_to_json(*found.model, -1));
    if (!o.out.empty()) s.write(o.out, hypergraph_to_json(*found.model));
  } else {
    out.exit_code = kNegative;
    out.notes.push_back(kSearchCaveat);
  }
  return out;
}

Outcome cmd_verify_realization(Session& s, const Options& o) {
  require(o.model, "--model");
  require(o.vector, "--vector");
  const auto h = parse_file(s, o.model, [](const std::string& t) { return parse_hypergraph_json(t); });
  const auto named = load_vectors(s, o.vector);
  const auto& target = pick(named, o.index, o.vector, "vector");
  if (h.parties() != target.vector.parties()) {
    throw UsageError("model has " + std::to_string(h.parties()) + " parties, vector has " +
                     std::to_string(target.vector.parties()));
  }
  const auto check = verify_realization(h, target.vector);
  Outcome out;
  out.result["target"] = target.name;
  out.result["match"] = check.ok();
  Json mismatches = Json::array();
  for (const auto& m : check.mismatches) {
    mismatches.push_back({{"subset", subset_label(m.subset)},
                          {"expected", format_rational(m.expected)},
                          {"actual", format_rational(m.actual)}});
  }
  out.result["mismatches"] = mismatches;
  if (!check.ok()) out.exit_code = kNegative;
  return out;
}

void render(const Json& value, int depth, std::string& out);

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool all_scalars(const Json& array) {
  return std::all_of(array.begin(), array.end(), [](const Json& v) { return v.is_primitive(); });
}

void render_entry(const std::string& key, const Json& v, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (v.is_primitive()) {
    out += pad + key + ": " + scalar_text(v) + "\n";
  } else if (v.is_array() && all_scalars(v)) {
    std::string joined;
    for (const auto& item : v) joined += (joined.empty() ? "" : " ") + scalar_text(item);
    out += pad + key + ": [" + joined + "]\n";
  } else {
    out += pad + key + ":\n";
    render(v, depth + 1, out);
  }
}

void render(const Json& value, int depth, std::string& out) {
  if (value.is_object()) {
    for (const auto& [key, v] : value.items()) render_entry(key, v, depth, out);
  } else if (value.is_array()) {
    std::size_t i = 0;
    for (const auto& v : value) render_entry("[" + std::to_string(++i) + "]", v, depth, out);
  } else {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + scalar_text(value) + "\n";
  }
}

Json report_object(const RunReport& r) {
  Json doc;
  doc["command"] = r.command;
  Json inputs = Json::array();
  for (const auto& in : r.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  doc["inputs"] = inputs;
  doc["outputs"] = r.outputs;
  doc["status"] = r.status;
  doc["exit_code"] = r.exit_code;
  doc["notes"] = r.notes;
  if (!r.error.empty()) doc["error"] = r.error;
  doc["result"] = Json::parse(r.result_json);
  if (r.seconds) doc["timing"] = {{"seconds", *r.seconds}};
  return doc;
}

std::vector<std::string> reversed(const std::vector<std::string>& args) {
  return {args.rbegin(), args.rend()};
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("ECW_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return ECW_DATA_DIR;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string report_to_json(const RunReport& report) { return report_object(report).dump(2) + "\n"; }

std::string report_to_text(const RunReport& report) {
  std::string out;
  render(report_object(report), 0, out);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, RunReport* report_out) {
  Options o;
  CLI::App app{"Entropy vectors of hypergraphs and graph states, inequalities and contraction proofs", "ecw"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print the run report as JSON");
  app.add_flag("--timing", o.timing, "Include wall-clock time in the report");

  auto* entropy = app.add_subcommand("entropy", "Entropy vector of a hypergraph model");
  entropy->add_option("--model", o.model, "Hypergraph model (JSON)")->required();

  auto* graphstate = app.add_subcommand("graphstate", "Entropy vector of a graph state");
  graphstate->add_option("--graph", o.graph, "Graph state (JSON)")->required();

  auto* census = app.add_subcommand("census", "Match vectors against all labeled graph states");
  census->add_option("--vector", o.vector, "Target vectors (default: bundled graph_states6.vec)");
  census->add_option("--qubits", o.qubits, "Number of qubits (parties + purifier)");
  census->add_option("--out", o.out, "Write the matches as JSON");

  auto* check = app.add_subcommand("check", "Evaluate inequalities on entropy vectors");
  check->add_option("--vector", o.vector, "Entropy vectors")->required();
  check->add_option("--index", o.index, "Check only the K-th vector (1-based)");
  check->add_option("--ineq", o.ineq, "Inequalities");
  check->add_option("--family", o.families, "SA, SSA, WM, Ingleton or MMI (repeatable)");

  auto* orbit = app.add_subcommand("orbit", "Symmetry orbit and canonical form");
  orbit->add_option("--ineq", o.ineq, "Inequalities")->required();
  orbit->add_option("--index", o.index, "Inequality to use (1-based)");
  orbit->add_flag("--members", o.members, "List every orbit member");

  auto* balance = app.add_subcommand("balance", "Per-party coefficient sums");
  balance->add_option("--ineq", o.ineq, "Inequalities")->required();
  balance->add_option("--index", o.index, "Inequality to use (1-based)");

  auto* prove = app.add_subcommand("prove", "Search for a contraction map");
  prove->add_option("--ineq", o.ineq, "Inequalities")->required();
  prove->add_option("--index", o.index, "Inequality to use (1-based)");
  prove->add_option("--mode", o.mode, "graph or hypergraph")->check(CLI::IsMember({"graph", "hypergraph"}));
  prove->add_option("--encoding", o.encoding, "repeated or weighted coefficient coordinates")
      ->check(CLI::IsMember({"repeated", "weighted"}));
  prove->add_option("--max-nodes", o.max_nodes, "Stop after this many search nodes (0 = no limit)");
  prove->add_option("--out", o.out, "Write the certificate as JSON");

  auto* verify_cert = app.add_subcommand("verify-cert", "Independently verify a contraction certificate");
  verify_cert->add_option("cert", o.cert, "Certificate (JSON)")->required();
  verify_cert->add_option("--model", o.models, "Hypergraph models for a soundness spot check (repeatable)");

  auto* search = app.add_subcommand("search", "Search for a hypergraph realizing a vector");
  search->add_option("--vector", o.vector, "Target vectors")->required();
  search->add_option("--index", o.index, "Target to use (1-based)");
  search->add_option("--budget", o.budget, "k,arity,edges,wmax");
  search->add_option("--max-space", o.max_space, "Refuse budgets whose search space exceeds this");
  search->add_option("--out", o.out, "Write the model as JSON");
  search->add_option("--log", o.log, "Write JSON-lines progress events");

  auto* verify_real = app.add_subcommand("verify-realization", "Compare a model's entropies with a vector");
  verify_real->add_option("--model", o.model, "Hypergraph model (JSON)")->required();
  verify_real->add_option("--vector", o.vector, "Target vectors")->required();
  verify_real->add_option("--index", o.index, "Target to use (1-based)");

  RunReport report;
  auto args_copy = reversed(args);
  try {
    app.parse(args_copy);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (report_out != nullptr) {
      report.status = "error";
      report.exit_code = kUsage;
      report.error = e.what();
      *report_out = report;
    }
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  report.command = chosen->get_name();
  Session session(report);
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome outcome;
    const std::string& name = report.command;
    if (name == "entropy") {
      outcome = cmd_entropy(session, o);
    } else if (name == "graphstate") {
      outcome = cmd_graphstate(session, o);
    } else if (name == "census") {
      outcome = cmd_census(session, o);
    } else if (name == "check") {
      outcome = cmd_check(session, o);
    } else if (name == "orbit") {
      outcome = cmd_orbit(session, o);
    } else if (name == "balance") {
      outcome = cmd_balance(session, o);
    } else if (name == "prove") {
      outcome = cmd_prove(session, o);
    } else if (name == "verify-cert") {
      outcome = cmd_verify_cert(session, o);
    } else if (name == "search") {
      outcome = cmd_search(session, o);
    } else {
      outcome = cmd_verify_realization(session, o);
    }
    report.exit_code = outcome.exit_code;
    report.status = outcome.exit_code == kSuccess ? "ok" : "negative";
    report.notes = std::move(outcome.notes);
    report.result_json = outcome.result.dump();
  } catch (const UsageError& e) {
    report.exit_code = kUsage;
    report.status = "error";
    report.error = e.what();
  } catch (const std::exception& e) {
    report.exit_code = kUsage;
    report.status = "error";
    report.error = std::string("internal error: ") + e.what();
  }
  if (o.timing) {
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (report.exit_code == kUsage) err << "error: " << report.error << "\n";
  out << (o.json ? report_to_json(report) : report_to_text(report));
  if (report_out != nullptr) *report_out = report;
  return report.exit_code;
}

}  // namespace ecw::cli
