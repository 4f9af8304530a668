// hadwiger: compute, certify, survey, construct.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hadwiger/bounds.hpp"
#include "hadwiger/bramble.hpp"
#include "hadwiger/construct.hpp"
#include "hadwiger/error.hpp"
#include "hadwiger/fractional.hpp"
#include "hadwiger/graph.hpp"
#include "hadwiger/minor.hpp"
#include "hadwiger/width.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace hadwiger;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// Malformed input or flags; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("bad " + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

Graph generate(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw UsageError("empty generator spec");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) {
    if (i >= parts.size()) throw UsageError("generator '" + spec + "' is missing arguments");
    return parts[i];
  };
  auto expect = [&](std::size_t count) {
    if (parts.size() != count + 1) throw UsageError("generator '" + kind + "' takes " + std::to_string(count) + " argument(s)");
  };
  try {
    if (kind == "complete") return expect(1), complete_graph(parse_count(arg(1), "order"));
    if (kind == "empty") return expect(1), empty_graph(parse_count(arg(1), "order"));
    if (kind == "path") return expect(1), path_graph(parse_count(arg(1), "order"));
    if (kind == "cycle") return expect(1), cycle_graph(parse_count(arg(1), "order"));
    if (kind == "grid") return expect(1), grid_graph(parse_count(arg(1), "side"));
    if (kind == "bipartite") {
      expect(2);
      return complete_bipartite(parse_count(arg(1), "side"), parse_count(arg(2), "side"));
    }
    if (kind == "gnp") {
      expect(3);
      return random_gnp(parse_count(arg(1), "order"), Rational::parse(arg(2)), parse_count(arg(3), "seed"));
    }
  } catch (const GraphError& e) {
    throw UsageError(std::string("generator '") + spec + "': " + e.what());
  } catch (const ParseError& e) {
    throw UsageError(std::string("generator '") + spec + "': " + e.what());
  }
  throw UsageError("unknown generator '" + kind + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct GraphSource {
  std::vector<std::string> g6;
  std::vector<std::string> gen;
  std::vector<std::string> files;
  std::vector<std::string> edge_lists;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--g6", g6, "graph6 string (repeatable)");
    cmd->add_option("--gen", gen,
                    "generator: complete:n empty:n path:n cycle:n grid:k bipartite:a:b gnp:n:p:seed (repeatable)");
    cmd->add_option("--file", files, "file with one graph6 string per line (repeatable)");
    cmd->add_option("--edge-list", edge_lists, "file in 'n m / u v' edge-list form (repeatable)");
  }

  /// Graphs in flag order: --g6, --gen, --file, --edge-list.
  std::vector<Graph> load() const {
    std::vector<Graph> out;
    auto decode = [](const std::string& text) {
      try {
        return graph6_decode(text);
      } catch (const Error& e) {
        throw UsageError("bad graph6 '" + text + "': " + e.what());
      }
    };
    for (const auto& s : g6) out.push_back(decode(s));
    for (const auto& s : gen) out.push_back(generate(s));
    for (const auto& path : files) {
      std::istringstream is(read_file(path));
      std::string line;
      while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        out.push_back(decode(line));
      }
    }
    for (const auto& path : edge_lists) {
      try {
        out.push_back(edge_list_decode(read_file(path)));
      } catch (const Error& e) {
        throw UsageError("bad edge list '" + path + "': " + e.what());
      }
    }
    if (out.empty()) throw UsageError("no graph given (use --g6, --gen, --file or --edge-list)");
    return out;
  }
};

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

json value_json(const HadwigerValue& v) {
  json j;
  j["value"] = v.value.str();
  j["status"] = to_string(v.status);
  if (v.upper_bound) j["upper_bound"] = v.upper_bound->str();
  j["certificate"] = serialize_weighted_bramble(v.certificate);
  if (v.dual_certificate) j["dual"] = rationals(*v.dual_certificate);
  return j;
}

json entry_json(const BoundEntry& e) {
  json j;
  j["name"] = e.name;
  j["lhs"] = e.lhs.str();
  j["rhs"] = e.rhs.str();
  j["verdict"] = to_string(e.verdict);
  return j;
}

const std::set<std::string> kParams = {"h", "hf", "hlf", "hr", "hr_blowup", "tw", "bn", "sep", "grid", "bounds"};

// -- compute --------------------------------------------------------------------

struct ComputeOptions {
  GraphSource source;
  std::string params = "h,hf";
  std::size_t r = 2;
};

void compute_param(const Graph& g, const std::string& p, std::size_t r, json& row) {
  if (p == "h") {
    const auto h = hadwiger_number(g);
    row["h"] = h.value;
    row["h_certificate"] = serialize_minor_model(h.certificate);
  } else if (p == "hf" || p == "hlf") {
    const auto v = fractional_hadwiger(g, p == "hf" ? TouchingKind::kWeak : TouchingKind::kStrong);
    row[p] = v.value.str();
    row[p + "_detail"] = value_json(v);
  } else if (p == "hr") {
    const auto v = r_integral_hadwiger_via_ilp(g, r, TouchingKind::kWeak);
    row["r"] = r;
    row["hr"] = v.value.str();
    row["hr_certificate"] = serialize_weighted_bramble(v.certificate);
  } else if (p == "hr_blowup") {
    const auto v = r_integral_hadwiger_via_blowup(g, r);
    row["r"] = r;
    row["hr_blowup"] = v.value.str();
    row["hr_blowup_certificate"] = serialize_minor_model(v.certificate);
  } else if (p == "tw") {
    const auto t = treewidth(g);
    row["tw"] = t.value;
    row["tw_certificate"] = serialize_tree_decomposition(t.certificate);
  } else if (p == "bn") {
    const auto b = bramble_number(g);
    row["bn"] = b.value;
    row["bn_certificate"] = serialize_bramble(b.family);
    row["bn_hitting_set"] = VertexSet{g.order(), b.hitting_set}.str();
  } else if (p == "sep") {
    const auto s = separation_number(g);
    row["sep"] = s.value;
    row["sep_witness"] = {{"subgraph", VertexSet{g.order(), s.subgraph}.str()},
                          {"v0", VertexSet{g.order(), s.witness.v0}.str()},
                          {"v1", VertexSet{g.order(), s.witness.v1}.str()},
                          {"v2", VertexSet{g.order(), s.witness.v2}.str()}};
  } else if (p == "grid") {
    const auto gm = max_grid_minor(g);
    row["grid"] = gm.value;
    row["grid_certificate"] = serialize_minor_model(gm.certificate);
  } else if (p == "bounds") {
    const auto rep = bound_report(g, graph6_encode(g));
    json entries = json::array();
    for (const auto& e : rep.entries) entries.push_back(entry_json(e));
    row["bounds"] = entries;
  }
}

int run_compute(const ComputeOptions& o) {
  std::vector<std::string> params;
  for (const auto& p : split(o.params, ',')) {
    if (p.empty()) continue;
    if (!kParams.count(p)) throw UsageError("unknown parameter '" + p + "'");
    params.push_back(p);
  }
  if (params.empty()) throw UsageError("no parameters requested");
  if (o.r == 0) throw UsageError("--r must be at least 1");
  for (const Graph& g : o.source.load()) {
    json row;
    row["graph"] = graph6_encode(g);
    row["n"] = g.order();
    row["m"] = g.size();
    for (const auto& p : params) {
      try {
        compute_param(g, p, o.r, row);
      } catch (const CapacityError& e) {
        row[p + "_error"] = e.what();
      }
    }
    std::cout << row.dump() << '\n';
  }
  return kOk;
}

// -- certify ----------------------------------------------------------------------

struct CertifyOptions {
  GraphSource source;
  std::string cert;
};

int run_certify(const CertifyOptions& o) {
  const auto graphs = o.source.load();
  if (graphs.size() != 1) throw UsageError("certify takes exactly one graph");
  const Graph& g = graphs.front();
  const std::string text = read_file(o.cert);
  const std::string head = text.substr(0, text.find_first_of(" \n"));
  json out;
  out["graph"] = graph6_encode(g);
  out["kind"] = head;
  bool valid = false;
  try {
    if (head == "minor") {
      const MinorModel m = parse_minor_model(text);
      const MinorCheck c = verify_minor_model(g, m);
      valid = c.ok;
      if (valid) {
        out["value"] = m.order();
      } else {
        out["reason"] = c.message;
      }
    } else if (head == "weighted-bramble") {
      const Rational v = evaluate_certificate(g, parse_weighted_bramble(text));
      valid = true;
      out["value"] = v.str();
    } else if (head == "bramble") {
      const BrambleFamily f = parse_bramble(text);
      if (f.host_n != g.order()) {
        out["reason"] = "host mismatch: certificate for " + std::to_string(f.host_n) + " vertices, graph has " +
                        std::to_string(g.order());
      } else {
        const BrambleCheck c = validate_bramble(g, f.sets, f.kind);
        valid = c.ok;
        if (valid) {
          out["value"] = min_hitting_set(g.order(), f.sets).first;
        } else {
          out["reason"] = c.message;
        }
      }
    } else if (head == "treedecomposition") {
      const TreeDecomposition td = parse_tree_decomposition(text);
      const DecompositionCheck c = verify_tree_decomposition(g, td);
      valid = c.ok;
      if (valid) {
        out["value"] = td.width();
      } else {
        out["reason"] = c.message;
      }
    } else {
      throw UsageError("unknown certificate header '" + head + "'");
    }
  } catch (const ValidationError& e) {
    out["reason"] = e.what();
  } catch (const ParseError& e) {
    throw UsageError(std::string("malformed certificate: ") + e.what());
  }
  out["valid"] = valid;
  std::cout << out.dump() << '\n';
  return valid ? kOk : kFailure;
}

// -- survey -------------------------------------------------------------------------

struct SurveyOptions {
  std::size_t n = 8;
  std::string p = "1/2";
  std::size_t samples = 50;
  std::uint64_t seed = 0;
};

std::string display(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

int run_survey(const SurveyOptions& o) {
  Rational p;
  try {
    p = Rational::parse(o.p);
  } catch (const ParseError& e) {
    throw UsageError(std::string("bad --p: ") + e.what());
  }
  if (p < Rational(0) || p > Rational(1)) throw UsageError("--p must lie in [0, 1]");
  if (o.n == 0) throw UsageError("--n must be at least 1");
  if (o.samples == 0) throw UsageError("--samples must be at least 1");

  struct Row {
    std::size_t h = 0;
    HadwigerValue hf;
  };
  std::vector<Row> rows(o.samples);
  bool failed = false;
  std::string failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < o.samples; ++i) {
    try {
      const Graph g = random_gnp(o.n, p, o.seed + i);
      rows[i].h = hadwiger_number(g).value;
      rows[i].hf = fractional_hadwiger(g, TouchingKind::kWeak);
    } catch (const Error& e) {
#pragma omp critical(hadwiger_survey_failure)
      {
        failed = true;
        failure = e.what();
      }
    }
  }
  if (failed) throw CapacityError(failure);

  // log_b n with b = 1/(1-p), display only
  const double pd = p.to_double();
  const double log_b = pd >= 1.0 ? 0.0 : std::log(static_cast<double>(o.n)) / -std::log1p(-pd);
  std::cout << "n,p,seed,h,hf,hf_status,hf_upper,h_le_hf,h_eq_hf,ratio_display\n";
  Rational sum_h;
  Rational sum_hf;
  std::size_t equal = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    const Row& r = rows[i];
    const Rational h(static_cast<unsigned long>(r.h));
    const bool exact = r.hf.status == ValueStatus::kExact;
    const bool eq = exact && h == r.hf.value;
    equal += eq ? 1 : 0;
    sum_h += h;
    sum_hf += r.hf.value;
    const double ratio = r.hf.value.to_double() * std::sqrt(log_b) / static_cast<double>(o.n);
    std::cout << o.n << ',' << p.str() << ',' << (o.seed + i) << ',' << r.h << ',' << r.hf.value.str() << ','
              << to_string(r.hf.status) << ',' << (r.hf.upper_bound ? r.hf.upper_bound->str() : r.hf.value.str())
              << ',' << (h <= r.hf.value ? "true" : "false") << ',' << (eq ? "true" : "false") << ','
              << display(ratio) << '\n';
  }
  const Rational count(static_cast<unsigned long>(o.samples));
  const Rational frac = Rational(static_cast<unsigned long>(equal)) / count;
  std::cout << "# summary samples=" << o.samples << " mean_h=" << (sum_h / count).str()
            << " mean_hf=" << (sum_hf / count).str() << " frac_h_eq_hf=" << frac.str()
            << " frac_h_eq_hf_display=" << display(frac.to_double()) << '\n';
  return kOk;
}

// -- construct ----------------------------------------------------------------------

struct ConstructOptions {
  std::size_t n0 = 0;
  std::string mode = "thomason";
  std::string p;
  bool exhaustive = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t s = 0;
  std::size_t d = 0;
  std::uint64_t emit = 0;
  std::vector<std::uint64_t> query;
};

json evidence_json(const BoundedEvidence& e) {
  return json{{"d", e.d}, {"s", e.s}, {"bound", e.bound.str()}};
}

int run_construct(const ConstructOptions& o) {
  WitnessSpec spec;
  spec.n0 = o.n0;
  if (o.n0 == 0) throw UsageError("--n0 is required");
  if (o.mode == "mader") {
    if (o.p.empty()) throw UsageError("mader mode needs --p");
    try {
      spec.mode = MaderMode{Rational::parse(o.p)};
    } catch (const ParseError& e) {
      throw UsageError(std::string("bad --p: ") + e.what());
    }
  } else if (o.mode == "thomason") {
    if (!o.p.empty()) throw UsageError("--p applies to mader mode only");
    spec.mode = ThomasonMode{};
  } else {
    throw UsageError("unknown --mode '" + o.mode + "'");
  }
  if (o.exhaustive == (o.samples > 0)) throw UsageError("give exactly one of --exhaustive or --samples");
  if (o.exhaustive) {
    spec.search = ExhaustiveSearch{};
  } else {
    spec.search = SampledSearch{o.samples, o.seed};
  }
  if (o.s > 0) spec.s = o.s;
  if (o.d > 0) spec.d = o.d;
  if (!o.query.empty() && o.emit == 0) throw UsageError("--query needs --emit");

  const Witness w = [&] {
    try {
      return search_witness(spec);
    } catch (const RangeError& e) {
      throw UsageError(e.what());
    }
  }();
  json out;
  out["graph6"] = graph6_encode(w.graph);
  out["n0"] = o.n0;
  out["mode"] = o.mode;
  if (o.mode == "mader") out["p"] = std::get<MaderMode>(spec.mode).p.str();
  out["search"] = o.exhaustive ? "exhaustive" : "sampled";
  out["examined"] = w.examined;
  out["qualifying"] = w.qualifying;
  out["evidence"] = evidence_json(w.evidence);
  if (w.complement_evidence) out["complement_evidence"] = evidence_json(*w.complement_evidence);
  out["hf_upper"] = w.hf_upper.str();
  out["epsilon"] = w.epsilon.str();
  out["epsilon_display"] = display(w.epsilon.to_double());
  std::cout << out.dump() << '\n';

  if (o.emit == 0) return kOk;
  const ConstructionHandle handle = emit_construction(w, o.emit);
  json e;
  e["N"] = handle.order();
  e["t"] = handle.t();
  e["hadwiger_bound"] = handle.hadwiger_bound().str();
  e["epsilon"] = handle.epsilon().str();
  const bool stream = o.query.empty() && handle.order() <= kDefaultVertexCap;
  e["streamed"] = stream;
  std::cout << e.dump() << '\n';
  if (!o.query.empty()) {
    if (o.query.size() != 2) throw UsageError("--query takes two vertex ids");
    try {
      const bool adj = handle.adjacent(o.query[0], o.query[1]);
      std::cout << json{{"u", o.query[0]}, {"v", o.query[1]}, {"adjacent", adj}}.dump() << '\n';
    } catch (const RangeError& err) {
      throw UsageError(err.what());
    }
  } else if (stream) {
    handle.stream_edges([](std::uint64_t u, std::uint64_t v) { std::cout << u << ' ' << v << '\n'; });
  }
  return kOk;
}

void set_workers() {
  if (const char* env = std::getenv("HADWIGER_WORKERS")) {
    try {
      const int k = std::stoi(env);
      if (k >= 1) omp_set_num_threads(k);
    } catch (const std::exception&) {
      // ignored: default worker count
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  set_workers();
  CLI::App app{"Exact clique-minor and fractional Hadwiger computations"};
  app.set_config("--config", "", "TOML/INI file, one [subcommand] section with the flag names as keys; flags win");
  app.require_subcommand(1);

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "compute invariants as JSON lines");
  compute.source.add_to(c);
  c->add_option("--params", compute.params, "comma-separated: h,hf,hlf,hr,hr_blowup,tw,bn,sep,grid,bounds");
  c->add_option("--r", compute.r, "r for hr and hr_blowup");

  CertifyOptions certify;
  auto* v = app.add_subcommand("certify", "validate a certificate against a graph (exit 0 iff valid)");
  certify.source.add_to(v);
  v->add_option("--cert", certify.cert, "certificate file")->required();

  SurveyOptions survey;
  auto* s = app.add_subcommand("survey", "G(n, p) survey of h and h_f as CSV");
  s->add_option("--n", survey.n, "order");
  s->add_option("--p", survey.p, "edge probability (p/q or decimal)");
  s->add_option("--samples", survey.samples, "sample count; sample i uses seed + i");
  s->add_option("--seed", survey.seed, "base seed");

  ConstructOptions construct;
  auto* k = app.add_subcommand("construct", "witness search and blow-up emission");
  k->add_option("--n0", construct.n0, "witness order");
  k->add_option("--mode", construct.mode, "thomason or mader");
  k->add_option("--p", construct.p, "edge density for mader mode");
  k->add_flag("--exhaustive", construct.exhaustive, "one graph per isomorphism class");
  k->add_option("--samples", construct.samples, "sampled search size");
  k->add_option("--seed", construct.seed, "sampled search seed");
  k->add_option("--s", construct.s, "forbidden bounded-breadth clique-minor order");
  k->add_option("--d", construct.d, "fixed breadth (default: swept)");
  k->add_option("--emit", construct.emit, "emit the complete blow-up G[t]");
  k->add_option("--query", construct.query, "adjacency query u v in the emitted blow-up")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (c->parsed()) return run_compute(compute);
    if (v->parsed()) return run_certify(certify);
    if (s->parsed()) return run_survey(survey);
    if (k->parsed()) return run_construct(construct);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
