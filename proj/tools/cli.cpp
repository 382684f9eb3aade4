#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <sstream>

#include "netcomp/code.hpp"
#include "netcomp/construct.hpp"
#include "netcomp/error.hpp"
#include "netcomp/function.hpp"
#include "netcomp/network.hpp"
#include "netcomp/search.hpp"

namespace netcomp {

namespace {

// Human section followed by a `[machine]` key=value section that is a pure
// function of the inputs and seed.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(const std::string& key, const std::string& value) {
    inputs_.emplace_back(key, value);
  }
  void line(const std::string& text) { human_.push_back(text); }
  void set(const std::string& key, const std::string& value) { machine_.emplace_back(key, value); }

  void rational(const std::string& key, const Rational& r) {
    set(key, to_string(r));
    set(key + ".kind", "exact-rational");
  }
  void log_ratio(const std::string& key, const LogRatio& v) {
    if (auto r = v.exact()) return rational(key, *r);
    set(key, v.to_string());
    set(key + ".triple", to_string(v.coeff) + "," + std::to_string(v.arg) + "," + std::to_string(v.base));
    set(key + ".float", fixed(v.value()));
    set(key + ".kind", "exact-log");
  }

  void render(std::ostream& out) const {
    out << "netcomp " << command_ << "\n";
    for (const auto& [k, v] : inputs_) out << "  " << k << ": " << v << "\n";
    for (const auto& l : human_) out << l << "\n";
    out << "\n[machine]\ncommand=" << command_ << "\n";
    for (const auto& [k, v] : inputs_) out << "input." << k << "=" << v << "\n";
    for (const auto& [k, v] : machine_) out << k << "=" << v << "\n";
  }

  static std::string fixed(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> human_;
  std::vector<std::pair<std::string, std::string>> machine_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tuple(const std::vector<Element>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

// `2` is shorthand for `field:2`.
std::string field_spec(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return "field:" + s;
  return s;
}

TargetFunction load_target(const std::string& spec, const Algebra& alg, unsigned arity) {
  return make_builtin(spec, alg, spec.starts_with("table:") ? 0 : arity);
}

// Fails with InvalidArgument when a table function's arity differs.
void require_arity(const TargetFunction& f, const Network& net) {
  if (f.arity() != net.source_count())
    throw InvalidArgument("function has arity " + std::to_string(f.arity()) + " but the network has " +
                          std::to_string(net.source_count()) + " sources");
}

void describe_code(Report& rep, const Network& net, const NetworkCode& code) {
  rep.line("code: (k, n) = (" + std::to_string(code.k) + ", " + std::to_string(code.n) + ") over " +
           code.alg.spec() + ", rate " + to_string(rate(code)));
  rep.set("code.k", std::to_string(code.k));
  rep.set("code.n", std::to_string(code.n));
  rep.rational("code.rate", rate(code));
  (void)net;
}

void write_code(Report& rep, const std::string& out, const Network& net, NetworkCode& code) {
  if (out.empty()) {
    rep.line("code not written (no --out given)");
    return;
  }
  save_code(out, net, code);
  rep.line("wrote " + out);
  rep.set("output", out);
}

int verification_lines(Report& rep, const VerifyResult& v, bool exhaustive) {
  rep.set("verify.mode", exhaustive ? "exhaustive" : "random");
  rep.set("verify.checked", std::to_string(v.checked));
  rep.set("verify.status", v.verified ? "verified" : "counterexample");
  if (v.verified) {
    rep.line(std::string("verification: verified (") + (exhaustive ? "exhaustive, " : "random, ") +
             std::to_string(v.checked) + " message assignments)");
    return kExitOk;
  }
  const Counterexample& c = *v.counterexample;
  rep.line("verification: counterexample after " + std::to_string(v.checked) + " assignments");
  rep.line("  messages (one row per source): " + format_messages(c.messages));
  std::string want, got;
  for (std::size_t j = 0; j < c.expected.size(); ++j) {
    want += (j ? " " : "") + std::to_string(c.expected[j]);
    got += (j ? " " : "") + std::to_string(c.output[j]);
  }
  rep.line("  expected: " + want + "  decoded: " + got);
  rep.set("verify.counterexample", format_messages(c.messages));
  rep.set("verify.expected", want);
  rep.set("verify.output", got);
  return kExitFailed;
}

int cmd_classify(const std::string& fn, const std::string& alg_spec, unsigned arity, std::uint64_t budget,
                 std::ostream& out) {
  const Algebra alg = build_algebra(alg_spec);
  const TargetFunction f = load_target(fn, alg, arity);
  Report rep("classify");
  rep.input("function", fn);
  rep.input("algebra", alg.spec());
  rep.input("arity", std::to_string(f.arity()));
  const Classification c = classify(f, budget);
  rep.line("algebra: " + alg.describe());
  rep.line("label: " + to_string(c.label));
  rep.set("label", to_string(c.label));
  rep.set("codomain_size", std::to_string(f.labels().size()));
  if (c.semi_injective_witness) {
    rep.line("semi-injective: yes, x = " + tuple(*c.semi_injective_witness) + " is the only preimage of f(x)");
    rep.set("semi_injective", "yes");
    rep.set("semi_injective.x", tuple(*c.semi_injective_witness));
  } else {
    rep.line("semi-injective: no");
    rep.set("semi_injective", "no");
  }
  if (c.reduction) {
    rep.line("reducible: yes, lambda = " + std::to_string(c.reduction->lambda) + ", T = " +
             format_matrix(c.reduction->T));
    rep.set("reducible", "yes");
    rep.set("reduction.lambda", std::to_string(c.reduction->lambda));
    rep.set("reduction.T", format_matrix(c.reduction->T));
    if (c.reduction->direction) {
      rep.line("  invariant direction d = " + tuple(*c.reduction->direction));
      rep.set("reduction.direction", tuple(*c.reduction->direction));
    }
  } else if (c.unresolved) {
    rep.line("reducible: unknown (budget exceeded; lambda <= " + std::to_string(c.lambda_exhausted) +
             " exhausted)");
    rep.set("reducible", "unknown");
    rep.set("lambda_exhausted", std::to_string(c.lambda_exhausted));
  } else {
    const std::string why = alg.is_field() ? "no invariant direction"
                                           : "lambda=" + std::to_string(c.lambda_exhausted) + " exhausted";
    rep.line("reducible: no (" + why + ")");
    rep.set("reducible", "no");
    rep.set("lambda_exhausted", std::to_string(c.lambda_exhausted));
  }
  rep.render(out);
  return c.unresolved ? kExitBudgetExceeded : kExitOk;
}

int cmd_capacity(const std::string& network, const std::string& alg_spec, const std::string& fn,
                 std::ostream& out) {
  const Network net = resolve_network(network);
  const Algebra alg = build_algebra(alg_spec);
  const TargetFunction f = load_target(fn, alg, static_cast<unsigned>(net.source_count()));
  require_arity(f, net);
  const BoundReport b = bound_report(net, f);
  Report rep("capacity");
  rep.input("network", network);
  rep.input("algebra", alg.spec());
  rep.input("function", fn);
  rep.line("sources: " + std::to_string(net.source_count()) + ", edges: " + std::to_string(net.edge_count()) +
           ", min cut: " + std::to_string(b.min_cut));
  rep.line("target: " + to_string(b.classification.label));
  for (const BoundStatement& st : b.statements)
    rep.line("  " + st.quantity + " " + st.relation + " " + st.value + "  [" + st.provenance + "; " +
             Report::fixed(st.numeric) + "]  " + st.reason);
  rep.rational("routing_capacity", b.routing_capacity);
  rep.set("min_cut", std::to_string(b.min_cut));
  rep.log_ratio("footprint_bound", b.footprint.value);
  rep.set("footprint_bound.cut", format_edge_set(net, b.footprint.cut.edges));
  rep.set("footprint_bound.footprint", std::to_string(b.footprint.footprint));
  rep.log_ratio("min_cut_bound", b.min_cut_bound);
  rep.log_ratio("coding_gain_bound", b.coding_gain_bound);
  if (b.linear_target_capacity) rep.set("linear_capacity", std::to_string(*b.linear_target_capacity));
  for (std::size_t i = 0; i < b.statements.size(); ++i) {
    const auto& st = b.statements[i];
    rep.set("statement." + std::to_string(i), st.quantity + " " + st.relation + " " + st.value);
  }
  rep.render(out);
  return kExitOk;
}

struct ConstructArgs {
  std::string kind;
  std::string network = "rbf";
  std::string field = "2";
  std::string coeffs = "1,1";
  std::string function;
  std::string algebra = "field:2";
  unsigned arity = 0;
  std::uint32_t q = 2;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  std::string out;
};

std::vector<Element> parse_coeffs(const std::string& text, const Algebra& alg) {
  std::vector<Element> out;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    unsigned long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("malformed coefficient '" + tok + "'");
    }
    if (v >= alg.size()) throw InvalidArgument("coefficient " + tok + " is not an element of " + alg.spec());
    out.push_back(static_cast<Element>(v));
  }
  return out;
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  Report rep("construct " + a.kind);
  rep.input("seed", std::to_string(a.seed));
  int status = kExitOk;
  if (a.kind == "km") {
    const Network net = resolve_network(a.network);
    const Algebra field = build_algebra(field_spec(a.field));
    rep.input("network", a.network);
    rep.input("field", field.spec());
    rep.input("coeffs", a.coeffs);
    const KMResult r = km_construct(net, field, parse_coeffs(a.coeffs, field), {.seed = a.seed});
    NetworkCode code = r.code;
    describe_code(rep, net, code);
    rep.line("extension degree n = " + std::to_string(r.degree) + " (GF(" + std::to_string(r.system.ext.size()) +
             ")), " + std::to_string(r.draws) + " coefficient draws");
    std::string dets;
    for (std::size_t t = 0; t < r.system.determinants.size(); ++t)
      dets += (t ? "," : "") + std::to_string(r.system.determinants[t]);
    rep.line("det M_tau = " + dets + " (all nonzero)");
    rep.set("degree", std::to_string(r.degree));
    rep.set("draws", std::to_string(r.draws));
    rep.set("determinants", dets);
    if (r.min_cut) {
      rep.line("minimizing cut: " + format_edge_set(net, r.min_cut->edges));
      rep.set("min_cut", format_edge_set(net, r.min_cut->edges));
    }
    status = verification_lines(rep, r.verification, r.exhaustive);
    write_code(rep, a.out, net, code);
  } else if (a.kind == "relay") {
    if (a.function.empty()) throw InvalidArgument("construct relay needs --function");
    const Algebra alg = build_algebra(a.algebra);
    const TargetFunction f = load_target(a.function, alg, a.arity ? a.arity : 2);
    rep.input("function", a.function);
    rep.input("algebra", alg.spec());
    const Network net = builtin_network("relay:" + std::to_string(f.arity()));
    rep.line("network: relay:" + std::to_string(f.arity()));
    const Classification c = classify(f);
    if (!c.reduction) {
      if (c.unresolved) throw BudgetExceeded("reduction search", 0, kDefaultReductionBudget);
      throw InvalidArgument("target is not reducible; the relay construction needs a reduction");
    }
    NetworkCode code = relay_reduction_code(net, f, *c.reduction);
    rep.line("reduction: lambda = " + std::to_string(c.reduction->lambda) + ", T = " +
             format_matrix(c.reduction->T));
    rep.set("reduction.lambda", std::to_string(c.reduction->lambda));
    rep.set("reduction.T", format_matrix(c.reduction->T));
    describe_code(rep, net, code);
    rep.rational("routing_capacity", routing_computing_capacity(net));
    status = verification_lines(rep, verify_code(net, code, f), true);
    write_code(rep, a.out, net, code);
  } else if (a.kind == "butterfly-mod") {
    rep.input("q", std::to_string(a.q));
    const Network net = builtin_network("rbf");
    NetworkCode code = butterfly_mod_code(a.q);
    describe_code(rep, net, code);
    const auto f = make_builtin("mod-sum:" + std::to_string(a.q), code.alg, 2);
    status = verification_lines(rep, verify_code(net, code, f), true);
    write_code(rep, a.out, net, code);
  } else if (a.kind == "butterfly-arith") {
    rep.input("q", std::to_string(a.q));
    rep.input("n", std::to_string(a.n));
    const Network net = builtin_network("rbf");
    NetworkCode code = butterfly_arith_code(a.q, a.n);
    describe_code(rep, net, code);
    rep.log_ratio("capacity", butterfly_capacity(a.q));
    rep.line("capacity 2/log_q(2q-1) = " + butterfly_capacity(a.q).to_string() + " ~ " +
             Report::fixed(butterfly_capacity(a.q).value()));
    const auto f = make_builtin("arith-sum", code.alg, 2);
    const std::uint64_t assignments = saturating_pow(a.q, 2 * code.k);
    if (assignments <= kDefaultVerifyBudget)
      status = verification_lines(rep, verify_code(net, code, f), true);
    else
      status = verification_lines(rep, verify_random(net, code, f, 100000, a.seed), false);
    write_code(rep, a.out, net, code);
  } else {
    throw InvalidArgument("unknown construction '" + a.kind + "'");
  }
  rep.render(out);
  return status;
}

int cmd_verify(const std::string& network, const std::string& code_path, const std::string& fn,
               const std::string& alg_spec, std::uint64_t budget, std::uint64_t random, std::uint64_t seed,
               std::ostream& out) {
  const Network net = resolve_network(network);
  const Algebra alg = build_algebra(alg_spec);
  const TargetFunction f = load_target(fn, alg, static_cast<unsigned>(net.source_count()));
  require_arity(f, net);
  const NetworkCode code = load_code(code_path, net, alg);
  Report rep("verify");
  rep.input("network", network);
  rep.input("code", code_path);
  rep.input("function", fn);
  rep.input("algebra", alg.spec());
  if (random) rep.input("seed", std::to_string(seed));
  describe_code(rep, net, code);
  const VerifyResult v = random ? verify_random(net, code, f, random, seed) : verify_code(net, code, f, budget);
  const int status = verification_lines(rep, v, random == 0);
  rep.render(out);
  return status;
}

void search_lines(Report& rep, const std::string& prefix, const SearchResult& r) {
  rep.set(prefix + "status", to_string(r.status));
  rep.set(prefix + "candidates", r.candidates == UINT64_MAX ? "overflow" : std::to_string(r.candidates));
  rep.set(prefix + "evaluations", std::to_string(r.evaluations));
  if (r.status == SearchStatus::Found) {
    rep.set(prefix + "candidate_index", std::to_string(r.candidate_index));
    rep.rational(prefix + "rate", rate(*r.code));
  }
  if (r.status == SearchStatus::BudgetExceeded)
    rep.set(prefix + "remaining", r.remaining == UINT64_MAX ? "overflow" : std::to_string(r.remaining));
}

int cmd_search(const std::string& network, const std::string& alg_spec, const std::string& fn, std::size_t k,
               std::size_t n, const std::string& kind, std::uint64_t budget, unsigned jobs, const std::string& out_path,
               std::ostream& out) {
  const Network net = resolve_network(network);
  const Algebra alg = build_algebra(alg_spec);
  const TargetFunction f = load_target(fn, alg, static_cast<unsigned>(net.source_count()));
  require_arity(f, net);
  Report rep("search");
  rep.input("network", network);
  rep.input("algebra", alg.spec());
  rep.input("function", fn);
  rep.input("k", std::to_string(k));
  rep.input("n", std::to_string(n));
  rep.input("kind", kind);
  rep.input("budget", std::to_string(budget));
  const SearchOptions opts{.budget = budget, .jobs = jobs};
  SearchResult r = kind == "linear" ? search_linear(net, f, k, n, opts) : search_general(net, f, k, n, opts);
  rep.line("candidates: " + (r.candidates == UINT64_MAX ? std::string("too many to count") : std::to_string(r.candidates)));
  rep.line("result: " + to_string(r.status) + " after " + std::to_string(r.evaluations) + " evaluations");
  search_lines(rep, "", r);
  int status = kExitOk;
  if (r.status == SearchStatus::Found) {
    rep.line("witness: candidate " + std::to_string(r.candidate_index) + ", rate " + to_string(rate(*r.code)));
    write_code(rep, out_path, net, *r.code);
  } else if (r.status == SearchStatus::BudgetExceeded) {
    rep.line("budget exceeded with " +
             (r.remaining == UINT64_MAX ? std::string("too many") : std::to_string(r.remaining)) +
             " candidates left; raise --budget");
    status = kExitBudgetExceeded;
  }
  rep.render(out);
  return status;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    unsigned long k = 0, n = 0;
    char sep = 0, extra = 0;
    if (std::sscanf(tok.c_str(), "%lu%c%lu%c", &k, &sep, &n, &extra) != 3 || (sep != 'x' && sep != ':') ||
        k == 0 || n == 0)
      throw ParseError("malformed (k,n) pair '" + tok + "' (expected e.g. 1x1)");
    out.emplace_back(k, n);
  }
  if (out.empty()) throw ParseError("no (k,n) pairs given");
  return out;
}

int cmd_sweep(const std::string& network, const std::string& alg_spec, const std::string& fn,
              const std::string& pairs, std::uint64_t budget, unsigned jobs, std::ostream& out) {
  const Network net = resolve_network(network);
  const Algebra alg = build_algebra(alg_spec);
  const TargetFunction f = load_target(fn, alg, static_cast<unsigned>(net.source_count()));
  require_arity(f, net);
  Report rep("sweep");
  rep.input("network", network);
  rep.input("algebra", alg.spec());
  rep.input("function", fn);
  rep.input("pairs", pairs);
  rep.input("budget", std::to_string(budget));
  const SweepReport sw = achievability_sweep(net, f, parse_pairs(pairs), {.budget = budget, .jobs = jobs});
  rep.rational("routing_capacity", sw.bounds.routing_capacity);
  rep.log_ratio("footprint_bound", sw.bounds.footprint.value);
  rep.line("C_rout = " + to_string(sw.bounds.routing_capacity) + ", cut-set bound " +
           sw.bounds.footprint.value.to_string());
  rep.line("  k  n  rate    linear           general          within bound");
  bool over_budget = false;
  for (const SweepCell& c : sw.cells) {
    const Rational r(static_cast<std::int64_t>(c.k), static_cast<std::int64_t>(c.n));
    const bool within = compare(r, sw.bounds.footprint.value).order <= 0;
    std::ostringstream row;
    row << "  " << std::setw(2) << c.k << " " << std::setw(2) << c.n << "  " << std::setw(6) << std::left
        << to_string(r) << "  " << std::setw(15) << to_string(c.linear.status) << "  " << std::setw(15)
        << to_string(c.general.status) << "  " << yes_no(within);
    rep.line(row.str());
    const std::string key = "cell." + std::to_string(c.k) + "x" + std::to_string(c.n) + ".";
    search_lines(rep, key + "linear.", c.linear);
    search_lines(rep, key + "general.", c.general);
    rep.set(key + "within_bound", yes_no(within));
    over_budget |= c.linear.status == SearchStatus::BudgetExceeded ||
                   c.general.status == SearchStatus::BudgetExceeded;
  }
  rep.render(out);
  return over_budget ? kExitBudgetExceeded : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyze, construct, search and verify network codes for function computation", "netcomp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "netcomp 0.1.0");

  std::string function, algebra = "field:2", network, code_path, kind = "linear", pairs = "1x1";
  unsigned arity = 0, jobs = 1;
  std::uint64_t budget = 0, random = 0, seed = 0;
  std::size_t k = 1, n = 1;
  std::string out_path;

  auto* classify_cmd = app.add_subcommand("classify", "Classify a target function");
  classify_cmd->add_option("--function", function, "Function spec")->required();
  classify_cmd->add_option("--algebra", algebra, "Alphabet spec (field:q, zmod:m, product:...)");
  classify_cmd->add_option("--arity", arity, "Number of arguments (default 2; tables carry their own)");
  classify_cmd->add_option("--budget", budget, "Reduction search budget");

  auto* capacity_cmd = app.add_subcommand("capacity", "Routing capacity and cut-set bounds");
  capacity_cmd->add_option("--network", network, "Network file or builtin name")->required();
  capacity_cmd->add_option("--algebra", algebra, "Alphabet spec");
  capacity_cmd->add_option("--function", function, "Function spec")->required();

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a code");
  construct_cmd->add_option("kind", ca.kind, "km | relay | butterfly-mod | butterfly-arith")
      ->required()
      ->check(CLI::IsMember({"km", "relay", "butterfly-mod", "butterfly-arith"}));
  construct_cmd->add_option("--network", ca.network, "Network for km");
  construct_cmd->add_option("--field", ca.field, "Field for km (q or field:q)");
  construct_cmd->add_option("--coeffs", ca.coeffs, "Linear target coefficients a1,...,as");
  construct_cmd->add_option("--function", ca.function, "Reducible target for relay");
  construct_cmd->add_option("--algebra", ca.algebra, "Alphabet for relay");
  construct_cmd->add_option("--arity", ca.arity, "Arity for relay");
  construct_cmd->add_option("--q", ca.q, "Alphabet size for the butterfly codes");
  construct_cmd->add_option("--n", ca.n, "Block length n for butterfly-arith");
  construct_cmd->add_option("--seed", ca.seed, "Random seed (default 0)");
  construct_cmd->add_option("--out", ca.out, "Code file to write");

  auto* verify_cmd = app.add_subcommand("verify", "Check a code against a target");
  verify_cmd->add_option("--network", network, "Network file or builtin name")->required();
  verify_cmd->add_option("--code", code_path, "Code file")->required();
  verify_cmd->add_option("--function", function, "Function spec")->required();
  verify_cmd->add_option("--algebra", algebra, "Alphabet spec");
  verify_cmd->add_option("--budget", budget, "Maximum message assignments");
  verify_cmd->add_option("--random", random, "Check this many random assignments instead");
  verify_cmd->add_option("--seed", seed, "Seed for --random");

  auto* search_cmd = app.add_subcommand("search", "Exhaustive code search");
  search_cmd->add_option("--network", network, "Network file or builtin name")->required();
  search_cmd->add_option("--algebra", algebra, "Alphabet spec");
  search_cmd->add_option("--function", function, "Function spec")->required();
  search_cmd->add_option("--k", k, "Message length")->check(CLI::PositiveNumber);
  search_cmd->add_option("--n", n, "Edge vector length")->check(CLI::PositiveNumber);
  search_cmd->add_option("--kind", kind, "linear | general")->check(CLI::IsMember({"linear", "general"}));
  search_cmd->add_option("--budget", budget, "Candidate-message evaluations");
  search_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  search_cmd->add_option("--out", out_path, "Code file for the witness");

  auto* sweep_cmd = app.add_subcommand("sweep", "Linear and general searches over (k,n) pairs");
  sweep_cmd->add_option("--network", network, "Network file or builtin name")->required();
  sweep_cmd->add_option("--algebra", algebra, "Alphabet spec");
  sweep_cmd->add_option("--function", function, "Function spec")->required();
  sweep_cmd->add_option("--pairs", pairs, "Comma-separated kxn pairs, e.g. 1x1,2x2");
  sweep_cmd->add_option("--budget", budget, "Evaluations per search");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"netcomp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*classify_cmd)
      return cmd_classify(function, algebra, arity ? arity : 2, budget ? budget : kDefaultReductionBudget, out);
    if (*capacity_cmd) return cmd_capacity(network, algebra, function, out);
    if (*construct_cmd) return cmd_construct(ca, out);
    if (*verify_cmd)
      return cmd_verify(network, code_path, function, algebra, budget ? budget : kDefaultVerifyBudget, random,
                        seed, out);
    if (*search_cmd)
      return cmd_search(network, algebra, function, k, n, kind, budget ? budget : kDefaultSearchBudget, jobs,
                        out_path, out);
    if (*sweep_cmd)
      return cmd_sweep(network, algebra, function, pairs, budget ? budget : kDefaultSearchBudget, jobs, out);
  } catch (const BudgetExceeded& e) {
    err << "netcomp: budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const ParseError& e) {
    err << "netcomp: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidArgument& e) {
    err << "netcomp: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "netcomp: internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitInputError;
}

}  // namespace netcomp
