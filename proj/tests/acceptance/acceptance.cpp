// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <random>
#include <iostream>
#include <sstream>

#include "netcomp/code.hpp"
#include "netcomp/construct.hpp"
#include "netcomp/error.hpp"
#include "netcomp/function.hpp"
#include "netcomp/matrix.hpp"
#include "netcomp/network.hpp"
#include "netcomp/search.hpp"

using namespace netcomp;

namespace {

const std::string kCorpus = NETCOMP_CORPUS_DIR;

// Pinned tolerances and time limits.
constexpr double kFloatTolerance = 1e-9;
constexpr double kReferenceLog = 1.2618595071429148;
constexpr double kLimitRouting = 1.0;
constexpr double kLimitClassify = 5.0;
constexpr double kLimitExplicit = 30.0;
constexpr double kLimitNegatives = 600.0;
constexpr unsigned kSearchJobs = 4;
constexpr std::uint64_t kKmExhaustiveLimit = 1u << 20;
constexpr std::uint64_t kKmRandomChecks = 100000;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

TargetFunction chain_function() {
  return load_function_table(kCorpus + "/functions/sum12_times_x3.tbl", build_algebra("field:2"));
}

Network corpus_net(const std::string& name) { return load_network(kCorpus + "/networks/" + name); }

std::vector<std::string> corpus_networks() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(kCorpus + "/networks"))
    if (e.path().extension() == ".net") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

void criterion1(Outcome& o) {
  for (int s = 2; s <= 5; ++s) {
    const Rational c = routing_computing_capacity(corpus_net("relay_s" + std::to_string(s) + ".net"));
    o.require(c == Rational(1, s), "relay_s" + std::to_string(s) + " gives " + to_string(c));
    o.detail << "N_{2," << s << "}=" << to_string(c) << " ";
  }
  const Rational rbf = routing_computing_capacity(corpus_net("reverse_butterfly.net"));
  const Rational line = routing_computing_capacity(corpus_net("line.net"));
  o.require(rbf == Rational(1), "reverse butterfly");
  o.require(line == Rational(1, 2), "line");
  o.detail << "rbf=" << to_string(rbf) << " line=" << to_string(line);
}

void criterion2(Outcome& o) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Network rbf = corpus_net("reverse_butterfly.net");
  const auto b = footprint_cut_bound(rbf, make_builtin("arith-sum", build_algebra("field:2"), 2));
  const Big oracle = Big(2) * boost::multiprecision::log(Big(2)) / boost::multiprecision::log(Big(3));
  const double err_oracle = std::abs(b.value.value() - oracle.convert_to<double>());
  const double err_ref = std::abs(b.value.value() - kReferenceLog);
  o.require(b.value.coeff == Rational(2) && b.value.arg == 2 && b.value.base == 3, "exact triple");
  o.require(err_oracle <= kFloatTolerance, "float vs high-precision log");
  o.require(err_ref <= kFloatTolerance, "float vs reference");
  o.detail << b.value.to_string() << " = " << std::setprecision(17) << b.value.value() << " (|err| " << err_oracle
           << ") ";
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const auto m = footprint_cut_bound(
        rbf, make_builtin("mod-sum:" + std::to_string(q), build_algebra("field:" + std::to_string(q)), 2));
    o.require(m.value.exact() == Rational(2), "mod-sum:" + std::to_string(q));
    o.detail << "mod-sum:" << q << "=" << m.value.to_string() << " ";
  }
}

void criterion3(Outcome& o) {
  int checked = 0;
  for (unsigned q : {2u, 3u, 4u})
    for (unsigned s : {2u, 3u})
      for (const char* fn : {"arith-sum", "max", "identity"}) {
        const auto f = make_builtin(fn, build_algebra("field:" + std::to_string(q)), s);
        const Classification c = classify(f);
        const bool semi = c.semi_injective_witness.has_value() &&
                          (c.label == FunctionClass::SemiInjective || c.label == FunctionClass::Injective);
        o.require(semi && !c.reduction && !c.unresolved,
                  std::string(fn) + " q=" + std::to_string(q) + " s=" + std::to_string(s));
        ++checked;
      }
  o.detail << checked << " semi-injective cases; ";
  const Classification chain = classify(chain_function());
  o.require(chain.reduction && chain.reduction->lambda == 2 &&
                chain.reduction->T == Matrix(3, 2, {1, 0, 1, 0, 0, 1}),
            "(x1+x2)x3 reduction");
  if (chain.reduction) o.detail << "(x1+x2)x3: lambda=2 T=" << format_matrix(chain.reduction->T) << "; ";
  const Classification prod = classify(make_builtin("paper-f4", build_algebra("product:zmod:2,zmod:2"), 2));
  o.require(prod.reduction && prod.reduction->lambda == 1, "f4 over Z2xZ2 reducible");
  const Classification z4 = classify(make_builtin("paper-f4", build_algebra("zmod:4"), 2));
  o.require(!z4.reduction && !z4.unresolved && z4.lambda_exhausted == 1, "f4 over Z4 not reducible");
  o.detail << "f4: Z2xZ2 lambda=1, Z4 lambda=1 exhausted";
}

void criterion4(Outcome& o) {
  const Network rbf = corpus_net("reverse_butterfly.net");
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const NetworkCode c = butterfly_mod_code(q);
    o.require(verify_code(rbf, c, make_builtin("mod-sum:" + std::to_string(q), c.alg, 2)).verified,
              "butterfly-mod q=" + std::to_string(q));
  }
  o.detail << "butterfly-mod q=2,3,5 verified; ";
  struct Arith {
    std::uint32_t q;
    std::size_t n, expected_len;
  };
  for (Arith a : {Arith{2, 1, 2}, Arith{2, 2, 4}, Arith{2, 3, 5}, Arith{3, 1, 2}}) {
    const NetworkCode c = butterfly_arith_code(a.q, a.n);
    const auto oracle = static_cast<std::size_t>(
        std::ceil(a.n * std::log(2.0 * a.q - 1) / std::log(double(a.q)) - 1e-12));
    const std::string tag = "butterfly-arith q=" + std::to_string(a.q) + " n=" + std::to_string(a.n);
    o.require(c.n == a.expected_len && c.n == oracle, tag + " length");
    o.require(verify_code(rbf, c, make_builtin("arith-sum", c.alg, 2)).verified, tag);
    o.detail << "arith(" << a.q << "," << a.n << ") n'=" << c.n << " ";
  }
  const Network relay3 = corpus_net("relay_s3.net");
  const NetworkCode chain = load_code(kCorpus + "/codes/chain_relay.code", relay3, build_algebra("field:2"));
  o.require(chain.k == 1 && chain.n == 2 && verify_code(relay3, chain, chain_function()).verified, "chain (1,2)");
  const Algebra prod = build_algebra("product:zmod:2,zmod:2");
  const Network line = corpus_net("line.net");
  const NetworkCode z2 = load_code(kCorpus + "/codes/line_z2xz2.code", line, prod);
  o.require(z2.k == 1 && z2.n == 1 &&
                verify_code(line, z2, load_function_table(kCorpus + "/functions/f4_table.tbl", prod)).verified,
            "Z2xZ2 (1,1)");
  o.detail << "; chain (1,2) and Z2xZ2 (1,1) verified";
}

void criterion5(Outcome& o) {
  const Network line = corpus_net("line.net");
  const Algebra z4 = build_algebra("zmod:4");
  const auto f4 = load_function_table(kCorpus + "/functions/f4_table.tbl", z4);
  const SearchOptions opts{.budget = kDefaultSearchBudget, .jobs = kSearchJobs};
  for (std::size_t kn : {1u, 2u}) {
    const SearchResult r = search_linear(line, f4, kn, kn, opts);
    o.require(r.status == SearchStatus::None, "Z4 (" + std::to_string(kn) + "," + std::to_string(kn) + ")");
    o.detail << "Z4 (" << kn << "," << kn << "): " << to_string(r.status) << " over " << r.candidates
             << " candidates; ";
  }
  const SearchResult chain = search_linear(corpus_net("relay_s3.net"), chain_function(), 1, 1, opts);
  o.require(chain.status == SearchStatus::None, "GF(2) (1,1) chain");
  o.detail << "GF(2) (1,1) on N_{2,3}: " << to_string(chain.status);
}

void criterion6(Outcome& o) {
  const Algebra gf2 = build_algebra("field:2");
  const Network rbf = corpus_net("reverse_butterfly.net");
  const KMOptions opts{.seed = 0, .exhaustive_limit = kKmExhaustiveLimit, .random_checks = kKmRandomChecks};
  const KMResult a = km_construct(rbf, gf2, {1, 1}, opts);
  bool dets = true;
  for (Element d : a.system.determinants) dets &= d != 0;
  for (const Matrix& m : a.system.transfer) dets &= mat_inverse(a.system.ext, m).has_value();
  o.require(rate(a.code) == Rational(2), "rbf rate 2");
  o.require(dets, "all M_tau invertible");
  const bool want_exhaustive = saturating_pow(2, 2 * a.code.k) <= kKmExhaustiveLimit;
  o.require(a.exhaustive == want_exhaustive, "verification mode");
  o.require(a.verification.verified &&
                a.verification.checked == (want_exhaustive ? saturating_pow(2, 2 * a.code.k) : kKmRandomChecks),
            "verification");
  const KMResult b = km_construct(rbf, gf2, {1, 1}, opts);
  o.require(serialize_code(rbf, a.code) == serialize_code(rbf, b.code), "deterministic under seed");
  o.detail << "rbf: n=" << a.degree << " rate=" << to_string(rate(a.code)) << " "
           << (a.exhaustive ? "exhaustive " : "random ") << a.verification.checked << " checks; ";
  const Network relay3 = corpus_net("relay_s3.net");
  const KMResult r = km_construct(relay3, gf2, {1, 1, 1}, opts);
  o.require(rate(r.code) == Rational(1) && r.verification.verified, "N_{2,3} rate 1");
  o.detail << "N_{2,3}: rate=" << to_string(rate(r.code)) << "; two runs identical";
}

void criterion7(Outcome& o) {
  const Network relay3 = corpus_net("relay_s3.net");
  const TargetFunction f = chain_function();
  const SearchOptions opts{.budget = kDefaultSearchBudget, .jobs = kSearchJobs};
  const SearchResult general = search_general(relay3, f, 1, 1, opts);
  const SearchResult linear = search_linear(relay3, f, 1, 1, opts);
  const Classification c = classify(f);
  o.require(general.status == SearchStatus::Found, "general (1,1) found");
  o.require(linear.status == SearchStatus::None, "linear (1,1) none");
  o.require(c.reduction.has_value(), "reduction witness");
  if (general.status != SearchStatus::Found || !c.reduction) return;
  const NetworkCode relay = relay_reduction_code(relay3, f, *c.reduction);
  o.require(verify_code(relay3, relay, f).verified, "relay code verifies");
  const Rational g = rate(*general.code), l = rate(relay), rout = routing_computing_capacity(relay3);
  o.require(g == Rational(1) && l == Rational(1, 2) && rout == Rational(1, 3), "rates");
  o.require(g > l && l > rout, "strict chain");
  o.detail << "general " << to_string(g) << " > relay construction " << to_string(l) << " > C_rout " << to_string(rout);
}

void criterion8(Outcome& o) {
  int checked = 0;
  for (const auto& name : corpus_networks()) {
    const Network net = corpus_net(name);
    if (net.edge_count() > 12) continue;
    const Rational flow = routing_computing_capacity(net), cuts = routing_capacity_by_cuts(net);
    o.require(flow == cuts, name);
    ++checked;
  }
  o.require(checked >= 7, "corpus coverage");
  o.detail << checked << " corpus networks, flow == cut minimum on all";
}

void criterion9(Outcome& o) {
  struct Item {
    std::string tag;
    Network net;
    TargetFunction f;
    NetworkCode code;
  };
  std::vector<Item> items;
  const Algebra gf2 = build_algebra("field:2");
  const Algebra prod = build_algebra("product:zmod:2,zmod:2");
  const Network rbf = corpus_net("reverse_butterfly.net"), relay3 = corpus_net("relay_s3.net"),
                line = corpus_net("line.net");
  const TargetFunction chain = chain_function();
  const TargetFunction f4 = load_function_table(kCorpus + "/functions/f4_table.tbl", prod);
  const Algebra z2 = build_algebra("zmod:2");
  items.push_back({"butterfly_mod2.code", rbf, make_builtin("mod-sum:2", z2, 2),
                   load_code(kCorpus + "/codes/butterfly_mod2.code", rbf, z2)});
  items.push_back({"chain_relay.code", relay3, chain, load_code(kCorpus + "/codes/chain_relay.code", relay3, gf2)});
  items.push_back({"line_z2xz2.code", line, f4, load_code(kCorpus + "/codes/line_z2xz2.code", line, prod)});
  for (std::uint32_t q : {2u, 3u, 5u}) {
    NetworkCode c = butterfly_mod_code(q);
    items.push_back({"butterfly-mod " + std::to_string(q), rbf, make_builtin("mod-sum:" + std::to_string(q), c.alg, 2), c});
  }
  for (std::size_t n : {1u, 2u, 3u}) {
    NetworkCode c = butterfly_arith_code(2, n);
    items.push_back({"butterfly-arith 2," + std::to_string(n), rbf, make_builtin("arith-sum", c.alg, 2), c});
  }
  items.push_back({"km rbf", rbf, make_builtin("mod-sum:2", gf2, 2), km_construct(rbf, gf2, {1, 1}).code});
  for (int s = 2; s <= 5; ++s) {
    const Network relay = corpus_net("relay_s" + std::to_string(s) + ".net");
    items.push_back({"km relay_s" + std::to_string(s), relay, make_builtin("mod-sum:2", gf2, s),
                     km_construct(relay, gf2, std::vector<Element>(s, 1)).code});
  }
  const Network direct = corpus_net("direct.net");
  const Algebra gf3 = build_algebra("field:3");
  items.push_back({"km direct", direct, make_builtin("linear:1,1", gf3, 2), km_construct(direct, gf3, {1, 1}).code});
  if (auto w = classify(chain).reduction) items.push_back({"relay chain", relay3, chain, relay_reduction_code(relay3, chain, *w)});
  if (auto r = search_general(relay3, chain, 1, 1); r.code) items.push_back({"search general chain", relay3, chain, *r.code});
  if (auto r = search_linear(line, f4, 1, 1); r.code) items.push_back({"search linear f4", line, f4, *r.code});

  int verified = 0;
  for (const Item& it : items) {
    const bool ok = verify_code(it.net, it.code, it.f).verified;
    o.require(ok, it.tag + " verifies");
    if (!ok) continue;
    ++verified;
    const auto bound = footprint_cut_bound(it.net, it.f);
    o.require(compare(rate(it.code), bound.value).order <= 0,
              it.tag + " rate " + to_string(rate(it.code)) + " exceeds " + bound.value.to_string());
  }
  o.detail << verified << " verified codes within the cut-set bound; ";

  int nets = 0;
  for (const auto& name : corpus_networks()) {
    const Network net = corpus_net(name);
    const Rational lhs = routing_computing_capacity(net) * Rational(static_cast<std::int64_t>(net.source_count()));
    o.require(lhs >= Rational(static_cast<std::int64_t>(min_cut_size(net))), name + " s*C_rout >= min|C|");
    ++nets;
  }
  o.detail << "s*C_rout >= min|C| on " << nets << " networks";
}

void criterion10(Outcome& o) {
  std::vector<std::string> specs;
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) specs.push_back("field:" + std::to_string(q));
  for (int m = 2; m <= 16; ++m) specs.push_back("zmod:" + std::to_string(m));
  for (const char* p : {"product:zmod:2,zmod:2", "product:zmod:2,zmod:3", "product:zmod:2,zmod:2,zmod:2",
                        "product:zmod:4,zmod:2", "product:zmod:2,zmod:4", "product:zmod:3,zmod:3",
                        "product:field:4,zmod:2", "product:zmod:2,zmod:2,zmod:2,zmod:2", "product:field:4,field:4",
                        "product:zmod:2,zmod:5", "product:zmod:2,zmod:7", "product:zmod:3,zmod:5"})
    specs.push_back(p);
  int algebras = 0;
  for (const auto& spec : specs) {
    const Algebra a = build_algebra(spec);
    if (a.size() > 16) continue;
    const Element n = a.size();
    bool ok = a.add(0, 0) == 0;
    for (Element x = 0; x < n && ok; ++x) {
      ok &= a.add(x, 0) == x && a.mul(x, a.one()) == x && a.add(x, a.neg(x)) == 0 && a.mul(x, 0) == 0;
      for (Element y = 0; y < n && ok; ++y) {
        ok &= a.add(x, y) == a.add(y, x) && a.mul(x, y) == a.mul(y, x);
        for (Element z = 0; z < n && ok; ++z) {
          ok &= a.add(a.add(x, y), z) == a.add(x, a.add(y, z));
          ok &= a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z));
          ok &= a.mul(x, a.add(y, z)) == a.add(a.mul(x, y), a.mul(x, z));
        }
      }
    }
    if (a.is_field())
      for (Element x = 1; x < n && ok; ++x) ok &= a.inverse(x) && a.mul(x, *a.inverse(x)) == a.one();
    o.require(ok, spec + " ring axioms");
    ++algebras;
  }
  o.detail << algebras << " algebras satisfy the ring axioms; ";

  // Inverse agrees with a brute-force search for a right inverse over all 2x2 matrices.
  int matrices = 0;
  for (const char* spec : {"field:2", "field:3", "field:4"}) {
    const Algebra a = build_algebra(spec);
    const std::uint64_t q = a.size(), count = q * q * q * q;
    auto nth = [&](std::uint64_t idx) {
      Matrix m(2, 2);
      for (std::size_t i = 4; i-- > 0;) {
        m.entries[i] = static_cast<Element>(idx % q);
        idx /= q;
      }
      return m;
    };
    const Matrix id = Matrix::identity(a, 2);
    for (std::uint64_t i = 0; i < count; ++i) {
      const Matrix m = nth(i);
      std::optional<Matrix> brute;
      for (std::uint64_t j = 0; j < count && !brute; ++j)
        if (mat_mul(a, m, nth(j)) == id) brute = nth(j);
      const auto inv = mat_inverse(a, m);
      o.require(inv.has_value() == brute.has_value() && (!inv || *inv == *brute), std::string(spec) + " 2x2 inverse");
      ++matrices;
    }
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t dim = 3 + trial % 3;
      Matrix m(dim, dim);
      for (auto& e : m.entries) e = static_cast<Element>(rng() % q);
      const auto inv = mat_inverse(a, m);
      if (inv) {
        o.require(mat_mul(a, m, *inv) == Matrix::identity(a, dim) && mat_mul(a, *inv, m) == Matrix::identity(a, dim),
                  std::string(spec) + " random inverse");
      } else {
        o.require(mat_det(a, m) == 0 && mat_nullspace_vector(a, m).has_value(), std::string(spec) + " singular");
      }
      ++matrices;
    }
  }
  o.detail << matrices << " matrix inverses checked over GF(2), GF(3), GF(4)";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_seconds;  // 0: no limit
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "routing capacities exact", kLimitRouting, criterion1},
      {2, "cut-set bound values", 0, criterion2},
      {3, "classification regression", kLimitClassify, criterion3},
      {4, "explicit codes verify exhaustively", kLimitExplicit, criterion4},
      {5, "exhaustive negatives certified", kLimitNegatives, criterion5},
      {6, "KM constructor", 0, criterion6},
      {7, "strict separation chain", 0, criterion7},
      {8, "flow equals cut enumeration", 0, criterion8},
      {9, "soundness against bounds", 0, criterion9},
      {10, "algebra properties", 0, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail << " [over time limit " << c.limit_seconds << " s]";
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " ("
              << std::fixed << std::setprecision(2) << secs << " s) " << std::defaultfloat << o.detail.str()
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
