#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "netcomp/code.hpp"
#include "netcomp/error.hpp"

using namespace netcomp;

namespace {

const std::string kCorpus = NETCOMP_CORPUS_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TargetFunction sum12_times_x3(const Algebra& alg) {
  return TargetFunction::tabulate(alg, 3, [&alg](std::span<const Element> x) {
    return static_cast<Label>(alg.mul(alg.add(x[0], x[1]), x[2]));
  });
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("netcomp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("corpus codes evaluate and verify") {
  const Algebra z2 = build_algebra("zmod:2");
  const Network rbf = load_network(kCorpus + "/networks/reverse_butterfly.net");
  const NetworkCode bfly = load_code(kCorpus + "/codes/butterfly_mod2.code", rbf, z2);
  CHECK(rate(bfly) == Rational(2));
  const auto ev = evaluate(rbf, bfly, {{1, 0}, {1, 1}});
  CHECK(ev.output == std::vector<Label>{0, 1});
  CHECK(evaluate(rbf, bfly, {{1, 1}, {1, 0}}).output == std::vector<Label>{0, 1});
  CHECK(verify_code(rbf, bfly, make_builtin("mod-sum:2", z2, 2)).verified);

  const Algebra gf2 = build_algebra("field:2");
  const Network relay3 = load_network(kCorpus + "/networks/relay_s3.net");
  const NetworkCode chain = load_code(kCorpus + "/codes/chain_relay.code", relay3, gf2);
  CHECK(rate(chain) == Rational(1, 2));
  const auto chain_ev = evaluate(relay3, chain, {{1}, {1}, {1}});
  CHECK(chain_ev.edges[3] == std::vector<Element>{0, 1});
  CHECK(chain_ev.output == std::vector<Label>{0});
  CHECK(verify_code(relay3, chain, sum12_times_x3(gf2)).verified);
  CHECK(verify_code(relay3, chain, load_function_table(kCorpus + "/functions/sum12_times_x3.tbl", gf2))
            .verified);

  const Algebra p = build_algebra("product:zmod:2,zmod:2");
  const Network line = load_network(kCorpus + "/networks/line.net");
  const NetworkCode lz = load_code(kCorpus + "/codes/line_z2xz2.code", line, p);
  CHECK(rate(lz) == Rational(1));
  CHECK(verify_code(line, lz, make_builtin("paper-f4", p, 2)).verified);
  CHECK(verify_code(line, lz, load_function_table(kCorpus + "/functions/f4_table.tbl", p)).verified);
}

TEST_CASE("corpus codes round-trip byte-identically") {
  struct Case {
    const char* net;
    const char* code;
    const char* alg;
  };
  for (const Case& c : {Case{"reverse_butterfly.net", "butterfly_mod2.code", "zmod:2"},
                        Case{"relay_s3.net", "chain_relay.code", "field:2"},
                        Case{"line.net", "line_z2xz2.code", "product:zmod:2,zmod:2"}}) {
    const Network net = load_network(kCorpus + "/networks/" + c.net);
    const NetworkCode code = load_code(kCorpus + "/codes/" + c.code, net, build_algebra(c.alg));
    const std::string text = serialize_code(net, code);
    const NetworkCode again = parse_code(text, net, build_algebra(c.alg), kCorpus + "/codes");
    CHECK(serialize_code(net, again) == text);
    // Comments aside, the shipped file is already canonical.
    std::string stripped;
    std::istringstream in(slurp(kCorpus + "/codes/" + c.code));
    for (std::string line; std::getline(in, line);)
      if (!line.starts_with("#")) stripped += line + "\n";
    CHECK(stripped == text);
  }
}

TEST_CASE("save_code writes side tables that load back") {
  const auto dir = scratch_dir("save");
  const Algebra gf2 = build_algebra("field:2");
  const Network relay3 = builtin_network("relay:3");
  NetworkCode chain = load_code(kCorpus + "/codes/chain_relay.code", relay3, gf2);
  const std::string path = (dir / "copy.code").string();
  save_code(path, relay3, chain);
  CHECK(std::filesystem::exists(dir / "copy.dec.tbl"));
  const NetworkCode back = load_code(path, relay3, gf2);
  CHECK(serialize_code(relay3, back) == serialize_code(relay3, chain));
  CHECK(verify_code(relay3, back, sum12_times_x3(gf2)).verified);
}

TEST_CASE("routing code forwarding one source fails with the first counterexample") {
  const Algebra gf2 = build_algebra("field:2");
  const Network relay2 = builtin_network("relay:2");
  const std::string text =
      "k 1\nn 1\nencoder 0 routing m.0\nencoder 1 routing z\nencoder 2 routing 0.0\n"
      "decoder table fwd.tbl\n";
  const auto dir = scratch_dir("routing");
  std::ofstream(dir / "fwd.tbl") << "0 -> 0\n1 -> 1\n";
  const NetworkCode code = parse_code(text, relay2, gf2, dir.string());
  const auto res = verify_code(relay2, code, make_builtin("arith-sum", gf2, 2));
  CHECK_FALSE(res.verified);
  REQUIRE(res.counterexample.has_value());
  CHECK(res.counterexample->messages == MessageAssignment{{0}, {1}});
  CHECK(res.counterexample->expected == std::vector<Label>{1});
  CHECK(res.counterexample->output == std::vector<Label>{0});
  CHECK(format_messages(res.counterexample->messages) == "0;1");
}

TEST_CASE("malformed code files are rejected") {
  const Algebra gf2 = build_algebra("field:2");
  const Network relay2 = builtin_network("relay:2");
  const auto dir = scratch_dir("bad").string();
  std::ofstream(dir + "/partial.tbl") << "0 -> 0\n";
  std::ofstream(dir + "/ok.tbl") << "0 -> 0\n1 -> 1\n";
  const std::string head = "k 1\nn 1\nencoder 0 linear msg:1\nencoder 1 linear msg:1\n";
  CHECK_NOTHROW(parse_code(head + "encoder 2 linear 0:1 1:1\ndecoder table ok.tbl\n", relay2, gf2, dir));
  CHECK_THROWS_AS(parse_code(head + "encoder 2 linear 0:1 1:1\ndecoder table partial.tbl\n", relay2, gf2, dir),
                  ParseError);
  CHECK_THROWS_AS(parse_code(head + "encoder 2 linear 0:1 1\ndecoder table ok.tbl\n", relay2, gf2, dir),
                  ParseError);
  CHECK_THROWS_AS(parse_code(head + "encoder 2 linear 0:2\ndecoder table ok.tbl\n", relay2, gf2, dir),
                  ParseError);
  CHECK_THROWS_AS(parse_code(head + "encoder 7 linear 0:1\ndecoder table ok.tbl\n", relay2, gf2, dir),
                  ParseError);
  CHECK_THROWS_AS(parse_code(head + "decoder table ok.tbl\n", relay2, gf2, dir), ParseError);
  CHECK_THROWS_AS(parse_code(head + "encoder 2 linear 2:1\ndecoder table ok.tbl\n", relay2, gf2, dir),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_code(head + "encoder 2 linear msg:1\ndecoder table ok.tbl\n", relay2, gf2, dir),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_code(head + "encoder 2 routing m.0\ndecoder table ok.tbl\n", relay2, gf2, dir),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_code(head + "encoder 2 routing 0.1\ndecoder table ok.tbl\n", relay2, gf2, dir),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_code(head + "encoder 2 table missing.tbl\ndecoder table ok.tbl\n", relay2, gf2, dir),
                  ParseError);
  CHECK_THROWS_AS(parse_code("n 1\nk 1\nk 2\n", relay2, gf2, dir), ParseError);
}

TEST_CASE("partial table encoders fail only on reachable gaps") {
  const Algebra gf2 = build_algebra("field:2");
  const Network line = builtin_network("line");
  const auto dir = scratch_dir("partial").string();
  std::ofstream(dir + "/e1.tbl") << "0 0 -> 0\n0 1 -> 1\n1 0 -> 1\n";
  std::ofstream(dir + "/dec.tbl") << "0 -> 0\n1 -> 1\n";
  const NetworkCode code = parse_code(
      "k 1\nn 1\nencoder 0 routing m.0\nencoder 1 table e1.tbl\ndecoder table dec.tbl\n", line, gf2, dir);
  CHECK(evaluate(line, code, {{1}, {0}}).output == std::vector<Label>{1});
  CHECK_THROWS_AS(evaluate(line, code, {{1}, {1}}), InvalidArgument);
  CHECK_THROWS_AS(verify_code(line, code, make_builtin("mod-sum:2", gf2, 2)), InvalidArgument);
}

TEST_CASE("linear superposition on corpus codes") {
  const Algebra z2 = build_algebra("zmod:2");
  const Network rbf = builtin_network("rbf");
  const NetworkCode bfly = load_code(kCorpus + "/codes/butterfly_mod2.code", rbf, z2);
  const Algebra p = build_algebra("product:zmod:2,zmod:2");
  const Network line = builtin_network("line");
  const NetworkCode lz = load_code(kCorpus + "/codes/line_z2xz2.code", line, p);

  auto check = [](const Network& net, const NetworkCode& code) {
    const Algebra& alg = code.alg;
    const std::size_t s = net.source_count();
    const std::uint64_t total = saturating_pow(alg.size(), s * code.k);
    auto assignment = [&](std::uint64_t idx) {
      MessageAssignment m(s, std::vector<Element>(code.k));
      for (std::size_t i = s; i-- > 0;)
        for (std::size_t j = code.k; j-- > 0;) {
          m[i][j] = static_cast<Element>(idx % alg.size());
          idx /= alg.size();
        }
      return m;
    };
    for (std::uint64_t a = 0; a < total; ++a)
      for (std::uint64_t b = 0; b < total; ++b) {
        const auto ma = assignment(a), mb = assignment(b);
        MessageAssignment sum = ma;
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = 0; j < code.k; ++j) sum[i][j] = alg.add(ma[i][j], mb[i][j]);
        const auto ea = evaluate(net, code, ma), eb = evaluate(net, code, mb), es = evaluate(net, code, sum);
        for (EdgeId e = 0; e < net.edge_count(); ++e)
          for (std::size_t j = 0; j < code.n; ++j)
            REQUIRE(es.edges[e][j] == alg.add(ea.edges[e][j], eb.edges[e][j]));
      }
  };
  check(rbf, bfly);
  check(line, lz);

  const auto zero = evaluate(rbf, bfly, {{0, 0}, {0, 0}});
  for (const auto& z : zero.edges) CHECK(z == std::vector<Element>{0});
}

TEST_CASE("verified codes pass random re-checks") {
  const Algebra gf2 = build_algebra("field:2");
  const Network relay3 = builtin_network("relay:3");
  const NetworkCode chain = load_code(kCorpus + "/codes/chain_relay.code", relay3, gf2);
  const auto f = sum12_times_x3(gf2);
  REQUIRE(verify_code(relay3, chain, f).verified);
  CHECK(verify_random(relay3, chain, f, 1000, 1).verified);
}

TEST_CASE("a routing code for the identity serves every target of the same arity") {
  const Algebra gf3 = build_algebra("field:3");
  const Network direct = builtin_network("direct");
  const auto dir = scratch_dir("identity").string();
  const auto ident = make_builtin("identity", gf3, 2);
  {
    std::ofstream out(dir + "/id.tbl");
    for (Element a = 0; a < 3; ++a)
      for (Element b = 0; b < 3; ++b) out << a << ' ' << b << " -> " << ident(std::vector<Element>{a, b}) << "\n";
  }
  const NetworkCode route = parse_code(
      "k 1\nn 1\nencoder 0 routing m.0\nencoder 1 routing m.0\ndecoder table id.tbl\n", direct, gf3, dir);
  REQUIRE(verify_code(direct, route, ident).verified);

  for (const char* name : {"arith-sum", "max", "mod-sum:3", "linear:1,2"}) {
    const auto f = make_builtin(name, gf3, 2);
    // Re-label the decoder through f: decode the pair, then apply f.
    NetworkCode composed = route;
    auto& table = std::get<TableDecoder>(composed.decoder).table;
    for (auto& [key, out] : table.rows) out = {f.value(static_cast<std::uint64_t>(out[0]))};
    CHECK(verify_code(direct, composed, f).verified);
  }
}

TEST_CASE("rate and budget") {
  NetworkCode c;
  c.k = 10;
  c.n = 8;
  CHECK(rate(c) == Rational(5, 4));
  c.k = 2;
  c.n = 1;
  CHECK(rate(c) == Rational(2));

  const Algebra z2 = build_algebra("zmod:2");
  const Network rbf = builtin_network("rbf");
  const NetworkCode bfly = load_code(kCorpus + "/codes/butterfly_mod2.code", rbf, z2);
  CHECK_THROWS_AS(verify_code(rbf, bfly, make_builtin("mod-sum:2", z2, 2), 8), BudgetExceeded);
  CHECK_THROWS_AS(verify_code(rbf, bfly, make_builtin("mod-sum:2", build_algebra("field:2"), 2)),
                  InvalidArgument);
}
