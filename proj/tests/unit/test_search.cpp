#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netcomp/error.hpp"
#include "netcomp/search.hpp"

using namespace netcomp;

namespace {

TargetFunction sum12_times_x3(const Algebra& alg) {
  return TargetFunction::tabulate(alg, 3, [&alg](std::span<const Element> x) {
    return static_cast<Label>(alg.mul(alg.add(x[0], x[1]), x[2]));
  });
}

// Oracle for (1,1) linear codes on the line network: rho sees
// x1 * h0 * g + x2 * h1, so a code exists iff some (m1, m2) pair has no
// collision with different f values.
bool line_linear_exists(const TargetFunction& f) {
  const Algebra& alg = f.domain();
  const Element q = alg.size();
  for (Element m1 = 0; m1 < q; ++m1)
    for (Element m2 = 0; m2 < q; ++m2) {
      std::vector<Label> seen(q, -1);
      bool ok = true;
      for (Element a = 0; a < q && ok; ++a)
        for (Element b = 0; b < q && ok; ++b) {
          const Element z = alg.add(alg.mul(a, m1), alg.mul(b, m2));
          const Label v = f(std::vector<Element>{a, b});
          if (seen[z] == -1) seen[z] = v;
          ok = seen[z] == v;
        }
      if (ok) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("linear search on the line network") {
  const Network line = builtin_network("line");
  const Algebra z4 = build_algebra("zmod:4");
  const auto none = search_linear(line, make_builtin("paper-f4", z4, 2), 1, 1);
  CHECK(none.status == SearchStatus::None);
  CHECK(none.candidates == 64);
  CHECK_FALSE(none.code.has_value());

  const Algebra p = build_algebra("product:zmod:2,zmod:2");
  const auto f = make_builtin("paper-f4", p, 2);
  const auto found = search_linear(line, f, 1, 1);
  REQUIRE(found.status == SearchStatus::Found);
  REQUIRE(found.code.has_value());
  // Only the unit (1,1) = 3 works on every edge.
  CHECK(found.candidate_index == 63);
  const auto& relay = std::get<LinearEncoder>(found.code->encoders[1]);
  CHECK(relay.message->entries == std::vector<Element>{3});
  CHECK(relay.terms.at(0).second.entries == std::vector<Element>{3});
  CHECK(verify_code(line, *found.code, f).verified);
}

TEST_CASE("linear search agrees with the direct oracle") {
  const Network line = builtin_network("line");
  for (const char* spec : {"zmod:4", "product:zmod:2,zmod:2", "field:4", "field:3", "zmod:6"}) {
    const Algebra alg = build_algebra(spec);
    for (const char* fn : {"arith-sum", "max", "mod-sum:2", "identity"}) {
      const auto f = make_builtin(fn, alg, 2);
      const auto r = search_linear(line, f, 1, 1);
      CAPTURE(spec);
      CAPTURE(fn);
      CHECK((r.status == SearchStatus::Found) == line_linear_exists(f));
    }
  }
}

TEST_CASE("relay network searches") {
  const Algebra gf2 = build_algebra("field:2");
  const Network relay3 = builtin_network("relay:3");
  const auto f = sum12_times_x3(gf2);
  CHECK(search_linear(relay3, f, 1, 1).status == SearchStatus::None);
  const auto general = search_general(relay3, f, 1, 1);
  REQUIRE(general.status == SearchStatus::Found);
  CHECK(verify_code(relay3, *general.code, f).verified);
  CHECK(rate(*general.code) == Rational(1));

  const auto lin12 = search_linear(relay3, f, 1, 2);
  REQUIRE(lin12.status == SearchStatus::Found);
  CHECK(rate(*lin12.code) == Rational(1, 2));

  const Network relay2 = builtin_network("relay:2");
  CHECK(search_general(relay2, make_builtin("max", gf2, 2), 1, 1).status == SearchStatus::Found);
  CHECK(search_general(relay2, make_builtin("arith-sum", gf2, 2), 1, 1).status == SearchStatus::None);
  CHECK(search_linear(relay2, make_builtin("mod-sum:2", gf2, 2), 1, 1).status == SearchStatus::Found);
}

TEST_CASE("results do not depend on the number of jobs") {
  const Network line = builtin_network("line");
  const Algebra p = build_algebra("product:zmod:2,zmod:2");
  const auto f = make_builtin("paper-f4", p, 2);
  const auto one = search_linear(line, f, 2, 2, {.budget = kDefaultSearchBudget, .jobs = 1});
  const auto four = search_linear(line, f, 2, 2, {.budget = kDefaultSearchBudget, .jobs = 4});
  REQUIRE(one.status == SearchStatus::Found);
  CHECK(four.status == SearchStatus::Found);
  CHECK(one.candidate_index == four.candidate_index);
  CHECK(one.evaluations == four.evaluations);
  CHECK(serialize_code(line, *one.code) == serialize_code(line, *four.code));

  const Algebra gf2 = build_algebra("field:2");
  const Network relay3 = builtin_network("relay:3");
  const auto g = sum12_times_x3(gf2);
  for (std::uint64_t budget : {100ull, 5000ull, 20000ull, 50000ull}) {
    const auto a = search_general(relay3, g, 1, 1, {.budget = budget, .jobs = 1});
    const auto b = search_general(relay3, g, 1, 1, {.budget = budget, .jobs = 3});
    CAPTURE(budget);
    CHECK(a.status == b.status);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.remaining == b.remaining);
    CHECK(a.candidate_index == b.candidate_index);
  }
}

TEST_CASE("budget handling") {
  const Network line = builtin_network("line");
  const Algebra z4 = build_algebra("zmod:4");
  const auto f = make_builtin("paper-f4", z4, 2);
  const auto small = search_linear(line, f, 1, 1, {.budget = 10});
  CHECK(small.status == SearchStatus::BudgetExceeded);
  CHECK(small.remaining == 64);
  const auto mid = search_linear(line, f, 1, 1, {.budget = 100});
  CHECK(mid.status == SearchStatus::BudgetExceeded);
  CHECK(mid.evaluations <= 100);
  CHECK(search_general(builtin_network("rbf"), make_builtin("arith-sum", z4, 2), 2, 2).status ==
        SearchStatus::BudgetExceeded);
  CHECK_THROWS_AS(search_linear(line, make_builtin("identity", z4, 3), 1, 1), InvalidArgument);
}

TEST_CASE("achievability sweep") {
  const Network line = builtin_network("line");
  const Algebra p = build_algebra("product:zmod:2,zmod:2");
  const auto rep = achievability_sweep(line, make_builtin("paper-f4", p, 2), {{1, 1}});
  REQUIRE(rep.cells.size() == 1);
  CHECK(rep.cells[0].linear.status == SearchStatus::Found);
  CHECK(rep.cells[0].general.status == SearchStatus::BudgetExceeded);
  CHECK(rep.bounds.routing_capacity == Rational(1, 2));

  const Algebra gf2 = build_algebra("field:2");
  const auto chain = achievability_sweep(builtin_network("relay:3"), sum12_times_x3(gf2), {{1, 2}});
  CHECK(chain.cells[0].linear.status == SearchStatus::Found);
  CHECK(to_string(SearchStatus::None) == "exhausted-none");
}
