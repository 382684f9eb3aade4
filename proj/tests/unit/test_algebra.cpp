#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "netcomp/algebra.hpp"
#include "netcomp/error.hpp"
#include "netcomp/matrix.hpp"

using namespace netcomp;

TEST_CASE("build_algebra parses the three spec forms") {
  const Algebra z4 = build_algebra("zmod:4");
  CHECK(z4.size() == 4);
  CHECK(z4.kind() == AlgebraKind::IntegerMod);
  CHECK_FALSE(z4.is_field());

  const Algebra p = build_algebra("product:zmod:2,zmod:2");
  CHECK(p.size() == 4);
  CHECK(p.decompose(0) == std::vector<Element>{0, 0});
  CHECK(p.decompose(1) == std::vector<Element>{0, 1});
  CHECK(p.decompose(2) == std::vector<Element>{1, 0});
  CHECK(p.decompose(3) == std::vector<Element>{1, 1});
  CHECK(p.spec() == "product:zmod:2,zmod:2");

  const Algebra gf4 = build_algebra("field:4");
  CHECK(gf4.kind() == AlgebraKind::ExtensionField);
  CHECK(gf4.polynomial() == std::vector<Element>{1, 1, 1});
  CHECK(gf4.spec() == "field:4");

  CHECK(build_algebra("field:8").polynomial() == std::vector<Element>{1, 1, 0, 1});
  CHECK(build_algebra("field:9").polynomial() == std::vector<Element>{1, 0, 1});
  CHECK(build_algebra("field:7").kind() == AlgebraKind::PrimeField);
  CHECK(build_algebra("product:zmod:2,product:zmod:3,zmod:2").size() == 12);
}

TEST_CASE("build_algebra rejects bad specs") {
  CHECK_THROWS_AS(build_algebra("field:6"), InvalidArgument);
  CHECK_THROWS_AS(build_algebra("field:1"), InvalidArgument);
  CHECK_THROWS_AS(build_algebra("zmod:1"), InvalidArgument);
  CHECK_THROWS_AS(build_algebra("zmod:"), ParseError);
  CHECK_THROWS_AS(build_algebra("ring:4"), ParseError);
  CHECK_THROWS_AS(build_algebra("zmod: 4"), ParseError);
  CHECK_THROWS_AS(build_algebra("field:131072"), InvalidArgument);
}

TEST_CASE("ring_op and unit_inverse examples") {
  const Algebra z4 = build_algebra("zmod:4");
  CHECK(ring_op(z4, RingOp::Mul, 3, 3) == 1);
  CHECK(ring_op(z4, RingOp::Neg, 1) == 3);
  CHECK(unit_inverse(z4, 3) == Element{3});
  CHECK_FALSE(unit_inverse(z4, 2).has_value());
  CHECK_THROWS_AS(ring_op(z4, RingOp::Add, 4, 0), InvalidArgument);

  const Algebra p = build_algebra("product:zmod:2,zmod:2");
  CHECK(ring_op(p, RingOp::Add, 3, 3) == 0);
  CHECK(ring_op(p, RingOp::Mul, 3, 2) == 2);

  CHECK(unit_inverse(build_algebra("field:3"), 2) == Element{2});
}

namespace {

std::vector<Algebra> small_algebras() {
  std::vector<Algebra> out;
  for (const char* s : {"field:2", "field:3", "field:4", "field:5", "field:7", "field:8",
                        "field:9", "field:11", "field:13", "field:16", "zmod:4", "zmod:6",
                        "zmod:8", "zmod:9", "zmod:12", "zmod:16", "product:zmod:2,zmod:2",
                        "product:zmod:2,zmod:3", "product:zmod:4,zmod:2",
                        "product:field:4,zmod:2", "product:zmod:2,zmod:2,zmod:2,zmod:2"})
    out.push_back(build_algebra(s));
  return out;
}

// Independent polynomial arithmetic over Z_p modulo a monic polynomial.
Element poly_mul_oracle(Element a, Element b, unsigned p, const std::vector<Element>& mod) {
  const std::size_t m = mod.size() - 1;
  std::vector<long> x(m), y(m), prod(2 * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (std::size_t d = 2 * m - 1; d >= m; --d) {
    const long lead = prod[d];
    for (std::size_t i = 0; i <= m; ++i)
      prod[d - m + i] = ((prod[d - m + i] - lead * static_cast<long>(mod[i])) % static_cast<long>(p) + p) % p;
  }
  Element r = 0;
  for (std::size_t i = m; i-- > 0;) r = r * p + static_cast<Element>(prod[i]);
  return r;
}

}  // namespace

TEST_CASE("ring axioms hold exhaustively for algebras up to size 16") {
  for (const Algebra& alg : small_algebras()) {
    CAPTURE(alg.spec());
    REQUIRE(alg.size() <= 16);
    const Element n = alg.size();
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) {
      ok &= alg.add(a, 0) == a && alg.mul(a, alg.one()) == a && alg.mul(a, 0) == 0;
      ok &= alg.add(a, alg.neg(a)) == 0;
      for (Element b = 0; b < n && ok; ++b) {
        ok &= alg.add(a, b) == alg.add(b, a) && alg.mul(a, b) == alg.mul(b, a);
        for (Element c = 0; c < n && ok; ++c) {
          ok &= alg.add(alg.add(a, b), c) == alg.add(a, alg.add(b, c));
          ok &= alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c));
          ok &= alg.mul(a, alg.add(b, c)) == alg.add(alg.mul(a, b), alg.mul(a, c));
        }
      }
    }
    CHECK(ok);
    for (Element a = 0; a < n; ++a) {
      const auto inv = alg.inverse(a);
      if (inv) CHECK(alg.mul(a, *inv) == alg.one());
      if (alg.is_field()) CHECK(inv.has_value() == (a != 0));
    }
  }
}

TEST_CASE("extension multiplication matches a direct polynomial oracle") {
  for (auto [spec, p] : {std::pair{"field:4", 2u}, {"field:8", 2u}, {"field:9", 3u}}) {
    const Algebra f = build_algebra(spec);
    for (Element a = 0; a < f.size(); ++a)
      for (Element b = 0; b < f.size(); ++b) {
        REQUIRE(f.mul(a, b) == poly_mul_oracle(a, b, p, f.polynomial()));
      }
  }
}

TEST_CASE("tower extension over a non-prime field") {
  const Algebra gf4 = build_algebra("field:4");
  const Algebra gf16 = Algebra::extension(gf4, 2u);
  CHECK(gf16.size() == 16);
  CHECK(gf16.is_field());
  for (Element a = 1; a < 16; ++a) {
    const auto inv = gf16.inverse(a);
    REQUIRE(inv.has_value());
    CHECK(gf16.mul(a, *inv) == 1);
  }
  const Algebra big = Algebra::extension(build_algebra("field:2"), 10u);
  CHECK(big.size() == 1024);
  CHECK(big.mul(big.inverse(777).value(), 777) == 1);
}

TEST_CASE("matrix examples") {
  const Algebra gf2 = build_algebra("field:2");
  const Algebra gf3 = build_algebra("field:3");
  CHECK(mat_det(gf2, Matrix(2, 2, {1, 0, 1, 1})) == 1);
  CHECK(mat_inverse(gf3, Matrix::identity(gf3, 3)) == Matrix::identity(gf3, 3));
  CHECK(mat_inverse(gf3, Matrix(2, 2, {1, 1, 0, 1})) == Matrix(2, 2, {1, 2, 0, 1}));
  CHECK_FALSE(mat_inverse(gf3, Matrix(2, 2, {1, 2, 2, 1})).has_value());

  CHECK(mat_nullspace_vector(gf2, Matrix(3, 2, {1, 0, 1, 0, 0, 1})) ==
        std::vector<Element>{1, 1, 0});
  CHECK_FALSE(mat_nullspace_vector(gf2, Matrix::identity(gf2, 3)).has_value());
  CHECK(mat_nullspace_vector(gf3, Matrix(2, 2)) == std::vector<Element>{1, 0});

  const Algebra z4 = build_algebra("zmod:4");
  CHECK_THROWS_AS(mat_det(z4, Matrix::identity(z4, 2)), InvalidArgument);
  CHECK_THROWS_AS(mat_mul(gf2, Matrix(2, 3), Matrix(2, 2)), InvalidArgument);
  CHECK_THROWS_AS(mat_det(gf2, Matrix(2, 3)), InvalidArgument);
}

TEST_CASE("matrix text format") {
  const Algebra gf3 = build_algebra("field:3");
  const Matrix m(2, 2, {1, 2, 0, 1});
  CHECK(format_matrix(m) == "1 2;0 1");
  CHECK(parse_matrix("1 2;0 1", 2, 2, gf3) == m);
  CHECK_THROWS_AS(parse_matrix("1 2;0", 2, 2, gf3), ParseError);
  CHECK_THROWS_AS(parse_matrix("1 3;0 1", 2, 2, gf3), ParseError);
  CHECK_THROWS_AS(parse_matrix("1 x;0 1", 2, 2, gf3), ParseError);
  CHECK_THROWS_AS(parse_matrix("1 2;0 1;1 1", 2, 2, gf3), ParseError);
}

TEST_CASE("random square matrices: inverse exists iff det != 0") {
  std::mt19937_64 rng(12345);
  for (const char* spec : {"field:2", "field:3", "field:4", "field:5", "field:7", "field:8", "field:9"}) {
    const Algebra f = build_algebra(spec);
    CAPTURE(spec);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + trial % 3;
      Matrix m(n, n);
      for (auto& e : m.entries) e = static_cast<Element>(rng() % f.size());
      const Element det = mat_det(f, m);
      const auto inv = mat_inverse(f, m);
      REQUIRE(inv.has_value() == (det != 0));
      if (inv) {
        CHECK(mat_mul(f, *inv, m) == Matrix::identity(f, n));
        CHECK(mat_mul(f, m, *inv) == Matrix::identity(f, n));
      }
      CHECK((mat_rank(f, m) == n) == (det != 0));
      if (auto d = mat_nullspace_vector(f, m)) {
        CHECK(det == 0);
        const auto prod = vec_mat(f, *d, m);
        CHECK(std::all_of(prod.begin(), prod.end(), [](Element e) { return e == 0; }));
      }
    }
  }
}
