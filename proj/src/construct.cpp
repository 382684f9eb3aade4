#include "netcomp/construct.hpp"

#include <bit>
#include <functional>
#include <random>

#include "netcomp/error.hpp"

namespace netcomp {

namespace {

std::vector<Label> identity_map(const Algebra& alg) {
  std::vector<Label> m;
  for (Element x = 0; x < alg.size(); ++x) m.push_back(x);
  return m;
}

// Total or partial table over all keys of `input_len` symbols.
SymbolTable build_table(std::uint32_t q, std::size_t input_len, std::size_t output_len,
                        const std::function<std::optional<std::vector<Label>>(
                            const std::vector<Element>&)>& fn) {
  SymbolTable t;
  t.input_len = input_len;
  t.output_len = output_len;
  const std::uint64_t keys = saturating_pow(q, input_len);
  std::vector<Element> in(input_len);
  for (std::uint64_t key = 0; key < keys; ++key) {
    std::uint64_t rest = key;
    for (std::size_t i = input_len; i-- > 0;) {
      in[i] = static_cast<Element>(rest % q);
      rest /= q;
    }
    if (auto out = fn(in)) t.rows.emplace(key, std::move(*out));
  }
  return t;
}

// Symbols of GF(q^n) as n-vectors over GF(q); n = 1 leaves them unchanged.
Matrix scalar_matrix(const Algebra& ext, unsigned n, Element b) {
  return n == 1 ? Matrix(1, 1, {b}) : multiplication_matrix(ext, b);
}

Matrix block_matrix(const Algebra& ext, unsigned n, std::size_t block_rows, std::size_t block_cols,
                    const std::function<Element(std::size_t, std::size_t)>& entry) {
  Matrix out(block_rows * n, block_cols * n);
  for (std::size_t bi = 0; bi < block_rows; ++bi)
    for (std::size_t bj = 0; bj < block_cols; ++bj) {
      const Matrix m = scalar_matrix(ext, n, entry(bi, bj));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(bi * n + r, bj * n + c) = m(r, c);
    }
  return out;
}

}  // namespace

Matrix multiplication_matrix(const Algebra& ext, Element b) {
  if (ext.kind() != AlgebraKind::ExtensionField) return Matrix(1, 1, {b});
  const std::size_t n = ext.degree();
  Matrix m(n, n);
  std::vector<Element> unit(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(unit.begin(), unit.end(), 0);
    unit[i] = 1;
    const auto digits = ext.decompose(ext.mul(ext.compose(unit), b));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = digits[j];
  }
  return m;
}

KMResult km_construct(const Network& net, const Algebra& field, const std::vector<Element>& coeffs,
                      const KMOptions& opts) {
  if (!field.is_field()) throw InvalidArgument("construction needs a field, got " + field.spec());
  const std::size_t s = net.source_count();
  if (coeffs.size() != s)
    throw InvalidArgument("expected " + std::to_string(s) + " coefficients, got " +
                          std::to_string(coeffs.size()));
  for (std::size_t i = 0; i < s; ++i) {
    if (!field.contains(coeffs[i])) throw InvalidArgument("coefficient out of range");
    if (coeffs[i] == 0)
      throw InvalidArgument("coefficient a" + std::to_string(i + 1) +
                            " is zero; the target must depend on every source");
  }
  const std::size_t c = min_cut_size(net);
  for (std::size_t i = 0; i < s; ++i)
    if (max_flow(net, SourceSet{1} << i).value < c)
      throw Error("internal: source " + std::to_string(i + 1) + " has min cut below " +
                  std::to_string(c));

  const std::size_t m = net.edge_count();
  const NodeId rho = net.receiver();
  std::mt19937_64 rng(opts.seed);
  KMResult res;
  res.seed = opts.seed;

  for (unsigned deg = 1; deg <= opts.max_degree; ++deg) {
    if (saturating_pow(field.size(), deg) > Algebra::kMaxSize) break;
    const Algebra ext = deg == 1 ? field : Algebra::extension(field, deg);
    auto draw = [&] { return static_cast<Element>(rng() % ext.size()); };
    for (unsigned attempt = 0; attempt < opts.draws_per_degree; ++attempt) {
      ++res.draws;
      KMSystem sys;
      sys.ext = ext;
      sys.c = c;
      for (std::size_t t = 0; t < s; ++t) {
        Matrix a(c, m);
        for (std::size_t i = 0; i < c; ++i)
          for (EdgeId e : net.out_edges(net.source(t))) a(i, e) = draw();
        sys.source_matrices.push_back(std::move(a));
      }
      sys.adjacency = Matrix(m, m);
      for (EdgeId i = 0; i < m; ++i)
        for (EdgeId j = 0; j < m; ++j)
          if (net.edge(i).head == net.edge(j).tail) sys.adjacency(i, j) = draw();
      sys.receiver_matrix = Matrix(c, m);
      for (std::size_t i = 0; i < c; ++i)
        for (EdgeId e : net.in_edges(rho)) sys.receiver_matrix(i, e) = draw();

      Matrix i_minus_f = Matrix::identity(ext, m);
      for (std::size_t k = 0; k < m * m; ++k)
        i_minus_f.entries[k] = ext.sub(i_minus_f.entries[k], sys.adjacency.entries[k]);
      const auto inv = mat_inverse(ext, i_minus_f);
      if (!inv) throw Error("internal: I - F is singular");
      const Matrix through = mat_mul(ext, *inv, sys.receiver_matrix.transpose());
      bool all_invertible = true;
      for (std::size_t t = 0; t < s; ++t) {
        sys.transfer.push_back(mat_mul(ext, sys.source_matrices[t], through));
        sys.determinants.push_back(mat_det(ext, sys.transfer.back()));
        all_invertible &= sys.determinants.back() != 0;
      }
      if (!all_invertible) continue;

      // Scaled source matrices a_t M_t^-1 A_t.
      std::vector<Matrix> scaled;
      for (std::size_t t = 0; t < s; ++t) {
        const Matrix mi = *mat_inverse(ext, sys.transfer[t]);
        scaled.push_back(mat_scale(ext, coeffs[t], mat_mul(ext, mi, sys.source_matrices[t])));
      }

      NetworkCode code;
      code.alg = field;
      code.n = deg;
      code.k = c * deg;
      for (EdgeId e = 0; e < m; ++e) {
        const NodeId v = net.edge(e).tail;
        LinearEncoder l;
        for (EdgeId in : net.in_edges(v))
          l.terms.emplace_back(in, scalar_matrix(ext, deg, sys.adjacency(in, e)));
        if (auto t = net.source_index(v))
          l.message = block_matrix(ext, deg, c, 1, [&](std::size_t i, std::size_t) { return scaled[*t](i, e); });
        code.encoders.emplace_back(std::move(l));
      }
      LinearDecoder dec;
      for (EdgeId e : net.in_edges(rho))
        dec.terms.emplace_back(
            e, block_matrix(ext, deg, 1, c, [&](std::size_t, std::size_t j) { return sys.receiver_matrix(j, e); }));
      dec.value_map = identity_map(field);
      code.decoder = std::move(dec);
      validate_code(net, code);

      res.degree = deg;
      res.system = std::move(sys);
      res.code = std::move(code);
      try {
        for (const Cut& cut : enumerate_cuts(net))
          if (cut.separated != 0 && cut.size() == c) {
            res.min_cut = cut;
            break;
          }
      } catch (const BudgetExceeded&) {
      }

      std::vector<Label> values;
      const std::uint64_t inputs = saturating_pow(field.size(), s);
      std::vector<Element> x(s);
      for (std::uint64_t idx = 0; idx < inputs; ++idx) {
        std::uint64_t rest = idx;
        Element sum = 0;
        for (std::size_t i = s; i-- > 0;) {
          x[i] = static_cast<Element>(rest % field.size());
          rest /= field.size();
          sum = field.add(sum, field.mul(coeffs[i], x[i]));
        }
        values.push_back(sum);
      }
      const TargetFunction f(field, static_cast<unsigned>(s), std::move(values), "linear");
      const std::uint64_t assignments = saturating_pow(field.size(), res.code.k * s);
      res.exhaustive = assignments <= opts.exhaustive_limit;
      res.verification = res.exhaustive
                             ? verify_code(net, res.code, f, opts.exhaustive_limit)
                             : verify_random(net, res.code, f, opts.random_checks, opts.seed);
      if (!res.verification.verified) throw Error("internal: constructed code failed verification");
      return res;
    }
  }
  throw Error("no invertible transfer matrices after " + std::to_string(res.draws) +
              " draws; retry with a different --seed");
}

NetworkCode relay_reduction_code(const Network& net, const TargetFunction& f,
                                 const ReductionWitness& witness) {
  const std::size_t s = net.source_count();
  if (f.arity() != s) throw InvalidArgument("function arity does not match the network");
  if (!check_witness(f, witness)) throw InvalidArgument("reduction witness does not reproduce f");
  const std::size_t lambda = witness.lambda;
  if (net.edge_count() != s + 1) throw InvalidArgument("relay code needs a relay network");
  NodeId relay = 0;
  for (std::size_t i = 0; i < s; ++i) {
    const auto& out = net.out_edges(net.source(i));
    if (out.size() != 1) throw InvalidArgument("relay code needs a relay network");
    relay = net.edge(out[0]).head;
  }
  const auto& relay_out = net.out_edges(relay);
  if (relay_out.size() != 1 || net.edge(relay_out[0]).head != net.receiver() ||
      net.in_edges(relay).size() != s)
    throw InvalidArgument("relay code needs a relay network");

  const Algebra& alg = f.domain();
  NetworkCode code;
  code.alg = alg;
  code.k = 1;
  code.n = lambda;
  code.encoders.resize(net.edge_count());
  LinearEncoder mix;
  for (EdgeId e : net.in_edges(relay)) {
    const std::size_t i = *net.source_index(net.edge(e).tail);
    RoutingEncoder fwd;
    fwd.selectors.push_back({Selector::Kind::Message, 0, 0});
    fwd.selectors.resize(lambda);
    code.encoders[e] = fwd;
    Matrix g(lambda, lambda);
    for (std::size_t j = 0; j < lambda; ++j) g(0, j) = witness.T(i, j);
    mix.terms.emplace_back(e, std::move(g));
  }
  code.encoders[relay_out[0]] = std::move(mix);
  TableDecoder dec;
  dec.table.input_len = lambda;
  dec.table.output_len = 1;
  for (std::uint64_t key = 0; key < witness.g.input_count(); ++key)
    dec.table.rows.emplace(key, std::vector<Label>{witness.g.value(key)});
  code.decoder = std::move(dec);
  validate_code(net, code);
  return code;
}

NetworkCode butterfly_mod_code(std::uint32_t q) {
  if (q < 2) throw InvalidArgument("q must be at least 2");
  const Algebra alg = Algebra::integers_mod(q);
  const Element minus = static_cast<Element>(q - 1);
  auto col = [](Element a, Element b) { return Matrix(2, 1, {a, b}); };
  auto one = [] { return Matrix(1, 1, {1}); };
  NetworkCode code;
  code.alg = alg;
  code.k = 2;
  code.n = 1;
  code.encoders.resize(9);
  code.encoders[0] = LinearEncoder{{}, col(0, 1)};
  code.encoders[1] = LinearEncoder{{}, col(1, 1)};
  code.encoders[2] = LinearEncoder{{}, col(0, 1)};
  code.encoders[3] = LinearEncoder{{}, col(1, 0)};
  code.encoders[4] = LinearEncoder{{{1, one()}, {3, one()}}, std::nullopt};
  code.encoders[5] = LinearEncoder{{{4, one()}}, std::nullopt};
  code.encoders[6] = LinearEncoder{{{4, one()}}, std::nullopt};
  code.encoders[7] = LinearEncoder{{{0, Matrix(1, 1, {minus})}, {5, one()}}, std::nullopt};
  code.encoders[8] = LinearEncoder{{{2, one()}, {6, one()}}, std::nullopt};
  LinearDecoder dec;
  dec.terms.emplace_back(7, Matrix(1, 2, {1, minus}));
  dec.terms.emplace_back(8, Matrix(1, 2, {0, 1}));
  dec.value_map = identity_map(alg);
  code.decoder = std::move(dec);
  validate_code(builtin_network("rbf"), code);
  return code;
}

std::size_t butterfly_arith_length(std::uint32_t q, std::size_t n) {
  if (q < 2 || n == 0) throw InvalidArgument("need q >= 2 and n >= 1");
  const std::uint64_t target = saturating_pow(2 * q - 1, n);
  if (target == UINT64_MAX) throw InvalidArgument("n too large");
  std::size_t len = 0;
  for (std::uint64_t p = 1; p < target; p = saturating_mul(p, q)) ++len;
  return len;
}

NetworkCode butterfly_arith_code(std::uint32_t q, std::size_t n) {
  const std::size_t len = butterfly_arith_length(q, n);
  const std::uint32_t r = 2 * q - 1;
  const std::uint64_t image = saturating_pow(r, n);

  // Radix re-encoding between Z_r^n and A^len, first digit most significant.
  auto to_value = [](std::span<const Element> digits, std::uint64_t radix) {
    std::uint64_t v = 0;
    for (Element d : digits) v = v * radix + d;
    return v;
  };
  auto to_digits = [](std::uint64_t v, std::uint64_t radix, std::size_t count) {
    std::vector<Element> d(count);
    for (std::size_t i = count; i-- > 0;) {
      d[i] = static_cast<Element>(v % radix);
      v /= radix;
    }
    return d;
  };
  auto g = [&](const std::vector<Element>& hat) {
    const auto d = to_digits(to_value(hat, r), q, len);
    return std::vector<Label>(d.begin(), d.end());
  };
  auto g_inv = [&](std::span<const Element> sym) -> std::optional<std::vector<Element>> {
    const std::uint64_t v = to_value(sym, q);
    if (v >= image) return std::nullopt;
    return to_digits(v, r, n);
  };
  auto combine = [&](const std::vector<Element>& a, const std::vector<Element>& b, bool minus) {
    std::vector<Element> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Element>((a[i] + (minus ? r - b[i] : b[i])) % r);
    return out;
  };
  using Row = std::optional<std::vector<Label>>;
  auto half = [n](const std::vector<Element>& in, std::size_t h) {
    return std::vector<Element>(in.begin() + h * n, in.begin() + (h + 1) * n);
  };
  auto part = [len](const std::vector<Element>& in, std::size_t i) {
    return std::span<const Element>(in.data() + i * len, len);
  };

  NetworkCode code;
  code.alg = Algebra::integers_mod(q);
  code.k = 2 * n;
  code.n = len;
  code.encoders.resize(9);
  auto table = [&](std::size_t input_len, auto fn) {
    TableEncoder t;
    t.table = build_table(q, input_len, len, fn);
    return t;
  };
  // Source edges: e0/e2 carry the second half, e1 the sum of halves, e3 the first half.
  code.encoders[0] = table(2 * n, [&](const std::vector<Element>& x) -> Row { return g(half(x, 1)); });
  code.encoders[1] = table(2 * n, [&](const std::vector<Element>& x) -> Row {
    return g(combine(half(x, 0), half(x, 1), false));
  });
  code.encoders[2] = code.encoders[0];
  code.encoders[3] = table(2 * n, [&](const std::vector<Element>& x) -> Row { return g(half(x, 0)); });
  code.encoders[4] = table(2 * len, [&](const std::vector<Element>& z) -> Row {
    auto a = g_inv(part(z, 0)), b = g_inv(part(z, 1));
    if (!a || !b) return std::nullopt;
    return g(combine(*a, *b, false));
  });
  RoutingEncoder copy;
  for (std::size_t j = 0; j < len; ++j) copy.selectors.push_back({Selector::Kind::InEdge, 4, j});
  code.encoders[5] = copy;
  code.encoders[6] = copy;
  // Node a: in-edges e0 then e5.
  code.encoders[7] = table(2 * len, [&](const std::vector<Element>& z) -> Row {
    auto a = g_inv(part(z, 0)), b = g_inv(part(z, 1));
    if (!a || !b) return std::nullopt;
    return g(combine(*b, *a, true));
  });
  // Node b: in-edges e2 then e6.
  code.encoders[8] = code.encoders[4];

  TableDecoder dec;
  dec.table = build_table(q, 2 * len, 2 * n, [&](const std::vector<Element>& z) -> Row {
    auto first = g_inv(part(z, 0)), both = g_inv(part(z, 1));
    std::vector<Label> out(2 * n, 0);
    if (!first || !both) return out;
    const auto second = combine(*both, *first, true);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = (*first)[i];
      out[n + i] = second[i];
    }
    return out;
  });
  code.decoder = std::move(dec);
  validate_code(builtin_network("rbf"), code);
  return code;
}

LogRatio butterfly_capacity(std::uint32_t q) {
  if (q < 2) throw InvalidArgument("q must be at least 2");
  return LogRatio{Rational(2), q, 2ull * q - 1};
}

}  // namespace netcomp
