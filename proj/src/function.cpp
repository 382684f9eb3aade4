#include "netcomp/function.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "netcomp/error.hpp"

namespace netcomp {

namespace {

std::uint64_t checked_input_count(const Algebra& alg, unsigned arity) {
  if (arity == 0) throw InvalidArgument("target function arity must be at least 1");
  const std::uint64_t n = saturating_pow(alg.size(), arity);
  if (n > TargetFunction::kMaxInputs)
    throw InvalidArgument("function table with " + std::to_string(alg.size()) + "^" +
                          std::to_string(arity) + " inputs exceeds 2^24 entries");
  return n;
}

// Powers |A|^(s-1-i): the weight of argument i in a packed input.
std::vector<std::uint64_t> strides(const Algebra& alg, unsigned arity) {
  std::vector<std::uint64_t> w(arity);
  std::uint64_t acc = 1;
  for (unsigned i = arity; i-- > 0;) {
    w[i] = acc;
    acc *= alg.size();
  }
  return w;
}

void check_dependence(const TargetFunction& f) {
  const std::uint64_t q = f.domain().size();
  const auto w = strides(f.domain(), f.arity());
  for (unsigned i = 0; i < f.arity(); ++i) {
    bool depends = false;
    for (std::uint64_t x = 0; x < f.input_count() && !depends; ++x) {
      if ((x / w[i]) % q != 0) continue;
      for (std::uint64_t a = 1; a < q && !depends; ++a)
        depends = f.label_index(x) != f.label_index(x + a * w[i]);
    }
    if (!depends)
      throw InvalidArgument("target function " + (f.name().empty() ? std::string("f") : f.name()) +
                            " does not depend on argument x" + std::to_string(i + 1));
  }
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("malformed " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

}  // namespace

TargetFunction::TargetFunction(Algebra domain, unsigned arity, std::vector<Label> values,
                               std::string name, bool check)
    : domain_(std::move(domain)), arity_(arity), name_(std::move(name)) {
  const std::uint64_t n = checked_input_count(domain_, arity_);
  if (values.size() != n)
    throw InvalidArgument("function table has " + std::to_string(values.size()) +
                          " entries, expected " + std::to_string(n));
  labels_ = values;
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  index_.resize(n);
  for (std::uint64_t x = 0; x < n; ++x)
    index_[x] = static_cast<std::uint32_t>(
        std::lower_bound(labels_.begin(), labels_.end(), values[x]) - labels_.begin());
  if (check) check_dependence(*this);
}

TargetFunction::TargetFunction(Algebra domain, unsigned arity, std::vector<Label> values,
                               std::string name)
    : TargetFunction(std::move(domain), arity, std::move(values), std::move(name), true) {}

TargetFunction TargetFunction::unchecked(Algebra domain, unsigned arity, std::vector<Label> values,
                                         std::string name) {
  return TargetFunction(std::move(domain), arity, std::move(values), std::move(name), false);
}

TargetFunction TargetFunction::tabulate(Algebra domain, unsigned arity,
                                        const std::function<Label(std::span<const Element>)>& fn,
                                        std::string name) {
  const std::uint64_t n = checked_input_count(domain, arity);
  std::vector<Label> values(n);
  std::vector<Element> x(arity, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    values[i] = fn(x);
    for (unsigned j = arity; j-- > 0;) {
      if (++x[j] < domain.size()) break;
      x[j] = 0;
    }
  }
  return TargetFunction(std::move(domain), arity, std::move(values), std::move(name));
}

std::uint64_t TargetFunction::pack(std::span<const Element> x) const {
  if (x.size() != arity_) throw InvalidArgument("input length does not match arity");
  std::uint64_t idx = 0;
  for (Element e : x) {
    if (!domain_.contains(e)) throw InvalidArgument("input symbol outside the domain");
    idx = idx * domain_.size() + e;
  }
  return idx;
}

std::vector<Element> TargetFunction::unpack(std::uint64_t input) const {
  std::vector<Element> x(arity_);
  for (unsigned i = arity_; i-- > 0;) {
    x[i] = static_cast<Element>(input % domain_.size());
    input /= domain_.size();
  }
  return x;
}

std::optional<std::uint32_t> TargetFunction::find_label(Label label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::uint32_t>(it - labels_.begin());
}

namespace {

// Table III of the reference construction, rows x1 = a0..a3, columns x2.
constexpr Label kF4[4][4] = {{0, 1, 1, 2}, {1, 0, 2, 1}, {1, 2, 0, 1}, {2, 1, 1, 0}};

}  // namespace

TargetFunction make_builtin(std::string_view spec, const Algebra& alg, unsigned arity) {
  const std::string name(spec);
  if (spec.starts_with("table:")) {
    TargetFunction f = load_function_table(std::string(spec.substr(6)), alg);
    if (arity != 0 && f.arity() != arity)
      throw InvalidArgument("function table has arity " + std::to_string(f.arity()) +
                            ", expected " + std::to_string(arity));
    return f;
  }
  if (arity == 0) throw InvalidArgument("function '" + name + "' needs an arity");
  if (spec == "identity") {
    const std::uint64_t n = checked_input_count(alg, arity);
    std::vector<Label> values(n);
    for (std::uint64_t i = 0; i < n; ++i) values[i] = static_cast<Label>(i);
    return TargetFunction(alg, arity, std::move(values), name);
  }
  if (spec == "arith-sum") {
    return TargetFunction::tabulate(alg, arity, [](std::span<const Element> x) {
      Label s = 0;
      for (Element e : x) s += e;
      return s;
    }, name);
  }
  if (spec == "max") {
    return TargetFunction::tabulate(alg, arity, [](std::span<const Element> x) {
      return static_cast<Label>(*std::max_element(x.begin(), x.end()));
    }, name);
  }
  if (spec.starts_with("mod-sum:")) {
    const auto r = parse_number<Label>(spec.substr(8), "modulus");
    if (r < 2) throw InvalidArgument("mod-sum modulus must be at least 2");
    return TargetFunction::tabulate(alg, arity, [r](std::span<const Element> x) {
      Label s = 0;
      for (Element e : x) s = (s + e) % r;
      return s;
    }, name);
  }
  if (spec.starts_with("linear:")) {
    std::vector<Element> coeffs;
    for (const auto& tok : split(spec.substr(7), ',')) {
      const auto c = parse_number<std::uint32_t>(tok, "coefficient");
      if (!alg.contains(c))
        throw InvalidArgument("coefficient " + tok + " is not an element of " + alg.spec());
      coeffs.push_back(c);
    }
    if (coeffs.size() != arity)
      throw InvalidArgument("linear function has " + std::to_string(coeffs.size()) +
                            " coefficients for arity " + std::to_string(arity));
    return TargetFunction::tabulate(alg, arity, [&alg, coeffs](std::span<const Element> x) {
      Element s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s = alg.add(s, alg.mul(coeffs[i], x[i]));
      return static_cast<Label>(s);
    }, name);
  }
  if (spec == "paper-f4") {
    if (arity != 2 || alg.size() != 4)
      throw InvalidArgument("paper-f4 requires arity 2 over a 4-element alphabet");
    return TargetFunction::tabulate(alg, 2, [](std::span<const Element> x) {
      return kF4[x[0]][x[1]];
    }, name);
  }
  throw ParseError("unknown function spec '" + name +
                   "' (expected identity, arith-sum, mod-sum:<r>, linear:<a1,...>, max, "
                   "paper-f4 or table:<path>)");
}

TargetFunction parse_function_table(std::string_view text, const Algebra& alg, std::string name) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<unsigned> arity;
  std::optional<std::uint64_t> domain;
  std::vector<Label> values;
  std::vector<bool> seen;
  std::uint64_t filled = 0;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("function table line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "arity" || head == "domain") {
      std::string v, extra;
      if (!(ls >> v) || (ls >> extra)) fail("expected '" + head + " <integer>'");
      if (head == "arity") {
        if (arity) fail("duplicate arity header");
        arity = parse_number<unsigned>(v, "arity");
      } else {
        if (domain) fail("duplicate domain header");
        domain = parse_number<std::uint64_t>(v, "domain size");
        if (*domain != alg.size())
          fail("domain size " + v + " does not match algebra " + alg.spec());
      }
      continue;
    }
    if (!arity || !domain) fail("entries must follow the arity and domain headers");
    if (values.empty()) {
      const std::uint64_t n = checked_input_count(alg, *arity);
      values.assign(n, 0);
      seen.assign(n, false);
    }
    std::vector<std::string> toks{head};
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.size() != *arity + 2 || toks[*arity] != "->")
      fail("expected " + std::to_string(*arity) + " inputs, '->' and a value");
    std::uint64_t idx = 0;
    for (unsigned i = 0; i < *arity; ++i) {
      const auto e = parse_number<std::uint64_t>(toks[i], "input symbol");
      if (e >= alg.size()) fail("input symbol " + toks[i] + " outside the domain");
      idx = idx * alg.size() + e;
    }
    if (seen[idx]) fail("duplicate entry for input " + line);
    seen[idx] = true;
    values[idx] = parse_number<Label>(toks[*arity + 1], "value");
    ++filled;
  }
  if (!arity || !domain) throw ParseError("function table is missing its arity or domain header");
  if (values.empty()) values.assign(checked_input_count(alg, *arity), 0);
  if (filled != values.size())
    throw ParseError("function table covers " + std::to_string(filled) + " of " +
                     std::to_string(values.size()) + " inputs");
  return TargetFunction(alg, *arity, std::move(values), std::move(name));
}

TargetFunction load_function_table(const std::string& path, const Algebra& alg) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open function table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_function_table(buf.str(), alg, "table:" + path);
}

std::string format_function_table(const TargetFunction& f) {
  std::ostringstream out;
  out << "arity " << f.arity() << "\ndomain " << f.domain().size() << "\n";
  for (std::uint64_t i = 0; i < f.input_count(); ++i) {
    for (Element e : f.unpack(i)) out << e << ' ';
    out << "-> " << f.value(i) << "\n";
  }
  return out.str();
}

bool is_injective(const TargetFunction& f) { return f.labels().size() == f.input_count(); }

std::optional<std::vector<Element>> is_semi_injective(const TargetFunction& f) {
  std::vector<std::uint64_t> count(f.labels().size(), 0);
  for (std::uint64_t x = 0; x < f.input_count(); ++x) ++count[f.label_index(x)];
  for (std::uint64_t x = 0; x < f.input_count(); ++x)
    if (count[f.label_index(x)] == 1) return f.unpack(x);
  return std::nullopt;
}

namespace {

// Packed index of x T over the ring, T an s x lambda matrix.
class RowMap {
 public:
  RowMap(const Algebra& alg, const Matrix& t) : alg_(alg), t_(t), y_(t.cols) {}

  std::uint64_t apply(std::span<const Element> x) {
    std::fill(y_.begin(), y_.end(), 0);
    for (std::size_t i = 0; i < t_.rows; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < t_.cols; ++j) y_[j] = alg_.add(y_[j], alg_.mul(x[i], t_(i, j)));
    }
    std::uint64_t idx = 0;
    for (Element e : y_) idx = idx * alg_.size() + e;
    return idx;
  }

 private:
  const Algebra& alg_;
  const Matrix& t_;
  std::vector<Element> y_;
};

void next_digits(std::vector<Element>& x, Element base) {
  for (std::size_t j = x.size(); j-- > 0;) {
    if (++x[j] < base) return;
    x[j] = 0;
  }
}

// Tabulates g on A^lambda from f and T when f is constant on the fibers of
// x -> xT; unreached points take the smallest label.
std::optional<TargetFunction> reduce_by(const TargetFunction& f, const Matrix& t) {
  const Algebra& alg = f.domain();
  const std::uint64_t m = saturating_pow(alg.size(), t.cols);
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> fiber(m, kUnset);
  RowMap map(alg, t);
  std::vector<Element> x(f.arity(), 0);
  for (std::uint64_t i = 0; i < f.input_count(); ++i, next_digits(x, alg.size())) {
    const std::uint64_t y = map.apply(x);
    const std::uint32_t v = f.label_index(i);
    if (fiber[y] == kUnset)
      fiber[y] = v;
    else if (fiber[y] != v)
      return std::nullopt;
  }
  std::vector<Label> values(m);
  for (std::uint64_t y = 0; y < m; ++y) values[y] = f.labels()[fiber[y] == kUnset ? 0 : fiber[y]];
  return TargetFunction::unchecked(alg, static_cast<unsigned>(t.cols), std::move(values), "g");
}

// f(x + a d) = f(x) for every a and x.
bool invariant_direction(const TargetFunction& f, std::span<const Element> d) {
  const Algebra& alg = f.domain();
  std::vector<Element> ad(d.size()), x(f.arity(), 0), shifted(f.arity());
  for (Element a = 1; a < alg.size(); ++a) {
    for (std::size_t i = 0; i < d.size(); ++i) ad[i] = alg.mul(a, d[i]);
    std::fill(x.begin(), x.end(), 0);
    for (std::uint64_t i = 0; i < f.input_count(); ++i, next_digits(x, alg.size())) {
      for (std::size_t j = 0; j < x.size(); ++j) shifted[j] = alg.add(x[j], ad[j]);
      if (f.label_index(i) != f.label_index(f.pack(shifted))) return false;
    }
  }
  return true;
}

std::optional<std::vector<Element>> first_direction(const TargetFunction& f) {
  std::vector<Element> d(f.arity(), 0);
  for (std::uint64_t i = 1; i < f.input_count(); ++i) {
    next_digits(d, f.domain().size());
    // Scalar multiples share invariance; the lexicographically first of them
    // has leading entry 1.
    if (*std::find_if(d.begin(), d.end(), [](Element e) { return e != 0; }) != f.domain().one())
      continue;
    if (invariant_direction(f, d)) return d;
  }
  return std::nullopt;
}

// Columns span {t : d . t = 0}: for each i other than the leading position p,
// the column with t_i = 1 and t_p = -d_i.
Matrix orthogonal_basis(const Algebra& alg, std::span<const Element> d) {
  const std::size_t s = d.size();
  const std::size_t p = static_cast<std::size_t>(
      std::find_if(d.begin(), d.end(), [](Element e) { return e != 0; }) - d.begin());
  Matrix t(s, s - 1);
  std::size_t col = 0;
  for (std::size_t i = 0; i < s; ++i) {
    if (i == p) continue;
    t(i, col) = alg.one();
    t(p, col) = alg.neg(d[i]);
    ++col;
  }
  return t;
}

}  // namespace

bool check_witness(const TargetFunction& f, const ReductionWitness& w) {
  const Algebra& alg = f.domain();
  if (w.lambda == 0 || w.lambda >= f.arity()) return false;
  if (w.T.rows != f.arity() || w.T.cols != w.lambda || w.g.arity() != w.lambda) return false;
  RowMap map(alg, w.T);
  std::vector<Element> x(f.arity(), 0);
  for (std::uint64_t i = 0; i < f.input_count(); ++i, next_digits(x, alg.size()))
    if (w.g.value(map.apply(x)) != f.value(i)) return false;
  if (w.direction) {
    if (w.direction->size() != f.arity()) return false;
    if (std::all_of(w.direction->begin(), w.direction->end(), [](Element e) { return e == 0; }))
      return false;
    if (!invariant_direction(f, *w.direction)) return false;
  }
  return true;
}

std::optional<ReductionWitness> is_reducible_field(const TargetFunction& f) {
  const Algebra& alg = f.domain();
  if (!alg.is_field())
    throw InvalidArgument("field reducibility test needs a field domain, got " + alg.spec());
  ReductionWitness w;
  Matrix total = Matrix::identity(alg, f.arity());
  TargetFunction current = f;
  while (current.arity() > 1) {
    const auto d = first_direction(current);
    if (!d) break;
    if (!w.direction) w.direction = d;
    const Matrix basis = orthogonal_basis(alg, *d);
    auto g = reduce_by(current, basis);
    if (!g) throw Error("internal: invariant direction did not yield a reduction");
    total = mat_mul(alg, total, basis);
    current = std::move(*g);
  }
  if (current.arity() == f.arity()) return std::nullopt;
  w.lambda = current.arity();
  w.T = std::move(total);
  w.g = std::move(current);
  if (!check_witness(f, w)) throw Error("internal: field reduction witness failed its re-check");
  return w;
}

RingReduction is_reducible_ring(const TargetFunction& f, unsigned max_lambda,
                                std::uint64_t budget) {
  const Algebra& alg = f.domain();
  RingReduction out;
  const unsigned top = std::min(max_lambda, f.arity() - 1);
  for (unsigned lambda = 1; lambda <= top; ++lambda) {
    const std::uint64_t entries = std::uint64_t{f.arity()} * lambda;
    const std::uint64_t count = saturating_pow(alg.size(), entries);
    if (count > budget - out.candidates) {
      out.status = SearchStatus::BudgetExceeded;
      return out;
    }
    Matrix t(f.arity(), lambda);
    for (std::uint64_t c = 0; c < count; ++c, next_digits(t.entries, alg.size())) {
      ++out.candidates;
      if (auto g = reduce_by(f, t)) {
        ReductionWitness w{lambda, t, std::move(*g), std::nullopt};
        if (!check_witness(f, w)) throw Error("internal: ring reduction witness failed its re-check");
        out.status = SearchStatus::Found;
        out.witness = std::move(w);
        return out;
      }
    }
    out.lambda_exhausted = lambda;
  }
  out.status = SearchStatus::None;
  return out;
}

std::uint64_t footprint_size(const TargetFunction& f, SourceSet sources) {
  const unsigned s = f.arity();
  if (sources == 0 || (s < 32 && (sources >> s) != 0))
    throw InvalidArgument("footprint needs a nonempty subset of the arguments");
  const auto w = strides(f.domain(), s);
  const std::uint64_t q = f.domain().size();
  // Packed offsets of every assignment to the chosen and the remaining arguments.
  auto offsets = [&](bool chosen) {
    std::vector<std::uint64_t> out{0};
    for (unsigned i = 0; i < s; ++i) {
      if (bool((sources >> i) & 1) != chosen) continue;
      std::vector<std::uint64_t> next;
      next.reserve(out.size() * q);
      for (std::uint64_t base : out)
        for (std::uint64_t a = 0; a < q; ++a) next.push_back(base + a * w[i]);
      out = std::move(next);
    }
    return out;
  };
  const auto inside = offsets(true);
  const auto outside = offsets(false);
  std::set<std::vector<std::uint32_t>> classes;
  std::vector<std::uint32_t> signature(outside.size());
  for (std::uint64_t a : inside) {
    for (std::size_t j = 0; j < outside.size(); ++j) signature[j] = f.label_index(a + outside[j]);
    classes.insert(signature);
  }
  return classes.size();
}

std::string to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::Injective:
      return "injective";
    case FunctionClass::SemiInjective:
      return "semi-injective-not-injective";
    case FunctionClass::Reducible:
      return "reducible";
    case FunctionClass::Neither:
      return "neither";
  }
  return {};
}

Classification classify(const TargetFunction& f, std::uint64_t budget) {
  Classification c;
  c.semi_injective_witness = is_semi_injective(f);
  if (f.domain().is_field()) {
    c.reduction = is_reducible_field(f);
    c.lambda_exhausted = c.reduction ? c.reduction->lambda - 1 : f.arity() - 1;
  } else {
    RingReduction r = is_reducible_ring(f, f.arity() - 1, budget);
    c.reduction = std::move(r.witness);
    c.lambda_exhausted = r.lambda_exhausted;
    c.unresolved = r.status == SearchStatus::BudgetExceeded && !c.semi_injective_witness;
  }
  if (c.semi_injective_witness && c.reduction)
    throw Error("internal: function classified as both semi-injective and reducible");
  if (is_injective(f))
    c.label = FunctionClass::Injective;
  else if (c.semi_injective_witness)
    c.label = FunctionClass::SemiInjective;
  else if (c.reduction)
    c.label = FunctionClass::Reducible;
  else
    c.label = FunctionClass::Neither;
  return c;
}

std::optional<std::vector<Element>> linear_coefficients(const TargetFunction& f) {
  const Algebra& alg = f.domain();
  for (Label l : f.labels())
    if (l < 0 || l >= static_cast<Label>(alg.size())) return std::nullopt;
  std::vector<Element> coeffs(f.arity());
  const auto w = strides(alg, f.arity());
  if (f.value(0) != 0) return std::nullopt;
  for (unsigned i = 0; i < f.arity(); ++i) coeffs[i] = static_cast<Element>(f.value(w[i]));
  std::vector<Element> x(f.arity(), 0);
  for (std::uint64_t i = 0; i < f.input_count(); ++i, next_digits(x, alg.size())) {
    Element v = 0;
    for (unsigned j = 0; j < f.arity(); ++j) v = alg.add(v, alg.mul(coeffs[j], x[j]));
    if (static_cast<Label>(v) != f.value(i)) return std::nullopt;
  }
  return coeffs;
}

}  // namespace netcomp
