#include "netcomp/algebra.hpp"

#include <charconv>
#include <numeric>
#include <sstream>
#include <tuple>

#include "netcomp/error.hpp"

namespace netcomp {

struct Algebra::Impl {
  AlgebraKind kind = AlgebraKind::IntegerMod;
  Element size = 0;
  std::uint32_t modulus = 0;
  std::vector<Algebra> components;  // product components, or {base} for extensions
  std::vector<Element> polynomial;  // monic, low coefficient first
  std::vector<std::uint8_t> add_tab;
  std::vector<std::uint8_t> mul_tab;
  Element one = 1;
};

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over a field, low coefficient first, no trailing zeros.
using Poly = std::vector<Element>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo a monic b.
Poly poly_mod(const Algebra& f, Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Element lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(lead, b[i]));
    trim(a);
  }
  return a;
}

std::int64_t egcd_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return -1;
  return ((old_s % m) + m) % m;
}

}  // namespace

Algebra::Algebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
  size_ = impl_->size;
  if (!impl_->add_tab.empty()) {
    add_tab_ = impl_->add_tab.data();
    mul_tab_ = impl_->mul_tab.data();
  }
}

namespace {

// Fills the lookup tables of a freshly built algebra when it is small enough.
template <class ImplPtr, class Build>
Algebra finish(ImplPtr& impl, Build&& make) {
  if (impl->size <= 256) {
    const Algebra slow = make(impl);
    const Element n = impl->size;
    impl->add_tab.resize(std::size_t{n} * n);
    impl->mul_tab.resize(std::size_t{n} * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        impl->add_tab[a * n + b] = static_cast<std::uint8_t>(slow.add(a, b));
        impl->mul_tab[a * n + b] = static_cast<std::uint8_t>(slow.mul(a, b));
      }
  }
  return make(impl);
}

}  // namespace

Algebra Algebra::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidArgument("field size " + std::to_string(p) + " is not prime");
  if (p > kMaxSize) throw InvalidArgument("field size exceeds 2^16");
  auto impl = std::make_shared<Impl>();
  impl->kind = AlgebraKind::PrimeField;
  impl->size = p;
  impl->modulus = p;
  return finish(impl, [](auto& i) { return Algebra(i); });
}

Algebra Algebra::integers_mod(std::uint32_t m) {
  if (m < 2) throw InvalidArgument("modulus must be at least 2");
  if (m > kMaxSize) throw InvalidArgument("ring size exceeds 2^16");
  auto impl = std::make_shared<Impl>();
  impl->kind = AlgebraKind::IntegerMod;
  impl->size = m;
  impl->modulus = m;
  return finish(impl, [](auto& i) { return Algebra(i); });
}

Algebra Algebra::extension(const Algebra& base, std::vector<Element> modulus) {
  if (!base.is_field()) throw InvalidArgument("extension base must be a field");
  if (modulus.size() < 2 || modulus.back() != base.one())
    throw InvalidArgument("extension polynomial must be monic of degree >= 1");
  for (Element c : modulus)
    if (!base.contains(c)) throw InvalidArgument("polynomial coefficient out of range");
  if (!is_irreducible(base, modulus))
    throw InvalidArgument("extension polynomial is reducible");
  const unsigned degree = static_cast<unsigned>(modulus.size() - 1);
  std::uint64_t size = 1;
  for (unsigned i = 0; i < degree; ++i) {
    size *= base.size();
    if (size > kMaxSize) throw InvalidArgument("field size exceeds 2^16");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = AlgebraKind::ExtensionField;
  impl->size = static_cast<Element>(size);
  impl->components = {base};
  impl->polynomial = std::move(modulus);
  return finish(impl, [](auto& i) { return Algebra(i); });
}

Algebra Algebra::extension(const Algebra& base, unsigned degree) {
  if (!base.is_field()) throw InvalidArgument("extension base must be a field");
  if (degree == 0) throw InvalidArgument("extension degree must be positive");
  std::uint64_t count = 1;
  for (unsigned i = 0; i < degree; ++i) {
    count *= base.size();
    if (count > kMaxSize) throw InvalidArgument("field size exceeds 2^16");
  }
  // Candidate index c enumerates the lower coefficients as base-|base| digits,
  // so ascending c is lexicographic order read from the top coefficient.
  for (std::uint64_t c = 0; c < count; ++c) {
    Poly p(degree + 1);
    std::uint64_t rest = c;
    for (unsigned i = 0; i < degree; ++i) {
      p[i] = static_cast<Element>(rest % base.size());
      rest /= base.size();
    }
    p[degree] = base.one();
    if (is_irreducible(base, p)) return extension(base, std::move(p));
  }
  throw Error("no irreducible polynomial found");  // unreachable for finite fields
}

Algebra Algebra::product(std::vector<Algebra> components) {
  if (components.empty()) throw InvalidArgument("product ring needs at least one component");
  std::uint64_t size = 1;
  for (const auto& c : components) {
    size *= c.size();
    if (size > kMaxSize) throw InvalidArgument("ring size exceeds 2^16");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = AlgebraKind::Product;
  impl->size = static_cast<Element>(size);
  impl->components = std::move(components);
  {
    std::vector<Element> ones;
    for (const auto& c : impl->components) ones.push_back(c.one());
    Element v = 0;
    for (std::size_t i = 0; i < ones.size(); ++i) v = v * impl->components[i].size() + ones[i];
    impl->one = v;
  }
  return finish(impl, [](auto& i) { return Algebra(i); });
}

AlgebraKind Algebra::kind() const { return impl_->kind; }

bool Algebra::is_field() const {
  switch (impl_->kind) {
    case AlgebraKind::PrimeField:
    case AlgebraKind::ExtensionField:
      return true;
    case AlgebraKind::IntegerMod:
      return is_prime(impl_->modulus);
    case AlgebraKind::Product:
      return impl_->components.size() == 1 && impl_->components[0].is_field();
  }
  return false;
}

std::string Algebra::spec() const {
  switch (impl_->kind) {
    case AlgebraKind::PrimeField:
      return "field:" + std::to_string(size_);
    case AlgebraKind::ExtensionField:
      if (base().kind() == AlgebraKind::PrimeField)
        return "field:" + std::to_string(size_);
      return "ext:" + base().spec() + "^" + std::to_string(degree());
    case AlgebraKind::IntegerMod:
      return "zmod:" + std::to_string(size_);
    case AlgebraKind::Product: {
      std::string s = "product:";
      for (std::size_t i = 0; i < impl_->components.size(); ++i) {
        if (i) s += ',';
        s += impl_->components[i].spec();
      }
      return s;
    }
  }
  return {};
}

std::string Algebra::describe() const {
  std::ostringstream out;
  switch (impl_->kind) {
    case AlgebraKind::PrimeField:
      out << "GF(" << size_ << ")";
      break;
    case AlgebraKind::ExtensionField: {
      out << "GF(" << size_ << ") = " << base().describe() << "[x]/(";
      bool first = true;
      for (std::size_t i = impl_->polynomial.size(); i-- > 0;) {
        const Element c = impl_->polynomial[i];
        if (c == 0) continue;
        if (!first) out << " + ";
        first = false;
        if (i == 0 || c != 1) out << c;
        if (i >= 1) out << "x";
        if (i >= 2) out << "^" << i;
      }
      out << ")";
      break;
    }
    case AlgebraKind::IntegerMod:
      out << "Z" << size_;
      break;
    case AlgebraKind::Product:
      for (std::size_t i = 0; i < impl_->components.size(); ++i) {
        if (i) out << " x ";
        out << impl_->components[i].describe();
      }
      break;
  }
  return out.str();
}

Element Algebra::one() const { return impl_->one; }

std::uint32_t Algebra::modulus() const { return impl_->modulus; }
const std::vector<Algebra>& Algebra::components() const { return impl_->components; }
const Algebra& Algebra::base() const {
  if (impl_->kind != AlgebraKind::ExtensionField) throw InvalidArgument("not an extension field");
  return impl_->components.front();
}
const std::vector<Element>& Algebra::polynomial() const { return impl_->polynomial; }
unsigned Algebra::degree() const {
  return impl_->kind == AlgebraKind::ExtensionField
             ? static_cast<unsigned>(impl_->polynomial.size() - 1)
             : 1;
}

std::vector<Element> Algebra::decompose(Element a) const {
  if (impl_->kind == AlgebraKind::ExtensionField) {
    const Element q = base().size();
    std::vector<Element> digits(degree());
    for (auto& d : digits) {
      d = a % q;
      a /= q;
    }
    return digits;
  }
  if (impl_->kind == AlgebraKind::Product) {
    const auto& comps = impl_->components;
    std::vector<Element> parts(comps.size());
    for (std::size_t i = comps.size(); i-- > 0;) {
      parts[i] = a % comps[i].size();
      a /= comps[i].size();
    }
    return parts;
  }
  return {a};
}

Element Algebra::compose(std::span<const Element> parts) const {
  if (impl_->kind == AlgebraKind::ExtensionField) {
    const Element q = base().size();
    Element v = 0;
    for (std::size_t i = parts.size(); i-- > 0;) v = v * q + parts[i];
    return v;
  }
  if (impl_->kind == AlgebraKind::Product) {
    Element v = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) v = v * impl_->components[i].size() + parts[i];
    return v;
  }
  return parts.empty() ? 0 : parts[0];
}

Element Algebra::add_slow(Element a, Element b) const {
  switch (impl_->kind) {
    case AlgebraKind::PrimeField:
    case AlgebraKind::IntegerMod:
      return static_cast<Element>((std::uint64_t{a} + b) % impl_->modulus);
    case AlgebraKind::ExtensionField: {
      const Algebra& f = base();
      auto x = decompose(a);
      const auto y = decompose(b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.add(x[i], y[i]);
      return compose(x);
    }
    case AlgebraKind::Product: {
      auto x = decompose(a);
      const auto y = decompose(b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = impl_->components[i].add(x[i], y[i]);
      return compose(x);
    }
  }
  return 0;
}

Element Algebra::mul_slow(Element a, Element b) const {
  switch (impl_->kind) {
    case AlgebraKind::PrimeField:
    case AlgebraKind::IntegerMod:
      return static_cast<Element>((std::uint64_t{a} * b) % impl_->modulus);
    case AlgebraKind::ExtensionField: {
      const Algebra& f = base();
      const auto x = decompose(a);
      const auto y = decompose(b);
      Poly prod(x.size() + y.size() - 1, 0);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
          prod[i + j] = f.add(prod[i + j], f.mul(x[i], y[j]));
      }
      Poly r = poly_mod(f, std::move(prod), impl_->polynomial);
      r.resize(degree(), 0);
      return compose(r);
    }
    case AlgebraKind::Product: {
      auto x = decompose(a);
      const auto y = decompose(b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = impl_->components[i].mul(x[i], y[i]);
      return compose(x);
    }
  }
  return 0;
}

Element Algebra::neg(Element a) const {
  switch (impl_->kind) {
    case AlgebraKind::PrimeField:
    case AlgebraKind::IntegerMod:
      return a == 0 ? 0 : impl_->modulus - a;
    case AlgebraKind::ExtensionField: {
      auto x = decompose(a);
      for (auto& d : x) d = base().neg(d);
      return compose(x);
    }
    case AlgebraKind::Product: {
      auto x = decompose(a);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = impl_->components[i].neg(x[i]);
      return compose(x);
    }
  }
  return 0;
}

Element Algebra::pow(Element a, std::uint64_t e) const {
  Element result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::optional<Element> Algebra::inverse(Element a) const {
  switch (impl_->kind) {
    case AlgebraKind::PrimeField:
    case AlgebraKind::ExtensionField:
      if (a == 0) return std::nullopt;
      return pow(a, size_ - 2);
    case AlgebraKind::IntegerMod: {
      const std::int64_t r = egcd_inverse(a, impl_->modulus);
      if (r < 0) return std::nullopt;
      return static_cast<Element>(r);
    }
    case AlgebraKind::Product: {
      auto x = decompose(a);
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto inv = impl_->components[i].inverse(x[i]);
        if (!inv) return std::nullopt;
        x[i] = *inv;
      }
      return compose(x);
    }
  }
  return std::nullopt;
}

bool Algebra::operator==(const Algebra& other) const {
  if (impl_ == other.impl_) return true;
  if (kind() != other.kind() || size_ != other.size_) return false;
  switch (kind()) {
    case AlgebraKind::PrimeField:
    case AlgebraKind::IntegerMod:
      return true;
    case AlgebraKind::ExtensionField:
      return base() == other.base() && polynomial() == other.polynomial();
    case AlgebraKind::Product:
      return components() == other.components();
  }
  return false;
}

bool is_irreducible(const Algebra& field, std::span<const Element> monic) {
  const std::size_t degree = monic.size() - 1;
  if (degree == 1) return true;
  if (monic[0] == 0) return false;
  const Poly target(monic.begin(), monic.end());
  // Trial division by every monic polynomial of degree 1..degree/2.
  for (std::size_t d = 1; d <= degree / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= field.size();
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly divisor(d + 1);
      std::uint64_t rest = c;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<Element>(rest % field.size());
        rest /= field.size();
      }
      divisor[d] = field.one();
      if (poly_mod(field, target, divisor).empty()) return false;
    }
  }
  return true;
}

namespace {

std::uint32_t parse_uint(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("malformed " + std::string(what) + " '" + std::string(text) + "'");
  if (v > 0xffffffffull) throw ParseError(std::string(what) + " too large");
  return static_cast<std::uint32_t>(v);
}

Algebra parse_field(std::uint32_t q) {
  if (q < 2) throw InvalidArgument("field size must be at least 2");
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  unsigned m = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) throw InvalidArgument("field size " + std::to_string(q) + " is not a prime power");
  if (q > Algebra::kMaxSize) throw InvalidArgument("field size exceeds 2^16");
  Algebra prime = Algebra::prime_field(p);
  return m == 1 ? prime : Algebra::extension(prime, m);
}

}  // namespace

Algebra build_algebra(std::string_view spec) {
  if (spec.starts_with("field:")) return parse_field(parse_uint(spec.substr(6), "field size"));
  if (spec.starts_with("zmod:")) return Algebra::integers_mod(parse_uint(spec.substr(5), "modulus"));
  if (spec.starts_with("product:")) {
    std::string_view rest = spec.substr(8);
    std::vector<Algebra> parts;
    while (true) {
      if (rest.starts_with("product:")) {
        parts.push_back(build_algebra(rest));
        break;
      }
      const auto comma = rest.find(',');
      parts.push_back(build_algebra(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return Algebra::product(std::move(parts));
  }
  throw ParseError("malformed algebra spec '" + std::string(spec) +
                   "' (expected field:<q>, zmod:<m> or product:<spec>,...)");
}

Element ring_op(const Algebra& alg, RingOp op, Element a, Element b) {
  if (!alg.contains(a) || (op != RingOp::Neg && !alg.contains(b)))
    throw InvalidArgument("invalid element encoding for " + alg.spec());
  switch (op) {
    case RingOp::Add:
      return alg.add(a, b);
    case RingOp::Mul:
      return alg.mul(a, b);
    case RingOp::Neg:
      return alg.neg(a);
  }
  return 0;
}

std::optional<Element> unit_inverse(const Algebra& alg, Element a) {
  if (!alg.contains(a)) return std::nullopt;
  return alg.inverse(a);
}

}  // namespace netcomp
