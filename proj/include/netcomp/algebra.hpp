#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netcomp {

// Canonical encoding of a ring element: an integer in [0, size).
using Element = std::uint32_t;

enum class AlgebraKind { PrimeField, ExtensionField, IntegerMod, Product };

// A finite commutative ring with identity under a canonical integer encoding.
//
//  - PrimeField / IntegerMod: residues 0..m-1.
//  - ExtensionField: polynomials over a base field modulo a monic irreducible;
//    coefficient i is base-|base| digit i (least significant digit first).
//  - Product: mixed radix over the components, first component most
//    significant, so Z2 x Z2 encodes (0,0),(0,1),(1,0),(1,1) as 0..3.
//
// Algebra is a cheap-to-copy handle to immutable shared state. Algebras of
// size <= 256 carry full addition and multiplication tables.
class Algebra {
 public:
  static constexpr Element kMaxSize = 1u << 16;

  static Algebra prime_field(std::uint32_t p);
  static Algebra integers_mod(std::uint32_t m);
  // Degree-`degree` extension of a field using the lexicographically smallest
  // monic irreducible polynomial (coefficients compared from the top degree).
  static Algebra extension(const Algebra& base, unsigned degree);
  // Extension by an explicit monic polynomial, low coefficient first.
  static Algebra extension(const Algebra& base, std::vector<Element> modulus);
  static Algebra product(std::vector<Algebra> components);

  AlgebraKind kind() const;
  Element size() const { return size_; }
  bool is_field() const;
  // Canonical spec string, e.g. "field:4", "zmod:4", "product:zmod:2,zmod:2".
  std::string spec() const;
  std::string describe() const;

  bool contains(Element a) const { return a < size_; }
  Element zero() const { return 0; }
  Element one() const;

  Element add(Element a, Element b) const {
    if (add_tab_) return add_tab_[a * size_ + b];
    return add_slow(a, b);
  }
  Element mul(Element a, Element b) const {
    if (mul_tab_) return mul_tab_[a * size_ + b];
    return mul_slow(a, b);
  }
  Element neg(Element a) const;
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element pow(Element a, std::uint64_t e) const;
  // Multiplicative inverse when `a` is a unit.
  std::optional<Element> inverse(Element a) const;

  // Modulus for PrimeField / IntegerMod.
  std::uint32_t modulus() const;
  // Components of a product ring.
  const std::vector<Algebra>& components() const;
  // Base field and reduction polynomial of an extension field.
  const Algebra& base() const;
  const std::vector<Element>& polynomial() const;
  unsigned degree() const;
  // Coefficient digits of an extension element (length degree()) or the
  // component values of a product element.
  std::vector<Element> decompose(Element a) const;
  Element compose(std::span<const Element> parts) const;

  bool operator==(const Algebra& other) const;

 private:
  struct Impl;
  explicit Algebra(std::shared_ptr<const Impl> impl);

  Element add_slow(Element a, Element b) const;
  Element mul_slow(Element a, Element b) const;

  std::shared_ptr<const Impl> impl_;
  Element size_ = 0;
  const std::uint8_t* add_tab_ = nullptr;
  const std::uint8_t* mul_tab_ = nullptr;
};

// Parses `field:<q>` | `zmod:<m>` | `product:<spec>(,<spec>)*`.
Algebra build_algebra(std::string_view spec);

enum class RingOp { Add, Mul, Neg };

// Checked arithmetic on canonical encodings; `b` is ignored for Neg.
Element ring_op(const Algebra& alg, RingOp op, Element a, Element b = 0);
std::optional<Element> unit_inverse(const Algebra& alg, Element a);

// Exhaustive irreducibility test for a monic polynomial over a field,
// coefficients low degree first.
bool is_irreducible(const Algebra& field, std::span<const Element> monic);

}  // namespace netcomp
