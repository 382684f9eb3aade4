#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netcomp/algebra.hpp"
#include "netcomp/matrix.hpp"

namespace netcomp {

using Label = std::int64_t;

// Bitmask over argument positions: bit i stands for argument x_{i+1}.
using SourceSet = std::uint32_t;

// A total map A^s -> B stored as an explicit table. Inputs are packed in mixed
// radix with x_1 most significant, so ascending index is lexicographic order.
// The codomain is the sorted set of distinct labels that occur.
class TargetFunction {
 public:
  static constexpr std::uint64_t kMaxInputs = 1u << 24;

  TargetFunction() = default;
  // Validates that the function depends on every argument.
  TargetFunction(Algebra domain, unsigned arity, std::vector<Label> values, std::string name = {});
  // Skips the dependence check; used for reduced functions g.
  static TargetFunction unchecked(Algebra domain, unsigned arity, std::vector<Label> values,
                                  std::string name = {});
  static TargetFunction tabulate(Algebra domain, unsigned arity,
                                 const std::function<Label(std::span<const Element>)>& fn,
                                 std::string name = {});

  const Algebra& domain() const { return domain_; }
  unsigned arity() const { return arity_; }
  std::uint64_t input_count() const { return index_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  const std::string& name() const { return name_; }

  std::uint32_t label_index(std::uint64_t input) const { return index_[input]; }
  Label value(std::uint64_t input) const { return labels_[index_[input]]; }
  Label operator()(std::span<const Element> x) const { return value(pack(x)); }

  std::uint64_t pack(std::span<const Element> x) const;
  std::vector<Element> unpack(std::uint64_t input) const;

  // Index of `label` in labels(), if present.
  std::optional<std::uint32_t> find_label(Label label) const;

 private:
  TargetFunction(Algebra domain, unsigned arity, std::vector<Label> values, std::string name,
                 bool check);

  Algebra domain_ = Algebra::prime_field(2);
  unsigned arity_ = 0;
  std::vector<Label> labels_;
  std::vector<std::uint32_t> index_;
  std::string name_;
};

// identity | arith-sum | mod-sum:<r> | linear:<a1,...,as> | max | paper-f4 | table:<path>
TargetFunction make_builtin(std::string_view spec, const Algebra& alg, unsigned arity);

// Function table text: `arity <s>`, `domain <size>`, then `x1 ... xs -> v` lines.
TargetFunction parse_function_table(std::string_view text, const Algebra& alg,
                                    std::string name = {});
TargetFunction load_function_table(const std::string& path, const Algebra& alg);
std::string format_function_table(const TargetFunction& f);

bool is_injective(const TargetFunction& f);
// Lexicographically smallest x whose fiber is {x}.
std::optional<std::vector<Element>> is_semi_injective(const TargetFunction& f);

// f(x) = g(x T) with T an s x lambda matrix and lambda < s.
struct ReductionWitness {
  unsigned lambda = 0;
  Matrix T;
  TargetFunction g;
  // Nonzero d with f(a d + x) = f(x), from the field characterization.
  std::optional<std::vector<Element>> direction;
};

// Exhaustively checks g(xT) = f(x) and, when present, the direction invariance.
bool check_witness(const TargetFunction& f, const ReductionWitness& w);

// Field domains only. Scans directions d in lexicographic order and iterates
// the reduction on g until no invariant direction remains.
std::optional<ReductionWitness> is_reducible_field(const TargetFunction& f);

enum class SearchStatus { Found, None, BudgetExceeded };

struct RingReduction {
  SearchStatus status = SearchStatus::None;
  std::optional<ReductionWitness> witness;
  // Largest lambda whose candidate space was fully scanned.
  unsigned lambda_exhausted = 0;
  std::uint64_t candidates = 0;
};

constexpr std::uint64_t kDefaultReductionBudget = 1u << 24;

// Any ring. Enumerates T in A^{s x lambda} for lambda = 1..min(max_lambda, s-1).
RingReduction is_reducible_ring(const TargetFunction& f, unsigned max_lambda,
                                std::uint64_t budget = kDefaultReductionBudget);

// Number of classes of assignments to the arguments in `sources` that f can
// tell apart under some assignment of the remaining arguments.
std::uint64_t footprint_size(const TargetFunction& f, SourceSet sources);

enum class FunctionClass { Injective, SemiInjective, Reducible, Neither };

std::string to_string(FunctionClass c);

struct Classification {
  FunctionClass label = FunctionClass::Neither;
  // The reducibility search ran out of budget; label is then a lower bound.
  bool unresolved = false;
  std::optional<std::vector<Element>> semi_injective_witness;
  std::optional<ReductionWitness> reduction;
  unsigned lambda_exhausted = 0;
};

Classification classify(const TargetFunction& f,
                        std::uint64_t budget = kDefaultReductionBudget);

// Coefficients a with f(x) = sum a_i x_i when the labels are ring elements.
std::optional<std::vector<Element>> linear_coefficients(const TargetFunction& f);

}  // namespace netcomp
