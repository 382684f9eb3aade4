#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netcomp/algebra.hpp"
#include "netcomp/function.hpp"
#include "netcomp/matrix.hpp"
#include "netcomp/network.hpp"
#include "netcomp/rational.hpp"

namespace netcomp {

// Explicit map from input tuples over A to output tuples. Keys pack the input
// tuple in mixed radix, first symbol most significant.
struct SymbolTable {
  std::size_t input_len = 0;
  std::size_t output_len = 0;
  std::map<std::uint64_t, std::vector<Label>> rows;

  const std::vector<Label>* find(std::uint64_t key) const {
    auto it = rows.find(key);
    return it == rows.end() ? nullptr : &it->second;
  }
  bool operator==(const SymbolTable&) const = default;
};

// `in1 in2 ... -> out1 out2 ...` lines with `#` comments. Output symbols are
// range-checked against the algebra when `outputs_are_elements`.
SymbolTable parse_symbol_table(std::string_view text, const Algebra& alg, std::size_t input_len,
                               std::size_t output_len, bool outputs_are_elements);
std::string format_symbol_table(const SymbolTable& t, const Algebra& alg);

// Routing selector: symbol `pos` of in-edge `index`, symbol `pos` of the
// tail's message, or the constant zero.
struct Selector {
  enum class Kind { InEdge, Message, Zero };
  Kind kind = Kind::Zero;
  std::size_t index = 0;
  std::size_t pos = 0;
  bool operator==(const Selector&) const = default;
};

struct RoutingEncoder {
  std::vector<Selector> selectors;  // one per output symbol
  bool operator==(const RoutingEncoder&) const = default;
};

// z_e = sum over listed in-edges of z_in * G_in (n x n) + message * H (k x n).
// In-edges without a term contribute nothing.
struct LinearEncoder {
  std::vector<std::pair<EdgeId, Matrix>> terms;  // ascending edge id
  std::optional<Matrix> message;
  bool operator==(const LinearEncoder&) const = default;
};

// Input: in-edge vectors in edge-id order, then the message if the tail is a source.
struct TableEncoder {
  std::string path;
  SymbolTable table;
  bool operator==(const TableEncoder&) const = default;
};

using Encoder = std::variant<RoutingEncoder, LinearEncoder, TableEncoder>;

// Input: receiver in-edge vectors in edge-id order; output: k labels.
struct TableDecoder {
  std::string path;
  SymbolTable table;
  bool operator==(const TableDecoder&) const = default;
};

// y = sum over in-edges of z_e * D_e (n x k); output label j = value_map[y_j].
struct LinearDecoder {
  std::vector<std::pair<EdgeId, Matrix>> terms;
  std::string map_path = "identity";
  std::vector<Label> value_map;  // one label per element of A
  bool operator==(const LinearDecoder&) const = default;
};

using Decoder = std::variant<TableDecoder, LinearDecoder>;

// A (k, n) network code over an algebra. Edges carry exactly n symbols.
struct NetworkCode {
  Algebra alg = Algebra::prime_field(2);
  std::size_t k = 1;
  std::size_t n = 1;
  std::vector<Encoder> encoders;  // indexed by edge id
  Decoder decoder;
};

// Checks dimensions and that every encoder only reads its tail's inputs.
void validate_code(const Network& net, const NetworkCode& code);

// Code file text. Table paths are resolved against `base_dir`.
NetworkCode parse_code(std::string_view text, const Network& net, const Algebra& alg,
                       const std::string& base_dir = ".");
NetworkCode load_code(const std::string& path, const Network& net, const Algebra& alg);
std::string serialize_code(const Network& net, const NetworkCode& code);
// Writes the code file and any side tables next to it (stem.enc<id>.tbl,
// stem.dec.tbl, stem.map.tbl); the stored table paths are updated.
void save_code(const std::string& path, const Network& net, NetworkCode& code);

Rational rate(const NetworkCode& code);

// One k-vector per source.
using MessageAssignment = std::vector<std::vector<Element>>;

struct Evaluation {
  std::vector<std::vector<Element>> edges;  // z_e by edge id
  std::vector<Label> output;                // decoder output, k labels
};

// Precomputed evaluation plan for repeated evaluation of one code.
class CodeEvaluator {
 public:
  CodeEvaluator(const Network& net, const NetworkCode& code);
  // Fills `edge_values` (edge-major, n symbols each) and `output` (k labels).
  void run(const std::vector<Element>& messages, std::vector<Element>& edge_values,
           std::vector<Label>& output) const;

 private:
  const Network& net_;
  const NetworkCode& code_;
  std::size_t k_, n_;
};

Evaluation evaluate(const Network& net, const NetworkCode& code, const MessageAssignment& msgs);

struct Counterexample {
  MessageAssignment messages;
  std::vector<Label> expected;
  std::vector<Label> output;
};

struct VerifyResult {
  bool verified = false;
  std::uint64_t checked = 0;
  std::optional<Counterexample> counterexample;
};

constexpr std::uint64_t kDefaultVerifyBudget = 1u << 24;

// Exhaustive check over all |A|^{k s} message assignments in lexicographic
// order (source 1's vector most significant).
VerifyResult verify_code(const Network& net, const NetworkCode& code, const TargetFunction& f,
                         std::uint64_t budget = kDefaultVerifyBudget);
// `count` uniformly random assignments from a seeded generator.
VerifyResult verify_random(const Network& net, const NetworkCode& code, const TargetFunction& f,
                           std::uint64_t count, std::uint64_t seed);

std::string format_messages(const MessageAssignment& m);

}  // namespace netcomp
