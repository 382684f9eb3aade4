#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netcomp/code.hpp"
#include "netcomp/function.hpp"
#include "netcomp/matrix.hpp"
#include "netcomp/network.hpp"
#include "netcomp/rational.hpp"

namespace netcomp {

struct KMOptions {
  std::uint64_t seed = 0;
  unsigned draws_per_degree = 64;
  unsigned max_degree = 16;
  // Exhaustive verification up to this many message assignments, random above.
  std::uint64_t exhaustive_limit = 1u << 20;
  std::uint64_t random_checks = 100000;
};

// Transfer matrices evaluated at one coefficient draw over GF(q^n).
struct KMSystem {
  Algebra ext = Algebra::prime_field(2);
  std::size_t c = 0;
  std::vector<Matrix> source_matrices;  // A_tau, c x |E|
  Matrix adjacency;                     // F, |E| x |E|
  Matrix receiver_matrix;               // B, c x |E|
  std::vector<Matrix> transfer;         // M_tau = A_tau (I - F)^-1 B^t
  std::vector<Element> determinants;
};

struct KMResult {
  NetworkCode code;
  KMSystem system;
  unsigned degree = 0;  // n
  std::uint64_t seed = 0;
  unsigned draws = 0;   // total draws until success
  std::optional<Cut> min_cut;
  bool exhaustive = false;
  VerifyResult verification;
};

// Rate-min-cut linear code for f = sum a_i x_i over a field.
KMResult km_construct(const Network& net, const Algebra& field, const std::vector<Element>& coeffs,
                      const KMOptions& opts = {});

// n x n matrix over the base field of `ext` acting on coefficient vectors
// (low digit first) as multiplication by `b`.
Matrix multiplication_matrix(const Algebra& ext, Element b);

// (1, lambda) code on the relay network: sources forward their message to the
// relay, which sends x T; the receiver applies g.
NetworkCode relay_reduction_code(const Network& net, const TargetFunction& f,
                                 const ReductionWitness& witness);

// (2, 1) code over Z_q computing the componentwise sum mod q on the reverse butterfly.
NetworkCode butterfly_mod_code(std::uint32_t q);

// Output length ceil(n log_q(2q - 1)), computed exactly.
std::size_t butterfly_arith_length(std::uint32_t q, std::size_t n);

// (2n, n') code over Z_q computing the arithmetic sum on the reverse butterfly.
NetworkCode butterfly_arith_code(std::uint32_t q, std::size_t n);

// 2 / log_q(2q - 1).
LogRatio butterfly_capacity(std::uint32_t q);

}  // namespace netcomp
