#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netcomp/code.hpp"
#include "netcomp/function.hpp"
#include "netcomp/network.hpp"

namespace netcomp {

// Budget unit: one message assignment evaluated against one candidate.
constexpr std::uint64_t kDefaultSearchBudget = 1'000'000'000;

struct SearchOptions {
  std::uint64_t budget = kDefaultSearchBudget;
  unsigned jobs = 1;
};

struct SearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<NetworkCode> code;
  std::uint64_t candidate_index = 0;  // of the returned code
  std::uint64_t candidates = 0;       // size of the class (saturated)
  std::uint64_t evaluations = 0;
  std::uint64_t remaining = 0;        // unscanned candidates when over budget
};

// All (k, n) codes with linear encoders over f's domain. Candidates list, per
// edge in id order, one n x n matrix per in-edge (ascending id) and then the
// k x n message matrix when the tail is a source; entries row-major, first
// entry most significant. The decoder is the table forced by the encoders.
SearchResult search_linear(const Network& net, const TargetFunction& f, std::size_t k,
                           std::size_t n, const SearchOptions& opts = {});

// All (k, n) codes with table encoders. Each edge contributes one output
// vector per input key, edges in id order, keys ascending.
SearchResult search_general(const Network& net, const TargetFunction& f, std::size_t k,
                            std::size_t n, const SearchOptions& opts = {});

struct SweepCell {
  std::size_t k = 0;
  std::size_t n = 0;
  SearchResult linear;
  SearchResult general;
};

struct SweepReport {
  std::vector<SweepCell> cells;
  BoundReport bounds;
};

SweepReport achievability_sweep(const Network& net, const TargetFunction& f,
                                const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                const SearchOptions& opts = {});

std::string to_string(SearchStatus s);

}  // namespace netcomp
