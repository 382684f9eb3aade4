#include "netcomp/search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <thread>

#include "netcomp/error.hpp"

namespace netcomp {

namespace {

constexpr std::uint64_t kBlock = 4096;
constexpr std::uint64_t kMaxMessages = 1u << 24;
constexpr std::uint64_t kMaxReceiverKeys = 1u << 24;

// Everything about (net, f, k, n) that does not depend on the candidate.
struct Problem {
  const Network& net;
  const TargetFunction& f;
  Algebra alg;
  std::size_t k, n, s;
  std::uint64_t q;
  std::vector<std::vector<Element>> messages;        // k*s symbols, low weight first
  std::vector<std::vector<std::size_t>> nonzero;     // positions with x != 0
  std::vector<std::vector<std::uint64_t>> packed;    // per-source packed k-vectors
  std::vector<std::uint64_t> expected;               // packed label indices
  std::vector<EdgeId> receiver_in;
  std::uint64_t receiver_keys = 0;

  Problem(const Network& nt, const TargetFunction& fn, std::size_t kk, std::size_t nn)
      : net(nt), f(fn), alg(fn.domain()), k(kk), n(nn), s(nt.source_count()), q(alg.size()) {
    receiver_in = net.in_edges(net.receiver());
  }
};

std::optional<std::string> prepare(Problem& p) {
  if (p.k == 0 || p.n == 0) throw InvalidArgument("k and n must be positive");
  if (p.f.arity() != p.s)
    throw InvalidArgument("function has arity " + std::to_string(p.f.arity()) + " but network has " +
                          std::to_string(p.s) + " sources");
  const std::uint64_t total = saturating_pow(p.q, p.k * p.s);
  if (total > kMaxMessages) return "too many message assignments";
  p.receiver_keys = saturating_pow(p.q, p.n * p.receiver_in.size());
  if (p.receiver_keys > kMaxReceiverKeys) return "forced decoder table too large";

  const std::size_t len = p.k * p.s;
  std::vector<std::uint32_t> weight(total);
  std::vector<std::vector<Element>> all(total, std::vector<Element>(len));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t pos = len; pos-- > 0;) {
      all[idx][pos] = static_cast<Element>(rest % p.q);
      rest /= p.q;
      weight[idx] += all[idx][pos] != 0;
    }
  }
  std::vector<std::uint64_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return weight[a] < weight[b]; });

  const std::uint64_t labels = p.f.labels().size();
  std::vector<Element> column(p.s);
  for (std::uint64_t idx : order) {
    const auto& x = all[idx];
    std::vector<std::size_t> nz;
    for (std::size_t pos = 0; pos < len; ++pos)
      if (x[pos] != 0) nz.push_back(pos);
    std::vector<std::uint64_t> per_source(p.s, 0);
    for (std::size_t i = 0; i < p.s; ++i)
      for (std::size_t j = 0; j < p.k; ++j) per_source[i] = per_source[i] * p.q + x[i * p.k + j];
    std::uint64_t want = 0;
    for (std::size_t j = 0; j < p.k; ++j) {
      for (std::size_t i = 0; i < p.s; ++i) column[i] = x[i * p.k + j];
      want = want * labels + p.f.label_index(p.f.pack(column));
    }
    p.messages.push_back(x);
    p.nonzero.push_back(std::move(nz));
    p.packed.push_back(std::move(per_source));
    p.expected.push_back(want);
  }
  return std::nullopt;
}

// Receiver-tuple to expected-output map built while scanning messages.
class ForcedDecoder {
 public:
  explicit ForcedDecoder(std::uint64_t keys) : stamp_(keys, 0), value_(keys, 0) {}

  void reset() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  // False when the key was already forced to a different value.
  bool force(std::uint64_t key, std::uint64_t want) {
    if (stamp_[key] == epoch_) return value_[key] == want;
    stamp_[key] = epoch_;
    value_[key] = want;
    return true;
  }
  std::optional<std::uint64_t> get(std::uint64_t key) const {
    if (stamp_[key] == epoch_) return value_[key];
    return std::nullopt;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint64_t> value_;
  std::uint32_t epoch_ = 0;
};

// Candidate class: mixed-radix digit strings, first digit most significant.
struct Space {
  std::vector<std::uint64_t> radix;
  std::uint64_t total = 1;

  void finish() {
    total = 1;
    for (std::uint64_t r : radix) total = saturating_mul(total, r);
  }
  void decode(std::uint64_t idx, std::vector<std::uint32_t>& digits) const {
    digits.assign(radix.size(), 0);
    for (std::size_t i = radix.size(); i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(idx % radix[i]);
      idx /= radix[i];
    }
  }
  void increment(std::vector<std::uint32_t>& digits) const {
    for (std::size_t i = radix.size(); i-- > 0;) {
      if (++digits[i] < radix[i]) return;
      digits[i] = 0;
    }
  }
};

// Linear candidates: per edge, in-edge matrices then the message matrix.
class LinearTester {
 public:
  explicit LinearTester(const Problem& p) : p_(p), decoder_(p.receiver_keys) {
    const std::size_t rows = p.k * p.s;
    offset_.resize(p.net.edge_count());
    std::size_t at = 0;
    for (EdgeId e = 0; e < p.net.edge_count(); ++e) {
      offset_[e] = at;
      const NodeId v = p.net.edge(e).tail;
      at += p.net.in_edges(v).size() * p.n * p.n;
      if (p.net.source_index(v)) at += p.k * p.n;
    }
    entries_ = at;
    global_.assign(p.net.edge_count(), std::vector<Element>(rows * p.n, 0));
  }

  std::size_t entries() const { return entries_; }

  // Returns the number of messages evaluated; sets ok when all agree.
  std::uint64_t test(const std::vector<std::uint32_t>& d, bool& ok) {
    const Algebra& alg = p_.alg;
    const std::size_t n = p_.n, k = p_.k, rows = k * p_.s;
    for (EdgeId e : p_.net.edge_order()) {
      auto& g = global_[e];
      std::fill(g.begin(), g.end(), 0);
      const NodeId v = p_.net.edge(e).tail;
      std::size_t at = offset_[e];
      for (EdgeId in : p_.net.in_edges(v)) {
        const auto& src = global_[in];
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < n; ++c) {
            Element acc = g[r * n + c];
            for (std::size_t m = 0; m < n; ++m)
              acc = alg.add(acc, alg.mul(src[r * n + m], static_cast<Element>(d[at + m * n + c])));
            g[r * n + c] = acc;
          }
        at += n * n;
      }
      if (auto i = p_.net.source_index(v)) {
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < n; ++c)
            g[(*i * k + r) * n + c] = static_cast<Element>(d[at + r * n + c]);
      }
    }
    decoder_.reset();
    std::uint64_t evals = 0;
    for (std::size_t m = 0; m < p_.messages.size(); ++m) {
      ++evals;
      if (!decoder_.force(key(m), p_.expected[m])) {
        ok = false;
        return evals;
      }
    }
    ok = true;
    return evals;
  }

  std::uint64_t key(std::size_t m) const {
    const Algebra& alg = p_.alg;
    const auto& x = p_.messages[m];
    std::uint64_t key = 0;
    for (EdgeId e : p_.receiver_in) {
      const auto& g = global_[e];
      for (std::size_t c = 0; c < p_.n; ++c) {
        Element acc = 0;
        for (std::size_t r : p_.nonzero[m]) acc = alg.add(acc, alg.mul(x[r], g[r * p_.n + c]));
        key = key * p_.q + acc;
      }
    }
    return key;
  }

  const ForcedDecoder& decoder() const { return decoder_; }

  std::vector<Encoder> encoders(const std::vector<std::uint32_t>& d) const {
    std::vector<Encoder> out;
    for (EdgeId e = 0; e < p_.net.edge_count(); ++e) {
      const NodeId v = p_.net.edge(e).tail;
      std::size_t at = offset_[e];
      LinearEncoder l;
      for (EdgeId in : p_.net.in_edges(v)) {
        Matrix g(p_.n, p_.n);
        for (std::size_t i = 0; i < p_.n * p_.n; ++i) g.entries[i] = static_cast<Element>(d[at + i]);
        l.terms.emplace_back(in, std::move(g));
        at += p_.n * p_.n;
      }
      if (p_.net.source_index(v)) {
        Matrix h(p_.k, p_.n);
        for (std::size_t i = 0; i < p_.k * p_.n; ++i) h.entries[i] = static_cast<Element>(d[at + i]);
        l.message = std::move(h);
      }
      out.emplace_back(std::move(l));
    }
    return out;
  }

 private:
  const Problem& p_;
  ForcedDecoder decoder_;
  std::vector<std::size_t> offset_;
  std::size_t entries_ = 0;
  std::vector<std::vector<Element>> global_;
};

// Table candidates: per edge, one packed n-vector per input key.
class TableTester {
 public:
  explicit TableTester(const Problem& p) : p_(p), decoder_(p.receiver_keys) {
    qn_ = saturating_pow(p.q, p.n);
    qk_ = saturating_pow(p.q, p.k);
    offset_.resize(p.net.edge_count());
    std::size_t at = 0;
    for (EdgeId e = 0; e < p.net.edge_count(); ++e) {
      const NodeId v = p.net.edge(e).tail;
      std::uint64_t keys = saturating_pow(qn_, p.net.in_edges(v).size());
      if (p.net.source_index(v)) keys = saturating_mul(keys, qk_);
      offset_[e] = at;
      keys_.push_back(keys);
      at = static_cast<std::size_t>(std::min<std::uint64_t>(at + keys, UINT32_MAX));
    }
    values_.resize(p.net.edge_count());
  }

  std::uint64_t positions() const {
    std::uint64_t t = 0;
    for (std::uint64_t k : keys_) t = std::min<std::uint64_t>(t + k, UINT64_MAX / 2);
    return t;
  }
  std::uint64_t qn() const { return qn_; }

  std::uint64_t test(const std::vector<std::uint32_t>& d, bool& ok) {
    decoder_.reset();
    std::uint64_t evals = 0;
    for (std::size_t m = 0; m < p_.messages.size(); ++m) {
      ++evals;
      if (!decoder_.force(key(d, m), p_.expected[m])) {
        ok = false;
        return evals;
      }
    }
    ok = true;
    return evals;
  }

  std::uint64_t key(const std::vector<std::uint32_t>& d, std::size_t m) {
    for (EdgeId e : p_.net.edge_order()) {
      const NodeId v = p_.net.edge(e).tail;
      std::uint64_t in = 0;
      for (EdgeId d_in : p_.net.in_edges(v)) in = in * qn_ + values_[d_in];
      if (auto i = p_.net.source_index(v)) in = in * qk_ + p_.packed[m][*i];
      values_[e] = d[offset_[e] + in];
    }
    std::uint64_t key = 0;
    for (EdgeId e : p_.receiver_in) key = key * qn_ + values_[e];
    return key;
  }

  const ForcedDecoder& decoder() const { return decoder_; }

  std::vector<Encoder> encoders(const std::vector<std::uint32_t>& d) const {
    std::vector<Encoder> out;
    for (EdgeId e = 0; e < p_.net.edge_count(); ++e) {
      const NodeId v = p_.net.edge(e).tail;
      TableEncoder t;
      t.table.input_len = p_.n * p_.net.in_edges(v).size() + (p_.net.source_index(v) ? p_.k : 0);
      t.table.output_len = p_.n;
      for (std::uint64_t key = 0; key < keys_[e]; ++key) {
        std::vector<Label> row(p_.n);
        std::uint64_t val = d[offset_[e] + key];
        for (std::size_t j = p_.n; j-- > 0;) {
          row[j] = static_cast<Label>(val % p_.q);
          val /= p_.q;
        }
        t.table.rows.emplace(key, std::move(row));
      }
      out.emplace_back(std::move(t));
    }
    return out;
  }

 private:
  const Problem& p_;
  ForcedDecoder decoder_;
  std::uint64_t qn_ = 1, qk_ = 1;
  std::vector<std::size_t> offset_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> values_;
};

struct BlockOutcome {
  bool done = false;
  std::uint64_t evaluations = 0;
  std::optional<std::uint64_t> found;
};

// Scans the space in fixed blocks. The answer is decided by walking blocks in
// order, so it does not depend on the number of workers.
template <class Tester>
SearchResult scan(const Problem& p, const Space& space, const SearchOptions& opts,
                  const std::function<NetworkCode(Tester&, const std::vector<std::uint32_t>&)>& build) {
  SearchResult res;
  res.candidates = space.total;
  const std::uint64_t blocks = (space.total + kBlock - 1) / kBlock;
  std::vector<BlockOutcome> outcome(blocks);
  std::atomic<std::uint64_t> next{0}, live{0}, found_block{UINT64_MAX};

  auto worker = [&] {
    Tester tester(p);
    std::vector<std::uint32_t> digits;
    while (true) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks || b > found_block.load() || live.load() > opts.budget) return;
      const std::uint64_t first = b * kBlock;
      const std::uint64_t last = std::min(space.total, first + kBlock);
      BlockOutcome& out = outcome[b];
      space.decode(first, digits);
      for (std::uint64_t idx = first; idx < last; ++idx) {
        bool ok = false;
        out.evaluations += tester.test(digits, ok);
        if (ok) {
          out.found = idx;
          break;
        }
        space.increment(digits);
      }
      out.done = true;
      live.fetch_add(out.evaluations);
      if (out.found) {
        std::uint64_t cur = found_block.load();
        while (b < cur && !found_block.compare_exchange_weak(cur, b)) {
        }
      }
    }
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::uint64_t spent = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const BlockOutcome& out = outcome[b];
    if (!out.done) throw Error("search stopped before reaching a decision");
    if (spent + out.evaluations > opts.budget) {
      res.status = SearchStatus::BudgetExceeded;
      res.evaluations = spent;
      res.remaining = space.total - b * kBlock;
      return res;
    }
    spent += out.evaluations;
    if (out.found) {
      Tester tester(p);
      std::vector<std::uint32_t> digits;
      space.decode(*out.found, digits);
      res.status = SearchStatus::Found;
      res.candidate_index = *out.found;
      res.evaluations = spent;
      res.code = build(tester, digits);
      return res;
    }
  }
  res.status = SearchStatus::None;
  res.evaluations = spent;
  return res;
}

SearchResult over_budget(std::uint64_t candidates) {
  SearchResult res;
  res.status = SearchStatus::BudgetExceeded;
  res.candidates = candidates;
  res.remaining = candidates;
  return res;
}

// Total decoder table from the forced map; unreached tuples decode to the first label.
TableDecoder forced_table(const Problem& p, const ForcedDecoder& dec) {
  TableDecoder t;
  t.table.input_len = p.n * p.receiver_in.size();
  t.table.output_len = p.k;
  const auto& labels = p.f.labels();
  for (std::uint64_t key = 0; key < p.receiver_keys; ++key) {
    std::uint64_t packed = dec.get(key).value_or(0);
    std::vector<Label> row(p.k);
    for (std::size_t j = p.k; j-- > 0;) {
      row[j] = labels[packed % labels.size()];
      packed /= labels.size();
    }
    t.table.rows.emplace(key, std::move(row));
  }
  return t;
}

NetworkCode checked(const Problem& p, NetworkCode code) {
  validate_code(p.net, code);
  if (!verify_code(p.net, code, p.f, UINT64_MAX).verified)
    throw Error("internal: search candidate failed re-verification");
  return code;
}

}  // namespace

SearchResult search_linear(const Network& net, const TargetFunction& f, std::size_t k,
                           std::size_t n, const SearchOptions& opts) {
  Problem p(net, f, k, n);
  if (prepare(p)) return over_budget(UINT64_MAX);
  LinearTester probe(p);
  Space space;
  space.radix.assign(probe.entries(), p.q);
  space.finish();
  if (space.total > opts.budget) return over_budget(space.total);
  return scan<LinearTester>(p, space, opts, [&p](LinearTester& t, const std::vector<std::uint32_t>& d) {
    bool ok = false;
    t.test(d, ok);
    NetworkCode code;
    code.alg = p.alg;
    code.k = p.k;
    code.n = p.n;
    code.encoders = t.encoders(d);
    code.decoder = forced_table(p, t.decoder());
    return checked(p, std::move(code));
  });
}

SearchResult search_general(const Network& net, const TargetFunction& f, std::size_t k,
                            std::size_t n, const SearchOptions& opts) {
  Problem p(net, f, k, n);
  if (prepare(p)) return over_budget(UINT64_MAX);
  TableTester probe(p);
  const std::uint64_t positions = probe.positions();
  if (positions > (1u << 20) || probe.qn() > UINT32_MAX) return over_budget(UINT64_MAX);
  Space space;
  space.radix.assign(positions, probe.qn());
  space.finish();
  if (space.total > opts.budget) return over_budget(space.total);
  return scan<TableTester>(p, space, opts, [&p](TableTester& t, const std::vector<std::uint32_t>& d) {
    bool ok = false;
    t.test(d, ok);
    NetworkCode code;
    code.alg = p.alg;
    code.k = p.k;
    code.n = p.n;
    code.encoders = t.encoders(d);
    code.decoder = forced_table(p, t.decoder());
    return checked(p, std::move(code));
  });
}

SweepReport achievability_sweep(const Network& net, const TargetFunction& f,
                                const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                const SearchOptions& opts) {
  SweepReport rep;
  rep.bounds = bound_report(net, f);
  for (const auto& [k, n] : pairs) {
    SweepCell cell;
    cell.k = k;
    cell.n = n;
    cell.linear = search_linear(net, f, k, n, opts);
    cell.general = search_general(net, f, k, n, opts);
    rep.cells.push_back(std::move(cell));
  }
  return rep;
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::None:
      return "exhausted-none";
    case SearchStatus::BudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

}  // namespace netcomp
