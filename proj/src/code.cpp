#include "netcomp/code.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "netcomp/error.hpp"

namespace netcomp {

namespace {

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("malformed " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::string("cannot open ") + what + " '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::uint64_t key_space(const Algebra& alg, std::size_t len) {
  const std::uint64_t n = saturating_pow(alg.size(), len);
  if (n == UINT64_MAX) throw InvalidArgument("table input tuples do not fit a 64-bit key");
  return n;
}

}  // namespace

SymbolTable parse_symbol_table(std::string_view text, const Algebra& alg, std::size_t input_len,
                               std::size_t output_len, bool outputs_are_elements) {
  key_space(alg, input_len);
  SymbolTable t{input_len, output_len, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("table line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string tok; ls >> tok;) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks.size() != input_len + output_len + 1 || toks[input_len] != "->")
      fail("expected " + std::to_string(input_len) + " inputs, '->' and " +
           std::to_string(output_len) + " outputs");
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < input_len; ++i) {
      const auto e = parse_number<std::uint64_t>(toks[i], "table input");
      if (e >= alg.size()) fail("input " + toks[i] + " is not an element of " + alg.spec());
      key = key * alg.size() + e;
    }
    std::vector<Label> out(output_len);
    for (std::size_t j = 0; j < output_len; ++j) {
      out[j] = parse_number<Label>(toks[input_len + 1 + j], "table output");
      if (outputs_are_elements && (out[j] < 0 || out[j] >= static_cast<Label>(alg.size())))
        fail("output " + toks[input_len + 1 + j] + " is not an element of " + alg.spec());
    }
    if (!t.rows.emplace(key, std::move(out)).second) fail("duplicate input tuple");
  }
  return t;
}

std::string format_symbol_table(const SymbolTable& t, const Algebra& alg) {
  std::ostringstream out;
  std::vector<Element> in(t.input_len);
  for (const auto& [key, values] : t.rows) {
    std::uint64_t rest = key;
    for (std::size_t i = t.input_len; i-- > 0;) {
      in[i] = static_cast<Element>(rest % alg.size());
      rest /= alg.size();
    }
    for (Element e : in) out << e << ' ';
    out << "->";
    for (Label v : values) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

namespace {

bool reads_edge(const Network& net, NodeId v, EdgeId e) {
  const auto& in = net.in_edges(v);
  return std::find(in.begin(), in.end(), e) != in.end();
}

std::size_t encoder_input_len(const Network& net, const NetworkCode& code, NodeId v) {
  return code.n * net.in_edges(v).size() + (net.source_index(v) ? code.k : 0);
}

void check_terms(const Network& net, NodeId v, const std::vector<std::pair<EdgeId, Matrix>>& terms,
                 std::size_t rows, std::size_t cols, const std::string& where) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [e, m] = terms[i];
    if (i > 0 && terms[i - 1].first >= e)
      throw InvalidArgument(where + ": terms must name distinct in-edges in ascending order");
    if (!reads_edge(net, v, e))
      throw InvalidArgument(where + ": edge " + std::to_string(e) + " is not an in-edge of " +
                            net.name(v));
    if (m.rows != rows || m.cols != cols)
      throw InvalidArgument(where + ": matrix for edge " + std::to_string(e) + " must be " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

void validate_code(const Network& net, const NetworkCode& code) {
  if (code.k == 0 || code.n == 0) throw InvalidArgument("k and n must be positive");
  if (code.encoders.size() != net.edge_count())
    throw InvalidArgument("code has " + std::to_string(code.encoders.size()) +
                          " encoders for " + std::to_string(net.edge_count()) + " edges");
  const Algebra& alg = code.alg;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const NodeId v = net.edge(e).tail;
    const bool source = net.source_index(v).has_value();
    const std::string where = "encoder " + std::to_string(e);
    if (const auto* r = std::get_if<RoutingEncoder>(&code.encoders[e])) {
      if (r->selectors.size() != code.n)
        throw InvalidArgument(where + ": routing needs " + std::to_string(code.n) + " selectors");
      for (const Selector& s : r->selectors) {
        if (s.kind == Selector::Kind::InEdge && (!reads_edge(net, v, s.index) || s.pos >= code.n))
          throw InvalidArgument(where + ": selector reads symbol " + std::to_string(s.pos) +
                                " of edge " + std::to_string(s.index) + ", not available at " +
                                net.name(v));
        if (s.kind == Selector::Kind::Message && (!source || s.pos >= code.k))
          throw InvalidArgument(where + ": message selector not available at " + net.name(v));
      }
    } else if (const auto* l = std::get_if<LinearEncoder>(&code.encoders[e])) {
      check_terms(net, v, l->terms, code.n, code.n, where);
      for (const auto& [id, m] : l->terms)
        for (Element x : m.entries)
          if (!alg.contains(x)) throw InvalidArgument(where + ": matrix entry out of range");
      if (l->message) {
        if (!source) throw InvalidArgument(where + ": " + net.name(v) + " has no message");
        if (l->message->rows != code.k || l->message->cols != code.n)
          throw InvalidArgument(where + ": message matrix must be " + std::to_string(code.k) +
                                "x" + std::to_string(code.n));
      }
    } else {
      const auto& t = std::get<TableEncoder>(code.encoders[e]).table;
      const std::size_t len = encoder_input_len(net, code, v);
      if (t.input_len != len || t.output_len != code.n)
        throw InvalidArgument(where + ": table must map " + std::to_string(len) + " symbols to " +
                              std::to_string(code.n));
      key_space(alg, len);
    }
  }
  const NodeId rho = net.receiver();
  if (const auto* t = std::get_if<TableDecoder>(&code.decoder)) {
    const std::size_t len = code.n * net.in_edges(rho).size();
    if (t->table.input_len != len || t->table.output_len != code.k)
      throw InvalidArgument("decoder table must map " + std::to_string(len) + " symbols to " +
                            std::to_string(code.k) + " values");
    if (t->table.rows.size() != key_space(alg, len))
      throw InvalidArgument("decoder table covers " + std::to_string(t->table.rows.size()) +
                            " of " + std::to_string(key_space(alg, len)) + " receiver tuples");
  } else {
    const auto& l = std::get<LinearDecoder>(code.decoder);
    check_terms(net, rho, l.terms, code.n, code.k, "decoder");
    if (l.value_map.size() != alg.size())
      throw InvalidArgument("decoder value map must cover all " + std::to_string(alg.size()) +
                            " elements");
  }
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

// Splits `key:rest rest ...` groups; a token containing ':' opens a new group.
std::vector<std::pair<std::string, std::string>> matrix_terms(const std::vector<std::string>& toks,
                                                              std::size_t begin, std::size_t end) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = begin; i < end; ++i) {
    const auto colon = toks[i].find(':');
    if (colon != std::string::npos) {
      out.emplace_back(toks[i].substr(0, colon), toks[i].substr(colon + 1));
    } else {
      if (out.empty()) throw ParseError("matrix text '" + toks[i] + "' before any '<edge>:'");
      out.back().second += " " + toks[i];
    }
  }
  return out;
}

Selector parse_selector(const std::string& tok) {
  if (tok == "z") return {Selector::Kind::Zero, 0, 0};
  const auto dot = tok.find('.');
  if (dot == std::string::npos) throw ParseError("malformed selector '" + tok + "'");
  const std::string head = tok.substr(0, dot);
  const auto pos = parse_number<std::size_t>(tok.substr(dot + 1), "selector position");
  if (head == "m") return {Selector::Kind::Message, 0, pos};
  return {Selector::Kind::InEdge, parse_number<std::size_t>(head, "selector edge"), pos};
}

std::string format_selector(const Selector& s) {
  switch (s.kind) {
    case Selector::Kind::Zero:
      return "z";
    case Selector::Kind::Message:
      return "m." + std::to_string(s.pos);
    case Selector::Kind::InEdge:
      return std::to_string(s.index) + "." + std::to_string(s.pos);
  }
  return {};
}

std::vector<Label> parse_value_map(const std::string& path, const Algebra& alg) {
  const SymbolTable t = parse_symbol_table(read_file(path, "decoder value map"), alg, 1, 1, false);
  if (t.rows.size() != alg.size())
    throw ParseError("decoder value map '" + path + "' must cover all " +
                     std::to_string(alg.size()) + " elements");
  std::vector<Label> out;
  for (const auto& [key, v] : t.rows) out.push_back(v[0]);
  return out;
}

}  // namespace

NetworkCode parse_code(std::string_view text, const Network& net, const Algebra& alg,
                       const std::string& base_dir) {
  NetworkCode code;
  code.alg = alg;
  std::optional<std::size_t> k, n;
  std::vector<std::optional<Encoder>> encoders(net.edge_count());
  std::optional<Decoder> decoder;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("code line " + std::to_string(lineno) + ": " + msg);
  };
  auto matrix = [&](const std::string& text, std::size_t rows, std::size_t cols) {
    try {
      return parse_matrix(text, rows, cols, alg);
    } catch (const ParseError& e) {
      fail(e.what());
    }
    return Matrix();
  };
  auto edge_id = [&](const std::string& tok) {
    const auto e = parse_number<std::size_t>(tok, "edge id");
    if (e >= net.edge_count()) fail("unknown edge id " + tok);
    return e;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "k" || toks[0] == "n") {
      if (toks.size() != 2) fail("expected '" + toks[0] + " <integer>'");
      auto& slot = toks[0] == "k" ? k : n;
      if (slot) fail("duplicate " + toks[0] + " header");
      slot = parse_number<std::size_t>(toks[1], toks[0]);
      if (*slot == 0) fail(toks[0] + " must be positive");
      continue;
    }
    if (!k || !n) fail("k and n headers must come first");
    if (toks[0] == "encoder") {
      if (toks.size() < 3) fail("expected 'encoder <edge-id> <kind> ...'");
      const EdgeId e = edge_id(toks[1]);
      if (encoders[e]) fail("duplicate encoder for edge " + toks[1]);
      const NodeId v = net.edge(e).tail;
      if (toks[2] == "routing") {
        RoutingEncoder r;
        for (std::size_t i = 3; i < toks.size(); ++i) r.selectors.push_back(parse_selector(toks[i]));
        encoders[e] = r;
      } else if (toks[2] == "linear") {
        LinearEncoder l;
        for (const auto& [key, body] : matrix_terms(toks, 3, toks.size())) {
          if (key == "msg") {
            if (l.message) fail("duplicate msg term");
            l.message = matrix(body, *k, *n);
          } else {
            l.terms.emplace_back(edge_id(key), matrix(body, *n, *n));
          }
        }
        encoders[e] = l;
      } else if (toks[2] == "table") {
        if (toks.size() != 4) fail("expected 'encoder <edge-id> table <path>'");
        const std::size_t len = *n * net.in_edges(v).size() + (net.source_index(v) ? *k : 0);
        TableEncoder t{toks[3], parse_symbol_table(read_file(resolve(base_dir, toks[3]),
                                                             "encoder table"),
                                                   alg, len, *n, true)};
        encoders[e] = std::move(t);
      } else {
        fail("unknown encoder kind '" + toks[2] + "'");
      }
    } else if (toks[0] == "decoder") {
      if (decoder) fail("duplicate decoder");
      if (toks.size() < 2) fail("expected 'decoder table <path>' or 'decoder linear ...'");
      if (toks[1] == "table") {
        if (toks.size() != 3) fail("expected 'decoder table <path>'");
        const std::size_t len = *n * net.in_edges(net.receiver()).size();
        TableDecoder t{toks[2], parse_symbol_table(read_file(resolve(base_dir, toks[2]),
                                                             "decoder table"),
                                                   alg, len, *k, false)};
        if (t.table.rows.size() != key_space(alg, len))
          fail("decoder table '" + toks[2] + "' is missing receiver tuples (" +
               std::to_string(t.table.rows.size()) + " of " +
               std::to_string(key_space(alg, len)) + ")");
        decoder = std::move(t);
      } else if (toks[1] == "linear") {
        const auto map_at = std::find(toks.begin(), toks.end(), "map");
        if (map_at == toks.end() || map_at + 2 != toks.end())
          fail("linear decoder must end with 'map identity' or 'map <path>'");
        LinearDecoder l;
        for (const auto& [key, body] :
             matrix_terms(toks, 2, static_cast<std::size_t>(map_at - toks.begin())))
          l.terms.emplace_back(edge_id(key), matrix(body, *n, *k));
        l.map_path = *(map_at + 1);
        if (l.map_path == "identity") {
          for (Element x = 0; x < alg.size(); ++x) l.value_map.push_back(x);
        } else {
          l.value_map = parse_value_map(resolve(base_dir, l.map_path), alg);
        }
        decoder = std::move(l);
      } else {
        fail("unknown decoder kind '" + toks[1] + "'");
      }
    } else {
      fail("unknown directive '" + toks[0] + "'");
    }
  }
  if (!k || !n) throw ParseError("code is missing its k or n header");
  code.k = *k;
  code.n = *n;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (!encoders[e]) throw ParseError("code has no encoder for edge " + std::to_string(e));
    code.encoders.push_back(std::move(*encoders[e]));
  }
  if (!decoder) throw ParseError("code has no decoder");
  code.decoder = std::move(*decoder);
  validate_code(net, code);
  return code;
}

NetworkCode load_code(const std::string& path, const Network& net, const Algebra& alg) {
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_code(read_file(path, "code file"), net, alg, dir.empty() ? "." : dir.string());
}

std::string serialize_code(const Network& net, const NetworkCode& code) {
  std::ostringstream out;
  out << "k " << code.k << "\nn " << code.n << "\n";
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    out << "encoder " << e;
    if (const auto* r = std::get_if<RoutingEncoder>(&code.encoders[e])) {
      out << " routing";
      for (const Selector& s : r->selectors) out << ' ' << format_selector(s);
    } else if (const auto* l = std::get_if<LinearEncoder>(&code.encoders[e])) {
      out << " linear";
      for (const auto& [id, m] : l->terms) out << ' ' << id << ':' << format_matrix(m);
      if (l->message) out << " msg:" << format_matrix(*l->message);
    } else {
      out << " table " << std::get<TableEncoder>(code.encoders[e]).path;
    }
    out << '\n';
  }
  if (const auto* t = std::get_if<TableDecoder>(&code.decoder)) {
    out << "decoder table " << t->path << '\n';
  } else {
    const auto& l = std::get<LinearDecoder>(code.decoder);
    out << "decoder linear";
    for (const auto& [id, m] : l.terms) out << ' ' << id << ':' << format_matrix(m);
    out << " map " << l.map_path << '\n';
  }
  return out.str();
}

void save_code(const std::string& path, const Network& net, NetworkCode& code) {
  const std::filesystem::path p(path);
  const std::string stem = p.stem().string();
  const auto dir = p.parent_path();
  auto side = [&](const std::string& suffix) {
    return std::make_pair(stem + suffix, (dir / (stem + suffix)).string());
  };
  for (EdgeId e = 0; e < code.encoders.size(); ++e)
    if (auto* t = std::get_if<TableEncoder>(&code.encoders[e])) {
      auto [rel, full] = side(".enc" + std::to_string(e) + ".tbl");
      t->path = rel;
      write_file(full, format_symbol_table(t->table, code.alg));
    }
  if (auto* t = std::get_if<TableDecoder>(&code.decoder)) {
    auto [rel, full] = side(".dec.tbl");
    t->path = rel;
    write_file(full, format_symbol_table(t->table, code.alg));
  } else {
    auto& l = std::get<LinearDecoder>(code.decoder);
    bool identity = true;
    for (Element x = 0; x < code.alg.size(); ++x) identity &= l.value_map[x] == Label(x);
    if (identity) {
      l.map_path = "identity";
    } else {
      auto [rel, full] = side(".map.tbl");
      l.map_path = rel;
      SymbolTable t{1, 1, {}};
      for (Element x = 0; x < code.alg.size(); ++x) t.rows[x] = {l.value_map[x]};
      write_file(full, format_symbol_table(t, code.alg));
    }
  }
  write_file(path, serialize_code(net, code));
}

Rational rate(const NetworkCode& code) {
  return Rational(static_cast<std::int64_t>(code.k), static_cast<std::int64_t>(code.n));
}

CodeEvaluator::CodeEvaluator(const Network& net, const NetworkCode& code)
    : net_(net), code_(code), k_(code.k), n_(code.n) {
  validate_code(net, code);
}

void CodeEvaluator::run(const std::vector<Element>& messages, std::vector<Element>& z,
                        std::vector<Label>& output) const {
  const Algebra& alg = code_.alg;
  const Element q = alg.size();
  z.assign(net_.edge_count() * n_, 0);
  auto message_of = [&](NodeId v) -> const Element* {
    const auto i = net_.source_index(v);
    return i ? messages.data() + *i * k_ : nullptr;
  };
  for (EdgeId e : net_.edge_order()) {
    const NodeId v = net_.edge(e).tail;
    Element* out = z.data() + e * n_;
    const Element* msg = message_of(v);
    if (const auto* r = std::get_if<RoutingEncoder>(&code_.encoders[e])) {
      for (std::size_t j = 0; j < n_; ++j) {
        const Selector& s = r->selectors[j];
        out[j] = s.kind == Selector::Kind::InEdge    ? z[s.index * n_ + s.pos]
                 : s.kind == Selector::Kind::Message ? msg[s.pos]
                                                     : 0;
      }
    } else if (const auto* l = std::get_if<LinearEncoder>(&code_.encoders[e])) {
      for (const auto& [in, g] : l->terms) {
        const Element* zin = z.data() + in * n_;
        for (std::size_t i = 0; i < n_; ++i) {
          if (zin[i] == 0) continue;
          for (std::size_t j = 0; j < n_; ++j) out[j] = alg.add(out[j], alg.mul(zin[i], g(i, j)));
        }
      }
      if (l->message)
        for (std::size_t i = 0; i < k_; ++i) {
          if (msg[i] == 0) continue;
          for (std::size_t j = 0; j < n_; ++j)
            out[j] = alg.add(out[j], alg.mul(msg[i], (*l->message)(i, j)));
        }
    } else {
      const auto& t = std::get<TableEncoder>(code_.encoders[e]).table;
      std::uint64_t key = 0;
      for (EdgeId in : net_.in_edges(v))
        for (std::size_t i = 0; i < n_; ++i) key = key * q + z[in * n_ + i];
      if (msg)
        for (std::size_t i = 0; i < k_; ++i) key = key * q + msg[i];
      const auto* row = t.find(key);
      if (!row)
        throw InvalidArgument("table encoder for edge " + std::to_string(e) +
                              " has no entry for a reachable input");
      for (std::size_t j = 0; j < n_; ++j) out[j] = static_cast<Element>((*row)[j]);
    }
  }
  const auto& in_rho = net_.in_edges(net_.receiver());
  output.assign(k_, 0);
  if (const auto* t = std::get_if<TableDecoder>(&code_.decoder)) {
    std::uint64_t key = 0;
    for (EdgeId in : in_rho)
      for (std::size_t i = 0; i < n_; ++i) key = key * q + z[in * n_ + i];
    const auto* row = t->table.find(key);
    if (!row) throw InvalidArgument("decoder table has no entry for a reachable tuple");
    output = *row;
  } else {
    const auto& l = std::get<LinearDecoder>(code_.decoder);
    std::vector<Element> y(k_, 0);
    for (const auto& [in, d] : l.terms) {
      const Element* zin = z.data() + in * n_;
      for (std::size_t i = 0; i < n_; ++i) {
        if (zin[i] == 0) continue;
        for (std::size_t j = 0; j < k_; ++j) y[j] = alg.add(y[j], alg.mul(zin[i], d(i, j)));
      }
    }
    for (std::size_t j = 0; j < k_; ++j) output[j] = l.value_map[y[j]];
  }
}

Evaluation evaluate(const Network& net, const NetworkCode& code, const MessageAssignment& msgs) {
  if (msgs.size() != net.source_count())
    throw InvalidArgument("message assignment needs one vector per source");
  std::vector<Element> flat;
  for (const auto& m : msgs) {
    if (m.size() != code.k) throw InvalidArgument("message vectors must have length k");
    for (Element x : m) {
      if (!code.alg.contains(x)) throw InvalidArgument("message symbol outside the alphabet");
      flat.push_back(x);
    }
  }
  const CodeEvaluator ev(net, code);
  std::vector<Element> z;
  Evaluation out;
  ev.run(flat, z, out.output);
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    out.edges.emplace_back(z.begin() + e * code.n, z.begin() + (e + 1) * code.n);
  return out;
}

namespace {

MessageAssignment unflatten(const std::vector<Element>& flat, std::size_t s, std::size_t k) {
  MessageAssignment m(s);
  for (std::size_t i = 0; i < s; ++i) m[i].assign(flat.begin() + i * k, flat.begin() + (i + 1) * k);
  return m;
}

void expected_values(const TargetFunction& f, const std::vector<Element>& flat, std::size_t s,
                     std::size_t k, std::vector<Element>& column, std::vector<Label>& out) {
  out.resize(k);
  column.resize(s);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < s; ++i) column[i] = flat[i * k + j];
    out[j] = f(column);
  }
}

void check_compatible(const Network& net, const NetworkCode& code, const TargetFunction& f) {
  if (f.arity() != net.source_count())
    throw InvalidArgument("target function arity does not match the number of sources");
  if (!(f.domain() == code.alg))
    throw InvalidArgument("target function domain " + f.domain().spec() +
                          " differs from the code alphabet " + code.alg.spec());
}

}  // namespace

VerifyResult verify_code(const Network& net, const NetworkCode& code, const TargetFunction& f,
                         std::uint64_t budget) {
  check_compatible(net, code, f);
  const std::size_t s = net.source_count();
  const std::size_t len = s * code.k;
  const std::uint64_t total = saturating_pow(code.alg.size(), len);
  if (total > budget)
    throw BudgetExceeded("exhaustive verification over |A|^(k s) message assignments", total, budget);
  const CodeEvaluator ev(net, code);
  std::vector<Element> msg(len, 0), z, column;
  std::vector<Label> out, want;
  VerifyResult res;
  for (std::uint64_t i = 0; i < total; ++i) {
    ev.run(msg, z, out);
    expected_values(f, msg, s, code.k, column, want);
    ++res.checked;
    if (out != want) {
      res.counterexample = Counterexample{unflatten(msg, s, code.k), want, out};
      return res;
    }
    for (std::size_t j = len; j-- > 0;) {
      if (++msg[j] < code.alg.size()) break;
      msg[j] = 0;
    }
  }
  res.verified = true;
  return res;
}

VerifyResult verify_random(const Network& net, const NetworkCode& code, const TargetFunction& f,
                           std::uint64_t count, std::uint64_t seed) {
  check_compatible(net, code, f);
  const std::size_t s = net.source_count();
  const std::size_t len = s * code.k;
  const CodeEvaluator ev(net, code);
  std::mt19937_64 rng(seed);
  std::vector<Element> msg(len), z, column;
  std::vector<Label> out, want;
  VerifyResult res;
  for (std::uint64_t i = 0; i < count; ++i) {
    for (auto& x : msg) x = static_cast<Element>(rng() % code.alg.size());
    ev.run(msg, z, out);
    expected_values(f, msg, s, code.k, column, want);
    ++res.checked;
    if (out != want) {
      res.counterexample = Counterexample{unflatten(msg, s, code.k), want, out};
      return res;
    }
  }
  res.verified = true;
  return res;
}

std::string format_messages(const MessageAssignment& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(m[i][j]);
    }
  }
  return out;
}

}  // namespace netcomp
