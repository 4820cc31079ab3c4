#pragma once

#include <istream>
#include <ostream>
#include <sstream>

#include "decompose.hpp"
#include "duality.hpp"
#include "flows.hpp"

namespace sgflow::io {

// All indices in text files are 1-based: vertex i, edge i (the i-th `e` line), face i.

namespace detail {

/// Non-empty, non-comment lines split into whitespace tokens, with their line numbers.
struct Lines {
  struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
  };
  std::vector<Line> lines;
  std::size_t pos = 0;

  explicit Lines(std::istream& in) {
    std::string text;
    std::size_t n = 0;
    while (std::getline(in, text)) {
      ++n;
      if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
      std::istringstream ss(text);
      Line l{n, {}};
      for (std::string t; ss >> t;) l.tokens.push_back(t);
      if (!l.tokens.empty()) lines.push_back(std::move(l));
    }
  }
  bool done() const { return pos >= lines.size(); }
  const Line& next(const char* what) {
    if (done()) throw InputError(std::string("unexpected end of input: expected ") + what);
    return lines[pos++];
  }
};

[[noreturn]] inline void fail(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

inline std::size_t parse_index(const std::string& tok, std::size_t limit, std::size_t line, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    fail(line, std::string("bad ") + what + " '" + tok + "'");
  }
  if (pos != tok.size() || v < 1 || v > limit) fail(line, std::string(what) + " '" + tok + "' out of range 1.." + std::to_string(limit));
  return static_cast<std::size_t>(v - 1);
}

inline std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    fail(line, std::string("bad ") + what + " '" + tok + "'");
  }
  if (pos != tok.size()) fail(line, std::string("bad ") + what + " '" + tok + "'");
  return static_cast<std::size_t>(v);
}

inline int parse_sign(const std::string& tok, std::size_t line) {
  if (tok == "+" || tok == "+1") return 1;
  if (tok == "-" || tok == "-1") return -1;
  fail(line, "sign must be + or -, got '" + tok + "'");
}

inline GroupElement parse_element(const AbelianGroup& A, const std::string& tok, std::size_t line) {
  try {
    return A.parse_element(tok);
  } catch (const InputError& e) {
    fail(line, e.what());
  }
}

inline void expect_arity(const Lines::Line& l, std::size_t n, const char* form) {
  if (l.tokens.size() != n) fail(l.number, std::string("expected '") + form + "'");
}

inline std::vector<std::size_t> parse_index_list(const Lines::Line& l, std::size_t from, std::size_t limit, const char* what) {
  std::vector<std::size_t> out;
  for (std::size_t i = from; i < l.tokens.size(); ++i) out.push_back(parse_index(l.tokens[i], limit, l.number, what));
  return out;
}

inline std::string sign_char(int s) { return s > 0 ? "+" : "-"; }

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Signed graphs: `sg <n> <m>` then m lines `e <u> <v> <+|->`.

inline SignedGraph read_graph(std::istream& in) {
  detail::Lines ls(in);
  const auto& h = ls.next("'sg <n> <m>' header");
  if (h.tokens[0] != "sg") detail::fail(h.number, "expected header 'sg <n> <m>'");
  detail::expect_arity(h, 3, "sg <n> <m>");
  std::size_t n = detail::parse_count(h.tokens[1], h.number, "vertex count");
  std::size_t m = detail::parse_count(h.tokens[2], h.number, "edge count");
  if (n == 0) detail::fail(h.number, "graph needs at least one vertex");
  SignedGraph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& l = ls.next("edge line 'e <u> <v> <+|->'");
    if (l.tokens[0] != "e") detail::fail(l.number, "expected edge line 'e <u> <v> <+|->'");
    detail::expect_arity(l, 4, "e <u> <v> <+|->");
    Vertex a = detail::parse_index(l.tokens[1], n, l.number, "vertex");
    Vertex b = detail::parse_index(l.tokens[2], n, l.number, "vertex");
    g.add_edge(a, b, detail::parse_sign(l.tokens[3], l.number));
  }
  if (!ls.done()) detail::fail(ls.lines[ls.pos].number, "trailing content after " + std::to_string(m) + " edges");
  return g;
}

inline void write_graph(std::ostream& out, const SignedGraph& g) {
  out << "sg " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (Edge e = 0; e < g.num_edges(); ++e)
    out << "e " << g.u(e) + 1 << ' ' << g.v(e) + 1 << ' ' << detail::sign_char(g.sign(e)) << '\n';
}

// ---------------------------------------------------------------------------------------------
// Edge and vertex maps: lines `<index> <coord,coord,...>`, every index exactly once.

inline std::vector<GroupElement> read_map(std::istream& in, const AbelianGroup& A, std::size_t size, const char* what) {
  detail::Lines ls(in);
  std::vector<GroupElement> f(size, A.zero());
  std::vector<bool> seen(size, false);
  while (!ls.done()) {
    const auto& l = ls.next(what);
    detail::expect_arity(l, 2, "<index> <element>");
    std::size_t i = detail::parse_index(l.tokens[0], size, l.number, what);
    if (seen[i]) detail::fail(l.number, std::string("duplicate ") + what + " " + l.tokens[0]);
    seen[i] = true;
    f[i] = detail::parse_element(A, l.tokens[1], l.number);
  }
  for (std::size_t i = 0; i < size; ++i)
    if (!seen[i]) throw InputError(std::string("map misses ") + what + " " + std::to_string(i + 1));
  return f;
}

inline EdgeMap read_edge_map(std::istream& in, const AbelianGroup& A, std::size_t m) { return read_map(in, A, m, "edge"); }
inline VertexMap read_vertex_map(std::istream& in, const AbelianGroup& A, std::size_t n) { return read_map(in, A, n, "vertex"); }

inline void write_map(std::ostream& out, const AbelianGroup& A, const std::vector<GroupElement>& f) {
  for (std::size_t i = 0; i < f.size(); ++i) out << i + 1 << ' ' << A.format(f[i]) << '\n';
}

// ---------------------------------------------------------------------------------------------
// Embeddings: `emb <plane|projective> <n> <m>`, m edge lines, n rotation lines `r <v> <h>...` where a
// half-edge is written `<edge>a` (first end) or `<edge>b` (second end), m sign lines `s <e> <+|->`,
// and an optional face orientation line `f <+|->...`.

struct EmbeddingFile {
  EmbeddedGraph embedding;
  FaceOrientationChoice face_choice;  // empty when absent
};

inline EmbeddingFile read_embedding(std::istream& in) {
  detail::Lines ls(in);
  const auto& h = ls.next("'emb <surface> <n> <m>' header");
  if (h.tokens[0] != "emb") detail::fail(h.number, "expected header 'emb <surface> <n> <m>'");
  detail::expect_arity(h, 4, "emb <surface> <n> <m>");
  EmbeddingFile r;
  EmbeddedGraph& eg = r.embedding;
  if (h.tokens[1] == "plane") eg.surface = Surface::plane;
  else if (h.tokens[1] == "projective") eg.surface = Surface::projective;
  else detail::fail(h.number, "surface must be 'plane' or 'projective'");
  std::size_t n = detail::parse_count(h.tokens[2], h.number, "vertex count");
  std::size_t m = detail::parse_count(h.tokens[3], h.number, "edge count");
  eg.graph = SignedGraph(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& l = ls.next("edge line 'e <u> <v>'");
    if (l.tokens[0] != "e" || (l.tokens.size() != 3 && l.tokens.size() != 4)) detail::fail(l.number, "expected 'e <u> <v>'");
    eg.graph.add_edge(detail::parse_index(l.tokens[1], n, l.number, "vertex"),
                      detail::parse_index(l.tokens[2], n, l.number, "vertex"), +1);
  }
  eg.rotation.assign(n, {});
  eg.edge_sign.assign(m, 1);
  std::vector<bool> have_rot(n, false), have_sign(m, false);
  while (!ls.done()) {
    const auto& l = ls.next("embedding line");
    const std::string& kind = l.tokens[0];
    if (kind == "r") {
      if (l.tokens.size() < 2) detail::fail(l.number, "expected 'r <v> <half-edges>'");
      Vertex v = detail::parse_index(l.tokens[1], n, l.number, "vertex");
      if (have_rot[v]) detail::fail(l.number, "second rotation for vertex " + l.tokens[1]);
      have_rot[v] = true;
      for (std::size_t i = 2; i < l.tokens.size(); ++i) {
        std::string t = l.tokens[i];
        if (t.size() < 2 || (t.back() != 'a' && t.back() != 'b')) detail::fail(l.number, "half-edge '" + t + "' must look like 3a or 3b");
        Edge e = detail::parse_index(t.substr(0, t.size() - 1), m, l.number, "edge");
        HalfEdge hh = half_of(e, t.back() == 'a' ? 0 : 1);
        if (eg.graph.endpoint(hh) != v) detail::fail(l.number, "half-edge '" + t + "' is not at vertex " + l.tokens[1]);
        eg.rotation[v].push_back(hh);
      }
    } else if (kind == "s") {
      detail::expect_arity(l, 3, "s <e> <+|->");
      Edge e = detail::parse_index(l.tokens[1], m, l.number, "edge");
      if (have_sign[e]) detail::fail(l.number, "second sign for edge " + l.tokens[1]);
      have_sign[e] = true;
      eg.edge_sign[e] = detail::parse_sign(l.tokens[2], l.number);
    } else if (kind == "f") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) r.face_choice.push_back(detail::parse_sign(l.tokens[i], l.number));
    } else {
      detail::fail(l.number, "unknown embedding line '" + kind + "'");
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (!have_rot[v]) throw InputError("embedding: no rotation line for vertex " + std::to_string(v + 1));
  eg.validate();
  return r;
}

inline void write_embedding(std::ostream& out, const EmbeddedGraph& eg, const FaceOrientationChoice& choice = {}) {
  const SignedGraph& g = eg.graph;
  out << "emb " << to_string(eg.surface) << ' ' << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (Edge e = 0; e < g.num_edges(); ++e) out << "e " << g.u(e) + 1 << ' ' << g.v(e) + 1 << '\n';
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    out << "r " << v + 1;
    for (HalfEdge h : eg.rotation[v]) out << ' ' << edge_of(h) + 1 << (h % 2 == 0 ? 'a' : 'b');
    out << '\n';
  }
  for (Edge e = 0; e < g.num_edges(); ++e) out << "s " << e + 1 << ' ' << detail::sign_char(eg.edge_sign[e]) << '\n';
  if (!choice.empty()) {
    out << 'f';
    for (int c : choice) out << ' ' << detail::sign_char(c);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------------------------
// Partition certificates: `part <mode>`, lines `X1:`, `X2:`, `F:` with edge indices, and an
// optional `flags: assume-hypotheses` line.

inline void write_partition(std::ostream& out, const PartitionCertificate& c) {
  out << "part " << to_string(c.mode) << '\n';
  auto line = [&](const char* name, const EdgeSet& s) {
    out << name;
    for (Edge e : members(s)) out << ' ' << e + 1;
    out << '\n';
  };
  line("X1:", c.X1);
  line("X2:", c.X2);
  line("F:", c.F);
  if (c.assume_hypotheses) out << "flags: assume-hypotheses\n";
}

inline PartitionCertificate read_partition(std::istream& in, std::size_t m) {
  detail::Lines ls(in);
  const auto& h = ls.next("'part <mode>' header");
  if (h.tokens[0] != "part") detail::fail(h.number, "expected header 'part <mode>'");
  detail::expect_arity(h, 2, "part <mode>");
  PartitionCertificate c;
  try {
    c.mode = parse_partition_mode(h.tokens[1]);
  } catch (const InputError& e) {
    detail::fail(h.number, e.what());
  }
  c.X1.assign(m, false);
  c.X2.assign(m, false);
  c.F.assign(m, false);
  bool have[3] = {false, false, false};
  while (!ls.done()) {
    const auto& l = ls.next("certificate line");
    const std::string& k = l.tokens[0];
    EdgeSet* target = nullptr;
    int slot = -1;
    if (k == "X1:") target = &c.X1, slot = 0;
    else if (k == "X2:") target = &c.X2, slot = 1;
    else if (k == "F:") target = &c.F, slot = 2;
    else if (k == "flags:") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        if (l.tokens[i] == "assume-hypotheses") c.assume_hypotheses = true;
        else detail::fail(l.number, "unknown flag '" + l.tokens[i] + "'");
      }
      continue;
    } else {
      detail::fail(l.number, "unknown certificate line '" + k + "'");
    }
    if (have[slot]) detail::fail(l.number, "duplicate " + k + " line");
    have[slot] = true;
    for (std::size_t e : detail::parse_index_list(l, 1, m, "edge")) (*target)[e] = true;
  }
  if (!have[0] || !have[1] || !have[2]) throw InputError("partition certificate needs X1:, X2: and F: lines");
  return c;
}

// ---------------------------------------------------------------------------------------------
// Flow certificates:
//   cert <strategy> <group> <m>
//   o <e> <+|-> <+|->          orientation of both half-edges (+ points away from the endpoint)
//   v <e> <flow> <forbidden>
//   x <name> ...               replay artifacts; ignored by the verifier

inline void write_certificate(std::ostream& out, const AvoidanceCertificate& c) {
  const AbelianGroup& A = c.group;
  const std::size_t m = c.flow.size();
  out << "cert " << c.strategy << ' ' << A.name() << ' ' << m << '\n';
  for (Edge e = 0; e < m; ++e)
    out << "o " << e + 1 << ' ' << detail::sign_char(c.tau[2 * e]) << ' ' << detail::sign_char(c.tau[2 * e + 1]) << '\n';
  for (Edge e = 0; e < m; ++e) out << "v " << e + 1 << ' ' << A.format(c.flow[e]) << ' ' << A.format(c.fbar[e]) << '\n';
  const AvoidanceArtifacts& a = c.artifacts;
  if (a.reduction_steps) out << "x reduction-steps " << a.reduction_steps << '\n';
  if (a.special_edge) out << "x special-edge " << *a.special_edge + 1 << '\n';
  if (!a.b_pair.empty()) out << "x b-pair " << a.b_pair[0] + 1 << ' ' << a.b_pair[1] + 1 << '\n';
  if (a.psi_sign < 0) out << "x psi-sign -\n";
  auto group_map = [&](const char* name, const std::optional<std::vector<GroupElement>>& f) {
    if (!f) return;
    out << "x " << name;
    for (GroupElement x : *f) out << ' ' << A.format(x);
    out << '\n';
  };
  group_map("phi1", a.phi1);
  group_map("phi2", a.phi2);
  group_map("sun-flow", a.sun_flow);
  group_map("coloring", a.coloring);
  if (a.psi) {
    out << "x psi";
    for (long long v : *a.psi) out << ' ' << v;
    out << '\n';
  }
  for (const ClosureStep& st : a.cycles) {
    out << "x cycle";
    for (Edge e : st.cycle.edges) out << ' ' << e + 1;
    out << " W";
    for (Edge e : st.added) out << ' ' << e + 1;
    out << '\n';
  }
}

inline AvoidanceCertificate read_certificate(std::istream& in) {
  detail::Lines ls(in);
  const auto& h = ls.next("'cert <strategy> <group> <m>' header");
  if (h.tokens[0] != "cert") detail::fail(h.number, "expected header 'cert <strategy> <group> <m>'");
  detail::expect_arity(h, 4, "cert <strategy> <group> <m>");
  AvoidanceCertificate c;
  c.strategy = h.tokens[1];
  try {
    c.group = AbelianGroup::parse(h.tokens[2]);
  } catch (const InputError& e) {
    detail::fail(h.number, e.what());
  }
  const std::size_t m = detail::parse_count(h.tokens[3], h.number, "edge count");
  std::vector<std::int8_t> t(2 * m, 0);
  c.flow.assign(m, c.group.zero());
  c.fbar.assign(m, c.group.zero());
  std::vector<bool> have_o(m, false), have_v(m, false);
  while (!ls.done()) {
    const auto& l = ls.next("certificate line");
    const std::string& k = l.tokens[0];
    if (k == "o") {
      detail::expect_arity(l, 4, "o <e> <+|-> <+|->");
      Edge e = detail::parse_index(l.tokens[1], m, l.number, "edge");
      if (have_o[e]) detail::fail(l.number, "duplicate orientation for edge " + l.tokens[1]);
      have_o[e] = true;
      t[2 * e] = static_cast<std::int8_t>(detail::parse_sign(l.tokens[2], l.number));
      t[2 * e + 1] = static_cast<std::int8_t>(detail::parse_sign(l.tokens[3], l.number));
    } else if (k == "v") {
      detail::expect_arity(l, 4, "v <e> <flow> <forbidden>");
      Edge e = detail::parse_index(l.tokens[1], m, l.number, "edge");
      if (have_v[e]) detail::fail(l.number, "duplicate value for edge " + l.tokens[1]);
      have_v[e] = true;
      c.flow[e] = detail::parse_element(c.group, l.tokens[2], l.number);
      c.fbar[e] = detail::parse_element(c.group, l.tokens[3], l.number);
    } else if (k != "x") {
      detail::fail(l.number, "unknown certificate line '" + k + "'");
    }
  }
  for (Edge e = 0; e < m; ++e)
    if (!have_o[e] || !have_v[e]) throw InputError("certificate misses edge " + std::to_string(e + 1));
  c.tau = Orientation(std::move(t));
  return c;
}

}  // namespace sgflow::io
