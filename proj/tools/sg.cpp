// sg: command-line front end for the sgflow library.
// Exit codes: 0 success / affirmative, 1 negative verdict, 2 input error, 3 desk-scale limit, 4 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "sgflow/sgflow.hpp"

using namespace sgflow;

namespace {

constexpr int kYes = 0, kNo = 1, kInput = 2, kLimit = 3, kInternal = 4;

template <class F>
auto with_input(const std::string& path, F&& read) {
  if (path.empty() || path == "-") return read(std::cin);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return read(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

SignedGraph load_graph(const std::string& path) {
  return with_input(path, [](std::istream& in) { return io::read_graph(in); });
}

std::string edge_list(const std::vector<Edge>& es) {
  std::string s;
  for (Edge e : es) s += (s.empty() ? "" : " ") + std::to_string(e + 1);
  return s;
}

std::string edge_list(const EdgeSet& s) { return edge_list(members(s)); }

std::string cycle_text(const Cycle& c) {
  std::string s = "vertices";
  for (Vertex v : c.vertices) s += " " + std::to_string(v + 1);
  return s + " edges " + edge_list(c.edges);
}

std::vector<Edge> parse_edge_list(const std::string& text, std::size_t m) {
  std::vector<Edge> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw InputError("bad edge index '" + tok + "'");
    }
    if (pos != tok.size() || v < 1 || v > m) throw InputError("edge index '" + tok + "' out of range");
    out.push_back(v - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------------------------

int cmd_check(const std::string& what, const std::string& file, std::size_t k) {
  SignedGraph g = load_graph(file);
  if (what == "balance") {
    BalanceResult b = balance(g);
    if (b.balanced) {
      std::cout << "balanced\n";
      return kYes;
    }
    std::cout << "unbalanced\nnegative-cycle " << cycle_text(*b.negative_cycle) << '\n';
    return kNo;
  }
  if (what == "unbalanced") {
    auto small = min_negative_edges(g, 1);
    if (!small) {
      std::cout << "2-unbalanced\n";
      return kYes;
    }
    std::cout << "not 2-unbalanced: an equivalent signature has " << *small << " negative edge(s)\n";
    return kNo;
  }
  if (what == "connectivity") {
    std::size_t lambda = edge_connectivity(g);
    std::cout << "edge-connectivity " << lambda << '\n';
    return lambda >= (k ? k : 3) ? kYes : kNo;
  }
  if (what == "cyclic-connectivity") {
    std::size_t need = k ? k : 4;
    if (auto cut = find_cyclic_cut(g, need)) {
      std::cout << "cyclic cut of size " << cut->cut_edges.size() << ": edges " << edge_list(cut->cut_edges) << '\n';
      return kNo;
    }
    std::cout << "cyclically " << need << "-edge-connected\n";
    return kYes;
  }
  throw InputError("unknown check '" + what + "'");
}

int cmd_gen(const std::string& what, std::size_t n, std::uint64_t seed, double p_negative) {
  if (what == "k6-projective") {
    PsInstance inst = build_ps();
    io::write_embedding(std::cout, inst.k6, inst.face_choice);
    return kYes;
  }
  SignedGraph g;
  if (what == "negsun") {
    g = build_negative_sun(n ? n : 3);
  } else if (what == "random-cubic") {
    std::mt19937_64 rng(seed);
    g = gen::random_cubic_3connected(n ? n : 10, p_negative, rng);
  } else if (what == "sun-host") {
    g = gen::sun_host(n ? n : 3).graph;
  } else {
    bool found = false;
    for (auto& ng : gen::suite())
      if (ng.name == what) g = ng.graph, found = true;
    if (!found) throw InputError("unknown generator '" + what + "'");
  }
  io::write_graph(std::cout, g);
  return kYes;
}

int cmd_closure(const std::string& file, std::size_t k, const std::string& seeds) {
  SignedGraph g = load_graph(file);
  EdgeSet s = make_edge_set(g.num_edges(), parse_edge_list(seeds, g.num_edges()));
  ClosureResult r = k_closure_trace(g, s, k);
  std::cout << "closure " << edge_list(r.closure) << '\n';
  for (const ClosureStep& st : r.steps) std::cout << "step " << cycle_text(st.cycle) << " adds " << edge_list(st.added) << '\n';
  bool full = std::all_of(r.closure.begin(), r.closure.end(), [](bool b) { return b; });
  std::cout << (full ? "k-base\n" : "not a k-base\n");
  return full ? kYes : kNo;
}

int cmd_decompose(const std::string& mode, const std::string& file, bool assume, bool no_pre) {
  SignedGraph g = load_graph(file);
  PartitionCertificate c;
  switch (parse_partition_mode(mode)) {
    case PartitionMode::tree_2base:
      c = decompose_tree_2base(g);
      break;
    case PartitionMode::base_sun:
      c = decompose_base_sun(g, assume);
      break;
    case PartitionMode::general: {
      GeneralDecomposition d = decompose_general_run(g, !no_pre);
      std::cerr << "branch " << static_cast<int>(d.branch) + 1 << '\n';
      c = d.run.certificate;
      break;
    }
  }
  io::write_partition(std::cout, c);
  return kYes;
}

int cmd_connect(const std::string& file, const std::string& group, const std::string& forbidden, const std::string& hint,
                bool no_oracle) {
  SignedGraph g = load_graph(file);
  AbelianGroup A = AbelianGroup::parse(group);
  EdgeMap fbar(g.num_edges(), A.zero());
  if (!forbidden.empty())
    fbar = with_input(forbidden, [&](std::istream& in) { return io::read_edge_map(in, A, g.num_edges()); });
  ConnectHints hints;
  hints.allow_oracle = !no_oracle;
  if (!hint.empty()) {
    const std::string prefix = "projective:";
    if (hint.rfind(prefix, 0) != 0) throw InputError("hint must look like projective:EMBFILE");
    hints.projective = with_input(hint.substr(prefix.size()), [](std::istream& in) { return io::read_embedding(in); }).embedding;
  }
  ConnectOutcome o = connect(g, A, fbar, hints);
  if (!o.note.empty()) std::cerr << o.note << '\n';
  if (!o.certificate) {
    std::cout << "unsat strategy " << o.strategy << '\n';
    return kNo;
  }
  io::write_certificate(std::cout, *o.certificate);
  return kYes;
}

int cmd_oracle(const std::string& what, const std::string& file, const std::string& group, long long k, bool exact,
               std::uint64_t samples, std::uint64_t seed) {
  SignedGraph g = load_graph(file);
  if (what == "k-flow") {
    if (k < 2) throw InputError("k-flow needs --k K with K >= 2");
    auto f = has_nz_k_flow(g, k);
    if (!f) {
      std::cout << "unsat: no nowhere-zero " << k << "-flow\n";
      return kNo;
    }
    std::cout << "k-flow " << k << " (standard orientation)\n";
    for (Edge e = 0; e < g.num_edges(); ++e) std::cout << e + 1 << ' ' << (*f)[e] << '\n';
    return kYes;
  }
  if (group.empty()) throw InputError("--group is required");
  AbelianGroup A = AbelianGroup::parse(group);
  if (what == "nz-flow") {
    auto f = has_nz_A_flow(g, A);
    if (!f) {
      std::cout << "unsat: no nowhere-zero " << A.name() << "-flow\n";
      return kNo;
    }
    std::cout << "nz-flow " << A.name() << " (standard orientation)\n";
    io::write_map(std::cout, A, *f);
    return kYes;
  }
  if (what == "a-connected") {
    ConnectivityVerdict v = (exact || samples == 0) ? is_A_connected_exact(g, A) : is_A_connected_sampled(g, A, samples, seed);
    std::cout << "verdict " << to_string(v.verdict);
    if (v.verdict == Verdict::sampled_yes) std::cout << " samples " << v.checked << " seed " << v.seed;
    std::cout << '\n';
    if (v.witness_boundary) {
      std::cout << "witness-boundary\n";
      io::write_map(std::cout, A, *v.witness_boundary);
    }
    if (v.witness_forbidden) {
      std::cout << "witness-forbidden seed " << v.seed << '\n';
      io::write_map(std::cout, A, *v.witness_forbidden);
    }
    return v.verdict == Verdict::no ? kNo : kYes;
  }
  throw InputError("unknown oracle query '" + what + "'");
}

int cmd_dual(const std::string& file) {
  io::EmbeddingFile ef = with_input(file, [](std::istream& in) { return io::read_embedding(in); });
  const EmbeddedGraph& eg = ef.embedding;
  OrientedDual d = oriented_dual(eg, Orientation::standard(eg.graph), ef.face_choice);
  std::cout << "# " << d.faces.size() << " faces on the " << to_string(eg.surface) << '\n';
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    std::cout << "# face " << f + 1 << ':';
    for (const FaceStep& st : d.faces[f]) std::cout << ' ' << edge_of(st.half) + 1;
    std::cout << '\n';
  }
  io::write_graph(std::cout, d.graph);
  return kYes;
}

int cmd_verify(const std::string& cert_file, const std::string& graph_file) {
  SignedGraph g = load_graph(graph_file);
  std::string text = with_input(cert_file, [](std::istream& in) {
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  });
  std::istringstream probe(text);
  std::string head;
  probe >> head;
  std::istringstream in(text);
  VerifyResult r;
  if (head == "part") {
    r = verify_partition(g, io::read_partition(in, g.num_edges()));
  } else if (head == "cert") {
    r = verify_certificate(g, io::read_certificate(in));
  } else {
    throw InputError(cert_file + ": not a partition or flow certificate");
  }
  std::cout << (r.ok ? "ok" : "fail: " + r.reason) << '\n';
  return r.ok ? kYes : kNo;
}

int cmd_peripheral(const std::string& file, const std::string& sign, bool unbalanced_complement) {
  SignedGraph g = load_graph(file);
  PeripheralQuery q;
  if (sign == "negative") q.sign = -1;
  else if (sign == "positive") q.sign = 1;
  else if (sign != "any") throw InputError("--sign must be any, positive or negative");
  q.unbalanced_complement = unbalanced_complement;
  auto c = find_peripheral_cycle(g, q);
  if (!c) {
    std::cout << "none\n";
    return kNo;
  }
  std::cout << "peripheral " << cycle_text(*c) << '\n';
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed-graph flows: checks, decompositions, constructions, oracle"};
  app.require_subcommand(1);

  std::string file, what, group, forbidden, hint, seeds, sign = "any", cert_file;
  std::size_t k_conn = 0, n = 0, k_closure = 2;
  long long k_flow = 0;
  std::uint64_t seed = 1, samples = 0;
  double p_negative = 0.3;
  bool exact = false, assume = false, no_pre = false, no_oracle = false, unbal = false;

  auto* check = app.add_subcommand("check", "balance | unbalanced | connectivity | cyclic-connectivity");
  check->add_option("what", what)->required()->check(CLI::IsMember({"balance", "unbalanced", "connectivity", "cyclic-connectivity"}));
  check->add_option("file", file, "graph file (stdin if omitted)");
  check->add_option("--k", k_conn, "required connectivity (default 3, cyclic 4)");

  auto* genc = app.add_subcommand("gen", "petersen-ps | petersen-2neg | negsun N | k4-negtri | k6-projective | ...");
  genc->add_option("what", what)->required();
  genc->add_option("n", n, "size parameter");
  genc->add_option("--seed", seed);
  genc->add_option("--p-negative", p_negative);

  auto* closure = app.add_subcommand("closure", "k-closure of a seed edge set");
  closure->add_option("--k", k_closure)->default_val(2);
  closure->add_option("--seed-edges", seeds, "comma-separated 1-based edge indices")->required();
  closure->add_option("file", file);

  auto* decompose = app.add_subcommand("decompose", "tree-2base | base-sun | general");
  decompose->add_option("mode", what)->required()->check(CLI::IsMember({"tree-2base", "base-sun", "general"}));
  decompose->add_option("file", file);
  decompose->add_flag("--assume-hypotheses", assume, "base-sun: skip the hypothesis scan");
  decompose->add_flag("--no-preconditions", no_pre, "general: only require cubic and 3-connected");

  auto* connectc = app.add_subcommand("connect", "flow avoiding a forbidden map");
  connectc->add_option("--group", group)->required();
  connectc->add_option("--forbidden", forbidden, "edge map file (default: all zero)");
  connectc->add_option("--hint", hint, "projective:EMBFILE");
  connectc->add_flag("--no-oracle", no_oracle, "fail instead of falling back to search");
  connectc->add_option("file", file);

  auto* oracle = app.add_subcommand("oracle", "a-connected | nz-flow | k-flow");
  oracle->add_option("what", what)->required()->check(CLI::IsMember({"a-connected", "nz-flow", "k-flow"}));
  oracle->add_option("--group", group);
  oracle->add_option("--k", k_flow);
  oracle->add_flag("--exact", exact);
  oracle->add_option("--samples", samples);
  oracle->add_option("--seed", seed);
  oracle->add_option("file", file);

  auto* dual = app.add_subcommand("dual", "oriented dual of an embedding");
  dual->add_option("file", file);

  auto* verify = app.add_subcommand("verify", "check a partition or flow certificate");
  verify->add_option("cert", cert_file)->required();
  verify->add_option("graph", file)->required();

  auto* peripheral = app.add_subcommand("peripheral", "first peripheral cycle of a given sign");
  peripheral->add_option("--sign", sign);
  peripheral->add_flag("--unbalanced-complement", unbal);
  peripheral->add_option("file", file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kYes : kInput;
  }

  try {
    if (*check) return cmd_check(what, file, k_conn);
    if (*genc) return cmd_gen(what, n, seed, p_negative);
    if (*closure) return cmd_closure(file, k_closure, seeds);
    if (*decompose) return cmd_decompose(what, file, assume, no_pre);
    if (*connectc) return cmd_connect(file, group, forbidden, hint, no_oracle);
    if (*oracle) return cmd_oracle(what, file, group, k_flow, exact, samples, seed);
    if (*dual) return cmd_dual(file);
    if (*verify) return cmd_verify(cert_file, file);
    if (*peripheral) return cmd_peripheral(file, sign, unbal);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const LimitError& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInput;
}
