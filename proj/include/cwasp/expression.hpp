#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "cwasp/error.hpp"
#include "cwasp/graph.hpp"
#include "cwasp/program.hpp"

namespace cwasp {

/// Node kinds of a cwd-expression: i(v), ⊕, ρ_{i->j}, η_{i,j,ℓ}.
enum class Op { kIntroduce, kUnion, kRelabel, kEdge };

inline constexpr std::size_t kNoChild = std::numeric_limits<std::size_t>::max();

struct ExprNode {
  Op op = Op::kIntroduce;
  Vertex vertex;             // kIntroduce
  int label = 0;             // kIntroduce: label; kRelabel: from; kEdge: i
  int label2 = 0;            // kRelabel: to; kEdge: j
  Sign sign = Sign::kHead;   // kEdge
  std::size_t left = kNoChild;   // only child of kRelabel / kEdge
  std::size_t right = kNoChild;

  friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

/// Operator descriptor without children, e.g. "eta(h,1,2)" or "a(1,x)".
inline std::string describe(const ExprNode& n) {
  switch (n.op) {
    case Op::kIntroduce:
      return std::string(n.vertex.kind == VertexKind::kAtom ? "a(" : "r(") + std::to_string(n.label) + "," +
             n.vertex.name + ")";
    case Op::kUnion: return "oplus";
    case Op::kRelabel: return "rho(" + std::to_string(n.label) + "," + std::to_string(n.label2) + ")";
    case Op::kEdge:
      return "eta(" + std::string(to_string(n.sign)) + "," + std::to_string(n.label) + "," +
             std::to_string(n.label2) + ")";
  }
  return "?";
}

/// An immutable, well-formed cwd-expression.
///
/// Nodes are stored in post-order (children before parents, left subtree
/// before right), so a single forward pass is a bottom-up traversal and the
/// root is the last node.
class Expression {
 public:
  const std::vector<ExprNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t root() const { return nodes_.size() - 1; }
  const ExprNode& node(std::size_t i) const { return nodes_.at(i); }

  friend bool operator==(const Expression&, const Expression&) = default;

 private:
  friend class ExpressionBuilder;
  std::vector<ExprNode> nodes_;
};

/// Assembles expressions bottom-up. Each node may be used as a child once.
class ExpressionBuilder {
 public:
  using Ref = std::size_t;

  Ref introduce(int label, Vertex v) {
    ExprNode n;
    n.op = Op::kIntroduce;
    n.label = label;
    n.vertex = std::move(v);
    return push(std::move(n));
  }
  Ref atom(int label, std::string name) { return introduce(label, Vertex::atom(std::move(name))); }
  Ref rule(int label, std::string id) { return introduce(label, Vertex::rule(std::move(id))); }

  Ref oplus(Ref left, Ref right) {
    ExprNode n;
    n.op = Op::kUnion;
    n.left = left;
    n.right = right;
    return push(std::move(n));
  }
  Ref rho(int from, int to, Ref child) {
    ExprNode n;
    n.op = Op::kRelabel;
    n.label = from;
    n.label2 = to;
    n.left = child;
    return push(std::move(n));
  }
  Ref eta(Sign sign, int i, int j, Ref child) {
    ExprNode n;
    n.op = Op::kEdge;
    n.sign = sign;
    n.label = i;
    n.label2 = j;
    n.left = child;
    return push(std::move(n));
  }

  /// Copies the tree under `root` into post-order and checks well-formedness.
  Expression build(Ref root) const {
    if (root >= nodes_.size()) throw ValidationError("expression root out of range");
    Expression e;
    std::vector<bool> used(nodes_.size(), false);
    std::set<Vertex> introduced;
    // Iterative post-order: (builder ref, children already pushed).
    std::vector<std::pair<Ref, bool>> stack{{root, false}};
    std::vector<std::size_t> built;  // output indices of finished subtrees
    used[root] = true;
    while (!stack.empty()) {
      auto [ref, expanded] = stack.back();
      const ExprNode& n = nodes_[ref];
      if (!expanded) {
        stack.back().second = true;
        for (Ref child : {n.right, n.left}) {
          if (child == kNoChild) continue;
          if (child >= nodes_.size()) throw ValidationError("expression child out of range");
          if (used[child]) throw ValidationError("expression node used twice (not a tree)");
          used[child] = true;
          stack.push_back({child, false});
        }
        continue;
      }
      stack.pop_back();
      ExprNode out = n;
      check_node(out, introduced);
      if (n.op == Op::kUnion) {
        out.right = built.back();
        built.pop_back();
        out.left = built.back();
        built.pop_back();
      } else if (n.op != Op::kIntroduce) {
        out.left = built.back();
        built.pop_back();
      }
      e.nodes_.push_back(std::move(out));
      built.push_back(e.nodes_.size() - 1);
    }
    return e;
  }

 private:
  Ref push(ExprNode n) {
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  static void check_node(const ExprNode& n, std::set<Vertex>& introduced) {
    switch (n.op) {
      case Op::kIntroduce:
        if (n.label < 1) throw ValidationError("label must be positive in " + describe(n));
        if (n.vertex.name.empty()) throw ValidationError("empty vertex id");
        if (!introduced.insert(n.vertex).second) {
          throw ValidationError("vertex " + to_string(n.vertex) + " introduced twice");
        }
        break;
      case Op::kUnion:
        if (n.left == kNoChild || n.right == kNoChild) throw ValidationError("oplus needs two operands");
        break;
      case Op::kRelabel:
      case Op::kEdge:
        if (n.left == kNoChild) throw ValidationError(describe(n) + " needs an operand");
        if (n.label < 1 || n.label2 < 1) throw ValidationError("label must be positive in " + describe(n));
        if (n.op == Op::kEdge && n.label == n.label2) {
          throw ValidationError("edge insertion needs distinct labels: " + describe(n));
        }
        break;
    }
  }

  std::vector<ExprNode> nodes_;
};

// ---------------------------------------------------------------------------
// Text form
//
//   expr := "a(" int "," id ")" | "r(" int "," id ")" | "oplus(" expr "," expr ")"
//         | "rho(" int "," int "," expr ")" | "eta(" sign "," int "," int "," expr ")"
//   sign := "h" | "p" | "n" | "alpha"

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expression parse() {
    ExpressionBuilder b;
    auto root = expr(b);
    skip();
    if (pos_ < text_.size()) fail("trailing input");
    try {
      return b.build(root);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_, col_);
    }
  }

 private:
  ExpressionBuilder::Ref expr(ExpressionBuilder& b) {
    std::string head = word();
    expect('(');
    ExpressionBuilder::Ref out;
    if (head == "a" || head == "r") {
      int l = integer();
      expect(',');
      std::string id = word();
      if (id.empty()) fail("expected vertex id");
      out = head == "a" ? b.atom(l, id) : b.rule(l, id);
    } else if (head == "oplus") {
      auto left = expr(b);
      expect(',');
      auto right = expr(b);
      out = b.oplus(left, right);
    } else if (head == "rho") {
      int from = integer();
      expect(',');
      int to = integer();
      expect(',');
      out = b.rho(from, to, expr(b));
    } else if (head == "eta") {
      std::size_t line = line_, col = col_;
      std::string s = word();
      auto sign = parse_sign(s);
      if (!sign) throw ParseError("unknown sign '" + s + "'", line, col);
      expect(',');
      int i = integer();
      expect(',');
      line = line_;
      col = col_;
      int j = integer();
      if (i == j) throw ParseError("edge insertion needs distinct labels", line, col);
      expect(',');
      out = b.eta(*sign, i, j, expr(b));
    } else {
      fail("unknown operator '" + head + "'");
    }
    expect(')');
    return out;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) step();
  }
  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    step();
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      step();
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) step();
    if (start == pos_) fail("expected positive integer");
    auto digits = text_.substr(start, pos_ - start);
    if (digits.size() > 9) fail("label too large");
    int v = std::stoi(std::string(digits));
    if (v < 1) fail("labels are positive integers");
    return v;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

inline Expression parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Canonical text: no whitespace.
inline std::string serialize_expression(const Expression& e) {
  std::vector<std::string> text(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ExprNode& n = e.node(i);
    switch (n.op) {
      case Op::kIntroduce: text[i] = describe(n); break;
      case Op::kUnion: text[i] = "oplus(" + std::move(text[n.left]) + "," + std::move(text[n.right]) + ")"; break;
      case Op::kRelabel:
      case Op::kEdge: {
        std::string d = describe(n);
        d.pop_back();
        text[i] = d + "," + std::move(text[n.left]) + ")";
        break;
      }
    }
  }
  return text.back();
}

/// Sorted distinct labels occurring anywhere in the expression.
inline std::vector<int> labels_used(const Expression& e) {
  std::set<int> labels;
  for (const auto& n : e.nodes()) {
    labels.insert(n.label);
    if (n.op == Op::kRelabel || n.op == Op::kEdge) labels.insert(n.label2);
  }
  labels.erase(0);
  return {labels.begin(), labels.end()};
}

/// Number of distinct labels occurring in the expression.
inline int width(const Expression& e) { return static_cast<int>(labels_used(e).size()); }

/// Renumbers the labels to 1..width, preserving their order.
inline Expression compact_labels(const Expression& e) {
  auto used = labels_used(e);
  std::map<int, int> to;
  for (std::size_t i = 0; i < used.size(); ++i) to[used[i]] = static_cast<int>(i) + 1;
  ExpressionBuilder b;
  std::vector<ExpressionBuilder::Ref> refs(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ExprNode& n = e.node(i);
    switch (n.op) {
      case Op::kIntroduce: refs[i] = b.introduce(to[n.label], n.vertex); break;
      case Op::kUnion: refs[i] = b.oplus(refs[n.left], refs[n.right]); break;
      case Op::kRelabel: refs[i] = b.rho(to[n.label], to[n.label2], refs[n.left]); break;
      case Op::kEdge: refs[i] = b.eta(n.sign, to[n.label], to[n.label2], refs[n.left]); break;
    }
  }
  return b.build(refs.back());
}

/// Bottom-up semantics: disjoint union, relabeling, and ℓ-signed edges
/// between every i- and j-labelled vertex (existing same-sign edges are not
/// doubled). Putting a second sign on an existing pair is an EvaluationError.
inline LabeledSignedGraph evaluate(const Expression& e) {
  LabeledSignedGraph out;
  std::vector<std::vector<VertexIndex>> members(e.size());
  for (std::size_t idx = 0; idx < e.size(); ++idx) {
    const ExprNode& n = e.node(idx);
    switch (n.op) {
      case Op::kIntroduce:
        members[idx] = {out.graph.add_vertex(n.vertex)};
        out.labels.push_back(n.label);
        break;
      case Op::kUnion: {
        members[idx] = std::move(members[n.left]);
        auto& right = members[n.right];
        members[idx].insert(members[idx].end(), right.begin(), right.end());
        right.clear();
        break;
      }
      case Op::kRelabel:
        members[idx] = std::move(members[n.left]);
        for (VertexIndex v : members[idx]) {
          if (out.labels[v] == n.label) out.labels[v] = n.label2;
        }
        break;
      case Op::kEdge: {
        members[idx] = std::move(members[n.left]);
        std::vector<VertexIndex> from, to;
        for (VertexIndex v : members[idx]) {
          if (out.labels[v] == n.label) from.push_back(v);
          if (out.labels[v] == n.label2) to.push_back(v);
        }
        for (VertexIndex u : from) {
          for (VertexIndex w : to) out.graph.add_edge(u, w, n.sign);
        }
        break;
      }
    }
  }
  return out;
}

/// Difference between the graph an expression defines and a target graph.
struct GraphMismatch {
  struct Edge {
    Vertex u;
    Vertex v;
    Sign sign;
  };
  struct MisSigned {
    Vertex u;
    Vertex v;
    Sign expected;
    Sign actual;
  };

  std::vector<Vertex> missing_vertices;
  std::vector<Vertex> extra_vertices;
  std::vector<Edge> missing_edges;
  std::vector<Edge> extra_edges;
  std::vector<MisSigned> mis_signed;
  std::string evaluation_error;

  bool ok() const {
    return missing_vertices.empty() && extra_vertices.empty() && missing_edges.empty() && extra_edges.empty() &&
           mis_signed.empty() && evaluation_error.empty();
  }

  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    if (!evaluation_error.empty()) out.push_back("evaluation error: " + evaluation_error);
    for (const auto& v : missing_vertices) out.push_back("missing vertex " + to_string(v));
    for (const auto& v : extra_vertices) out.push_back("extra vertex " + to_string(v));
    auto edge = [](const Vertex& u, const Vertex& v) { return to_string(u) + " -- " + to_string(v); };
    for (const auto& e : missing_edges) {
      out.push_back("missing " + std::string(to_string(e.sign)) + "-edge " + edge(e.u, e.v));
    }
    for (const auto& e : extra_edges) out.push_back("extra " + std::string(to_string(e.sign)) + "-edge " + edge(e.u, e.v));
    for (const auto& e : mis_signed) {
      out.push_back("mis-signed edge " + edge(e.u, e.v) + ": expected " + std::string(to_string(e.expected)) +
                    ", got " + std::string(to_string(e.actual)));
    }
    return out;
  }
};

/// Compares vertex identities, kinds, edges and signs; labels are ignored.
inline GraphMismatch compare_graphs(const SignedGraph& actual, const SignedGraph& expected) {
  GraphMismatch m;
  for (const auto& v : expected.vertices()) {
    if (!actual.find(v)) m.missing_vertices.push_back(v);
  }
  for (const auto& v : actual.vertices()) {
    if (!expected.find(v)) m.extra_vertices.push_back(v);
  }
  using Key = std::pair<Vertex, Vertex>;
  auto keyed = [](const SignedGraph& g) {
    std::map<Key, Sign> out;
    for (const auto& [e, s] : g.edges()) {
      Vertex a = g.vertex(e.first), b = g.vertex(e.second);
      if (b < a) std::swap(a, b);
      out.emplace(Key{a, b}, s);
    }
    return out;
  };
  auto want = keyed(expected);
  auto have = keyed(actual);
  for (const auto& [k, s] : want) {
    auto it = have.find(k);
    if (it == have.end()) {
      m.missing_edges.push_back({k.first, k.second, s});
    } else if (it->second != s) {
      m.mis_signed.push_back({k.first, k.second, s, it->second});
    }
  }
  for (const auto& [k, s] : have) {
    if (!want.count(k)) m.extra_edges.push_back({k.first, k.second, s});
  }
  return m;
}

/// Checks that `e` defines sincG_L(Π) (sincG(Π) when `joined` is empty).
inline GraphMismatch validate_against(const Expression& e, const Program& program,
                                      const std::set<Sign>& joined = {}) {
  SignedGraph expected = join_signs(build_signed_incidence_graph(program), joined);
  try {
    return compare_graphs(evaluate(e).graph, expected);
  } catch (const EvaluationError& err) {
    GraphMismatch m;
    m.evaluation_error = err.what();
    return m;
  }
}

/// Checks that `e` defines incG(Π) with every edge labelled α.
inline GraphMismatch validate_against_unsigned(const Expression& e, const Program& program) {
  return validate_against(e, program, {Sign::kHead, Sign::kPos, Sign::kNeg});
}

/// Renames the signs in `joined` (a non-empty subset of {h,p,n}) to α.
inline Expression join_labels(const Expression& e, const std::set<Sign>& joined) {
  if (joined.empty()) throw ValidationError("join_labels needs at least one sign");
  if (joined.count(Sign::kAlpha)) throw ValidationError("join_labels takes signs from {h,p,n}");
  ExpressionBuilder b;
  std::vector<ExpressionBuilder::Ref> refs(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ExprNode& n = e.node(i);
    switch (n.op) {
      case Op::kIntroduce: refs[i] = b.introduce(n.label, n.vertex); break;
      case Op::kUnion: refs[i] = b.oplus(refs[n.left], refs[n.right]); break;
      case Op::kRelabel: refs[i] = b.rho(n.label, n.label2, refs[n.left]); break;
      case Op::kEdge:
        refs[i] = b.eta(joined.count(n.sign) ? Sign::kAlpha : n.sign, n.label, n.label2, refs[n.left]);
        break;
    }
  }
  return b.build(refs.back());
}

namespace detail {

/// Right-associated union of the given introduce terms.
inline ExpressionBuilder::Ref union_all(ExpressionBuilder& b, const std::vector<ExpressionBuilder::Ref>& parts) {
  if (parts.empty()) throw ValidationError("cannot build an expression for a graph without vertices");
  ExpressionBuilder::Ref acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = b.oplus(parts[i], acc);
  return acc;
}

}  // namespace detail

/// One label per vertex (atoms 1..|A|, then rules), everything unioned, then
/// one edge insertion per edge of sincG(Π) in rule order (head, positive,
/// negative body).
inline Expression trivial_expression(const Program& program) {
  ExpressionBuilder b;
  std::vector<ExpressionBuilder::Ref> parts;
  const int base = static_cast<int>(program.num_atoms());
  for (AtomId a = 0; a < program.num_atoms(); ++a) parts.push_back(b.atom(static_cast<int>(a) + 1, program.atom_name(a)));
  for (std::size_t r = 0; r < program.num_rules(); ++r) {
    parts.push_back(b.rule(base + static_cast<int>(r) + 1, program.rules()[r].id));
  }
  auto acc = detail::union_all(b, parts);
  for (std::size_t r = 0; r < program.num_rules(); ++r) {
    const Rule& rule = program.rules()[r];
    const int rl = base + static_cast<int>(r) + 1;
    for (AtomId a : rule.head) acc = b.eta(Sign::kHead, static_cast<int>(a) + 1, rl, acc);
    for (AtomId a : rule.pos_body) acc = b.eta(Sign::kPos, static_cast<int>(a) + 1, rl, acc);
    for (AtomId a : rule.neg_body) acc = b.eta(Sign::kNeg, static_cast<int>(a) + 1, rl, acc);
  }
  return b.build(acc);
}

namespace detail {

using SignedNeighbourhood = std::vector<std::pair<VertexIndex, Sign>>;

inline std::vector<SignedNeighbourhood> neighbourhoods(const SignedGraph& g) {
  std::vector<SignedNeighbourhood> out(g.size());
  for (const auto& [e, s] : g.edges()) {
    out[e.first].push_back({e.second, s});
    out[e.second].push_back({e.first, s});
  }
  for (auto& n : out) std::sort(n.begin(), n.end());
  return out;
}

/// Vertices with equal signed neighbourhoods share a label; all edges are
/// then inserted class by class.
inline Expression twin_class_expression(const SignedGraph& g) {
  const auto nbh = neighbourhoods(g);
  std::map<SignedNeighbourhood, int> class_label;
  std::vector<int> label(g.size());
  for (VertexIndex v = 0; v < g.size(); ++v) {
    auto [it, fresh] = class_label.emplace(nbh[v], static_cast<int>(class_label.size()) + 1);
    label[v] = it->second;
  }
  ExpressionBuilder b;
  std::vector<ExpressionBuilder::Ref> parts;
  for (VertexIndex v = 0; v < g.size(); ++v) parts.push_back(b.introduce(label[v], g.vertex(v)));
  auto acc = union_all(b, parts);
  std::set<std::tuple<int, int, Sign>> inserted;
  for (const auto& [e, s] : g.edges()) {
    int i = label[e.first], j = label[e.second];
    if (g.vertex(e.first).kind == VertexKind::kRule) std::swap(i, j);
    if (inserted.emplace(i, j, s).second) acc = b.eta(s, i, j, acc);
  }
  return b.build(acc);
}

/// Linear construction: vertices are added one at a time (greedily picking
/// the one that leaves the fewest classes) and processed vertices whose
/// signed neighbourhoods into the unprocessed part coincide are merged.
inline Expression greedy_linear_expression(const SignedGraph& g, bool greedy) {
  const std::size_t n = g.size();
  const auto nbh = neighbourhoods(g);
  std::vector<bool> done(n, false);
  // Current classes: label -> member vertices.
  std::map<int, std::vector<VertexIndex>> classes;

  auto remaining = [&](VertexIndex v, VertexIndex skip) {
    SignedNeighbourhood out;
    for (const auto& [w, s] : nbh[v]) {
      if (!done[w] && w != skip) out.push_back({w, s});
    }
    return out;
  };
  auto count_after = [&](VertexIndex cand) {
    std::set<SignedNeighbourhood> distinct;
    for (const auto& [l, members] : classes) distinct.insert(remaining(members.front(), cand));
    distinct.insert(remaining(cand, cand));
    return distinct.size();
  };
  auto fresh_label = [&]() {
    int l = 1;
    while (classes.count(l)) ++l;
    return l;
  };

  ExpressionBuilder b;
  std::optional<ExpressionBuilder::Ref> acc;
  for (std::size_t step = 0; step < n; ++step) {
    VertexIndex v = n;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (VertexIndex c = 0; c < n; ++c) {
      if (done[c]) continue;
      if (!greedy) {
        v = c;
        break;
      }
      std::size_t score = count_after(c);
      if (score < best) {
        best = score;
        v = c;
      }
    }
    const int lv = fresh_label();
    auto intro = b.introduce(lv, g.vertex(v));
    acc = acc ? b.oplus(*acc, intro) : intro;
    for (const auto& [l, members] : classes) {
      if (auto s = g.sign(members.front(), v)) {
        acc = g.vertex(v).kind == VertexKind::kRule ? b.eta(*s, l, lv, *acc) : b.eta(*s, lv, l, *acc);
      }
    }
    done[v] = true;
    classes[lv] = {v};
    // Merge classes with equal remaining neighbourhoods into the smallest label.
    std::map<SignedNeighbourhood, int> target;
    std::map<int, std::vector<VertexIndex>> merged;
    for (auto& [l, members] : classes) {
      auto [it, fresh] = target.emplace(remaining(members.front(), n), l);
      auto& into = merged[it->second];
      if (!fresh) acc = b.rho(l, it->second, *acc);
      into.insert(into.end(), members.begin(), members.end());
    }
    classes = std::move(merged);
  }
  return b.build(*acc);
}

}  // namespace detail

/// Best-effort low-width expression for sincG(Π): the narrower of a
/// twin-class construction and a greedy linear construction, never wider than
/// trivial_expression.
inline Expression heuristic_expression(const Program& program) {
  const SignedGraph g = build_signed_incidence_graph(program);
  Expression best = trivial_expression(program);
  auto consider = [&](Expression e) {
    if (width(e) < width(best)) best = std::move(e);
  };
  consider(detail::twin_class_expression(g));
  consider(detail::greedy_linear_expression(g, g.size() <= 200));
  return best;
}

}  // namespace cwasp
