#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwasp/error.hpp"

namespace cwasp {

/// Index of an atom inside its owning Program.
using AtomId = std::size_t;

/// A set of atoms of one Program (an interpretation).
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(std::size_t universe) : members_(universe, false) {}
  AtomSet(std::size_t universe, std::initializer_list<AtomId> atoms) : members_(universe, false) {
    for (AtomId a : atoms) insert(a);
  }

  /// Bit a of `mask` decides membership of atom a.
  static AtomSet from_mask(std::size_t universe, std::uint64_t mask) {
    AtomSet s(universe);
    for (std::size_t a = 0; a < universe && a < 64; ++a) s.members_[a] = ((mask >> a) & 1U) != 0;
    return s;
  }

  std::size_t universe() const { return members_.size(); }
  bool contains(AtomId a) const { return a < members_.size() && members_[a]; }
  void insert(AtomId a) {
    if (a >= members_.size()) throw ValidationError("atom index out of range");
    members_[a] = true;
  }
  void erase(AtomId a) {
    if (a < members_.size()) members_[a] = false;
  }
  std::size_t count() const { return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true)); }
  bool empty() const { return count() == 0; }

  std::vector<AtomId> members() const {
    std::vector<AtomId> out;
    for (AtomId a = 0; a < members_.size(); ++a) {
      if (members_[a]) out.push_back(a);
    }
    return out;
  }

  bool is_subset_of(const AtomSet& other) const {
    for (AtomId a = 0; a < members_.size(); ++a) {
      if (members_[a] && !other.contains(a)) return false;
    }
    return true;
  }

  friend bool operator==(const AtomSet&, const AtomSet&) = default;

 private:
  std::vector<bool> members_;
};

/// A ground disjunctive rule  head :- pos_body, not neg_body.
struct Rule {
  std::string id;
  std::vector<AtomId> head;
  std::vector<AtomId> pos_body;
  std::vector<AtomId> neg_body;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// A ground disjunctive program: ordered atoms and ordered rules.
///
/// The constructor does not check invariants so that `validate_program` can
/// report on arbitrary input; everything produced by the parser and the
/// generators is valid.
class Program {
 public:
  Program() = default;
  Program(std::vector<std::string> atoms, std::vector<Rule> rules)
      : atoms_(std::move(atoms)), rules_(std::move(rules)) {}

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t num_rules() const { return rules_.size(); }
  const std::string& atom_name(AtomId a) const { return atoms_.at(a); }

  std::optional<AtomId> find_atom(std::string_view name) const {
    for (AtomId a = 0; a < atoms_.size(); ++a) {
      if (atoms_[a] == name) return a;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> find_rule(std::string_view id) const {
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (rules_[r].id == id) return r;
    }
    return std::nullopt;
  }

  AtomSet atom_set(std::initializer_list<std::string_view> names) const {
    AtomSet s(atoms_.size());
    for (auto n : names) {
      auto a = find_atom(n);
      if (!a) throw ValidationError("unknown atom '" + std::string(n) + "'");
      s.insert(*a);
    }
    return s;
  }

  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::vector<std::string> atoms_;
  std::vector<Rule> rules_;
};

/// Incremental construction of a Program by atom name.
class ProgramBuilder {
 public:
  AtomId atom(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    index_.emplace(name, atoms_.size());
    atoms_.push_back(name);
    return atoms_.size() - 1;
  }

  /// Adds a rule; an empty id means "r<position>" (1-based).
  ProgramBuilder& rule(const std::vector<std::string>& head, const std::vector<std::string>& pos,
                       const std::vector<std::string>& neg, std::string id = {}) {
    Rule r;
    r.id = id.empty() ? "r" + std::to_string(rules_.size() + 1) : std::move(id);
    auto fill = [this](const std::vector<std::string>& names, std::vector<AtomId>& out) {
      for (const auto& n : names) {
        AtomId a = atom(n);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
      }
    };
    fill(head, r.head);
    fill(pos, r.pos_body);
    fill(neg, r.neg_body);
    rules_.push_back(std::move(r));
    return *this;
  }

  Program build() const { return Program(atoms_, rules_); }

 private:
  std::vector<std::string> atoms_;
  std::map<std::string, AtomId> index_;
  std::vector<Rule> rules_;
};

/// I is a model of r iff (p(r) ⊆ I and n(r) ∩ I = ∅) implies h(r) ∩ I ≠ ∅.
inline bool is_model_of_rule(const Rule& r, const AtomSet& interpretation) {
  for (AtomId a : r.pos_body) {
    if (!interpretation.contains(a)) return true;
  }
  for (AtomId a : r.neg_body) {
    if (interpretation.contains(a)) return true;
  }
  for (AtomId a : r.head) {
    if (interpretation.contains(a)) return true;
  }
  return false;
}

inline bool is_model(const Program& program, const AtomSet& interpretation) {
  for (const Rule& r : program.rules()) {
    if (!is_model_of_rule(r, interpretation)) return false;
  }
  return true;
}

/// Gelfond-Lifschitz reduct: drops rules whose negative body meets I and
/// strips the negative body of the rest. Rule ids are kept.
inline Program reduct(const Program& program, const AtomSet& interpretation) {
  std::vector<Rule> kept;
  for (const Rule& r : program.rules()) {
    bool blocked = std::any_of(r.neg_body.begin(), r.neg_body.end(),
                               [&](AtomId a) { return interpretation.contains(a); });
    if (blocked) continue;
    Rule plus = r;
    plus.neg_body.clear();
    kept.push_back(std::move(plus));
  }
  return Program(program.atoms(), std::move(kept));
}

/// Itemized invariant violations; empty means the program is valid.
struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

inline bool is_atom_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) return false;
  if (s == "not") return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline bool is_rule_id(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

inline ValidationReport validate_program(const Program& program) {
  ValidationReport report;
  std::set<std::string> names;
  for (const auto& n : program.atoms()) {
    if (!is_atom_name(n)) report.issues.push_back("invalid atom name '" + n + "'");
    if (!names.insert(n).second) report.issues.push_back("duplicate atom name '" + n + "'");
  }
  std::set<std::string> ids;
  for (const Rule& r : program.rules()) {
    if (!is_rule_id(r.id)) report.issues.push_back("invalid rule id '" + r.id + "'");
    if (!ids.insert(r.id).second) report.issues.push_back("duplicate rule id '" + r.id + "'");
    std::map<AtomId, const char*> seen;
    auto check_part = [&](const std::vector<AtomId>& part, const char* part_name) {
      for (AtomId a : part) {
        if (a >= program.num_atoms()) {
          report.issues.push_back("rule '" + r.id + "' references unknown atom index " + std::to_string(a));
          continue;
        }
        auto [it, fresh] = seen.emplace(a, part_name);
        if (fresh) continue;
        if (it->second == part_name) {
          report.issues.push_back("rule '" + r.id + "' lists atom '" + program.atom_name(a) + "' twice in its " +
                                  part_name);
        } else {
          report.issues.push_back("rule '" + r.id + "' has atom '" + program.atom_name(a) + "' in both " +
                                  it->second + " and " + part_name);
        }
      }
    };
    check_part(r.head, "head");
    check_part(r.pos_body, "positive body");
    check_part(r.neg_body, "negative body");
  }
  return report;
}

namespace detail {

class ProgramLexer {
 public:
  explicit ProgramLexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool peek_str(std::string_view s) {
    skip_space();
    return text_.substr(pos_, s.size()) == s;
  }
  void expect(std::string_view s) {
    if (!peek_str(s)) fail("expected '" + std::string(s) + "'");
    for (std::size_t i = 0; i < s.size(); ++i) advance();
  }
  bool accept(std::string_view s) {
    if (!peek_str(s)) return false;
    for (std::size_t i = 0; i < s.size(); ++i) advance();
    return true;
  }
  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      advance();
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace detail

/// Parses the line-oriented program format:
///
///     [@id:] a | b :- c, not d.      % comment
///     #atoms a b c d.                % declares atoms (fixes their order)
///
/// Atoms are numbered in order of first occurrence; unnamed rules get the id
/// r<position>. An atom in two parts of one rule is a normalization error.
inline Program parse_program(std::string_view text) {
  detail::ProgramLexer lex(text);
  ProgramBuilder builder;
  std::size_t rule_count = 0;
  std::set<std::string> ids;

  auto read_atom = [&lex]() {
    std::size_t line = lex.line(), col = lex.column();
    std::string name = lex.word();
    if (!is_atom_name(name)) throw ParseError("invalid atom name '" + name + "'", line, col);
    return name;
  };

  while (!lex.at_end()) {
    if (lex.accept("#atoms")) {
      while (lex.peek() != '.') builder.atom(read_atom());
      lex.expect(".");
      continue;
    }
    std::size_t line = lex.line(), col = lex.column();
    std::string id;
    if (lex.accept("@")) {
      id = lex.word();
      lex.expect(":");
    }
    ++rule_count;
    if (id.empty()) id = "r" + std::to_string(rule_count);
    if (!ids.insert(id).second) throw ParseError("duplicate rule id '" + id + "'", line, col);

    std::vector<std::string> head, pos, neg;
    if (lex.peek() != '.' && !lex.peek_str(":-")) {
      head.push_back(read_atom());
      while (lex.accept("|")) head.push_back(read_atom());
    }
    if (lex.accept(":-")) {
      do {
        std::size_t lline = lex.line(), lcol = lex.column();
        std::string w = lex.word();
        if (w == "not") {
          neg.push_back(read_atom());
        } else {
          if (!is_atom_name(w)) throw ParseError("invalid atom name '" + w + "'", lline, lcol);
          pos.push_back(w);
        }
      } while (lex.accept(","));
    }
    lex.expect(".");

    std::map<std::string, int> part_of;
    auto mark = [&](const std::vector<std::string>& part, int which) {
      for (const auto& a : part) {
        auto [it, fresh] = part_of.emplace(a, which);
        if (!fresh && it->second != which) {
          throw ParseError("normalization error: atom '" + a + "' occurs in two parts of rule '" + id + "'",
                           line, col);
        }
      }
    };
    mark(head, 0);
    mark(pos, 1);
    mark(neg, 2);
    builder.rule(head, pos, neg, id);
  }
  return builder.build();
}

/// Inverse of parse_program on valid programs.
inline std::string serialize_program(const Program& program) {
  std::string out;
  // Atom order is only implied by the rules when it matches first occurrence.
  std::vector<AtomId> implied;
  std::vector<bool> seen(program.num_atoms(), false);
  for (const Rule& r : program.rules()) {
    for (const auto* part : {&r.head, &r.pos_body, &r.neg_body}) {
      for (AtomId a : *part) {
        if (!seen[a]) {
          seen[a] = true;
          implied.push_back(a);
        }
      }
    }
  }
  bool in_order = implied.size() == program.num_atoms();
  for (std::size_t i = 0; in_order && i < implied.size(); ++i) in_order = implied[i] == i;
  if (!in_order) {
    out += "#atoms";
    for (const auto& n : program.atoms()) out += " " + n;
    out += ".\n";
  }
  for (std::size_t i = 0; i < program.num_rules(); ++i) {
    const Rule& r = program.rules()[i];
    if (r.id != "r" + std::to_string(i + 1)) out += "@" + r.id + ": ";
    for (std::size_t h = 0; h < r.head.size(); ++h) {
      if (h > 0) out += " | ";
      out += program.atom_name(r.head[h]);
    }
    if (!r.pos_body.empty() || !r.neg_body.empty()) {
      out += r.head.empty() ? ":- " : " :- ";
      bool first = true;
      for (AtomId a : r.pos_body) {
        out += (first ? "" : ", ") + program.atom_name(a);
        first = false;
      }
      for (AtomId a : r.neg_body) {
        out += (first ? "not " : ", not ") + program.atom_name(a);
        first = false;
      }
    }
    out += ".\n";
  }
  return out;
}

/// "{x,y}" in atom order.
inline std::string format_atom_set(const Program& program, const AtomSet& set) {
  std::string out = "{";
  bool first = true;
  for (AtomId a : set.members()) {
    if (!first) out += ",";
    out += program.atom_name(a);
    first = false;
  }
  return out + "}";
}

}  // namespace cwasp
