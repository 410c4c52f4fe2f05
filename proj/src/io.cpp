#include "ehr/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ehr/zoo.hpp"

namespace ehr {

std::size_t StructureFile::size() const {
  return kind == StructureKind::semigroup ? semigroup.size() : category.size();
}

std::span<const std::string> StructureFile::names() const {
  return kind == StructureKind::semigroup ? semigroup.names() : category.names();
}

OrderedSemigroup StructureFile::ordered() const {
  if (kind != StructureKind::semigroup)
    throw Error(ErrorKind::precondition, "structure is a category, not a semigroup");
  if (!order) throw Error(ErrorKind::precondition, "structure has no order section");
  return OrderedSemigroup(semigroup, *order);
}

FiniteOrderedCategory StructureFile::ordered_category() const {
  if (kind == StructureKind::semigroup) return category_of(ordered());
  if (!order) throw Error(ErrorKind::precondition, "category has no order section");
  return FiniteOrderedCategory(category, *order, meet);
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::parse,
              (line ? "line " + std::to_string(line) + ": " : std::string()) + what);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

bool is_header(const std::string& tok) {
  static const char* kKeys[] = {"kind:", "elements:", "mul:", "comp:", "D:",
                                "R:",    "order:",    "meet:"};
  for (const char* k : kKeys)
    if (tok == k) return true;
  return false;
}

}  // namespace

StructureFile parse_structure(std::string_view text) {
  const auto lines = tokenize(text);
  std::map<std::string, std::pair<std::size_t, std::vector<Line>>> sections;
  std::map<std::string, Line> inline_values;
  for (std::size_t i = 0; i < lines.size();) {
    const auto& head = lines[i];
    if (!is_header(head.tokens[0])) fail(head.number, "expected a section header, got '" + head.tokens[0] + "'");
    const std::string key = head.tokens[0].substr(0, head.tokens[0].size() - 1);
    if (sections.contains(key)) fail(head.number, "duplicate section " + key);
    Line value{head.number, {head.tokens.begin() + 1, head.tokens.end()}};
    std::vector<Line> body;
    ++i;
    while (i < lines.size() && !is_header(lines[i].tokens[0])) body.push_back(lines[i++]);
    if (!value.tokens.empty() && !body.empty())
      fail(body.front().number, "section " + key + " has both inline and block content");
    sections[key] = {head.number, std::move(body)};
    inline_values[key] = std::move(value);
  }

  auto require = [&](const std::string& key) -> std::size_t {
    auto it = sections.find(key);
    if (it == sections.end()) fail(0, "missing " + key + ": section");
    return it->second.first;
  };

  StructureFile file;
  require("kind");
  const auto& kind_tokens = inline_values["kind"].tokens;
  if (kind_tokens.size() != 1) fail(sections["kind"].first, "kind: takes one value");
  if (kind_tokens[0] == "semigroup") {
    file.kind = StructureKind::semigroup;
  } else if (kind_tokens[0] == "category") {
    file.kind = StructureKind::category;
  } else {
    fail(sections["kind"].first, "unknown kind '" + kind_tokens[0] + "'");
  }
  const bool is_cat = file.kind == StructureKind::category;

  require("elements");
  std::vector<std::string> names = inline_values["elements"].tokens;
  for (const auto& l : sections["elements"].second)
    names.insert(names.end(), l.tokens.begin(), l.tokens.end());
  const std::size_t n = names.size();
  if (n == 0) fail(sections["elements"].first, "no elements");
  std::map<std::string, Elem> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (names[i] == "." || names[i] == "<=")
      fail(sections["elements"].first, "reserved element name '" + names[i] + "'");
    if (!index.emplace(names[i], static_cast<Elem>(i)).second)
      fail(sections["elements"].first, "duplicate element '" + names[i] + "'");
  }
  auto lookup = [&](const std::string& tok, std::size_t line, bool allow_undefined) {
    if (allow_undefined && tok == ".") return kUndefined;
    auto it = index.find(tok);
    if (it == index.end()) fail(line, "unknown element '" + tok + "'");
    return it->second;
  };

  const std::string table_key = is_cat ? "comp" : "mul";
  if (sections.contains(is_cat ? "mul" : "comp"))
    fail(sections[is_cat ? "mul" : "comp"].first,
         std::string(is_cat ? "mul" : "comp") + ": does not belong in a " + kind_tokens[0] +
             " file");
  const std::size_t table_line = require(table_key);
  const auto& rows = sections[table_key].second;
  if (rows.size() != n)
    fail(table_line, table_key + ": table has " + std::to_string(rows.size()) +
                         " rows, expected " + std::to_string(n));
  std::vector<Elem> table;
  for (const auto& row : rows) {
    if (row.tokens.size() != n)
      fail(row.number, "row has " + std::to_string(row.tokens.size()) + " entries, expected " +
                           std::to_string(n));
    for (const auto& tok : row.tokens) table.push_back(lookup(tok, row.number, is_cat));
  }

  auto unary = [&](const std::string& key) {
    const std::size_t line = require(key);
    std::vector<std::string> toks = inline_values[key].tokens;
    for (const auto& l : sections[key].second)
      toks.insert(toks.end(), l.tokens.begin(), l.tokens.end());
    if (toks.size() != n)
      fail(line, key + ": has " + std::to_string(toks.size()) + " entries, expected " +
                     std::to_string(n));
    std::vector<Elem> out;
    for (const auto& t : toks) out.push_back(lookup(t, line, false));
    return out;
  };
  auto dmap = unary("D");
  auto rmap = unary("R");

  if (sections.contains("order")) {
    if (!inline_values["order"].tokens.empty())
      fail(sections["order"].first, "order pairs go on their own lines");
    Relation rel = Relation::identity(n);
    for (const auto& l : sections["order"].second) {
      if (l.tokens.size() != 3 || l.tokens[1] != "<=")
        fail(l.number, "expected 'a <= b'");
      rel.set(lookup(l.tokens[0], l.number, false), lookup(l.tokens[2], l.number, false));
    }
    rel = reflexive_transitive_closure(std::move(rel));
    if (auto v = antisymmetry_violation(rel))
      fail(sections["order"].first, "order is not antisymmetric: " + names[v->first] +
                                        " <= " + names[v->second] + " <= " +
                                        names[v->first]);
    file.order = PartialOrder(std::move(rel));
  }

  try {
    if (is_cat) {
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          if (table[x * n + y] != kUndefined && rmap[x] != dmap[y])
            fail(rows[x].number, "comp entry " + names[x] + " o " + names[y] +
                                     " is defined but R(" + names[x] + ") != D(" +
                                     names[y] + ")");
      file.category = FiniteCategory(n, std::move(table), std::move(dmap), std::move(rmap), names);
    } else {
      if (sections.contains("meet")) fail(sections["meet"].first, "meet: belongs in category files");
      file.semigroup =
          FiniteBiunarySemigroup(n, std::move(table), std::move(dmap), std::move(rmap), names);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse) throw;
    fail(0, e.what());
  }

  if (is_cat && sections.contains("meet")) {
    const auto& ids = file.category.identities();
    const auto& meet_rows = sections["meet"].second;
    const std::size_t line = sections["meet"].first;
    if (meet_rows.size() != ids.size())
      fail(line, "meet: table must have one row per identity (" +
                     std::to_string(ids.size()) + ")");
    file.meet.assign(n * n, kUndefined);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& row = meet_rows[i];
      if (row.tokens.size() != ids.size())
        fail(row.number, "meet row must have one entry per identity");
      for (std::size_t j = 0; j < ids.size(); ++j)
        file.meet[ids[i] * n + ids[j]] = lookup(row.tokens[j], row.number, true);
    }
  }
  return file;
}

std::string emit_structure(const StructureFile& file) {
  const bool is_cat = file.kind == StructureKind::category;
  const auto names = file.names();
  const std::size_t n = file.size();
  std::ostringstream out;
  out << "kind: " << (is_cat ? "category" : "semigroup") << "\n";
  out << "elements:";
  for (const auto& nm : names) out << ' ' << nm;
  out << "\n" << (is_cat ? "comp:" : "mul:") << "\n";
  const auto table = is_cat ? file.category.comp_table() : file.semigroup.mul_table();
  auto token = [&](Elem x) { return x == kUndefined ? std::string(".") : names[x]; };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << token(table[a * n + b]);
    out << "\n";
  }
  const auto dmap = is_cat ? file.category.dmap() : file.semigroup.dmap();
  const auto rmap = is_cat ? file.category.rmap() : file.semigroup.rmap();
  out << "D:";
  for (Elem x : dmap) out << ' ' << names[x];
  out << "\nR:";
  for (Elem x : rmap) out << ' ' << names[x];
  out << "\n";
  if (file.order) {
    out << "order:\n";
    for (auto [a, b] : file.order->relation().pairs())
      if (a != b) out << names[a] << " <= " << names[b] << "\n";
  }
  if (is_cat && !file.meet.empty()) {
    out << "meet:\n";
    const auto& ids = file.category.identities();
    for (Elem e : ids) {
      bool first = true;
      for (Elem f : ids) {
        out << (first ? "" : " ") << token(file.meet[e * n + f]);
        first = false;
      }
      out << "\n";
    }
  }
  return out.str();
}

StructureFile from_semigroup(const FiniteBiunarySemigroup& s,
                             std::optional<PartialOrder> order) {
  StructureFile f;
  f.kind = StructureKind::semigroup;
  f.semigroup = s;
  f.order = std::move(order);
  return f;
}

StructureFile from_category(const FiniteOrderedCategory& c, bool with_meet) {
  StructureFile f;
  f.kind = StructureKind::category;
  f.category = c.category();
  f.order = c.order();
  if (with_meet) f.meet.assign(c.meet_table().begin(), c.meet_table().end());
  return f;
}

StructureFile load_structure(const std::string& target) {
  constexpr std::string_view kScheme = "example://";
  if (target.starts_with(kScheme)) {
    std::string name = target.substr(kScheme.size());
    std::optional<std::string> fragment;
    if (auto hash = name.find('#'); hash != std::string::npos) {
      fragment = name.substr(hash + 1);
      name.resize(hash);
    }
    ZooEntry entry = [&] {
      try {
        return zoo_entry(name);
      } catch (const Error& e) {
        throw Error(ErrorKind::parse, e.what());
      }
    }();
    std::optional<PartialOrder> order;
    if (!fragment) {
      if (!entry.orders.empty()) order = entry.orders.front().order;
    } else if (*fragment != "none") {
      try {
        order = entry.order(*fragment);
      } catch (const Error& e) {
        throw Error(ErrorKind::parse, e.what());
      }
    }
    return from_semigroup(entry.structure, std::move(order));
  }
  std::ifstream in(target);
  if (!in) throw Error(ErrorKind::parse, "cannot read " + target);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

nlohmann::json order_to_json(const PartialOrder& order, std::span<const std::string> names) {
  auto out = nlohmann::json::array();
  for (auto [a, b] : order.relation().pairs())
    if (a != b) out.push_back({names[a], names[b]});
  return out;
}

nlohmann::json report_to_json(const LawReport& r, std::span<const std::string> names) {
  nlohmann::json j;
  j["law"] = r.law;
  j["holds"] = r.holds;
  j["applicable"] = r.applicable;
  j["clause"] = r.clause;
  auto witness = nlohmann::json::array();
  for (Elem x : r.witness) {
    if (x < names.size())
      witness.push_back(names[x]);
    else
      witness.push_back(x);
  }
  j["witness"] = witness;
  j["detail"] = r.detail;
  auto facts = nlohmann::json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  j["facts"] = facts;
  auto parts = nlohmann::json::array();
  for (const auto& p : r.parts) parts.push_back(report_to_json(p, names));
  j["parts"] = parts;
  return j;
}

}  // namespace ehr
