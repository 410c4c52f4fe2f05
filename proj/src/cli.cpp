#include "ehr/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ehr/category.hpp"
#include "ehr/io.hpp"
#include "ehr/orders.hpp"
#include "ehr/sweep.hpp"
#include "ehr/zoo.hpp"

namespace ehr {

namespace {

using json = nlohmann::json;

struct Outcome {
  std::string command;
  const StructureFile* structure = nullptr;
  std::vector<LawReport> reports;
  /// Reports whose witnesses are not elements of the structure.
  std::vector<bool> raw_witness;
  json artifacts = json::object();
  std::string text;
  int exit_code = kExitHolds;

  void add(LawReport r, bool raw = false) {
    if (!r.holds) exit_code = kExitFails;
    reports.push_back(std::move(r));
    raw_witness.push_back(raw);
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- law registries --------------------------------------------------------

using SemigroupLaw = std::function<LawReport(const FiniteBiunarySemigroup&)>;
using OrderLaw = std::function<LawReport(const OrderedSemigroup&)>;
using CategoryLaw = std::function<LawReport(const FiniteOrderedCategory&)>;

LawReport needs_ehresmann(const FiniteBiunarySemigroup& s, const std::string& law,
                          const std::function<LawReport()>& fn) {
  if (auto r = check_ehresmann(s); !r.holds) {
    LawReport out = LawReport::fail(law, r.clause, r.witness,
                                    "not an Ehresmann semigroup: " + r.detail);
    out.applicable = false;
    return out;
  }
  return fn();
}

const std::vector<std::pair<std::string, SemigroupLaw>>& semigroup_laws() {
  static const std::vector<std::pair<std::string, SemigroupLaw>> laws = {
      {"semigroup", check_associativity},
      {"localisable", check_localisable},
      {"ehresmann", check_ehresmann},
      {"left-restriction", check_left_restriction_with_range},
      {"right-restriction", check_right_restriction_with_domain},
      {"restriction", check_restriction},
      {"functional", check_functional},
      {"de-barros",
       [](const FiniteBiunarySemigroup& s) {
         return needs_ehresmann(s, "de-barros", [&] { return is_de_barros(s); });
       }},
      {"de-barros-equational", check_de_barros_equational},
      {"smallest-order",
       [](const FiniteBiunarySemigroup& s) {
         return needs_ehresmann(s, "smallest-order", [&] { return smallest_order_check(s); });
       }},
      {"leq-e-partial-laws",
       [](const FiniteBiunarySemigroup& s) {
         return needs_ehresmann(s, "leq-e-partial-laws",
                                [&] { return check_leq_e_partial_laws(s); });
       }},
  };
  return laws;
}

OrderLaw relation_law(LawReport (*fn)(const FiniteBiunarySemigroup&, const Relation&)) {
  return [fn](const OrderedSemigroup& os) { return fn(os.base, os.order.relation()); };
}

OrderLaw os_law(OsProperty p) {
  return [p](const OrderedSemigroup& os) { return check_os_property(os, p); };
}

const std::vector<std::pair<std::string, OrderLaw>>& order_laws() {
  static const std::vector<std::pair<std::string, OrderLaw>> laws = {
      {"ehresmann-order", check_ehresmann_order},
      {"OS1", relation_law(check_os1)},
      {"OS2", relation_law(check_os2)},
      {"OS3", relation_law(check_os3)},
      {"OS6", relation_law(check_os6)},
      {"OSI", relation_law(check_osi)},
      {"OS4", os_law(OsProperty::OS4)},
      {"OS4A", os_law(OsProperty::OS4A)},
      {"OS4B", os_law(OsProperty::OS4B)},
      {"OS7", os_law(OsProperty::OS7)},
      {"leq-e-below", leq_e_containment},
      {"semilattice-agreement", semilattice_order_agreement},
  };
  return laws;
}

CategoryLaw oc_law(OcLaw l) {
  return [l](const FiniteOrderedCategory& c) { return check_oc_property(c, l); };
}

const std::vector<std::pair<std::string, CategoryLaw>>& category_laws() {
  static const std::vector<std::pair<std::string, CategoryLaw>> laws = {
      {"category", [](const FiniteOrderedCategory& c) { return check_category(c.category()); }},
      {"omega-structured", check_omega_structured},
      {"ehresmann-ordered-category", check_ehresmann_ordered_category},
      {"inductive1", check_inductive1},
      {"meet-semilattice", check_meet_semilattice},
      {"oc-equivalences", check_prop_oc_equivalences},
      {"epi",
       [](const FiniteOrderedCategory& c) { return check_every_element_epi(c.category()); }},
      {"OC4", oc_law(OcLaw::OC4)},
      {"OC4A", oc_law(OcLaw::OC4A)},
      {"OC4B", oc_law(OcLaw::OC4B)},
      {"OC6", oc_law(OcLaw::OC6)},
      {"OC6a", oc_law(OcLaw::OC6a)},
      {"OC6b", oc_law(OcLaw::OC6b)},
      {"OC7", oc_law(OcLaw::OC7)},
      {"OC7'", oc_law(OcLaw::OC7p)},
      {"OC7p", oc_law(OcLaw::OC7p)},
      {"OC8", oc_law(OcLaw::OC8)},
      {"OC8a", oc_law(OcLaw::OC8a)},
      {"OC8b", oc_law(OcLaw::OC8b)},
      {"OCI", oc_law(OcLaw::OCI)},
  };
  return laws;
}

template <class Fn>
const Fn* lookup(const std::vector<std::pair<std::string, Fn>>& table, const std::string& name) {
  for (const auto& [k, fn] : table)
    if (k == name) return &fn;
  return nullptr;
}

// --- rendering -------------------------------------------------------------

void render_report(const LawReport& r, std::span<const std::string> names, bool raw,
                   std::string& text) {
  text += r.holds ? "PASS " : "FAIL ";
  text += r.law;
  if (!r.applicable) text += " (not applicable)";
  if (!r.holds) {
    if (!r.clause.empty() && r.clause != r.law) text += " [" + r.clause + "]";
    if (!r.witness.empty()) {
      text += " witness (";
      for (std::size_t i = 0; i < r.witness.size(); ++i) {
        if (i) text += ", ";
        const Elem x = r.witness[i];
        text += !raw && x < names.size() ? names[x] : std::to_string(x);
      }
      text += ")";
    }
    if (!r.detail.empty()) text += ": " + r.detail;
  }
  text += "\n";
  for (const auto& [k, v] : r.facts) text += "  " + k + ": " + (v ? "yes" : "no") + "\n";
}

std::string order_text(const PartialOrder& o, std::span<const std::string> names) {
  std::string out;
  for (auto [a, b] : o.relation().pairs())
    if (a != b) out += (out.empty() ? "" : ", ") + names[a] + " <= " + names[b];
  return out.empty() ? "equality" : out;
}

json structure_json(const StructureFile& f) {
  json j;
  j["kind"] = f.kind == StructureKind::semigroup ? "semigroup" : "category";
  j["size"] = f.size();
  j["elements"] = std::vector<std::string>(f.names().begin(), f.names().end());
  j["ordered"] = f.order.has_value();
  return j;
}

json table_json(std::span<const Elem> table, std::size_t n, std::span<const std::string> names) {
  json rows = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < n; ++b) {
      const Elem x = table[a * n + b];
      row.push_back(x == kUndefined ? json(nullptr) : json(names[x]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- commands --------------------------------------------------------------

void require_semigroup(const StructureFile& f, const std::string& command) {
  if (f.kind != StructureKind::semigroup)
    throw UsageError(command + " needs a semigroup file");
}

void run_check(const StructureFile& f, const std::vector<std::string>& laws, Outcome& o) {
  const auto names = f.names();
  if (f.kind == StructureKind::semigroup) {
    std::vector<std::string> requested = laws;
    if (requested.empty()) {
      for (const auto& [k, fn] : semigroup_laws())
        if (k != "de-barros-equational" && k != "smallest-order" && k != "leq-e-partial-laws")
          requested.push_back(k);
      if (f.order)
        for (const char* k : {"ehresmann-order", "OS4", "OS4A", "OS4B", "OS7"})
          requested.emplace_back(k);
    }
    for (const auto& law : requested) {
      if (const auto* fn = lookup(semigroup_laws(), law)) {
        o.add((*fn)(f.semigroup));
      } else if (const auto* ofn = lookup(order_laws(), law)) {
        if (!f.order) throw UsageError("law " + law + " needs an order section");
        o.add((*ofn)(f.ordered()));
      } else {
        throw UsageError("unknown law " + law);
      }
    }
  } else {
    std::vector<std::string> requested = laws;
    if (requested.empty()) {
      requested.emplace_back("category");
      if (f.order)
        for (const char* k : {"omega-structured", "ehresmann-ordered-category", "inductive1"})
          requested.emplace_back(k);
    }
    for (const auto& law : requested) {
      const auto* fn = lookup(category_laws(), law);
      if (!fn) throw UsageError("unknown law " + law);
      if (law == "category" && !f.order) {
        o.add(check_category(f.category));
        continue;
      }
      o.add((*fn)(f.ordered_category()));
    }
  }
  for (const auto& r : o.reports) render_report(r, names, false, o.text);
}

void run_orders(const StructureFile& f, bool count_only, bool up_to_iso, Outcome& o) {
  require_semigroup(f, "orders");
  if (auto r = check_ehresmann(f.semigroup); !r.holds) {
    o.add(std::move(r));
    render_report(o.reports.back(), f.names(), false, o.text);
    return;
  }
  const auto orders = enumerate_ehresmann_orders(f.semigroup, up_to_iso);
  o.artifacts["count"] = orders.size();
  o.artifacts["up_to_iso"] = up_to_iso;
  json list = json::array();
  for (const auto& ord : orders) list.push_back(order_to_json(ord, f.names()));
  o.artifacts["orders"] = std::move(list);
  if (count_only) {
    o.text += std::to_string(orders.size()) + "\n";
    return;
  }
  o.text += std::to_string(orders.size()) + " Ehresmann order" +
            (orders.size() == 1 ? "" : "s") + (up_to_iso ? " up to isomorphism" : "") + "\n";
  for (std::size_t i = 0; i < orders.size(); ++i)
    o.text += "  " + std::to_string(i + 1) + ": " + order_text(orders[i], f.names()) + "\n";
}

void run_derive(const StructureFile& f, const std::string& which, Outcome& o) {
  require_semigroup(f, "derive");
  if (auto r = check_ehresmann(f.semigroup); !r.holds) {
    o.add(std::move(r));
    render_report(o.reports.back(), f.names(), false, o.text);
    return;
  }
  const auto d = derive_orders(f.semigroup);
  const PartialOrder& ord = which == "l" ? d.leq_l : which == "r" ? d.leq_r : d.leq_e;
  o.artifacts["order"] = order_to_json(ord, f.names());
  o.artifacts["which"] = which;
  o.text += "<=_" + which + ": " + order_text(ord, f.names()) + "\n";
}

/// The ordered category of a file, or a failing report when a semigroup
/// file is not an ordered Ehresmann semigroup.
std::optional<FiniteOrderedCategory> category_for(const StructureFile& f, Outcome& o) {
  if (!f.order) throw UsageError("structure has no order section");
  if (f.kind == StructureKind::semigroup) {
    if (auto r = check_ehresmann_order(f.ordered()); !r.holds) {
      o.add(std::move(r));
      render_report(o.reports.back(), f.names(), false, o.text);
      return std::nullopt;
    }
  }
  return f.ordered_category();
}

void run_cat(const StructureFile& f, const std::vector<std::string>& checks, bool biaction,
             bool emit, Outcome& o) {
  const auto c = category_for(f, o);
  if (!c) return;
  const auto names = c->names();
  std::vector<std::string> requested = {"category", "omega-structured",
                                        "ehresmann-ordered-category"};
  for (const auto& k : checks)
    if (std::ranges::find(requested, k) == requested.end()) requested.push_back(k);
  for (const auto& law : requested) {
    const auto* fn = lookup(category_laws(), law);
    if (!fn) throw UsageError("unknown category law " + law);
    o.add((*fn)(*c));
  }
  json ids = json::array();
  for (Elem e : c->identities()) ids.push_back(names[e]);
  o.artifacts["identities"] = std::move(ids);
  o.artifacts["comp"] = table_json(c->category().comp_table(), c->size(), names);
  if (biaction) {
    try {
      const auto b = derive_biaction(*c);
      o.add(verify_biaction(*c, b));
      json acts;
      json left = json::object(), right = json::object();
      for (Elem e : c->identities()) {
        json l = json::array(), r = json::array();
        for (Elem x = 0; x < c->size(); ++x) {
          l.push_back(names[b.act_left(e, x)]);
          r.push_back(names[b.act_right(x, e)]);
        }
        left[names[e]] = std::move(l);
        right[names[e]] = std::move(r);
      }
      acts["left"] = std::move(left);
      acts["right"] = std::move(right);
      o.artifacts["biaction"] = std::move(acts);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::oc6_violation && e.kind() != ErrorKind::precondition) throw;
      o.add(LawReport::fail("biaction", "biaction", {}, e.what()));
    }
  }
  for (const auto& r : o.reports) render_report(r, names, false, o.text);
  if (biaction && o.artifacts.contains("biaction")) {
    o.text += "biaction (e.x):\n";
    for (const auto& [e, row] : o.artifacts["biaction"]["left"].items()) {
      o.text += "  " + e + ":";
      for (const auto& v : row) o.text += " " + v.get<std::string>();
      o.text += "\n";
    }
    o.text += "biaction (x.e):\n";
    for (const auto& [e, row] : o.artifacts["biaction"]["right"].items()) {
      o.text += "  " + e + ":";
      for (const auto& v : row) o.text += " " + v.get<std::string>();
      o.text += "\n";
    }
  }
  if (emit) {
    o.artifacts["file"] = emit_structure(from_category(*c));
    o.text = o.artifacts["file"].get<std::string>();
  }
}

void run_esn(const StructureFile& f, Outcome& o) {
  require_semigroup(f, "esn");
  if (!f.order) throw UsageError("structure has no order section");
  const auto os = f.ordered();
  if (auto r = check_ehresmann_order(os); !r.holds) {
    o.add(std::move(r));
  } else {
    o.add(esn_round_trip(os));
    o.add(check_special_correspondences(os));
  }
  for (const auto& r : o.reports) render_report(r, f.names(), false, o.text);
}

void run_enumerate(std::size_t size, const std::string& filter, bool up_to_iso,
                   bool allow_four, bool count_only, unsigned threads, Outcome& o) {
  SemigroupLaw keep;
  if (filter == "orderable") {
    keep = [](const FiniteBiunarySemigroup& s) {
      return enumerate_ehresmann_orders(s).empty() ? LawReport::fail("orderable", "", {}, "")
                                                   : LawReport::pass("orderable");
    };
  } else if (!filter.empty()) {
    const auto* fn = lookup(semigroup_laws(), filter);
    if (!fn) throw UsageError("unknown filter " + filter);
    keep = *fn;
  }
  const auto all = enumerate_ehresmann_semigroups(size, up_to_iso, threads, allow_four);
  std::vector<const FiniteBiunarySemigroup*> kept;
  for (const auto& s : all)
    if (!keep || keep(s).holds) kept.push_back(&s);
  o.artifacts["count"] = kept.size();
  o.artifacts["size"] = size;
  o.artifacts["up_to_iso"] = up_to_iso;
  if (!filter.empty()) o.artifacts["filter"] = filter;
  json list = json::array();
  if (!count_only)
    for (const auto* s : kept) {
      json j;
      j["mul"] = table_json(s->mul_table(), s->size(), s->names());
      j["D"] = std::vector<std::string>();
      j["R"] = std::vector<std::string>();
      for (Elem x = 0; x < s->size(); ++x) {
        j["D"].push_back(s->name(s->D(x)));
        j["R"].push_back(s->name(s->R(x)));
      }
      list.push_back(std::move(j));
    }
  o.artifacts["structures"] = std::move(list);
  o.text += std::to_string(kept.size()) + "\n";
  if (!count_only)
    for (const auto* s : kept) o.text += "\n" + emit_structure(from_semigroup(*s));
}

void run_example(const std::string& name, bool emit, Outcome& o) {
  const auto entry = zoo_entry(name);
  const auto names = entry.structure.names();
  o.artifacts["name"] = entry.name;
  o.artifacts["description"] = entry.description;
  o.artifacts["provenance"] = entry.provenance;
  json orders = json::object();
  for (const auto& ord : entry.orders) orders[ord.name] = order_to_json(ord.order, names);
  o.artifacts["orders"] = std::move(orders);

  if (entry.provenance == "check_ehresmann_order" && !entry.orders.empty()) {
    for (const auto& ord : entry.orders) {
      auto r = check_ehresmann_order(entry.ordered(ord.name));
      r.law += "#" + ord.name;
      o.add(std::move(r));
    }
  } else {
    o.add(check_ehresmann(entry.structure));
  }

  o.text += entry.name + ": " + entry.description + "\n";
  o.text += "elements: " + std::to_string(entry.structure.size()) + "\n";
  for (const auto& ord : entry.orders)
    o.text += "order " + ord.name + ": " + order_text(ord.order, names) + "\n";
  for (const auto& r : o.reports) render_report(r, names, false, o.text);
  if (emit) {
    std::string file = emit_structure(from_semigroup(
        entry.structure,
        entry.orders.empty() ? std::nullopt : std::optional(entry.orders.front().order)));
    for (std::size_t i = 1; i < entry.orders.size(); ++i)
      file += "# also: example://" + entry.name + "#" + entry.orders[i].name + "\n";
    o.artifacts["file"] = file;
    o.text = file;
  }
}

void run_sweep_command(std::size_t max_size, unsigned threads, Outcome& o) {
  SweepOptions opts;
  opts.max_size = max_size;
  opts.threads = threads;
  auto result = run_sweep(opts);
  if (!sweep_holds(result)) o.exit_code = kExitFails;
  for (const auto& [name, block] : result["sweeps"].items())
    o.text += std::string(block["holds"].get<bool>() ? "PASS " : "FAIL ") + name + " (" +
              std::to_string(block["instances"].get<std::size_t>()) + " instances)\n";
  o.artifacts["sweep"] = std::move(result);
}

json envelope(const Outcome& o) {
  json j;
  j["schema_version"] = 1;
  j["command"] = o.command;
  j["structure"] = o.structure ? structure_json(*o.structure) : json(nullptr);
  json reports = json::array();
  const auto names = o.structure ? o.structure->names() : std::span<const std::string>{};
  for (std::size_t i = 0; i < o.reports.size(); ++i)
    reports.push_back(report_to_json(o.reports[i], o.raw_witness[i] ? std::span<const std::string>{} : names));
  j["reports"] = std::move(reports);
  j["artifacts"] = o.artifacts;
  j["exit_code"] = o.exit_code;
  return j;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks laws of finite ordered Ehresmann semigroups and categories", "ehrtool"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_flag("--json", as_json, "Print a JSON report");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string target;
  std::vector<std::string> laws;
  bool count_only = false, up_to_iso = false, biaction = false, emit = false, allow_four = false;
  std::string which, filter, name;
  std::size_t size = 0, max_size = 3;

  auto* check = app.add_subcommand("check", "Check laws (default: the classification ladder)");
  check->add_option("target", target, "File or example://NAME[#ORDER]")->required();
  check->add_option("--law", laws, "Law to check; repeatable");

  auto* orders = app.add_subcommand("orders", "Enumerate Ehresmann orders");
  orders->add_option("target", target)->required();
  orders->add_flag("--count-only", count_only);
  orders->add_flag("--up-to-iso", up_to_iso);

  auto* derive = app.add_subcommand("derive", "Print a derived order");
  derive->add_option("target", target)->required();
  derive->add_option("--order", which)->required()->check(CLI::IsMember({"l", "r", "e"}));

  auto* cat = app.add_subcommand("cat", "Check the associated ordered category");
  cat->add_option("target", target)->required();
  cat->add_option("--check", laws, "Extra category law; repeatable");
  cat->add_flag("--biaction", biaction);
  cat->add_flag("--emit", emit, "Print the category as a structure file");

  auto* esn = app.add_subcommand("esn", "Round trip through the category and special classes");
  esn->add_option("target", target)->required();

  auto* enumerate = app.add_subcommand("enumerate", "List Ehresmann semigroups of a given size");
  enumerate->add_option("--size", size)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--filter", filter, "Keep structures passing this law, or orderable");
  enumerate->add_flag("--up-to-iso", up_to_iso);
  enumerate->add_flag("--count-only", count_only);
  enumerate->add_flag("--allow-four", allow_four, "Permit --size 4 (slow)");

  auto* example = app.add_subcommand("example", "Show a named example");
  example->add_option("name", name)->required();
  example->add_flag("--emit", emit, "Print the example as a structure file");

  auto* sweep = app.add_subcommand("sweep", "Run the law sweeps over small structures");
  sweep->add_option("--max-size", max_size)->check(CLI::Range(1, 3));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    if (std::ranges::find(args, "--json") != args.end()) {
      json j;
      j["schema_version"] = 1;
      j["command"] = nullptr;
      j["error"] = {{"kind", "usage"}, {"message", e.what()}};
      j["exit_code"] = kExitError;
      out << j.dump(2) << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return kExitError;
  }

  Outcome o;
  o.command = app.get_subcommands().front()->get_name();
  StructureFile file;
  try {
    if (!target.empty()) {
      file = load_structure(target);
      o.structure = &file;
    }
    if (o.command == "check") run_check(file, laws, o);
    else if (o.command == "orders") run_orders(file, count_only, up_to_iso, o);
    else if (o.command == "derive") run_derive(file, which, o);
    else if (o.command == "cat") run_cat(file, laws, biaction, emit, o);
    else if (o.command == "esn") run_esn(file, o);
    else if (o.command == "enumerate")
      run_enumerate(size, filter, up_to_iso, allow_four, count_only, threads, o);
    else if (o.command == "example") run_example(name, emit, o);
    else if (o.command == "sweep") run_sweep_command(max_size, threads, o);
  } catch (const std::exception& e) {
    int code = kExitError;
    std::string kind = "usage";
    if (const auto* ee = dynamic_cast<const Error*>(&e)) {
      kind = to_string(ee->kind());
      if (ee->kind() == ErrorKind::not_ordered_ehresmann || ee->kind() == ErrorKind::oc6_violation)
        code = kExitFails;
    }
    if (as_json) {
      json j;
      j["schema_version"] = 1;
      j["command"] = o.command;
      j["error"] = {{"kind", kind}, {"message", e.what()}};
      j["exit_code"] = code;
      out << j.dump(2) << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return code;
  }

  if (as_json)
    out << envelope(o).dump(2) << "\n";
  else
    out << o.text;
  return o.exit_code;
}

}  // namespace ehr
