#include "ehr/category.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "ehr/orders.hpp"

namespace ehr {

namespace {

std::vector<Elem> sorted_unique(std::span<const Elem> values) {
  std::vector<Elem> out(values.begin(), values.end());
  std::ranges::sort(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string inst(std::span<const std::string> names,
                 std::initializer_list<Elem> w,
                 std::initializer_list<std::string_view> vars) {
  std::vector<Elem> ws(w);
  std::vector<std::string_view> vs(vars);
  return format_instance(vs, ws, names);
}

LawReport failure(std::string_view law, std::string_view clause,
                  std::vector<Elem> w, std::string detail) {
  return LawReport::fail(std::string(law), std::string(clause), std::move(w),
                         std::move(detail));
}

}  // namespace

// ---------------------------------------------------------------------------
// Structures

FiniteCategory::FiniteCategory(std::size_t n, std::vector<Elem> comp,
                               std::vector<Elem> dmap, std::vector<Elem> rmap,
                               std::vector<std::string> names)
    : n_(n),
      comp_(std::move(comp)),
      dmap_(std::move(dmap)),
      rmap_(std::move(rmap)),
      names_(std::move(names)) {
  if (n_ == 0) throw Error(ErrorKind::structural, "empty carrier");
  if (comp_.size() != n_ * n_)
    throw Error(ErrorKind::structural, "composition table is not n x n");
  if (dmap_.size() != n_ || rmap_.size() != n_)
    throw Error(ErrorKind::structural, "D or R map has wrong length");
  for (Elem x : comp_)
    if (x != kUndefined && x >= n_)
      throw Error(ErrorKind::structural, "composition entry out of range");
  for (std::size_t i = 0; i < n_; ++i)
    if (dmap_[i] >= n_ || rmap_[i] >= n_)
      throw Error(ErrorKind::structural, "D or R entry out of range");
  if (names_.empty()) {
    for (std::size_t i = 0; i < n_; ++i) names_.push_back(std::to_string(i));
  } else if (names_.size() != n_) {
    throw Error(ErrorKind::structural, "names vector has wrong length");
  }
  identities_ = sorted_unique(dmap_);
}

bool FiniteCategory::is_identity(Elem x) const {
  return std::ranges::binary_search(identities_, x);
}

bool FiniteCategory::same_tables(const FiniteCategory& other) const {
  return n_ == other.n_ && comp_ == other.comp_ && dmap_ == other.dmap_ &&
         rmap_ == other.rmap_;
}

FiniteOrderedCategory::FiniteOrderedCategory(FiniteCategory cat,
                                             PartialOrder order,
                                             std::vector<Elem> meet)
    : cat_(std::move(cat)), order_(std::move(order)), meet_(std::move(meet)) {
  const auto n = cat_.size();
  if (order_.size() != n)
    throw Error(ErrorKind::structural, "order and category sizes differ");
  if (meet_.empty()) {
    meet_.assign(n * n, kUndefined);
    const auto& ids = cat_.identities();
    for (Elem e : ids)
      for (Elem f : ids) {
        // greatest lower bound among identities
        Elem best = kUndefined;
        for (Elem g : ids) {
          if (!order_(g, e) || !order_(g, f)) continue;
          bool greatest = true;
          for (Elem h : ids)
            if (order_(h, e) && order_(h, f) && !order_(h, g)) {
              greatest = false;
              break;
            }
          if (greatest) {
            best = g;
            break;
          }
        }
        meet_[e * n + f] = best;
      }
  } else if (meet_.size() != n * n) {
    throw Error(ErrorKind::structural, "meet table is not n x n");
  }
  for (Elem m : meet_)
    if (m != kUndefined && m >= n)
      throw Error(ErrorKind::structural, "meet entry out of range");
  down_.resize(n);
  for (Elem x = 0; x < n; ++x) down_[x] = order_.relation().down_set(x);
}

bool FiniteOrderedCategory::same_structure(const FiniteOrderedCategory& other) const {
  return cat_.same_tables(other.cat_) && order_ == other.order_ &&
         meet_ == other.meet_;
}

// ---------------------------------------------------------------------------
// Category axioms

namespace {

bool cat_clause_fails(const FiniteCategory& c, std::string_view clause,
                      std::span<const Elem> w) {
  if (clause == "cat-composable")
    return c.composable(w[0], w[1]) != (c.R(w[0]) == c.D(w[1]));
  if (clause == "cat-units")
    return c.comp(c.D(w[0]), w[0]) != w[0] || c.comp(w[0], c.R(w[0])) != w[0];
  if (clause == "cat-identities")
    return c.D(c.R(w[0])) != c.R(w[0]) || c.R(c.D(w[0])) != c.D(w[0]);
  if (clause == "cat-comp-DR") {
    const Elem xy = c.comp(w[0], w[1]);
    return xy != kUndefined && (c.D(xy) != c.D(w[0]) || c.R(xy) != c.R(w[1]));
  }
  if (clause == "cat-assoc") {
    const Elem xy = c.comp(w[0], w[1]);
    const Elem yz = c.comp(w[1], w[2]);
    if (xy == kUndefined || yz == kUndefined) return false;
    const Elem lhs = c.comp(xy, w[2]);
    const Elem rhs = c.comp(w[0], yz);
    return lhs != kUndefined && rhs != kUndefined && lhs != rhs;
  }
  throw Error(ErrorKind::precondition, "unknown category clause " + std::string(clause));
}

struct CatClauseInfo {
  std::string_view name;
  std::string_view statement;
  std::size_t arity;
};

constexpr CatClauseInfo kCatClauses[] = {
    {"cat-composable", "x o y defined iff R(x) = D(y)", 2},
    {"cat-units", "D(x) o x = x = x o R(x)", 1},
    {"cat-identities", "D(R(x)) = R(x), R(D(x)) = D(x)", 1},
    {"cat-comp-DR", "D(x o y) = D(x), R(x o y) = R(y)", 2},
    {"cat-assoc", "(x o y) o z = x o (y o z)", 3},
};

}  // namespace

LawReport check_category(const FiniteCategory& c) {
  const auto n = static_cast<Elem>(c.size());
  static constexpr std::string_view vars[] = {"x", "y", "z"};
  for (const auto& info : kCatClauses) {
    std::vector<Elem> w(info.arity, 0);
    while (true) {
      if (cat_clause_fails(c, info.name, w))
        return failure("category", info.name, w,
                       std::string(info.statement) + " fails at " +
                           format_instance(vars, w, c.names()));
      std::size_t pos = w.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++w[pos] < n) {
          done = false;
          break;
        }
        w[pos] = 0;
      }
      if (done) break;
    }
  }
  return LawReport::pass("category");
}

FiniteCategory category_of(const FiniteBiunarySemigroup& s) {
  const auto n = s.size();
  std::vector<Elem> comp(n * n, kUndefined);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (s.R(x) == s.D(y)) comp[x * n + y] = s.mul(x, y);
  return FiniteCategory(n, std::move(comp),
                        {s.dmap().begin(), s.dmap().end()},
                        {s.rmap().begin(), s.rmap().end()},
                        {s.names().begin(), s.names().end()});
}

FiniteOrderedCategory category_of(const OrderedSemigroup& os) {
  if (auto r = check_ehresmann_order(os); !r.holds)
    throw Error(ErrorKind::not_ordered_ehresmann,
                "not an ordered Ehresmann semigroup: " + r.detail);
  const auto& s = os.base;
  const auto n = s.size();
  std::vector<Elem> meet(n * n, kUndefined);
  const auto proj = d_image(s);
  for (Elem e : proj)
    for (Elem f : proj) meet[e * n + f] = s.mul(e, f);
  return FiniteOrderedCategory(category_of(s), os.order, std::move(meet));
}

// ---------------------------------------------------------------------------
// Restriction and corestriction

namespace {

/// side = true: restriction (domains), false: corestriction (ranges).
std::optional<Elem> find_max_below(const FiniteOrderedCategory& c, Elem e, Elem x,
                                   bool side) {
  if (!c.is_identity(e))
    throw Error(ErrorKind::precondition, c.name(e) + " is not an identity");
  const Elem end = side ? c.D(x) : c.R(x);
  if (!c.leq(e, end))
    throw Error(ErrorKind::precondition, "identity is not below the end of x");
  std::vector<Elem> candidates;
  for (Elem y : c.down(x))
    if (c.leq(side ? c.D(y) : c.R(y), e)) candidates.push_back(y);
  for (Elem m : candidates) {
    if (!std::ranges::all_of(candidates, [&](Elem y) { return c.leq(y, m); }))
      continue;
    if ((side ? c.D(m) : c.R(m)) != e) return std::nullopt;
    return m;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Elem> find_restriction(const FiniteOrderedCategory& c, Elem e, Elem x) {
  return find_max_below(c, e, x, true);
}

std::optional<Elem> find_corestriction(const FiniteOrderedCategory& c, Elem x, Elem e) {
  return find_max_below(c, e, x, false);
}

Elem restriction(const FiniteOrderedCategory& c, Elem e, Elem x) {
  if (auto r = find_restriction(c, e, x)) return *r;
  throw Error(ErrorKind::oc6_violation,
              "no restriction " + c.name(e) + "|" + c.name(x));
}

Elem corestriction(const FiniteOrderedCategory& c, Elem x, Elem e) {
  if (auto r = find_corestriction(c, x, e)) return *r;
  throw Error(ErrorKind::oc6_violation,
              "no corestriction " + c.name(x) + "|" + c.name(e));
}

// ---------------------------------------------------------------------------
// OC laws

const char* to_string(OcLaw law) {
  switch (law) {
    case OcLaw::OC4: return "OC4";
    case OcLaw::OC4A: return "OC4A";
    case OcLaw::OC4B: return "OC4B";
    case OcLaw::OC6: return "OC6";
    case OcLaw::OC6a: return "OC6a";
    case OcLaw::OC6b: return "OC6b";
    case OcLaw::OC7: return "OC7";
    case OcLaw::OC7p: return "OC7'";
    case OcLaw::OC8: return "OC8";
    case OcLaw::OC8a: return "OC8a";
    case OcLaw::OC8b: return "OC8b";
    case OcLaw::OCI: return "OCI";
  }
  return "?";
}

namespace {

using OC = FiniteOrderedCategory;

bool oc2_fails(const OC& c, Elem a, Elem b) {
  return c.leq(a, b) && (!c.leq(c.D(a), c.D(b)) || !c.leq(c.R(a), c.R(b)));
}

bool oc3_fails(const OC& c, Elem a, Elem b, Elem x, Elem y) {
  if (!c.leq(a, b) || !c.leq(x, y)) return false;
  const Elem ax = c.comp(a, x);
  const Elem by = c.comp(b, y);
  return ax != kUndefined && by != kUndefined && !c.leq(ax, by);
}

bool oc4_fails(const OC& c, OcLaw law, Elem a, Elem b) {
  if (a == b || !c.leq(a, b)) return false;
  const bool d = c.D(a) == c.D(b);
  const bool r = c.R(a) == c.R(b);
  if (law == OcLaw::OC4) return d && r;
  if (law == OcLaw::OC4A) return d;
  return r;
}

bool oc6_fails(const OC& c, Elem e, Elem x, bool side) {
  if (!c.is_identity(e) || !c.leq(e, side ? c.D(x) : c.R(x))) return false;
  return !find_max_below(c, e, x, side).has_value();
}

bool oc7_fails(const OC& c, Elem b, Elem d, Elem a, bool weak) {
  const Elem bd = c.comp(b, d);
  if (bd == kUndefined || !c.leq(a, bd)) return false;
  for (Elem b2 : c.down(b)) {
    if (weak && c.D(b2) != c.D(a)) continue;
    for (Elem d2 : c.down(d)) {
      const Elem p = c.comp(b2, d2);
      if (p == kUndefined) continue;
      if (weak ? (c.R(d2) == c.R(a) && c.leq(a, p)) : p == a) return false;
    }
  }
  return true;
}

bool oc8_fails(const OC& c, Elem e, Elem x, bool side) {
  if (!c.is_identity(e) || !c.leq(e, side ? c.D(x) : c.R(x))) return false;
  std::size_t count = 0;
  for (Elem y : c.down(x))
    if ((side ? c.D(y) : c.R(y)) == e) ++count;
  return count != 1;
}

bool oci_fails(const OC& c, Elem a, Elem e) {
  return c.is_identity(e) && c.leq(a, e) && !c.is_identity(a);
}

bool meet_fails(const OC& c, Elem e, Elem f) {
  if (!c.is_identity(e) || !c.is_identity(f)) return false;
  const Elem m = c.meet(e, f);
  if (m == kUndefined || !c.is_identity(m) || !c.leq(m, e) || !c.leq(m, f))
    return true;
  for (Elem g : c.identities())
    if (c.leq(g, e) && c.leq(g, f) && !c.leq(g, m)) return true;
  return false;
}

LawReport check_oc2(const OC& c) {
  for (auto [a, b] : c.order().relation().pairs())
    if (oc2_fails(c, a, b))
      return failure("OC2", "OC2", {a, b},
                     "a <= b implies D(a) <= D(b), R(a) <= R(b) fails at " +
                         inst(c.names(), {a, b}, {"a", "b"}));
  return LawReport::pass("OC2");
}

LawReport check_oc3(const OC& c) {
  const auto pairs = c.order().relation().pairs();
  for (auto [a, b] : pairs)
    for (auto [x, y] : pairs)
      if (oc3_fails(c, a, b, x, y))
        return failure("OC3", "OC3", {a, b, x, y},
                       "a <= b, c <= d implies a o c <= b o d fails at " +
                           inst(c.names(), {a, b, x, y}, {"a", "b", "c", "d"}));
  return LawReport::pass("OC3");
}

LawReport check_oc6_side(const OC& c, bool side) {
  const char* name = side ? "OC6a" : "OC6b";
  for (Elem x = 0; x < c.size(); ++x)
    for (Elem e : c.identities())
      if (oc6_fails(c, e, x, side)) {
        std::vector<Elem> w = side ? std::vector<Elem>{e, x} : std::vector<Elem>{x, e};
        std::string what = side ? c.name(e) + "|" + c.name(x)
                                : c.name(x) + "|" + c.name(e);
        return failure(name, name, w, "restriction " + what + " does not exist");
      }
  return LawReport::pass(name);
}

LawReport check_oc8_side(const OC& c, bool side) {
  const char* name = side ? "OC8a" : "OC8b";
  for (Elem x = 0; x < c.size(); ++x)
    for (Elem e : c.identities())
      if (oc8_fails(c, e, x, side)) {
        std::vector<Elem> w = side ? std::vector<Elem>{e, x} : std::vector<Elem>{x, e};
        return failure(name, name, w,
                       std::string("no unique y <= ") + c.name(x) +
                           (side ? " with D(y) = " : " with R(y) = ") + c.name(e));
      }
  return LawReport::pass(name);
}

LawReport check_oc7_impl(const OC& c, bool weak) {
  const char* name = weak ? "OC7'" : "OC7";
  const auto n = static_cast<Elem>(c.size());
  for (Elem b = 0; b < n; ++b)
    for (Elem d = 0; d < n; ++d) {
      const Elem bd = c.comp(b, d);
      if (bd == kUndefined) continue;
      for (Elem a : c.down(bd))
        if (oc7_fails(c, b, d, a, weak))
          return failure(name, name, {b, d, a},
                         std::string(name) + " fails at " +
                             inst(c.names(), {b, d, a}, {"b", "c", "a"}));
    }
  return LawReport::pass(name);
}

}  // namespace

LawReport check_meet_semilattice(const FiniteOrderedCategory& c) {
  for (Elem e : c.identities())
    for (Elem f : c.identities())
      if (meet_fails(c, e, f))
        return failure("meet-semilattice", "meet-glb", {e, f},
                       "meet is not the greatest lower bound at " +
                           inst(c.names(), {e, f}, {"e", "f"}));
  return LawReport::pass("meet-semilattice");
}

LawReport check_omega_structured(const FiniteOrderedCategory& c) {
  return LawReport::all_of("omega-structured",
                           {check_category(c.category()), LawReport::pass("OC1"),
                            check_oc2(c), check_oc3(c)});
}

LawReport check_oc_property(const FiniteOrderedCategory& c, OcLaw law) {
  const std::string name = to_string(law);
  switch (law) {
    case OcLaw::OC4:
    case OcLaw::OC4A:
    case OcLaw::OC4B:
      for (auto [a, b] : c.order().relation().pairs())
        if (oc4_fails(c, law, a, b))
          return failure(name, name, {a, b},
                         name + " fails at " + inst(c.names(), {a, b}, {"a", "b"}));
      return LawReport::pass(name);
    case OcLaw::OC6a: return check_oc6_side(c, true);
    case OcLaw::OC6b: return check_oc6_side(c, false);
    case OcLaw::OC6:
      return LawReport::all_of(name, {check_oc6_side(c, true), check_oc6_side(c, false)});
    case OcLaw::OC7: return check_oc7_impl(c, false);
    case OcLaw::OC7p: return check_oc7_impl(c, true);
    case OcLaw::OC8a: return check_oc8_side(c, true);
    case OcLaw::OC8b: return check_oc8_side(c, false);
    case OcLaw::OC8:
      return LawReport::all_of(name, {check_oc8_side(c, true), check_oc8_side(c, false)});
    case OcLaw::OCI:
      for (Elem a = 0; a < c.size(); ++a)
        for (Elem e : c.identities())
          if (oci_fails(c, a, e))
            return failure(name, name, {a, e},
                           "a <= e implies a is an identity fails at " +
                               inst(c.names(), {a, e}, {"a", "e"}));
      return LawReport::pass(name);
  }
  return LawReport::pass(name);
}

namespace {

LawReport biconditional(std::string law, std::string lhs_name, bool lhs,
                        std::string rhs_name, bool rhs) {
  LawReport r = lhs == rhs
                    ? LawReport::pass(law)
                    : LawReport::fail(law, law, {},
                                      lhs_name + (lhs ? " holds" : " fails") +
                                          " but " + rhs_name +
                                          (rhs ? " holds" : " fails"));
  r.facts.emplace_back(std::move(lhs_name), lhs);
  r.facts.emplace_back(std::move(rhs_name), rhs);
  return r;
}

}  // namespace

LawReport check_prop_oc_equivalences(const FiniteOrderedCategory& c) {
  const bool oc8a = check_oc_property(c, OcLaw::OC8a).holds;
  const bool oc8 = check_oc_property(c, OcLaw::OC8).holds;
  const bool oc4a = check_oc_property(c, OcLaw::OC4A).holds;
  const bool oc4b = check_oc_property(c, OcLaw::OC4B).holds;
  const bool oc6 = check_oc_property(c, OcLaw::OC6).holds;
  return LawReport::all_of(
      "oc-equivalences",
      {biconditional("OC8a<->OC4A+OC6", "OC8a", oc8a, "OC4A+OC6", oc4a && oc6),
       biconditional("OC8<->OC4A+OC4B+OC6", "OC8", oc8, "OC4A+OC4B+OC6",
                     oc4a && oc4b && oc6)});
}

LawReport check_ehresmann_ordered_category(const FiniteOrderedCategory& c) {
  return LawReport::all_of(
      "ehresmann-ordered-category",
      {check_omega_structured(c), check_oc_property(c, OcLaw::OC6),
       check_oc_property(c, OcLaw::OC7p), check_oc_property(c, OcLaw::OCI),
       check_meet_semilattice(c)});
}

LawReport check_inductive1(const FiniteOrderedCategory& c) {
  return LawReport::all_of("inductive1",
                           {check_omega_structured(c),
                            check_oc_property(c, OcLaw::OC8),
                            check_meet_semilattice(c)});
}

// ---------------------------------------------------------------------------
// Ehresmann categories with two orders

namespace {

/// The unique y below x (in c's order) with D(y) = e (side) or R(y) = e.
Elem unique_below(const OC& c, Elem e, Elem x, bool side) {
  Elem found = kUndefined;
  for (Elem y : c.down(x))
    if ((side ? c.D(y) : c.R(y)) == e) {
      if (found != kUndefined) return kUndefined;
      found = y;
    }
  return found;
}

}  // namespace

LawReport check_ehresmann_category_two_orders(const FiniteCategory& c,
                                              const PartialOrder& leq_l,
                                              const PartialOrder& leq_r) {
  const OC L(c, leq_l);
  const OC Rr(c, leq_r);
  const auto& ids = c.identities();
  std::vector<LawReport> parts;

  {
    auto r = LawReport::all_of("left-order-OC8a",
                               {check_omega_structured(L), check_oc8_side(L, true)});
    parts.push_back(std::move(r));
  }
  {
    auto r = LawReport::all_of("right-order-OC8b",
                               {check_omega_structured(Rr), check_oc8_side(Rr, false)});
    parts.push_back(std::move(r));
  }
  {
    LawReport r = LawReport::pass("orders-agree-on-identities");
    for (Elem e : ids)
      for (Elem f : ids)
        if (r.holds && leq_l(e, f) != leq_r(e, f))
          r = failure("orders-agree-on-identities", "orders-agree-on-identities",
                      {e, f}, "<=_l and <=_r differ at " + inst(c.names(), {e, f}, {"e", "f"}));
    parts.push_back(std::move(r));
  }
  {
    auto r = check_meet_semilattice(L);
    parts.push_back(std::move(r));
  }
  {
    const auto& l = leq_l.relation();
    const auto& rr = leq_r.relation();
    LawReport r = l.compose(rr) == rr.compose(l)
                      ? LawReport::pass("orders-permute")
                      : failure("orders-permute", "orders-permute", {},
                                "<=_l ; <=_r differs from <=_r ; <=_l");
    parts.push_back(std::move(r));
  }
  const bool meets_ok = parts[3].holds;
  {
    LawReport r = LawReport::pass("restriction-monotone");
    for (Elem x = 0; x < c.size() && r.holds; ++x)
      for (Elem y = 0; y < c.size() && r.holds; ++y) {
        if (!leq_r(x, y)) continue;
        for (Elem e : ids) {
          Elem lhs = kUndefined;
          Elem rhs = kUndefined;
          if (meets_ok) {
            lhs = unique_below(L, L.meet(c.D(x), e), x, true);
            rhs = unique_below(L, L.meet(c.D(y), e), y, true);
          }
          if (lhs == kUndefined || rhs == kUndefined || !leq_r(lhs, rhs)) {
            r = failure("restriction-monotone", "restriction-monotone", {x, y, e},
                        "(D(x)^e)|x <=_r (D(y)^e)|y fails at " +
                            inst(c.names(), {x, y, e}, {"x", "y", "e"}));
            break;
          }
        }
      }
    parts.push_back(std::move(r));
  }
  {
    LawReport r = LawReport::pass("corestriction-monotone");
    for (Elem x = 0; x < c.size() && r.holds; ++x)
      for (Elem y = 0; y < c.size() && r.holds; ++y) {
        if (!leq_l(x, y)) continue;
        for (Elem e : ids) {
          Elem lhs = kUndefined;
          Elem rhs = kUndefined;
          if (meets_ok) {
            lhs = unique_below(Rr, L.meet(c.R(x), e), x, false);
            rhs = unique_below(Rr, L.meet(c.R(y), e), y, false);
          }
          if (lhs == kUndefined || rhs == kUndefined || !leq_l(lhs, rhs)) {
            r = failure("corestriction-monotone", "corestriction-monotone", {x, y, e},
                        "x|(R(x)^e) <=_l y|(R(y)^e) fails at " +
                            inst(c.names(), {x, y, e}, {"x", "y", "e"}));
            break;
          }
        }
      }
    parts.push_back(std::move(r));
  }
  return LawReport::all_of("ehresmann-category", std::move(parts));
}

// ---------------------------------------------------------------------------
// Biaction

Biaction derive_biaction(const FiniteOrderedCategory& c) {
  const auto n = c.size();
  Biaction b{n, std::vector<Elem>(n * n, kUndefined),
             std::vector<Elem>(n * n, kUndefined)};
  for (Elem e : c.identities())
    for (Elem x = 0; x < n; ++x) {
      const Elem ml = c.meet(e, c.D(x));
      const Elem mr = c.meet(c.R(x), e);
      if (ml == kUndefined || mr == kUndefined)
        throw Error(ErrorKind::precondition, "meet undefined on identities");
      b.left[e * n + x] = restriction(c, ml, x);
      b.right[x * n + e] = corestriction(c, x, mr);
    }
  return b;
}

namespace {

class BiactionChecker {
 public:
  BiactionChecker(const OC& c, const Biaction& b) : c_(c), b_(b), n_(c.size()) {}

  Elem meet(Elem e, Elem f) const {
    if (e >= n_ || f >= n_ || !c_.is_identity(e) || !c_.is_identity(f)) return kUndefined;
    return c_.meet(e, f);
  }
  Elem L(Elem e, Elem x) const {
    if (e >= n_ || x >= n_ || !c_.is_identity(e) || b_.left.size() != n_ * n_)
      return kUndefined;
    const Elem v = b_.left[e * n_ + x];
    return v < n_ ? v : kUndefined;
  }
  Elem R(Elem x, Elem e) const {
    if (e >= n_ || x >= n_ || !c_.is_identity(e) || b_.right.size() != n_ * n_)
      return kUndefined;
    const Elem v = b_.right[x * n_ + e];
    return v < n_ ? v : kUndefined;
  }
  Elem comp(Elem x, Elem y) const {
    if (x >= n_ || y >= n_) return kUndefined;
    return c_.comp(x, y);
  }
  Elem dom(Elem x) const { return x < n_ ? c_.D(x) : kUndefined; }
  Elem ran(Elem x) const { return x < n_ ? c_.R(x) : kUndefined; }
  /// e <= f in the semilattice order e = e ^ f.
  bool below(Elem e, Elem f) const {
    const Elem m = meet(e, f);
    return m != kUndefined && m == e;
  }

  static bool eq(Elem a, Elem b) { return a != kUndefined && a == b; }

  bool fails(std::string_view clause, std::span<const Elem> w) const {
    if (clause == "E1") {
      const Elem e = w[0], f = w[1], g = w[2];
      const Elem ef = meet(e, f);
      return !c_.is_identity(e) || ef == kUndefined || !c_.is_identity(ef) ||
             !eq(meet(e, e), e) || !eq(meet(f, e), ef) ||
             !eq(meet(ef, g), meet(e, meet(f, g)));
    }
    if (clause == "E2-left") {
      const Elem e = w[0], f = w[1], a = w[2];
      const Elem ea = L(e, a);
      return !eq(L(dom(a), a), a) || ea == kUndefined ||
             !eq(dom(ea), meet(e, dom(a))) || !eq(L(meet(e, f), a), L(e, L(f, a)));
    }
    if (clause == "E2-right") {
      const Elem a = w[0], e = w[1], f = w[2];
      const Elem ae = R(a, e);
      return !eq(R(a, ran(a)), a) || ae == kUndefined ||
             !eq(ran(ae), meet(ran(a), e)) || !eq(R(a, meet(e, f)), R(R(a, e), f));
    }
    if (clause == "E3") {
      const Elem e = w[0], a = w[1], f = w[2];
      return !eq(R(L(e, a), f), L(e, R(a, f)));
    }
    if (clause == "E4") {
      const Elem e = w[0], a = w[1];
      if (!c_.is_identity(a)) return false;
      return !eq(L(e, a), meet(e, a)) || !eq(R(a, e), meet(a, e));
    }
    if (clause == "E5") {
      const Elem e = w[0], a = w[1];
      const Elem ea = L(e, a);
      const Elem ae = R(a, e);
      return ea == kUndefined || ae == kUndefined || !below(ran(ea), ran(a)) ||
             !below(dom(ae), dom(a));
    }
    if (clause == "E6") {
      const Elem e = w[0], a = w[1], b = w[2];
      const Elem ab = comp(a, b);
      if (ab == kUndefined) return false;
      const Elem ea = L(e, a);
      const Elem lhs1 = L(e, ab);
      const Elem rhs1 = ea == kUndefined ? kUndefined : comp(ea, L(ran(ea), b));
      const Elem be = R(b, e);
      const Elem lhs2 = R(ab, e);
      const Elem rhs2 = be == kUndefined ? kUndefined : comp(R(a, dom(be)), be);
      return !eq(lhs1, rhs1) || !eq(lhs2, rhs2);
    }
    throw Error(ErrorKind::precondition, "unknown biaction clause " + std::string(clause));
  }

 private:
  const OC& c_;
  const Biaction& b_;
  std::size_t n_;
};

struct BiactionClause {
  std::string_view name;
  std::string_view statement;
  std::array<bool, 3> identity_slot;  // which positions range over D(C)
  std::size_t arity;
};

constexpr BiactionClause kBiactionClauses[] = {
    {"E1", "D(C) is a semilattice under the meet", {true, true, true}, 3},
    {"E2-left", "left action: D(a).a = a, D(e.a) = e^D(a), (e^f).a = e.(f.a)",
     {true, true, false}, 3},
    {"E2-right", "right action: a.R(a) = a, R(a.e) = R(a)^e, a.(e^f) = (a.e).f",
     {false, true, true}, 3},
    {"E3", "(e.a).f = e.(a.f)", {true, false, true}, 3},
    {"E4", "e.a = e^a and a.e = a^e for identities a", {true, false, false}, 2},
    {"E5", "R(e.a) <= R(a) and D(a.e) <= D(a)", {true, false, false}, 2},
    {"E6", "e.(a o b) = (e.a) o (R(e.a).b) and dually", {true, false, false}, 3},
};

}  // namespace

LawReport verify_biaction(const FiniteOrderedCategory& c, const Biaction& b) {
  const BiactionChecker check(c, b);
  std::vector<Elem> all(c.size());
  for (Elem x = 0; x < c.size(); ++x) all[x] = x;
  std::vector<LawReport> parts;
  for (const auto& clause : kBiactionClauses) {
    std::vector<const std::vector<Elem>*> doms;
    for (std::size_t i = 0; i < clause.arity; ++i)
      doms.push_back(clause.identity_slot[i] ? &c.identities() : &all);
    std::vector<std::size_t> idx(clause.arity, 0);
    std::vector<Elem> w(clause.arity);
    LawReport r = LawReport::pass(std::string(clause.name));
    bool done = false;
    while (!done) {
      for (std::size_t i = 0; i < clause.arity; ++i) w[i] = (*doms[i])[idx[i]];
      if (check.fails(clause.name, w)) {
        std::string where;
        for (std::size_t i = 0; i < w.size(); ++i)
          where += (i ? ", " : "") + c.name(w[i]);
        r = failure(clause.name, clause.name, w,
                    std::string(clause.statement) + " fails at (" + where + ")");
        break;
      }
      std::size_t pos = clause.arity;
      done = true;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < doms[pos]->size()) {
          done = false;
          break;
        }
        idx[pos] = 0;
      }
    }
    parts.push_back(std::move(r));
  }
  return LawReport::all_of("biaction", std::move(parts));
}

// ---------------------------------------------------------------------------
// Pseudoproduct and the ESN round trip

OrderedSemigroup semigroup_of(const FiniteOrderedCategory& c) {
  const auto n = c.size();
  std::vector<Elem> mul(n * n);
  for (Elem s = 0; s < n; ++s)
    for (Elem t = 0; t < n; ++t) {
      const Elem f = c.meet(c.R(s), c.D(t));
      if (f == kUndefined)
        throw Error(ErrorKind::precondition, "meet undefined on identities");
      const Elem left = corestriction(c, s, f);
      const Elem right = restriction(c, f, t);
      const Elem p = c.comp(left, right);
      if (p == kUndefined)
        throw Error(ErrorKind::internal_inconsistency,
                    "pseudoproduct factors are not composable");
      mul[s * n + t] = p;
    }
  const auto& cat = c.category();
  return OrderedSemigroup(
      FiniteBiunarySemigroup(n, std::move(mul), {cat.dmap().begin(), cat.dmap().end()},
                             {cat.rmap().begin(), cat.rmap().end()},
                             {cat.names().begin(), cat.names().end()}),
      c.order());
}

LawReport esn_round_trip(const OrderedSemigroup& os) {
  const auto c = category_of(os);
  const auto back = semigroup_of(c);
  LawReport forward = LawReport::pass("semigroup-round-trip");
  const auto& s = os.base;
  for (Elem a = 0; a < s.size() && forward.holds; ++a)
    for (Elem b = 0; b < s.size(); ++b)
      if (back.base.mul(a, b) != s.mul(a, b)) {
        forward = failure("semigroup-round-trip", "semigroup-round-trip", {a, b},
                          "pseudoproduct differs from the product at " +
                              inst(s.names(), {a, b}, {"s", "t"}));
        break;
      }
  if (forward.holds && !back.base.same_tables(s))
    forward = failure("semigroup-round-trip", "semigroup-round-trip", {},
                      "D or R changed in the round trip");
  if (forward.holds && !(back.order == os.order))
    forward = failure("semigroup-round-trip", "semigroup-round-trip", {},
                      "order changed in the round trip");

  LawReport backward = LawReport::pass("category-round-trip");
  if (forward.holds) {
    if (!category_of(back).same_structure(c))
      backward = failure("category-round-trip", "category-round-trip", {},
                         "category of the pseudoproduct semigroup differs");
  } else {
    backward = failure("category-round-trip", "category-round-trip", {},
                       "skipped: semigroup round trip failed");
  }
  return LawReport::all_of("esn-round-trip", {std::move(forward), std::move(backward)});
}

// ---------------------------------------------------------------------------
// Morphisms

LawReport is_eoc_morphism(const FunctorCandidate& f, const FiniteOrderedCategory& c1,
                          const FiniteOrderedCategory& c2) {
  if (f.map.size() != c1.size())
    throw Error(ErrorKind::structural, "map is not total on the source");
  for (Elem x : f.map)
    if (x >= c2.size()) throw Error(ErrorKind::structural, "map leaves the target");
  const auto& F = f.map;
  const auto n = static_cast<Elem>(c1.size());

  LawReport functor = LawReport::pass("functor");
  for (Elem x = 0; x < n && functor.holds; ++x)
    if (F[c1.D(x)] != c2.D(F[x]) || F[c1.R(x)] != c2.R(F[x]))
      functor = failure("functor", "functor-DR", {x},
                        "F does not preserve D and R at x=" + c1.name(x));
  for (Elem x = 0; x < n && functor.holds; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem xy = c1.comp(x, y);
      if (xy == kUndefined) continue;
      if (c2.comp(F[x], F[y]) != F[xy]) {
        functor = failure("functor", "functor-comp", {x, y},
                          "F does not preserve x o y at " +
                              inst(c1.names(), {x, y}, {"x", "y"}));
        break;
      }
    }

  LawReport order = LawReport::pass("order-preserving");
  for (auto [a, b] : c1.order().relation().pairs())
    if (!c2.leq(F[a], F[b])) {
      order = failure("order-preserving", "order-preserving", {a, b},
                      "s <= t but sF !<= tF at " + inst(c1.names(), {a, b}, {"s", "t"}));
      break;
    }

  LawReport meets = LawReport::pass("meet-preserving");
  for (Elem e : c1.identities()) {
    for (Elem g : c1.identities()) {
      const Elem m1 = c1.meet(e, g);
      const Elem m2 = c2.is_identity(F[e]) && c2.is_identity(F[g])
                          ? c2.meet(F[e], F[g])
                          : kUndefined;
      if (m1 == kUndefined || m2 == kUndefined || F[m1] != m2) {
        meets = failure("meet-preserving", "meet-preserving", {e, g},
                        "(e^f)F = eF^fF fails at " + inst(c1.names(), {e, g}, {"e", "f"}));
        break;
      }
    }
    if (!meets.holds) break;
  }

  auto transported = [&](Elem e, Elem x, bool side) {
    std::optional<Elem> r1;
    std::optional<Elem> r2;
    try {
      r1 = find_max_below(c1, e, x, side);
      r2 = find_max_below(c2, F[e], F[x], side);
    } catch (const Error&) {
      return false;
    }
    return r1 && r2 && F[*r1] == *r2;
  };
  LawReport restr = LawReport::pass("restriction-preserving");
  for (Elem x = 0; x < n && restr.holds; ++x)
    for (Elem e : c1.identities()) {
      if (c1.leq(e, c1.D(x)) && !transported(e, x, true)) {
        restr = failure("restriction-preserving", "restriction-preserving", {e, x},
                        "(e|s)F = (eF)|(sF) fails at " +
                            inst(c1.names(), {e, x}, {"e", "s"}));
        break;
      }
      if (c1.leq(e, c1.R(x)) && !transported(e, x, false)) {
        restr = failure("restriction-preserving", "corestriction-preserving", {x, e},
                        "(s|f)F = (sF)|(fF) fails at " +
                            inst(c1.names(), {x, e}, {"s", "f"}));
        break;
      }
    }

  return LawReport::all_of("eoc-morphism", {std::move(functor), std::move(order),
                                            std::move(meets), std::move(restr)});
}

LawReport morphism_correspondence(const OrderedSemigroup& s, const OrderedSemigroup& t,
                                  std::uint64_t ceiling) {
  const auto ns = s.base.size();
  const auto nt = t.base.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < ns; ++i) {
    if (total > ceiling / nt + 1) {
      total = ceiling + 1;
      break;
    }
    total *= nt;
  }
  if (total > ceiling)
    throw Error(ErrorKind::too_large,
                "map search space exceeds the ceiling of " + std::to_string(ceiling));

  const auto c1 = category_of(s);
  const auto c2 = category_of(t);
  const auto b1 = derive_biaction(c1);
  const auto b2 = derive_biaction(c2);

  FunctorCandidate f{"S", "T", std::vector<Elem>(ns, 0)};
  std::uint64_t checked = 0;
  std::uint64_t morphisms = 0;
  LawReport agreement = LawReport::pass("hom-morphism-agreement");
  LawReport biaction = LawReport::pass("biaction-preserved");
  while (true) {
    ++checked;
    const bool hom = is_ordered_hom(f, s, t).holds;
    const bool mor = is_eoc_morphism(f, c1, c2).holds;
    if (hom != mor && agreement.holds) {
      std::string img;
      for (Elem x : f.map) img += (img.empty() ? "" : " ") + t.base.name(x);
      agreement = failure("hom-morphism-agreement", "hom-morphism-agreement", f.map,
                          std::string("map [") + img + "] is " +
                              (hom ? "" : "not ") + "an ordered homomorphism but " +
                              (mor ? "" : "not ") + "a category morphism");
    }
    if (mor) {
      ++morphisms;
      for (Elem e : c1.identities())
        for (Elem x = 0; x < ns && biaction.holds; ++x) {
          const Elem fe = f.map[e];
          const Elem fx = f.map[x];
          if (f.map[b1.act_left(e, x)] != b2.act_left(fe, fx) ||
              f.map[b1.act_right(x, e)] != b2.act_right(fx, fe))
            biaction = failure("biaction-preserved", "biaction-preserved", f.map,
                               "a morphism does not preserve the biaction");
        }
    }
    std::size_t pos = ns;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++f.map[pos] < nt) {
        done = false;
        break;
      }
      f.map[pos] = 0;
    }
    if (done) break;
  }
  auto r = LawReport::all_of("morphism-correspondence",
                             {std::move(agreement), std::move(biaction)});
  if (r.holds)
    r.detail = std::to_string(checked) + " maps, " + std::to_string(morphisms) +
               " morphisms";
  return r;
}

// ---------------------------------------------------------------------------
// Special classes

LawReport check_every_element_epi(const FiniteCategory& c) {
  const auto n = static_cast<Elem>(c.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem t = 0; t < n; ++t) {
      const Elem xt = c.comp(x, t);
      if (xt == kUndefined) continue;
      for (Elem u = 0; u < n; ++u)
        if (u != t && c.comp(x, u) == xt)
          return failure("every-element-epi", "every-element-epi", {x, t, u},
                         "x o t = x o u with t != u at " +
                             inst(c.names(), {x, t, u}, {"x", "t", "u"}));
    }
  return LawReport::pass("every-element-epi");
}

LawReport check_special_correspondences(const OrderedSemigroup& os) {
  const auto c = category_of(os);
  const auto& s = os.base;
  const bool is_leq_e = os.order.relation() == leq_e_relation(s);
  auto os_holds = [&](OsProperty p) { return check_os_property(os, p).holds; };
  auto oc_holds = [&](OcLaw l) { return check_oc_property(c, l).holds; };

  const bool left = check_left_restriction_with_range(s).holds;
  const bool restr = check_restriction(s).holds;
  const bool functional = check_functional(s).holds;
  const bool oc4a = oc_holds(OcLaw::OC4A);

  return LawReport::all_of(
      "special-correspondences",
      {biconditional("OS4<->OC4", "OS4", os_holds(OsProperty::OS4), "OC4",
                     oc_holds(OcLaw::OC4)),
       biconditional("OS7<->OC7", "OS7", os_holds(OsProperty::OS7), "OC7",
                     oc_holds(OcLaw::OC7)),
       biconditional("OS4A<->OC4A", "OS4A", os_holds(OsProperty::OS4A), "OC4A", oc4a),
       biconditional("OS4B<->OC4B", "OS4B", os_holds(OsProperty::OS4B), "OC4B",
                     oc_holds(OcLaw::OC4B)),
       biconditional("restriction<->inductive1", "restriction-with-leq-e",
                     restr && is_leq_e, "inductive1", check_inductive1(c).holds),
       biconditional("functional<->OC4A+epi", "functional-with-leq-e",
                     functional && left && is_leq_e, "OC4A+epi",
                     oc4a && check_every_element_epi(c.category()).holds)});
}

Relation category_leq_l(const FiniteOrderedCategory& c) {
  Relation rel(c.size());
  for (Elem s = 0; s < c.size(); ++s)
    for (Elem t = 0; t < c.size(); ++t)
      if (c.leq(c.D(s), c.D(t)))
        if (auto r = find_restriction(c, c.D(s), t); r && *r == s) rel.set(s, t);
  return rel;
}

Relation category_leq_r(const FiniteOrderedCategory& c) {
  Relation rel(c.size());
  for (Elem s = 0; s < c.size(); ++s)
    for (Elem t = 0; t < c.size(); ++t)
      if (c.leq(c.R(s), c.R(t)))
        if (auto r = find_corestriction(c, t, c.R(s)); r && *r == s) rel.set(s, t);
  return rel;
}

bool category_law_fails_at(const FiniteOrderedCategory& c, std::string_view clause,
                           std::span<const Elem> w) {
  for (Elem x : w)
    if (x >= c.size()) throw Error(ErrorKind::precondition, "witness out of range");
  if (clause.starts_with("cat-")) return cat_clause_fails(c.category(), clause, w);
  if (clause == "OC2") return oc2_fails(c, w[0], w[1]);
  if (clause == "OC3") return oc3_fails(c, w[0], w[1], w[2], w[3]);
  if (clause == "OC4") return oc4_fails(c, OcLaw::OC4, w[0], w[1]);
  if (clause == "OC4A") return oc4_fails(c, OcLaw::OC4A, w[0], w[1]);
  if (clause == "OC4B") return oc4_fails(c, OcLaw::OC4B, w[0], w[1]);
  if (clause == "OC6a") return oc6_fails(c, w[0], w[1], true);
  if (clause == "OC6b") return oc6_fails(c, w[1], w[0], false);
  if (clause == "OC7") return oc7_fails(c, w[0], w[1], w[2], false);
  if (clause == "OC7'") return oc7_fails(c, w[0], w[1], w[2], true);
  if (clause == "OC8a") return oc8_fails(c, w[0], w[1], true);
  if (clause == "OC8b") return oc8_fails(c, w[1], w[0], false);
  if (clause == "OCI") return oci_fails(c, w[0], w[1]);
  if (clause == "meet-glb") return meet_fails(c, w[0], w[1]);
  throw Error(ErrorKind::precondition, "unknown category clause " + std::string(clause));
}

}  // namespace ehr
