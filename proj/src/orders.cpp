#include "ehr/orders.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <string>

namespace ehr {

namespace {

using S = FiniteBiunarySemigroup;

bool in_set(const std::vector<Elem>& sorted, Elem e) {
  return std::ranges::binary_search(sorted, e);
}

// Instance predicates: true when the instance violates the clause.

bool os2_fails(const S& s, const Relation& rel, Elem a, Elem b) {
  return rel(a, b) && (!rel(s.D(a), s.D(b)) || !rel(s.R(a), s.R(b)));
}

bool os3_fails(const S& s, const Relation& rel, Elem a, Elem b, Elem c, Elem d) {
  return rel(a, b) && rel(c, d) && !rel(s.mul(a, c), s.mul(b, d));
}

bool os6_fails(const S& s, const Relation& rel, Elem a, Elem e) {
  return !rel(s.mul(a, e), a) || !rel(s.mul(e, a), a);
}

bool osi_fails(const Relation& rel, const std::vector<Elem>& proj, Elem a,
               Elem e) {
  return rel(a, e) && !in_set(proj, a);
}

bool os4_fails(const S& s, const Relation& rel, OsProperty p, Elem a, Elem b) {
  if (a == b || !rel(a, b)) return false;
  const bool d = s.D(a) == s.D(b);
  const bool r = s.R(a) == s.R(b);
  switch (p) {
    case OsProperty::OS4: return d && r;
    case OsProperty::OS4A: return d;
    case OsProperty::OS4B: return r;
    case OsProperty::OS7: break;
  }
  return false;
}

bool os7_fails(const S& s, const Relation& rel, Elem a, Elem b, Elem u) {
  if (!rel(u, s.mul(a, b))) return false;
  for (Elem a2 : rel.down_set(a))
    for (Elem b2 : rel.down_set(b))
      if (s.mul(a2, b2) == u) return false;
  return true;
}

std::string names_of(const S& s, std::initializer_list<Elem> w,
                     std::initializer_list<std::string_view> vars) {
  std::vector<Elem> ws(w);
  std::vector<std::string_view> vs(vars);
  return format_instance(vs, ws, s.names());
}

}  // namespace

const char* to_string(OsProperty p) {
  switch (p) {
    case OsProperty::OS4: return "OS4";
    case OsProperty::OS4A: return "OS4A";
    case OsProperty::OS4B: return "OS4B";
    case OsProperty::OS7: return "OS7";
  }
  return "?";
}

Relation leq_l_relation(const S& s) {
  Relation rel(s.size());
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < s.size(); ++b)
      if (a == s.mul(s.D(a), b)) rel.set(a, b);
  return rel;
}

Relation leq_r_relation(const S& s) {
  Relation rel(s.size());
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < s.size(); ++b)
      if (a == s.mul(b, s.R(a))) rel.set(a, b);
  return rel;
}

Relation leq_e_relation(const S& s) {
  Relation rel(s.size());
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < s.size(); ++b)
      if (a == s.mul(s.mul(s.D(a), b), s.R(a))) rel.set(a, b);
  return rel;
}

DerivedOrders derive_orders(const S& s) {
  if (!check_ehresmann(s).holds)
    throw Error(ErrorKind::precondition, "derive_orders needs an Ehresmann semigroup");
  auto as_order = [](Relation rel, const char* what) {
    if (!is_partial_order(rel))
      throw Error(ErrorKind::internal_inconsistency,
                  std::string(what) + " is not a partial order");
    return PartialOrder(std::move(rel));
  };
  DerivedOrders d{as_order(leq_l_relation(s), "<=_l"),
                  as_order(leq_r_relation(s), "<=_r"),
                  as_order(leq_e_relation(s), "<=_e")};
  const auto& l = d.leq_l.relation();
  const auto& r = d.leq_r.relation();
  if (l.compose(r) != d.leq_e.relation() || r.compose(l) != d.leq_e.relation())
    throw Error(ErrorKind::internal_inconsistency,
                "<=_e differs from the composite of <=_l and <=_r");
  return d;
}

LawReport check_os1(const S& s, const Relation& rel) {
  if (auto a = reflexivity_violation(rel))
    return LawReport::fail("OS1", "OS1-reflexive", {*a},
                           "a <= a fails at " + names_of(s, {*a}, {"a"}));
  if (auto p = antisymmetry_violation(rel))
    return LawReport::fail(
        "OS1", "OS1-antisymmetric", {p->first, p->second},
        "antisymmetry fails at " + names_of(s, {p->first, p->second}, {"a", "b"}));
  if (auto t = transitivity_violation(rel))
    return LawReport::fail(
        "OS1", "OS1-transitive", {(*t)[0], (*t)[1], (*t)[2]},
        "transitivity fails at " +
            names_of(s, {(*t)[0], (*t)[1], (*t)[2]}, {"a", "b", "c"}));
  return LawReport::pass("OS1");
}

LawReport check_os2(const S& s, const Relation& rel) {
  for (auto [a, b] : rel.pairs())
    if (os2_fails(s, rel, a, b))
      return LawReport::fail("OS2", "OS2", {a, b},
                             "a <= b implies D(a) <= D(b), R(a) <= R(b) fails at " +
                                 names_of(s, {a, b}, {"a", "b"}));
  return LawReport::pass("OS2");
}

LawReport check_os3(const S& s, const Relation& rel) {
  const auto pairs = rel.pairs();
  for (auto [a, b] : pairs)
    for (auto [c, d] : pairs)
      if (!rel(s.mul(a, c), s.mul(b, d)))
        return LawReport::fail(
            "OS3", "OS3", {a, b, c, d},
            "x <= y, z <= w implies xz <= yw fails at " +
                names_of(s, {a, b, c, d}, {"x", "y", "z", "w"}));
  return LawReport::pass("OS3");
}

LawReport check_os6(const S& s, const Relation& rel) {
  const auto proj = d_image(s);
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem e : proj)
      if (os6_fails(s, rel, a, e))
        return LawReport::fail("OS6", "OS6", {a, e},
                               "ae <= a and ea <= a fails at " +
                                   names_of(s, {a, e}, {"a", "e"}));
  return LawReport::pass("OS6");
}

LawReport check_osi(const S& s, const Relation& rel) {
  const auto proj = d_image(s);
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem e : proj)
      if (osi_fails(rel, proj, a, e))
        return LawReport::fail("OSI", "OSI", {a, e},
                               "a <= e implies a is a projection fails at " +
                                   names_of(s, {a, e}, {"a", "e"}));
  return LawReport::pass("OSI");
}

LawReport check_ehresmann_order(const OrderedSemigroup& os) {
  const auto& s = os.base;
  const auto& rel = os.order.relation();
  return LawReport::all_of(
      "ehresmann-order",
      {check_associativity(s), check_localisable(s), check_os1(s, rel),
       check_os2(s, rel), check_os3(s, rel), check_os6(s, rel),
       check_osi(s, rel)});
}

LawReport check_os_property(const OrderedSemigroup& os, OsProperty prop) {
  const auto& s = os.base;
  const auto& rel = os.order.relation();
  const std::string name = to_string(prop);
  if (prop == OsProperty::OS7) {
    for (Elem a = 0; a < s.size(); ++a)
      for (Elem b = 0; b < s.size(); ++b)
        for (Elem u : rel.down_set(s.mul(a, b)))
          if (os7_fails(s, rel, a, b, u))
            return LawReport::fail(
                name, name, {a, b, u},
                "u <= st has no factorisation s't' below (s,t) at " +
                    names_of(s, {a, b, u}, {"s", "t", "u"}));
    return LawReport::pass(name);
  }
  for (auto [a, b] : rel.pairs())
    if (os4_fails(s, rel, prop, a, b))
      return LawReport::fail(name, name, {a, b},
                             name + " fails at " + names_of(s, {a, b}, {"s", "t"}));
  return LawReport::pass(name);
}

LawReport semilattice_order_agreement(const OrderedSemigroup& os) {
  const auto& s = os.base;
  const auto proj = d_image(s);
  for (Elem e : proj)
    for (Elem f : proj)
      if (os.order(e, f) != (e == s.mul(e, f)))
        return LawReport::fail("semilattice-agreement", "semilattice-agreement",
                               {e, f},
                               "e <= f iff e = ef fails at " +
                                   names_of(s, {e, f}, {"e", "f"}));
  return LawReport::pass("semilattice-agreement");
}

LawReport leq_e_containment(const OrderedSemigroup& os) {
  const auto& s = os.base;
  const auto le = leq_e_relation(s);
  for (auto [a, b] : le.pairs())
    if (!os.order(a, b))
      return LawReport::fail("leq-e-containment", "leq-e-containment", {a, b},
                             "a <=_e b but not a <= b at " +
                                 names_of(s, {a, b}, {"a", "b"}));
  return LawReport::pass("leq-e-containment");
}

LawReport check_leq_e_partial_laws(const S& s) {
  if (!check_ehresmann(s).holds)
    throw Error(ErrorKind::precondition, "needs an Ehresmann semigroup");
  const auto le = leq_e_relation(s);
  std::vector<LawReport> parts{check_os1(s, le), check_os2(s, le),
                               check_os6(s, le), check_osi(s, le)};
  for (const auto& p : parts)
    if (!p.holds)
      throw Error(ErrorKind::internal_inconsistency,
                  "<=_e violates " + p.law + ": " + p.detail);
  parts.push_back(check_os3(s, le));
  return LawReport::all_of("leq-e-partial-laws", std::move(parts));
}

LawReport is_de_barros(const S& s) {
  if (!check_ehresmann(s).holds)
    throw Error(ErrorKind::precondition, "needs an Ehresmann semigroup");
  auto os3 = check_os3(s, leq_e_relation(s));
  auto eq = check_de_barros_equational(s);
  if (os3.holds != eq.holds)
    throw Error(ErrorKind::internal_inconsistency,
                "OS3 for <=_e and the de Barros identity disagree");
  return LawReport::all_of("de-barros", {std::move(os3), std::move(eq)});
}

namespace {

/// Closed extension search for Ehresmann orders.
class OrderSearch {
 public:
  explicit OrderSearch(const S& s)
      : s_(s), n_(s.size()), proj_(d_image(s)), excluded_(n_) {
    is_proj_.assign(n_, false);
    for (Elem e : proj_) is_proj_[e] = true;
    // OSI forbids a <= e with a not a projection and e a projection.
    for (Elem a = 0; a < n_; ++a)
      for (Elem e : proj_)
        if (!is_proj_[a]) excluded_.set(a, e);
  }

  std::vector<Relation> run() {
    Relation start(n_);
    if (!extend(start, leq_e_relation(s_).pairs())) return {};
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b)
        if (a != b) candidates_.emplace_back(a, b);
    recurse(start, 0);
    return std::move(found_);
  }

 private:
  /// Adds pairs to rel and closes under transitivity, OS2 and OS3. Returns
  /// false if the closure hits an excluded pair or breaks antisymmetry.
  bool extend(Relation& rel, const std::vector<std::pair<Elem, Elem>>& seeds) const {
    std::deque<std::pair<Elem, Elem>> queue;
    std::vector<std::pair<Elem, Elem>> members = rel.pairs();
    auto add = [&](Elem a, Elem b) {
      if (rel(a, b)) return true;
      if (excluded_(a, b)) return false;
      if (a != b && rel(b, a)) return false;
      rel.set(a, b);
      members.emplace_back(a, b);
      queue.emplace_back(a, b);
      return true;
    };
    for (auto [a, b] : seeds)
      if (!add(a, b)) return false;
    while (!queue.empty()) {
      auto [a, b] = queue.front();
      queue.pop_front();
      if (!add(s_.D(a), s_.D(b)) || !add(s_.R(a), s_.R(b))) return false;
      for (std::size_t i = 0; i < members.size(); ++i) {
        auto [c, d] = members[i];
        if (!add(s_.mul(a, c), s_.mul(b, d)) || !add(s_.mul(c, a), s_.mul(d, b)))
          return false;
        if (d == a && !add(c, b)) return false;
        if (c == b && !add(a, d)) return false;
      }
    }
    return true;
  }

  void recurse(Relation& rel, std::size_t i) {
    while (i < candidates_.size() &&
           (rel(candidates_[i].first, candidates_[i].second) ||
            excluded_(candidates_[i].first, candidates_[i].second)))
      ++i;
    if (i == candidates_.size()) {
      if (check_os6(s_, rel).holds) found_.push_back(rel);
      return;
    }
    auto [a, b] = candidates_[i];
    Relation with = rel;
    if (extend(with, {{a, b}})) recurse(with, i + 1);
    excluded_.set(a, b);
    recurse(rel, i + 1);
    excluded_.set(a, b, false);
  }

  const S& s_;
  std::size_t n_;
  std::vector<Elem> proj_;
  std::vector<bool> is_proj_;
  Relation excluded_;
  std::vector<std::pair<Elem, Elem>> candidates_;
  std::vector<Relation> found_;
};

/// Backtracking automorphism search; products and D, R force images.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const S& s) : s_(s), n_(s.size()) {}

  std::vector<std::vector<Elem>> run() {
    std::vector<Elem> img(n_, kUndefined);
    std::vector<bool> used(n_, false);
    recurse(img, used);
    std::ranges::sort(found_);
    return std::move(found_);
  }

 private:
  bool assign(std::vector<Elem>& img, std::vector<bool>& used, Elem a, Elem x) const {
    std::deque<std::pair<Elem, Elem>> queue{{a, x}};
    while (!queue.empty()) {
      auto [p, q] = queue.front();
      queue.pop_front();
      if (img[p] != kUndefined) {
        if (img[p] != q) return false;
        continue;
      }
      if (used[q]) return false;
      img[p] = q;
      used[q] = true;
      queue.emplace_back(s_.D(p), s_.D(q));
      queue.emplace_back(s_.R(p), s_.R(q));
      for (Elem b = 0; b < n_; ++b) {
        if (img[b] == kUndefined) continue;
        queue.emplace_back(s_.mul(p, b), s_.mul(q, img[b]));
        queue.emplace_back(s_.mul(b, p), s_.mul(img[b], q));
      }
    }
    return true;
  }

  void recurse(const std::vector<Elem>& img, const std::vector<bool>& used) {
    Elem next = 0;
    while (next < n_ && img[next] != kUndefined) ++next;
    if (next == n_) {
      found_.push_back(img);
      return;
    }
    for (Elem x = 0; x < n_; ++x) {
      if (used[x]) continue;
      auto img2 = img;
      auto used2 = used;
      if (assign(img2, used2, next, x)) recurse(img2, used2);
    }
  }

  const S& s_;
  std::size_t n_;
  std::vector<std::vector<Elem>> found_;
};

Relation permute(const Relation& rel, const std::vector<Elem>& pi) {
  Relation out(rel.size());
  for (auto [a, b] : rel.pairs()) out.set(pi[a], pi[b]);
  return out;
}

}  // namespace

std::vector<std::vector<Elem>> automorphisms(const S& s) {
  return AutomorphismSearch(s).run();
}

std::vector<PartialOrder> enumerate_ehresmann_orders(const S& s, bool up_to_iso) {
  if (!check_ehresmann(s).holds)
    throw Error(ErrorKind::precondition, "needs an Ehresmann semigroup");
  auto found = OrderSearch(s).run();
  std::ranges::sort(found, {}, &Relation::bit_string);
  if (up_to_iso && found.size() > 1) {
    const auto autos = automorphisms(s);
    std::vector<Relation> reps;
    for (const auto& rel : found) {
      const auto key = rel.bit_string();
      bool least = true;
      for (const auto& pi : autos)
        if (permute(rel, pi).bit_string() < key) {
          least = false;
          break;
        }
      if (least) reps.push_back(rel);
    }
    found = std::move(reps);
  }
  std::vector<PartialOrder> out;
  out.reserve(found.size());
  for (auto& rel : found) out.emplace_back(std::move(rel));
  return out;
}

LawReport smallest_order_check(const S& s) {
  if (!is_de_barros(s).holds)
    throw Error(ErrorKind::precondition, "needs a de Barros semigroup");
  const auto le = leq_e_relation(s);
  const auto orders = enumerate_ehresmann_orders(s);
  LawReport r = LawReport::pass("smallest-order");
  bool member = false;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i].relation() == le) member = true;
    if (!le.subset_of(orders[i].relation()) && r.holds)
      r = LawReport::fail("smallest-order", "smallest-order",
                          {static_cast<Elem>(i)},
                          "<=_e is not below enumerated order #" + std::to_string(i));
  }
  if (!member && r.holds)
    r = LawReport::fail("smallest-order", "smallest-order-member", {},
                        "<=_e is not among the Ehresmann orders");
  r.facts.emplace_back("leq-e-is-order", member);
  return r;
}

bool order_law_fails_at(const S& s, const Relation& rel, std::string_view clause,
                        std::span<const Elem> w) {
  const auto proj = d_image(s);
  auto need = [&](std::size_t k) {
    if (w.size() != k) throw Error(ErrorKind::precondition, "witness arity mismatch");
  };
  if (clause == "OS1-reflexive") return need(1), !rel(w[0], w[0]);
  if (clause == "OS1-antisymmetric")
    return need(2), w[0] != w[1] && rel(w[0], w[1]) && rel(w[1], w[0]);
  if (clause == "OS1-transitive")
    return need(3), rel(w[0], w[1]) && rel(w[1], w[2]) && !rel(w[0], w[2]);
  if (clause == "OS2") return need(2), os2_fails(s, rel, w[0], w[1]);
  if (clause == "OS3") return need(4), os3_fails(s, rel, w[0], w[1], w[2], w[3]);
  if (clause == "OS6") return need(2), in_set(proj, w[1]) && os6_fails(s, rel, w[0], w[1]);
  if (clause == "OSI") return need(2), in_set(proj, w[1]) && osi_fails(rel, proj, w[0], w[1]);
  if (clause == "OS4") return need(2), os4_fails(s, rel, OsProperty::OS4, w[0], w[1]);
  if (clause == "OS4A") return need(2), os4_fails(s, rel, OsProperty::OS4A, w[0], w[1]);
  if (clause == "OS4B") return need(2), os4_fails(s, rel, OsProperty::OS4B, w[0], w[1]);
  if (clause == "OS7") return need(3), os7_fails(s, rel, w[0], w[1], w[2]);
  if (clause == "semilattice-agreement")
    return need(2), in_set(proj, w[0]) && in_set(proj, w[1]) &&
                        rel(w[0], w[1]) != (w[0] == s.mul(w[0], w[1]));
  if (clause == "leq-e-containment")
    return need(2), leq_e_relation(s)(w[0], w[1]) && !rel(w[0], w[1]);
  return semigroup_law_fails_at(s, clause, w);
}

}  // namespace ehr
