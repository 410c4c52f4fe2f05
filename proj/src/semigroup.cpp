#include "ehr/semigroup.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>

namespace ehr {

FiniteBiunarySemigroup::FiniteBiunarySemigroup(std::size_t n,
                                               std::vector<Elem> mul,
                                               std::vector<Elem> dmap,
                                               std::vector<Elem> rmap,
                                               std::vector<std::string> names)
    : n_(n),
      mul_(std::move(mul)),
      dmap_(std::move(dmap)),
      rmap_(std::move(rmap)),
      names_(std::move(names)) {
  if (n_ == 0) throw Error(ErrorKind::structural, "empty carrier");
  if (mul_.size() != n_ * n_)
    throw Error(ErrorKind::structural, "multiplication table is not n x n");
  if (dmap_.size() != n_ || rmap_.size() != n_)
    throw Error(ErrorKind::structural, "D or R map has wrong length");
  auto in_range = [this](Elem e) { return e < n_; };
  if (!std::ranges::all_of(mul_, in_range) ||
      !std::ranges::all_of(dmap_, in_range) ||
      !std::ranges::all_of(rmap_, in_range))
    throw Error(ErrorKind::structural, "table entry out of range");
  if (names_.empty()) {
    for (std::size_t i = 0; i < n_; ++i) names_.push_back(std::to_string(i));
  } else if (names_.size() != n_) {
    throw Error(ErrorKind::structural, "names vector has wrong length");
  }
}

Elem FiniteBiunarySemigroup::find(std::string_view name) const {
  for (Elem a = 0; a < n_; ++a)
    if (names_[a] == name) return a;
  return kUndefined;
}

bool FiniteBiunarySemigroup::same_tables(
    const FiniteBiunarySemigroup& other) const {
  return n_ == other.n_ && mul_ == other.mul_ && dmap_ == other.dmap_ &&
         rmap_ == other.rmap_;
}

OrderedSemigroup::OrderedSemigroup(FiniteBiunarySemigroup s, PartialOrder o)
    : base(std::move(s)), order(std::move(o)) {
  if (order.size() != base.size())
    throw Error(ErrorKind::structural, "order and semigroup sizes differ");
}

bool ProjectionSet::contains(Elem e) const {
  return std::ranges::binary_search(members, e);
}

namespace {

std::vector<Elem> sorted_unique(std::span<const Elem> values) {
  std::vector<Elem> out(values.begin(), values.end());
  std::ranges::sort(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

using S = FiniteBiunarySemigroup;

enum class Domain { all, projections };

struct Clause {
  std::string_view name;
  std::string_view statement;
  std::vector<std::string_view> vars;
  std::vector<Domain> domains;
  std::function<bool(const S&, std::span<const Elem>)> fails;
};

const std::vector<Clause>& clauses() {
  static const std::vector<Clause> table = {
      {"assoc", "(ab)c = a(bc)", {"a", "b", "c"},
       {Domain::all, Domain::all, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.mul(s.mul(w[0], w[1]), w[2]) != s.mul(w[0], s.mul(w[1], w[2]));
       }},
      {"L1a", "D(s)s = s", {"s"}, {Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.mul(s.D(w[0]), w[0]) != w[0];
       }},
      {"L1b", "sR(s) = s", {"s"}, {Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.mul(w[0], s.R(w[0])) != w[0];
       }},
      {"L2a", "D(R(s)) = R(s)", {"s"}, {Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.D(s.R(w[0])) != s.R(w[0]);
       }},
      {"L2b", "R(D(s)) = D(s)", {"s"}, {Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.R(s.D(w[0])) != s.D(w[0]);
       }},
      {"L3a", "D(st) = D(sD(t))", {"s", "t"}, {Domain::all, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.D(s.mul(w[0], w[1])) != s.D(s.mul(w[0], s.D(w[1])));
       }},
      {"L3b", "R(st) = R(R(s)t)", {"s", "t"}, {Domain::all, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.R(s.mul(w[0], w[1])) != s.R(s.mul(s.R(w[0]), w[1]));
       }},
      {"L4", "D(D(s)D(t)) = D(s)D(t)", {"s", "t"}, {Domain::all, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         const Elem p = s.mul(s.D(w[0]), s.D(w[1]));
         return s.D(p) != p;
       }},
      {"comm", "D(s)D(t) = D(t)D(s)", {"s", "t"}, {Domain::all, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.mul(s.D(w[0]), s.D(w[1])) != s.mul(s.D(w[1]), s.D(w[0]));
       }},
      {"left-restriction", "sD(t) = D(st)s", {"s", "t"},
       {Domain::all, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.mul(w[0], s.D(w[1])) != s.mul(s.D(s.mul(w[0], w[1])), w[0]);
       }},
      {"right-restriction", "R(t)s = sR(ts)", {"s", "t"},
       {Domain::all, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.mul(s.R(w[1]), w[0]) != s.mul(w[0], s.R(s.mul(w[1], w[0])));
       }},
      {"functional", "st = su implies R(s)t = R(s)u", {"s", "t", "u"},
       {Domain::all, Domain::all, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         return s.mul(w[0], w[1]) == s.mul(w[0], w[2]) &&
                s.mul(s.R(w[0]), w[1]) != s.mul(s.R(w[0]), w[2]);
       }},
      {"de-barros", "set = D(set)stR(set)", {"s", "e", "t"},
       {Domain::all, Domain::projections, Domain::all},
       [](const S& s, std::span<const Elem> w) {
         const Elem set = s.mul(s.mul(w[0], w[1]), w[2]);
         const Elem st = s.mul(w[0], w[2]);
         return set != s.mul(s.mul(s.D(set), st), s.R(set));
       }},
  };
  return table;
}

const Clause& clause_named(std::string_view name) {
  for (const auto& c : clauses())
    if (c.name == name) return c;
  throw Error(ErrorKind::precondition,
              "unknown semigroup clause " + std::string(name));
}

/// Lexicographically least failing instance (odometer over the domains).
std::optional<std::vector<Elem>> first_failure(const S& s, const Clause& c) {
  std::vector<Elem> all(s.size());
  for (Elem a = 0; a < s.size(); ++a) all[a] = a;
  const auto proj = d_image(s);
  std::vector<const std::vector<Elem>*> doms;
  for (auto d : c.domains) doms.push_back(d == Domain::all ? &all : &proj);
  for (const auto* d : doms)
    if (d->empty()) return std::nullopt;

  const std::size_t k = doms.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<Elem> w(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) w[i] = (*doms[i])[idx[i]];
    if (c.fails(s, w)) return w;
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < doms[pos]->size()) break;
      idx[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

LawReport run_clause(const S& s, std::string_view law, std::string_view name) {
  const auto& c = clause_named(name);
  if (auto w = first_failure(s, c)) {
    std::string detail = std::string(c.statement) + " fails at " +
                         format_instance(c.vars, *w, s.names());
    return LawReport::fail(std::string(law), std::string(c.name), std::move(*w),
                           std::move(detail));
  }
  return LawReport::pass(std::string(law));
}

LawReport run_clauses(const S& s, std::string_view law,
                      std::initializer_list<std::string_view> names) {
  std::vector<LawReport> parts;
  for (auto n : names) parts.push_back(run_clause(s, n, n));
  return LawReport::all_of(std::string(law), std::move(parts));
}

}  // namespace

std::vector<Elem> d_image(const FiniteBiunarySemigroup& s) {
  return sorted_unique(s.dmap());
}

std::vector<Elem> r_image(const FiniteBiunarySemigroup& s) {
  return sorted_unique(s.rmap());
}

LawReport check_associativity(const FiniteBiunarySemigroup& s) {
  return run_clause(s, "associativity", "assoc");
}

LawReport check_localisable(const FiniteBiunarySemigroup& s) {
  return run_clauses(s, "localisable",
                     {"L1a", "L1b", "L2a", "L2b", "L3a", "L3b", "L4"});
}

LawReport check_ehresmann(const FiniteBiunarySemigroup& s) {
  return LawReport::all_of(
      "ehresmann", {check_associativity(s), check_localisable(s),
                    run_clause(s, "commutation", "comm")});
}

ProjectionSet projections(const FiniteBiunarySemigroup& s) {
  ProjectionSet p{d_image(s)};
  if (p.members != r_image(s))
    throw Error(ErrorKind::inconsistent_projections,
                "D(S) and R(S) differ");
  for (Elem e : p.members) {
    if (s.mul(e, e) != e)
      throw Error(ErrorKind::inconsistent_projections,
                  "projection " + s.name(e) + " is not idempotent");
    for (Elem f : p.members)
      if (!p.contains(s.mul(e, f)))
        throw Error(ErrorKind::inconsistent_projections,
                    "projections not closed under multiplication");
  }
  return p;
}

LawReport check_left_restriction_with_range(const FiniteBiunarySemigroup& s) {
  return run_clause(s, "left-restriction", "left-restriction");
}

LawReport check_right_restriction_with_domain(const FiniteBiunarySemigroup& s) {
  return run_clause(s, "right-restriction", "right-restriction");
}

LawReport check_restriction(const FiniteBiunarySemigroup& s) {
  return LawReport::all_of("restriction",
                           {check_left_restriction_with_range(s),
                            check_right_restriction_with_domain(s)});
}

LawReport check_functional(const FiniteBiunarySemigroup& s) {
  auto r = run_clause(s, "functional", "functional");
  r.applicable =
      check_ehresmann(s).holds && check_left_restriction_with_range(s).holds;
  if (!r.applicable) {
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += "not applicable: not a left restriction semigroup with range";
  }
  return r;
}

LawReport check_de_barros_equational(const FiniteBiunarySemigroup& s) {
  return run_clause(s, "de-barros-equational", "de-barros");
}

bool semigroup_law_fails_at(const FiniteBiunarySemigroup& s,
                            std::string_view clause,
                            std::span<const Elem> witness) {
  const auto& c = clause_named(clause);
  if (witness.size() != c.vars.size())
    throw Error(ErrorKind::precondition, "witness arity mismatch");
  for (Elem w : witness)
    if (w >= s.size()) throw Error(ErrorKind::precondition, "witness out of range");
  const auto proj = d_image(s);
  for (std::size_t i = 0; i < witness.size(); ++i)
    if (c.domains[i] == Domain::projections &&
        !std::ranges::binary_search(proj, witness[i]))
      return false;
  return c.fails(s, witness);
}

namespace {

void check_map_shape(const HomCandidate& f, std::size_t src_n,
                     std::size_t tgt_n) {
  if (f.map.size() != src_n)
    throw Error(ErrorKind::structural, "map is not total on the source");
  for (Elem x : f.map)
    if (x >= tgt_n) throw Error(ErrorKind::structural, "map leaves the target");
}

LawReport hom_part(std::string_view clause, std::vector<Elem> w,
                   std::string detail) {
  return LawReport::fail(std::string(clause), std::string(clause), std::move(w),
                         std::move(detail));
}

}  // namespace

LawReport is_ehresmann_hom(const HomCandidate& f,
                           const FiniteBiunarySemigroup& src,
                           const FiniteBiunarySemigroup& tgt) {
  check_map_shape(f, src.size(), tgt.size());
  const auto& F = f.map;
  std::vector<LawReport> parts;

  LawReport mul = LawReport::pass("hom-mul");
  for (Elem a = 0; a < src.size() && mul.holds; ++a)
    for (Elem b = 0; b < src.size(); ++b)
      if (F[src.mul(a, b)] != tgt.mul(F[a], F[b])) {
        mul = hom_part("hom-mul", {a, b},
                       "(ab)F = aF bF fails at a=" + src.name(a) +
                           ", b=" + src.name(b));
        break;
      }
  parts.push_back(std::move(mul));

  LawReport d = LawReport::pass("hom-D");
  LawReport r = LawReport::pass("hom-R");
  for (Elem a = 0; a < src.size(); ++a) {
    if (d.holds && F[src.D(a)] != tgt.D(F[a]))
      d = hom_part("hom-D", {a}, "D(a)F = D(aF) fails at a=" + src.name(a));
    if (r.holds && F[src.R(a)] != tgt.R(F[a]))
      r = hom_part("hom-R", {a}, "R(a)F = R(aF) fails at a=" + src.name(a));
  }
  parts.push_back(std::move(d));
  parts.push_back(std::move(r));
  return LawReport::all_of("ehresmann-hom", std::move(parts));
}

LawReport is_ordered_hom(const HomCandidate& f, const OrderedSemigroup& src,
                         const OrderedSemigroup& tgt) {
  auto base = is_ehresmann_hom(f, src.base, tgt.base);
  LawReport order = LawReport::pass("hom-order");
  for (auto [a, b] : src.order.relation().pairs())
    if (!tgt.order(f.map[a], f.map[b])) {
      order = hom_part("hom-order", {a, b},
                       "a <= b implies aF <= bF fails at a=" +
                           src.base.name(a) + ", b=" + src.base.name(b));
      break;
    }
  auto parts = std::move(base.parts);
  parts.push_back(std::move(order));
  return LawReport::all_of("ordered-hom", std::move(parts));
}

bool hom_law_fails_at(const HomCandidate& f, const OrderedSemigroup& src,
                      const OrderedSemigroup& tgt, std::string_view clause,
                      std::span<const Elem> w) {
  const auto& F = f.map;
  const auto& s = src.base;
  const auto& t = tgt.base;
  if (clause == "hom-mul") return F[s.mul(w[0], w[1])] != t.mul(F[w[0]], F[w[1]]);
  if (clause == "hom-D") return F[s.D(w[0])] != t.D(F[w[0]]);
  if (clause == "hom-R") return F[s.R(w[0])] != t.R(F[w[0]]);
  if (clause == "hom-order")
    return src.order(w[0], w[1]) && !tgt.order(F[w[0]], F[w[1]]);
  throw Error(ErrorKind::precondition, "unknown hom clause " + std::string(clause));
}

}  // namespace ehr
