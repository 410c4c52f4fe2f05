#include "ehr/zoo.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "ehr/orders.hpp"
#include "ehr/parallel.hpp"

namespace ehr {

const PartialOrder& ZooEntry::order(std::string_view order_name) const {
  for (const auto& o : orders)
    if (o.name == order_name) return o.order;
  throw Error(ErrorKind::precondition,
              "example " + name + " has no order named " + std::string(order_name));
}

OrderedSemigroup ZooEntry::ordered(std::string_view order_name) const {
  return OrderedSemigroup(structure, order(order_name));
}

namespace {

PartialOrder order_from_pairs(std::size_t n,
                              std::initializer_list<std::pair<Elem, Elem>> strict) {
  Relation rel = Relation::identity(n);
  for (auto [a, b] : strict) rel.set(a, b);
  return PartialOrder(reflexive_transitive_closure(std::move(rel)));
}

// --- Rel({1..k}) as bit masks -------------------------------------------

using Mask = std::uint32_t;

Mask row_of(Mask m, std::size_t k, std::size_t i) {
  return (m >> (i * k)) & ((Mask{1} << k) - 1);
}

Mask compose(Mask a, Mask b, std::size_t k) {
  Mask out = 0;
  for (std::size_t i = 0; i < k; ++i) {
    Mask row = 0;
    const Mask ra = row_of(a, k, i);
    for (std::size_t j = 0; j < k; ++j)
      if ((ra >> j) & 1) row |= row_of(b, k, j);
    out |= row << (i * k);
  }
  return out;
}

Mask diagonal_of(Mask points, std::size_t k) {
  Mask out = 0;
  for (std::size_t i = 0; i < k; ++i)
    if ((points >> i) & 1) out |= Mask{1} << (i * k + i);
  return out;
}

Mask domain_mask(Mask m, std::size_t k) {
  Mask points = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (row_of(m, k, i)) points |= Mask{1} << i;
  return diagonal_of(points, k);
}

Mask range_mask(Mask m, std::size_t k) {
  Mask points = 0;
  for (std::size_t i = 0; i < k; ++i) points |= row_of(m, k, i);
  return diagonal_of(points, k);
}

std::string relation_name(Mask m, std::size_t k) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if ((m >> (i * k + j)) & 1) {
        if (!first) out += ',';
        first = false;
        out += '(' + std::to_string(i + 1) + ',' + std::to_string(j + 1) + ')';
      }
  return out + "}";
}

ZooEntry relation_entry(std::string name, std::string description,
                        const std::vector<Mask>& members, std::size_t k,
                        std::vector<std::string> names = {}) {
  const std::size_t n = members.size();
  std::vector<Elem> index(std::size_t{1} << (k * k), kUndefined);
  for (std::size_t i = 0; i < n; ++i) index[members[i]] = static_cast<Elem>(i);
  auto at = [&](Mask m) {
    const Elem e = index[m];
    if (e == kUndefined)
      throw Error(ErrorKind::internal_inconsistency,
                  "relation family is not closed: " + relation_name(m, k));
    return e;
  };
  std::vector<Elem> mul(n * n), dmap(n), rmap(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = at(compose(members[a], members[b], k));
    dmap[a] = at(domain_mask(members[a], k));
    rmap[a] = at(range_mask(members[a], k));
  }
  if (names.empty())
    for (Mask m : members) names.push_back(relation_name(m, k));
  Relation incl(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if ((members[a] & ~members[b]) == 0) incl.set(a, b);
  ZooEntry e{std::move(name),
             FiniteBiunarySemigroup(n, std::move(mul), std::move(dmap), std::move(rmap),
                                    std::move(names)),
             {},
             "check_ehresmann_order",
             std::move(description)};
  e.orders.push_back({"inclusion", PartialOrder(std::move(incl))});
  return e;
}

void check_points(std::size_t k) {
  if (k == 0) throw Error(ErrorKind::precondition, "point count must be positive");
  if (k > 3) throw Error(ErrorKind::too_large, "point count above 3");
}

std::vector<Mask> relations_where(std::size_t k, bool functional, bool injective) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << (k * k)); ++m) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (functional && std::popcount(row_of(m, k, i)) > 1) ok = false;
      if (injective) {
        std::size_t col = 0;
        for (std::size_t r = 0; r < k; ++r) col += (m >> (r * k + i)) & 1;
        if (col > 1) ok = false;
      }
    }
    if (ok) out.push_back(m);
  }
  return out;
}

}  // namespace

ZooEntry example_trivial() {
  ZooEntry e{"trivial", FiniteBiunarySemigroup(1, {0}, {0}, {0}, {"1"}), {},
             "check_ehresmann_order", "one-element monoid"};
  e.orders.push_back({"eq", PartialOrder::equality(1)});
  return e;
}

ZooEntry example_two_element_monoid() {
  ZooEntry e{"two-element-monoid",
             FiniteBiunarySemigroup(2, {0, 0, 0, 1}, {1, 1}, {1, 1}, {"0", "1"}),
             {},
             "check_ehresmann_order",
             "monoid {0,1} with zero 0 and D = R = 1"};
  e.orders.push_back({"leq1", order_from_pairs(2, {{1, 0}})});
  e.orders.push_back({"leq2", PartialOrder::equality(2)});
  return e;
}

ZooEntry example_orderless_band() {
  // c d Px Py Pz 1
  const std::vector<Elem> mul = {
      0, 0, 2, 3, 4, 0,  //
      1, 1, 2, 3, 4, 1,  //
      2, 2, 2, 3, 4, 2,  //
      3, 3, 2, 3, 4, 3,  //
      2, 3, 2, 3, 4, 4,  //
      0, 1, 2, 3, 4, 5,
  };
  return ZooEntry{"orderless-band",
                  FiniteBiunarySemigroup(6, mul, {5, 5, 4, 4, 4, 5}, {5, 5, 5, 5, 4, 5},
                                         {"c", "d", "Px", "Py", "Pz", "1"}),
                  {},
                  "check_ehresmann",
                  "six-element Ehresmann band with no Ehresmann order"};
}

ZooEntry example_zero_one_nabla() {
  return relation_entry("zero-one-nabla", "empty, diagonal and full relation on {1,2}",
                        {0b0000, 0b1001, 0b1111}, 2, {"0", "1", "nabla"});
}

ZooEntry gen_rel(std::size_t k) {
  check_points(k);
  return relation_entry("rel-" + std::to_string(k),
                        "all binary relations on {1.." + std::to_string(k) + "}",
                        relations_where(k, false, false), k);
}

ZooEntry gen_pt(std::size_t k) {
  check_points(k);
  return relation_entry("pt-" + std::to_string(k),
                        "partial transformations of {1.." + std::to_string(k) + "}",
                        relations_where(k, true, false), k);
}

ZooEntry gen_pinj(std::size_t k) {
  check_points(k);
  return relation_entry("pinj-" + std::to_string(k),
                        "partial injections of {1.." + std::to_string(k) + "}",
                        relations_where(k, true, true), k);
}

std::vector<std::string> zoo_names() {
  return {"trivial", "two-element-monoid", "orderless-band", "zero-one-nabla",
          "rel-1",   "rel-2",              "rel-3",          "pt-1",
          "pt-2",    "pt-3",               "pinj-1",         "pinj-2",
          "pinj-3"};
}

ZooEntry zoo_entry(std::string_view name) {
  if (name == "trivial") return example_trivial();
  if (name == "two-element-monoid") return example_two_element_monoid();
  if (name == "orderless-band") return example_orderless_band();
  if (name == "zero-one-nabla") return example_zero_one_nabla();
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto suffix = "-" + std::to_string(k);
    if (name == "rel" + suffix) return gen_rel(k);
    if (name == "pt" + suffix) return gen_pt(k);
    if (name == "pinj" + suffix) return gen_pinj(k);
  }
  throw Error(ErrorKind::precondition, "unknown example " + std::string(name));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class TableSearch {
 public:
  TableSearch(std::size_t n, std::vector<Elem> prefix)
      : n_(n), mul_(n * n, kUndefined) {
    std::copy(prefix.begin(), prefix.end(), mul_.begin());
    start_ = prefix.size();
  }

  std::vector<std::vector<Elem>> run() {
    if (consistent()) fill(start_);
    return std::move(found_);
  }

 private:
  Elem at(Elem a, Elem b) const { return mul_[a * n_ + b]; }

  bool consistent() const {
    const auto n = static_cast<Elem>(n_);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Elem ab = at(a, b);
        if (ab == kUndefined) continue;
        for (Elem c = 0; c < n; ++c) {
          const Elem bc = at(b, c);
          if (bc == kUndefined) continue;
          const Elem l = at(ab, c);
          const Elem r = at(a, bc);
          if (l != kUndefined && r != kUndefined && l != r) return false;
        }
      }
    return true;
  }

  void fill(std::size_t cell) {
    if (cell == mul_.size()) {
      found_.push_back(mul_);
      return;
    }
    for (Elem v = 0; v < n_; ++v) {
      mul_[cell] = v;
      if (consistent()) fill(cell + 1);
    }
    mul_[cell] = kUndefined;
  }

  std::size_t n_;
  std::vector<Elem> mul_;
  std::size_t start_ = 0;
  std::vector<std::vector<Elem>> found_;
};

std::vector<std::vector<Elem>> all_maps(std::size_t n) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> m(n, 0);
  while (true) {
    out.push_back(m);
    std::size_t pos = n;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++m[pos] < n) {
        done = false;
        break;
      }
      m[pos] = 0;
    }
    if (done) return out;
  }
}

// D-only and R-only consequences of the Ehresmann laws, used as filters.
bool plausible_domain(std::span<const Elem> mul, std::span<const Elem> d, std::size_t n) {
  auto M = [&](Elem a, Elem b) { return mul[a * n + b]; };
  for (Elem s = 0; s < n; ++s) {
    if (M(d[s], s) != s || d[d[s]] != d[s]) return false;
    for (Elem t = 0; t < n; ++t) {
      if (d[M(s, t)] != d[M(s, d[t])]) return false;
      if (M(d[s], d[t]) != M(d[t], d[s])) return false;
    }
  }
  return true;
}

bool plausible_range(std::span<const Elem> mul, std::span<const Elem> r, std::size_t n) {
  auto M = [&](Elem a, Elem b) { return mul[a * n + b]; };
  for (Elem s = 0; s < n; ++s) {
    if (M(s, r[s]) != s || r[r[s]] != r[s]) return false;
    for (Elem t = 0; t < n; ++t)
      if (r[M(s, t)] != r[M(r[s], t)]) return false;
  }
  return true;
}

std::vector<Elem> encoding(const FiniteBiunarySemigroup& s) {
  std::vector<Elem> e(s.mul_table().begin(), s.mul_table().end());
  e.insert(e.end(), s.dmap().begin(), s.dmap().end());
  e.insert(e.end(), s.rmap().begin(), s.rmap().end());
  return e;
}

FiniteBiunarySemigroup decode(const std::vector<Elem>& e, std::size_t n) {
  return FiniteBiunarySemigroup(n, {e.begin(), e.begin() + n * n},
                                {e.begin() + n * n, e.begin() + n * n + n},
                                {e.begin() + n * n + n, e.end()});
}

}  // namespace

std::vector<std::vector<Elem>> enumerate_semigroup_tables(std::size_t n, unsigned threads) {
  if (n == 0) throw Error(ErrorKind::precondition, "size must be positive");
  if (n > 4) throw Error(ErrorKind::too_large, "table enumeration above 4 elements");
  // Partition by first row.
  const auto rows = all_maps(n);
  auto parts = parallel_map(rows.size(), threads, [&](std::size_t i) {
    return TableSearch(n, rows[i]).run();
  });
  std::vector<std::vector<Elem>> out;
  for (auto& p : parts)
    for (auto& t : p) out.push_back(std::move(t));
  return out;
}

std::vector<Elem> canonical_encoding(const FiniteBiunarySemigroup& s) {
  const auto n = s.size();
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::vector<Elem> best;
  std::vector<Elem> cur(n * n + 2 * n);
  do {
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) cur[perm[a] * n + perm[b]] = perm[s.mul(a, b)];
      cur[n * n + perm[a]] = perm[s.D(a)];
      cur[n * n + n + perm[a]] = perm[s.R(a)];
    }
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<FiniteBiunarySemigroup> enumerate_ehresmann_semigroups(std::size_t n,
                                                                  bool up_to_iso,
                                                                  unsigned threads,
                                                                  bool allow_four) {
  if (n == 0) throw Error(ErrorKind::too_large, "size must be 1..3");
  if (n > 4 || (n == 4 && !allow_four))
    throw Error(ErrorKind::too_large, "exhaustive enumeration is limited to 3 elements");
  const auto tables = enumerate_semigroup_tables(n, threads);
  const auto maps = all_maps(n);
  auto per_table = parallel_map(tables.size(), threads, [&](std::size_t i) {
    const auto& mul = tables[i];
    std::vector<const std::vector<Elem>*> ds, rs;
    for (const auto& m : maps) {
      if (plausible_domain(mul, m, n)) ds.push_back(&m);
      if (plausible_range(mul, m, n)) rs.push_back(&m);
    }
    std::vector<std::vector<Elem>> found;
    for (const auto* d : ds)
      for (const auto* r : rs) {
        FiniteBiunarySemigroup s(n, mul, *d, *r);
        if (!check_ehresmann(s).holds) continue;
        found.push_back(up_to_iso ? canonical_encoding(s) : encoding(s));
      }
    return found;
  });
  std::vector<std::vector<Elem>> all;
  for (auto& p : per_table)
    for (auto& e : p) all.push_back(std::move(e));
  std::ranges::sort(all);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<FiniteBiunarySemigroup> out;
  out.reserve(all.size());
  for (const auto& e : all) out.push_back(decode(e, n));
  return out;
}

}  // namespace ehr
