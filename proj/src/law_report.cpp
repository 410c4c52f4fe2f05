#include "ehr/law_report.hpp"

namespace ehr {

LawReport LawReport::all_of(std::string law, std::vector<LawReport> parts) {
  LawReport r;
  r.law = std::move(law);
  for (const auto& p : parts) {
    if (!p.holds && r.holds) {
      r.holds = false;
      r.clause = p.clause.empty() ? p.law : p.clause;
      r.witness = p.witness;
      r.detail = p.detail;
    }
  }
  r.parts = std::move(parts);
  return r;
}

const LawReport* LawReport::part(std::string_view name) const {
  for (const auto& p : parts)
    if (p.law == name) return &p;
  return nullptr;
}

bool LawReport::fact(std::string_view name) const {
  for (const auto& [key, value] : facts)
    if (key == name) return value;
  throw Error(ErrorKind::precondition, "no fact named " + std::string(name));
}

std::string format_instance(std::span<const std::string_view> vars,
                            std::span<const Elem> witness,
                            std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i) out += ", ";
    out += i < vars.size() ? std::string(vars[i]) : "x" + std::to_string(i);
    out += '=';
    out += witness[i] < names.size() ? names[witness[i]]
                                     : std::to_string(witness[i]);
  }
  return out;
}

}  // namespace ehr
