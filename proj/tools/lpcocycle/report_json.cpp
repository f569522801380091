#include "report_json.hpp"

#include <cmath>

#include "lpcocycle/io.hpp"

namespace lpcocycle::cli {

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round_significant(v);
}

json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

json rational(const Rational& q) {
  return {{"num", integer(q.get_num())}, {"den", integer(q.get_den())}, {"value", number(q.get_d())}};
}

json atoms(const SparseProbMeasure& mu, Ids ids) {
  json out = json::array();
  for (const auto& [v, w] : mu.atoms()) {
    out.push_back({{"v", ids[static_cast<std::size_t>(v)]}, {"num", integer(w.get_num())}, {"den", integer(w.get_den())}});
  }
  return out;
}

json suite(const SuiteReport& r, Ids ids) {
  json w = json::array();
  for (const Violation& v : r.witnesses) {
    json tuple = json::array();
    for (Vertex x : v.tuple) tuple.push_back(ids[static_cast<std::size_t>(x)]);
    w.push_back({{"tuple", tuple}, {"params", v.params}, {"detail", v.detail}});
  }
  return {{"checked", r.checked},
          {"violations", r.violations},
          {"precondition_unmet", r.precondition_unmet},
          {"witnesses", w}};
}

json hyperbolicity(const HyperbolicityReport& h, Ids ids) {
  json witness = json::array();
  for (Vertex v : h.witness) witness.push_back(ids[static_cast<std::size_t>(v)]);
  return {{"delta_min", h.delta_min}, {"witness", witness}, {"delta_use", h.delta_use},
          {"K_1", h.K_1},             {"C", h.C},             {"eps_ann", number(h.eps_ann)}};
}

}  // namespace lpcocycle::cli
