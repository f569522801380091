#pragma once

#include <cstdint>
#include <span>

#include <json.hpp>

#include "lpcocycle/hyperbolicity.hpp"
#include "lpcocycle/measure.hpp"
#include "lpcocycle/report.hpp"

namespace lpcocycle::cli {

using nlohmann::json;
using Ids = std::span<const std::int64_t>;

/// Doubles go out rounded to 12 significant digits; infinities as "inf".
json number(double v);

/// Integer when it fits in 64 bits, decimal string otherwise.
json integer(const mpz_class& z);

/// {"num": ..., "den": ..., "value": ...}.
json rational(const Rational& q);

/// [{"v": id, "num": ..., "den": ...}, ...] in vertex order.
json atoms(const SparseProbMeasure& mu, Ids ids);

/// {"checked", "violations", "precondition_unmet", "witnesses"}; tuple
/// vertices are reported by id.
json suite(const SuiteReport& r, Ids ids);

json hyperbolicity(const HyperbolicityReport& h, Ids ids);

}  // namespace lpcocycle::cli
