#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace tropid {

using ExponentVector = std::vector<std::uint32_t>;

/// Direction x with <p, x> > max_k <v_k, x>, i.e. a certificate that p lies
/// outside the convex hull of the v_k. Exact simplex over
/// GMP rationals on the box -1 <= x <= 1; nullopt when p is in the hull.
/// All points must have equal coordinate sums within `hull`; `hull` nonempty.
std::optional<std::vector<mpq_class>> separate_point(const ExponentVector& p, const std::vector<ExponentVector>& hull);

}  // namespace tropid
