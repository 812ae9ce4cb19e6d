#pragma once

#include <string_view>

#include "qmomap/multipoly.hpp"

namespace qmomap {

// Grammar: sums of products of variables, rationals p/q, i, ^powers and parentheses.
MultiPoly parse_poly(std::string_view text, const Universe& u);

}  // namespace qmomap
