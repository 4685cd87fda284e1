#include "tropid/scalar.hpp"

#include <stdexcept>

namespace tropid {

std::string TropScalar::to_string() const { return finite_ ? value_.to_string() : "-inf"; }

TropScalar TropScalar::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "-inf" || text == "-Inf" || text == "-INF") return bottom();
  return TropScalar(Rational::parse(text));
}

}  // namespace tropid
