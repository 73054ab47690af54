#include "gaplab/rational.hpp"

namespace gaplab {

std::string rat_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace gaplab
