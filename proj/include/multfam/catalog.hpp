#ifndef MULTFAM_CATALOG_HPP
#define MULTFAM_CATALOG_HPP

#include <utility>

#include "multfam/family.hpp"

namespace multfam {

/// k[t]: I_n = (t^{n+2}) for odd n, (t^{n+1}) for even n > 0. Sandwiched
/// between shift(adic(t), 2) and adic(t).
Family parity_family();

/// (I_n = x^{n+1}, J_n = x^n) in k[x]: equal multiplicity, different closures.
std::pair<Family, Family> rees_pair();

/// (m^{n+1}, m^n) in k[x_1..x_d]: Minkowski equality without equal closures.
std::pair<Family, Family> shifted_maximal_pair(int d);

} // namespace multfam

#endif
