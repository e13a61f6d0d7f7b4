#include <algorithm>
#include <set>

#include "lincert/monomial_geometry.hpp"

namespace lincert {
namespace {

std::vector<std::vector<long>> restricted_chars(const std::vector<MonomialElement>& diag, const std::vector<int>& J) {
  std::set<std::vector<long>> seen;
  for (const auto& g : diag) {
    std::vector<long> c;
    for (int j : J) c.push_back(g.scalars[static_cast<std::size_t>(j)]);
    seen.insert(std::move(c));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<CoordinateStratum> coordinate_stratify(const MonomialRep& rep) {
  std::vector<CoordinateStratum> out;
  const auto diag = diagonal_subgroup(rep);
  bool all_diagonal = true;
  for (const auto& [name, g] : rep.generators)
    if (!g.is_diagonal()) all_diagonal = false;

  if (all_diagonal) {
    const std::size_t n = rep.n;
    if (n > 20) throw GeometryError(GeometryError::Code::UnsupportedAction, "coordinate_stratify: dimension too large");
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      std::vector<int> J;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1U << i)) J.push_back(static_cast<int>(i));
      subsets.push_back(std::move(J));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (auto& J : subsets) {
      CoordinateStratum s;
      s.chars = restricted_chars(diag, J);
      s.orbit = SubsetOrbit{std::move(J), 1};
      out.push_back(std::move(s));
    }
    return out;
  }

  const MonomialElement* tau = rep.cycle_generator();
  if (tau == nullptr || !is_prime(rep.n))
    throw GeometryError(GeometryError::Code::UnsupportedAction, "coordinate_stratify: permutation image is not cyclic of prime order");
  // the permutation part must be one n-cycle
  std::size_t len = 1;
  for (int j = tau->perm[0]; j != 0; j = tau->perm[static_cast<std::size_t>(j)]) ++len;
  if (len != rep.n)
    throw GeometryError(GeometryError::Code::UnsupportedAction, "coordinate_stratify: permutation image is not a full cycle");

  for (auto& orbit : subset_orbits(static_cast<unsigned>(rep.n))) {
    CoordinateStratum s;
    s.chars = restricted_chars(diag, orbit.representative);
    s.whole_group = orbit.representative.size() == rep.n;
    s.orbit = std::move(orbit);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace lincert
