#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "lincert/exact_math.hpp"
#include "lincert/group_rep.hpp"

namespace lincert {

namespace {
constexpr std::size_t kClosureCap = 10000;
}

MonomialElement MonomialElement::identity(std::size_t n, unsigned e) {
  MonomialElement g;
  g.perm.resize(n);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  g.scalars.assign(n, 0);
  g.e = e;
  return g;
}

MonomialElement MonomialElement::diagonal(std::vector<long> scalars, unsigned e) {
  MonomialElement g = identity(scalars.size(), e);
  for (std::size_t i = 0; i < scalars.size(); ++i) g.scalars[i] = mod_floor(scalars[i], static_cast<long>(e));
  return g;
}

bool MonomialElement::is_identity() const {
  return is_diagonal() && std::all_of(scalars.begin(), scalars.end(), [](long s) { return s == 0; });
}

bool MonomialElement::is_diagonal() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

bool MonomialElement::is_scalar() const {
  return is_diagonal() && std::adjacent_find(scalars.begin(), scalars.end(), std::not_equal_to<>()) == scalars.end();
}

MonomialElement MonomialElement::operator*(const MonomialElement& rhs) const {
  if (dim() != rhs.dim() || e != rhs.e) throw GroupError("MonomialElement: incompatible factors");
  const std::size_t n = dim();
  std::vector<int> inv(n);
  for (std::size_t j = 0; j < n; ++j) inv[static_cast<std::size_t>(perm[j])] = static_cast<int>(j);
  MonomialElement out;
  out.e = e;
  out.perm.resize(n);
  out.scalars.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.perm[j] = perm[static_cast<std::size_t>(rhs.perm[j])];
  for (std::size_t k = 0; k < n; ++k)
    out.scalars[k] = (scalars[k] + rhs.scalars[static_cast<std::size_t>(inv[k])]) % static_cast<long>(e);
  return out;
}

MonomialElement MonomialElement::inverse() const {
  const std::size_t n = dim();
  MonomialElement out;
  out.e = e;
  out.perm.resize(n);
  out.scalars.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(perm[j]);
    out.perm[k] = static_cast<int>(j);
    out.scalars[j] = mod_floor(-scalars[k], static_cast<long>(e));
  }
  return out;
}

MonomialElement MonomialElement::pow(long k) const {
  MonomialElement base = k < 0 ? inverse() : *this;
  unsigned long m = static_cast<unsigned long>(k < 0 ? -k : k);
  MonomialElement result = identity(dim(), e);
  while (m > 0) {
    if (m & 1UL) result = result * base;
    base = base * base;
    m >>= 1UL;
  }
  return result;
}

unsigned MonomialElement::order() const {
  MonomialElement x = *this;
  unsigned k = 1;
  while (!x.is_identity()) {
    x = x * *this;
    if (++k > kClosureCap) throw GroupError("MonomialElement::order: element order exceeds cap");
  }
  return k;
}

std::string MonomialElement::to_string() const {
  std::ostringstream out;
  out << "perm=(";
  for (std::size_t i = 0; i < perm.size(); ++i) out << (i ? "," : "") << perm[i];
  out << ") zeta" << e << "^(";
  for (std::size_t i = 0; i < scalars.size(); ++i) out << (i ? "," : "") << scalars[i];
  out << ")";
  return out.str();
}

std::vector<MonomialElement> closure(const std::vector<MonomialElement>& gens) {
  if (gens.empty()) return {};
  std::set<MonomialElement> seen;
  std::deque<MonomialElement> queue;
  const MonomialElement id = MonomialElement::identity(gens.front().dim(), gens.front().e);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    MonomialElement x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      MonomialElement y = x * g;
      if (seen.insert(y).second) {
        if (seen.size() > kClosureCap) throw GroupError("closure: group order exceeds the 10^4 element cap");
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<SubsetOrbit> subset_orbits(unsigned p) {
  if (p == 0 || p > 24) throw GroupError("subset_orbits: unsupported size");
  const unsigned full = (1U << p) - 1U;
  auto rotate = [&](unsigned mask) { return ((mask << 1U) | (mask >> (p - 1U))) & full; };
  auto to_subset = [&](unsigned mask) {
    std::vector<int> s;
    for (unsigned i = 0; i < p; ++i)
      if (mask & (1U << i)) s.push_back(static_cast<int>(i));
    return s;
  };
  std::vector<bool> visited(full + 1U, false);
  std::vector<SubsetOrbit> out;
  for (unsigned mask = 0; mask <= full; ++mask) {
    if (visited[mask]) continue;
    std::vector<unsigned> orbit;
    unsigned m = mask;
    do {
      if (!visited[m]) orbit.push_back(m);
      visited[m] = true;
      m = rotate(m);
    } while (m != mask);
    std::vector<std::vector<int>> members;
    for (unsigned o : orbit) members.push_back(to_subset(o));
    std::sort(members.begin(), members.end());
    out.push_back(SubsetOrbit{members.front(), orbit.size()});
  }
  std::sort(out.begin(), out.end(), [](const SubsetOrbit& a, const SubsetOrbit& b) {
    if (a.representative.size() != b.representative.size()) return a.representative.size() < b.representative.size();
    return a.representative < b.representative;
  });
  return out;
}

std::string subset_to_string(const std::vector<int>& subset) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < subset.size(); ++i) out << (i ? "," : "") << subset[i] + 1;
  out << '}';
  return out.str();
}

}  // namespace lincert
