#pragma once

#include "zipcert/complex.hpp"
#include "zipcert/map.hpp"

#include <string>
#include <vector>

namespace zipcert {

// Appends primes to `base` until it is not a label of `p`.
std::string fresh_label(const Poset& p, std::string base);

Poset cone(const Poset& p);
Poset dual_cone(const Poset& p);
Poset point(const std::string& label = "pt");
Poset chain(std::size_t n);  // 0 < 1 < ... < n-1
Poset antichain(std::size_t n);

Poset disjoint_union(const Poset& p, const Poset& q);
Poset prejoin(const Poset& p, const Poset& q);
Poset product(const Poset& p, const Poset& q);
Poset join(const Poset& p, const Poset& q);
Poset cojoin(const Poset& p, const Poset& q);

Mask star(const Poset& p, Index x);
Mask link(const Poset& p, Index x);

Poset barycentric(const Poset& p);
Poset barycentric(const Preposet& p);
Poset canonical(const Poset& p);

// Interval labels "[a,b]" are split back into endpoints.
std::pair<std::string, std::string> interval_endpoints(const std::string& label);

Poset simplex(std::size_t n);  // vertices "0".."n-1"
Poset simplex(const std::vector<std::string>& vertices);
Poset boundary_simplex(std::size_t n);  // boundary of the simplex on n+1 vertices
Poset powerset(std::size_t n);
Poset cube(std::size_t n);

// Subposet of I^n whose folded image lies in C*K; vertices of K are taken in label order.
Poset mirror(const FacetComplex& k);

Poset handles(const Poset& p);
Poset barycentric_handles(const Poset& p);
MonotoneMap handle_core_map(const Poset& p);
MonotoneMap handle_cocore_map(const Poset& p);

}  // namespace zipcert
