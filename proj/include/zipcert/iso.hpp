#pragma once

#include "zipcert/map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zipcert {

struct CanonicalForm {
    // order[k] is the element placed at canonical position k.
    std::vector<Index> order;
    // Byte string that is equal for two (coloured) posets iff they are isomorphic.
    std::string key;
};

// Colour refinement followed by individualisation with backtracking; the
// lexicographically least encoding over all leaves is returned.
CanonicalForm canonical_form(const Poset& p, const std::vector<std::uint32_t>* colours = nullptr);
std::string canonical_key(const Poset& p);

std::optional<MonotoneMap> are_isomorphic(const Poset& p, const Poset& q);
bool isomorphic(const Poset& p, const Poset& q);

}  // namespace zipcert
