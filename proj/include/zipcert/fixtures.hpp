#pragma once

#include "zipcert/complex.hpp"

#include <string>
#include <vector>

namespace zipcert {

// Facets written as strings of one-character vertex names, e.g. {"abc", "cd"}.
FacetComplex complex_from_strings(const std::vector<std::string>& facets);

FacetComplex octahedron();       // boundary of the octahedron, vertices 1..6 with 1-2, 3-4, 5-6 opposite
FacetComplex dunce_hat();        // 8 vertices, 17 triangles
FacetComplex projective_plane(); // 6-vertex RP²
Poset prism();                   // face poset of the solid triangular prism Δ² × Δ¹

// One representative of every isomorphism class of nonempty simplicial complexes with at
// most `max_vertices` vertices.
std::vector<FacetComplex> simplicial_corpus(std::size_t max_vertices);

}  // namespace zipcert
