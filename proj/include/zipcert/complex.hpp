#pragma once

#include "zipcert/poset.hpp"

#include <string>
#include <vector>

namespace zipcert {

using Face = std::vector<Index>;  // sorted vertex indices

// A simplicial complex given by its facets. Vertices are kept sorted by label;
// facets are sorted, deduplicated and free of containments.
class FacetComplex {
public:
    FacetComplex() = default;
    static FacetComplex from_facets(const std::vector<std::vector<std::string>>& facets);
    static FacetComplex from_faces(std::vector<std::string> vertices, const std::vector<Face>& faces);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Face>& facets() const { return facets_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::optional<Index> vertex(const std::string& label) const;
    int dimension() const;
    bool empty() const { return facets_.empty(); }

    std::vector<Face> faces() const;
    bool contains(const Face& f) const;
    std::string face_name(const Face& f) const;
    std::vector<std::string> facet_labels(const Face& f) const;

    // Face poset: nonempty faces ordered by inclusion.
    Poset face_poset() const;

    // Link of a face as a complex on the remaining vertices.
    FacetComplex link(const Face& f) const;

private:
    std::vector<std::string> vertices_;
    std::vector<Face> facets_;
};

// Helpers over sorted index vectors.
bool face_subset(const Face& a, const Face& b);
Face face_union(const Face& a, const Face& b);

}  // namespace zipcert
