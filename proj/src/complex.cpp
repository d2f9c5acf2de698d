#include "zipcert/complex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace zipcert {

bool face_subset(const Face& a, const Face& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Face face_union(const Face& a, const Face& b) {
    Face out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

std::vector<Face> maximal_only(std::vector<Face> fs) {
    for (auto& f : fs) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
    }
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    fs.erase(std::remove_if(fs.begin(), fs.end(), [](const Face& f) { return f.empty(); }), fs.end());
    std::vector<Face> out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < fs.size() && !dominated; ++j)
            if (i != j && fs[i].size() < fs[j].size() && face_subset(fs[i], fs[j])) dominated = true;
        if (!dominated) out.push_back(fs[i]);
    }
    return out;
}

}  // namespace

FacetComplex FacetComplex::from_facets(const std::vector<std::vector<std::string>>& facets) {
    std::set<std::string> names;
    for (auto& f : facets)
        for (auto& v : f) {
            validate_label(v);
            names.insert(v);
        }
    FacetComplex k;
    k.vertices_.assign(names.begin(), names.end());
    std::vector<Face> fs;
    for (auto& f : facets) {
        Face face;
        for (auto& v : f) face.push_back(*k.vertex(v));
        fs.push_back(std::move(face));
    }
    k.facets_ = maximal_only(std::move(fs));
    return k;
}

FacetComplex FacetComplex::from_faces(std::vector<std::string> vertices, const std::vector<Face>& faces) {
    std::vector<std::vector<std::string>> named;
    for (auto& f : faces) {
        std::vector<std::string> g;
        for (Index v : f) g.push_back(vertices.at(v));
        named.push_back(std::move(g));
    }
    return from_facets(named);
}

std::optional<Index> FacetComplex::vertex(const std::string& label) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), label);
    if (it == vertices_.end() || *it != label) return std::nullopt;
    return static_cast<Index>(it - vertices_.begin());
}

int FacetComplex::dimension() const {
    int d = -1;
    for (auto& f : facets_) d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
}

std::vector<Face> FacetComplex::faces() const {
    std::set<Face> all;
    for (auto& f : facets_) {
        const std::size_t k = f.size();
        for (std::uint32_t s = 1; s < (1u << k); ++s) {
            Face g;
            for (std::size_t b = 0; b < k; ++b)
                if (s >> b & 1u) g.push_back(f[b]);
            all.insert(std::move(g));
        }
    }
    std::vector<Face> out(all.begin(), all.end());
    std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.size() < b.size(); });
    return out;
}

bool FacetComplex::contains(const Face& f) const {
    if (f.empty()) return true;
    return std::any_of(facets_.begin(), facets_.end(), [&](const Face& g) { return face_subset(f, g); });
}

std::vector<std::string> FacetComplex::facet_labels(const Face& f) const {
    std::vector<std::string> out;
    for (Index v : f) out.push_back(vertices_[v]);
    return out;
}

std::string FacetComplex::face_name(const Face& f) const { return face_label(facet_labels(f)); }

Poset FacetComplex::face_poset() const {
    auto fs = faces();
    std::map<Face, Index> idx;
    std::vector<std::string> labels;
    for (Index i = 0; i < fs.size(); ++i) {
        idx.emplace(fs[i], i);
        labels.push_back(face_name(fs[i]));
    }
    std::vector<Arrow> rel;
    for (Index i = 0; i < fs.size(); ++i) {
        if (fs[i].size() < 2) continue;
        for (std::size_t drop = 0; drop < fs[i].size(); ++drop) {
            Face g = fs[i];
            g.erase(g.begin() + static_cast<std::ptrdiff_t>(drop));
            rel.emplace_back(idx.at(g), i);
        }
    }
    return Poset::from_relation(std::move(labels), rel);
}

FacetComplex FacetComplex::link(const Face& f) const {
    std::vector<Face> parts;
    for (auto& g : facets_) {
        if (!face_subset(f, g)) continue;
        Face rest;
        std::set_difference(g.begin(), g.end(), f.begin(), f.end(), std::back_inserter(rest));
        if (!rest.empty()) parts.push_back(std::move(rest));
    }
    return from_faces(vertices_, parts);
}

}  // namespace zipcert
