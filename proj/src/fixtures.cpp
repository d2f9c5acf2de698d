#include "zipcert/fixtures.hpp"

#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"

#include <unordered_set>

namespace zipcert {

FacetComplex complex_from_strings(const std::vector<std::string>& facets) {
    std::vector<std::vector<std::string>> f;
    for (const auto& s : facets) {
        std::vector<std::string> v;
        for (char c : s) v.emplace_back(1, c);
        f.push_back(std::move(v));
    }
    return FacetComplex::from_facets(f);
}

FacetComplex octahedron() { return complex_from_strings({"135", "136", "145", "146", "235", "236", "245", "246"}); }

FacetComplex dunce_hat() {
    return complex_from_strings({"124", "126", "128", "135", "136", "137", "148", "157", "234", "237", "238", "267",
                                 "345", "368", "457", "467", "468"});
}

FacetComplex projective_plane() {
    return complex_from_strings({"123", "134", "145", "156", "126", "235", "346", "245", "356", "246"});
}

Poset prism() { return product(simplex(3), simplex(2)); }

std::vector<FacetComplex> simplicial_corpus(std::size_t max_vertices) {
    const std::size_t n = max_vertices;
    // Nonempty subsets of [n] by size, so every face is decided after its codimension-one faces.
    std::vector<unsigned> subsets;
    for (unsigned s = 1; s < (1u << n); ++s) subsets.push_back(s);
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    std::vector<FacetComplex> out;
    std::unordered_set<std::string> seen;
    std::vector<bool> in(1u << n, false);
    auto emit = [&] {
        std::vector<std::vector<std::string>> faces;
        for (unsigned s : subsets) {
            if (!in[s]) continue;
            std::vector<std::string> f;
            for (std::size_t v = 0; v < n; ++v)
                if (s >> v & 1u) f.push_back(std::string(1, static_cast<char>('a' + v)));
            faces.push_back(std::move(f));
        }
        if (faces.empty()) return;
        FacetComplex k = FacetComplex::from_facets(faces);
        if (seen.insert(canonical_key(k.face_poset())).second) out.push_back(std::move(k));
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == subsets.size()) {
            emit();
            return;
        }
        unsigned s = subsets[i];
        self(self, i + 1);
        bool allowed = true;
        if (__builtin_popcount(s) > 1)
            for (std::size_t v = 0; v < n; ++v)
                if ((s >> v & 1u) && !in[s & ~(1u << v)]) allowed = false;
        if (allowed) {
            in[s] = true;
            self(self, i + 1);
            in[s] = false;
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace zipcert
