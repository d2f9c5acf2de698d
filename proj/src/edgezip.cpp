#include "zipcert/certify.hpp"
#include "zipcert/iso.hpp"

#include "search_common.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace zipcert {

namespace {

using VSet = std::vector<std::string>;  // sorted vertex labels

std::set<VSet> face_sets(const FacetComplex& k) {
    std::set<VSet> out;
    for (const Face& f : k.faces()) out.insert(k.facet_labels(f));
    return out;
}

VSet add(VSet s, const std::string& v) {
    if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    std::sort(s.begin(), s.end());
    return s;
}

bool has(const VSet& s, const std::string& v) { return std::find(s.begin(), s.end(), v) != s.end(); }

// Nonempty faces of lk(vw).
std::vector<VSet> edge_link(const std::set<VSet>& faces, const std::string& v, const std::string& w) {
    std::vector<VSet> out;
    for (const VSet& f : faces) {
        if (has(f, v) || has(f, w)) continue;
        if (faces.count(add(add(f, v), w))) out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const VSet& a, const VSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

}  // namespace

FacetComplex edge_contract(const FacetComplex& k, const std::string& v, const std::string& w) {
    if (!k.vertex(v) || !k.vertex(w) || v == w) throw PosetError("edge " + v + w + " is not in the complex");
    std::vector<std::vector<std::string>> facets;
    for (const Face& f : k.facets()) {
        std::vector<std::string> labels;
        for (const auto& l : k.facet_labels(f)) labels.push_back(l == w ? v : l);
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        facets.push_back(std::move(labels));
    }
    return FacetComplex::from_facets(facets);
}

bool is_elementary_edge_zip(const FacetComplex& k, const std::string& v, const std::string& w) {
    if (v == w || !k.vertex(v) || !k.vertex(w)) return false;
    auto faces = face_sets(k);
    if (!faces.count(add({v}, w))) return false;
    // lk(v) ∩ lk(w) ⊆ lk(vw); the reverse inclusion always holds.
    for (const VSet& f : faces) {
        if (has(f, v) || has(f, w)) continue;
        if (faces.count(add(f, v)) && faces.count(add(f, w)) && !faces.count(add(add(f, v), w))) return false;
    }
    return true;
}

namespace {

class EdgeSearch {
public:
    EdgeSearch(std::string target_key, std::size_t target_vertices, const SearchOptions& opt)
        : key_(std::move(target_key)), n_(target_vertices), budget_(opt.node_budget) {}

    Truth dfs(const FacetComplex& k, std::vector<EdgeZipStep>& path) {
        if (k.vertex_count() < n_) return Truth::no;
        std::string key = canonical_key(k.face_poset());
        if (k.vertex_count() == n_) return key == key_ ? Truth::yes : Truth::no;
        if (failed_.count(key)) {
            ++hits_;
            return Truth::no;
        }
        if (!budget_.tick()) return Truth::unknown;
        Truth result = Truth::no;
        auto faces = face_sets(k);
        for (const VSet& e : faces) {
            if (e.size() != 2 || !is_elementary_edge_zip(k, e[0], e[1])) continue;
            path.push_back({e[0], e[1]});
            Truth t = dfs(edge_contract(k, e[0], e[1]), path);
            if (t == Truth::yes) return t;
            path.pop_back();
            if (t == Truth::unknown) result = Truth::unknown;
        }
        if (result == Truth::no) failed_.insert(std::move(key));
        return result;
    }

    SearchStats stats() const { return {budget_.nodes(), hits_}; }

private:
    std::string key_;
    std::size_t n_;
    detail::Budget budget_;
    std::unordered_set<std::string> failed_;
    std::size_t hits_ = 0;
};

}  // namespace

EdgeZipResult find_edge_zipping(const FacetComplex& k, const FacetComplex& target, const SearchOptions& opt) {
    EdgeZipResult res;
    // Every contraction removes exactly one vertex, so the depth is fixed and plain
    // depth-first search visits the same levels an iterative deepening would.
    EdgeSearch s(canonical_key(target.face_poset()), target.vertex_count(), opt);
    Truth t = s.dfs(k, res.steps);
    res.status = t == Truth::yes ? SearchStatus::found : t == Truth::no ? SearchStatus::refuted : SearchStatus::exhausted;
    if (t != Truth::yes) res.steps.clear();
    res.stats = s.stats();
    return res;
}

CheckResult verify_edge_zipping(const FacetComplex& k, const std::vector<EdgeZipStep>& steps,
                                const FacetComplex& target) {
    FacetComplex cur = k;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        if (!is_elementary_edge_zip(cur, s.v, s.w))
            return CheckResult::fail("step " + std::to_string(i) + ": " + s.v + s.w + " violates the link condition");
        cur = edge_contract(cur, s.v, s.w);
    }
    if (!isomorphic(cur.face_poset(), target.face_poset())) return CheckResult::fail("final complex differs from the target");
    return CheckResult::pass();
}

std::vector<ZipStep> zipping_from_edge_zipping(const FacetComplex& k, const std::vector<EdgeZipStep>& steps) {
    FacetComplex cur = k;
    Poset poset = k.face_poset();
    // Label in the replayed poset of each face of the current complex.
    std::map<VSet, std::string> label;
    for (const VSet& f : face_sets(cur)) label[f] = face_label(f);
    std::vector<ZipStep> out;
    auto zip = [&](const VSet& top, const VSet& a, const VSet& b) {
        std::string lp = label.at(top), la = label.at(a), lb = label.at(b);
        if (lb < la) std::swap(la, lb);
        ZipStep step{lp, la, lb};
        poset = elementary_zip(poset, step);
        out.push_back(step);
        for (const VSet* f : {&top, &a, &b}) label[*f] = la;
    };
    for (const auto& s : steps) {
        if (!is_elementary_edge_zip(cur, s.v, s.w)) throw PosetError("edge " + s.v + s.w + " violates the link condition");
        auto faces = face_sets(cur);
        zip(add({s.v}, s.w), {s.v}, {s.w});
        for (const VSet& a : edge_link(faces, s.v, s.w)) zip(add(add(a, s.v), s.w), add(a, s.v), add(a, s.w));
        FacetComplex next = edge_contract(cur, s.v, s.w);
        std::map<VSet, std::string> next_label;
        for (const VSet& f : face_sets(next)) {
            if (label.count(f)) {
                next_label[f] = label.at(f);
                continue;
            }
            VSet g;
            for (const auto& x : f)
                if (x != s.v) g.push_back(x);
            next_label[f] = label.at(add(g, s.w));
        }
        label = std::move(next_label);
        cur = std::move(next);
    }
    return out;
}

}  // namespace zipcert
