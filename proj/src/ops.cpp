#include "zipcert/ops.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace zipcert {

std::string fresh_label(const Poset& p, std::string base) {
    while (p.find(base)) base += '\'';
    return base;
}

Poset point(const std::string& label) { return Poset::from_relation({label}, {}); }

Poset chain(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<Arrow> rel;
    for (Index i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        if (i) rel.emplace_back(i - 1, i);
    }
    return Poset::from_relation(std::move(labels), rel);
}

Poset antichain(std::size_t n) {
    std::vector<std::string> labels;
    for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return Poset::from_relation(std::move(labels), {});
}

Poset cone(const Poset& p) {
    std::vector<std::string> labels = p.labels();
    const Index top = static_cast<Index>(labels.size());
    labels.push_back(fresh_label(p, "top"));
    auto rel = p.covers();
    for (Index m : p.maximal_elements()) rel.emplace_back(m, top);
    return Poset::from_relation(std::move(labels), rel);
}

Poset dual_cone(const Poset& p) {
    std::vector<std::string> labels = p.labels();
    const Index bot = static_cast<Index>(labels.size());
    labels.push_back(fresh_label(p, "bot"));
    auto rel = p.covers();
    for (Index m : p.minimal_elements()) rel.emplace_back(bot, m);
    return Poset::from_relation(std::move(labels), rel);
}

namespace {

// Concatenated carriers of p and q, prefixed with "1." / "2." only on collision.
std::vector<std::string> combined_labels(const Poset& p, const Poset& q) {
    bool clash = false;
    for (auto& l : q.labels())
        if (p.find(l)) clash = true;
    std::vector<std::string> labels;
    for (auto& l : p.labels()) labels.push_back(clash ? "1." + l : l);
    for (auto& l : q.labels()) labels.push_back(clash ? "2." + l : l);
    return labels;
}

std::vector<Arrow> combined_covers(const Poset& p, const Poset& q) {
    auto rel = p.covers();
    const Index off = static_cast<Index>(p.size());
    for (auto [a, b] : q.covers()) rel.emplace_back(a + off, b + off);
    return rel;
}

std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

}  // namespace

Poset disjoint_union(const Poset& p, const Poset& q) {
    return Poset::from_relation(combined_labels(p, q), combined_covers(p, q));
}

Poset prejoin(const Poset& p, const Poset& q) {
    auto rel = combined_covers(p, q);
    const Index off = static_cast<Index>(p.size());
    for (Index a : p.maximal_elements())
        for (Index b : q.minimal_elements()) rel.emplace_back(a, b + off);
    return Poset::from_relation(combined_labels(p, q), rel);
}

Poset product(const Poset& p, const Poset& q) {
    const Index m = static_cast<Index>(q.size());
    std::vector<std::string> labels;
    labels.reserve(p.size() * q.size());
    for (Index a = 0; a < p.size(); ++a)
        for (Index b = 0; b < m; ++b) labels.push_back(pair_label(p.label(a), q.label(b)));
    std::vector<Arrow> rel;
    for (Index a = 0; a < p.size(); ++a) {
        for (Index b = 0; b < m; ++b) {
            for (Index c : p.upper_covers(a)) rel.emplace_back(a * m + b, c * m + b);
            for (Index d : q.upper_covers(b)) rel.emplace_back(a * m + b, a * m + d);
        }
    }
    return Poset::from_relation(std::move(labels), rel);
}

Poset join(const Poset& p, const Poset& q) {
    Poset cp = dual_cone(p).relabeled([&] {
        auto l = p.labels();
        l.push_back(fresh_label(p, "_"));
        return l;
    }());
    Poset cq = dual_cone(q).relabeled([&] {
        auto l = q.labels();
        l.push_back(fresh_label(q, "_"));
        return l;
    }());
    Poset prod = product(cp, cq);
    Mask keep = prod.full_mask();
    keep.reset(static_cast<Index>(p.size() * cq.size() + q.size()));
    return prod.induced(keep);
}

Poset cojoin(const Poset& p, const Poset& q) { return join(p.dual(), q.dual()).dual(); }

Mask star(const Poset& p, Index x) { return p.closure(p.up_set(x)); }

Mask link(const Poset& p, Index x) { return p.strictly_above(x); }

Poset barycentric(const Poset& p) {
    std::map<std::vector<Index>, Index> index;
    std::vector<std::vector<Index>> chains;
    std::vector<Index> cur;
    const auto topo = p.topological_order();
    // Depth-first enumeration of chains, each listed bottom to top.
    auto extend = [&](auto&& self) -> void {
        index.emplace(cur, static_cast<Index>(chains.size()));
        chains.push_back(cur);
        if (chains.size() > 2000000) throw PosetError("barycentric subdivision too large");
        for_each_bit(p.strictly_above(cur.back()), [&](Index y) {
            cur.push_back(y);
            self(self);
            cur.pop_back();
        });
    };
    for (Index x : topo) {
        cur = {x};
        extend(extend);
    }
    std::vector<std::string> labels;
    labels.reserve(chains.size());
    std::vector<Arrow> rel;
    for (Index i = 0; i < chains.size(); ++i) {
        const auto& c = chains[i];
        std::string l = "{";
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) l += ',';
            l += p.label(c[k]);
        }
        labels.push_back(l + "}");
        if (c.size() < 2) continue;
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            auto d = c;
            d.erase(d.begin() + static_cast<std::ptrdiff_t>(drop));
            rel.emplace_back(index.at(d), i);
        }
    }
    return Poset::from_relation(std::move(labels), rel);
}

Poset barycentric(const Preposet& p) { return barycentric(transitive_closure(p)); }

Poset canonical(const Poset& p) {
    std::map<Arrow, Index> index;
    std::vector<std::string> labels;
    for (Index a = 0; a < p.size(); ++a) {
        for_each_bit(p.up_set(a), [&](Index b) {
            index.emplace(Arrow{a, b}, static_cast<Index>(labels.size()));
            labels.push_back("[" + p.label(a) + "," + p.label(b) + "]");
        });
    }
    std::vector<Arrow> rel;
    for (auto& [ab, i] : index) {
        auto [a, b] = ab;
        for (Index c : p.lower_covers(a)) rel.emplace_back(i, index.at({c, b}));
        for (Index d : p.upper_covers(b)) rel.emplace_back(i, index.at({a, d}));
    }
    return Poset::from_relation(std::move(labels), rel);
}

std::pair<std::string, std::string> interval_endpoints(const std::string& label) {
    if (label.size() < 5 || label.front() != '[' || label.back() != ']')
        throw PosetError("not an interval label: " + label);
    int depth = 0;
    for (std::size_t i = 1; i + 1 < label.size(); ++i) {
        char c = label[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == ',' && depth == 0) return {label.substr(1, i - 1), label.substr(i + 1, label.size() - i - 2)};
    }
    throw PosetError("not an interval label: " + label);
}

Poset simplex(const std::vector<std::string>& vertices) { return simplex_on(vertices); }

Poset simplex(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(i));
    return simplex_on(v);
}

Poset boundary_simplex(std::size_t n) {
    Poset s = simplex(n + 1);
    Mask keep = s.full_mask();
    keep.reset(*s.greatest());
    return s.induced(keep);
}

Poset powerset(std::size_t n) {
    if (n > 20) throw PosetError("powerset too large");
    const std::uint32_t count = 1u << n;
    std::vector<std::string> labels;
    std::vector<Arrow> rel;
    for (std::uint32_t s = 0; s < count; ++s) {
        std::string l = "{";
        bool first = true;
        for (std::size_t b = 0; b < n; ++b) {
            if (!(s >> b & 1u)) continue;
            if (!first) l += ',';
            first = false;
            l += std::to_string(b);
            rel.emplace_back(s & ~(1u << b), s);
        }
        labels.push_back(l + "}");
    }
    return Poset::from_relation(std::move(labels), rel);
}

namespace {

// Subposet of I^n on words over {0,1,*} accepted by `keep`; '*' lies above '0' and '1'.
template <class Keep>
Poset cube_words(std::size_t n, Keep&& keep) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> index;
    std::string w(n, '0');
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= 3) w[i] = "01*"[c % 3];
        if (!keep(w)) continue;
        index.emplace(w, static_cast<Index>(labels.size()));
        labels.push_back(w);
    }
    std::vector<Arrow> rel;
    for (Index i = 0; i < labels.size(); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (labels[i][k] != '*') continue;
            for (char c : {'0', '1'}) {
                std::string lower = labels[i];
                lower[k] = c;
                auto it = index.find(lower);
                if (it != index.end()) rel.emplace_back(it->second, i);
            }
        }
    }
    return Poset::from_relation(std::move(labels), rel);
}

}  // namespace

Poset cube(std::size_t n) {
    if (n == 0) return point("-");
    return cube_words(n, [](const std::string&) { return true; });
}

// Folding sends a word to its set of '*' coordinates; that set must be empty or a face of K.
Poset mirror(const FacetComplex& k) {
    const std::size_t n = k.vertex_count();
    return cube_words(n, [&](const std::string& w) {
        Face f;
        for (Index i = 0; i < n; ++i)
            if (w[i] == '*') f.push_back(i);
        return k.contains(f);
    });
}

Poset handles(const Poset& p) { return canonical(p).dual(); }

Poset barycentric_handles(const Poset& p) { return barycentric(p).dual(); }

MonotoneMap handle_core_map(const Poset& p) {
    Poset h = handles(p);
    std::vector<Index> table(h.size());
    for (Index i = 0; i < h.size(); ++i) table[i] = p.at(interval_endpoints(h.label(i)).first);
    return MonotoneMap(h, p, std::move(table));
}

MonotoneMap handle_cocore_map(const Poset& p) {
    Poset h = handles(p);
    Poset d = p.dual();
    std::vector<Index> table(h.size());
    for (Index i = 0; i < h.size(); ++i) table[i] = d.at(interval_endpoints(h.label(i)).second);
    return MonotoneMap(h, d, std::move(table));
}

}  // namespace zipcert
