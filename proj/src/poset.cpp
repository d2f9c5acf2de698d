#include "zipcert/poset.hpp"

#include <boost/iterator/function_output_iterator.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace zipcert {

std::size_t MaskHash::operator()(const Mask& m) const {
    std::size_t h = m.size() * 0x9e3779b97f4a7c15ULL;
    boost::to_block_range(m, boost::make_function_output_iterator([&h](std::uint64_t b) {
                              h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                          }));
    return h;
}

std::vector<Index> bits_of(const Mask& m) {
    std::vector<Index> out;
    out.reserve(m.count());
    for_each_bit(m, [&](Index i) { out.push_back(i); });
    return out;
}

namespace {

std::string join_labels(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += " -> ";
        s += xs[i];
    }
    return s;
}

// Returns a directed cycle (as a vertex list, first vertex repeated at the end)
// or an empty vector when the digraph is acyclic.
std::vector<Index> find_cycle(const std::vector<std::vector<Index>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> state(n, 0);
    std::vector<Index> parent(n, 0);
    for (Index s = 0; s < n; ++s) {
        if (state[s]) continue;
        std::vector<std::pair<Index, std::size_t>> stack{{s, 0}};
        state[s] = 1;
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            if (k < adj[v].size()) {
                Index w = adj[v][k++];
                if (state[w] == 1) {
                    std::vector<Index> cyc{w};
                    for (Index u = v; u != w; u = parent[u]) cyc.push_back(u);
                    std::reverse(cyc.begin() + 1, cyc.end());
                    cyc.push_back(w);
                    return cyc;
                }
                if (state[w] == 0) {
                    state[w] = 1;
                    parent[w] = v;
                    stack.emplace_back(w, 0);
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

void check_unique(const std::vector<std::string>& labels) {
    std::unordered_map<std::string, Index> seen;
    for (Index i = 0; i < labels.size(); ++i) {
        validate_label(labels[i]);
        if (!seen.emplace(labels[i], i).second) throw PosetError("duplicate label '" + labels[i] + "'");
    }
}

}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : PosetError("relation contains a cycle: " + join_labels(cycle)), cycle_(std::move(cycle)) {}

void validate_label(const std::string& label) {
    if (label.empty()) throw PosetError("empty label");
    for (char c : label) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '<')
            throw PosetError("label '" + label + "' contains whitespace or '<'");
    }
}

Preposet::Preposet(std::vector<std::string> labels, const std::vector<Arrow>& arrows)
    : labels_(std::move(labels)) {
    check_unique(labels_);
    const std::size_t n = labels_.size();
    succ_.assign(n, Mask(n));
    std::vector<std::vector<Index>> adj(n);
    for (auto [a, b] : arrows) {
        if (a >= n || b >= n) throw PosetError("arrow endpoint out of range");
        if (a == b) throw CycleError({labels_[a], labels_[a]});
        if (!succ_[a].test(b)) {
            succ_[a].set(b);
            adj[a].push_back(b);
        }
    }
    auto cyc = find_cycle(adj);
    if (!cyc.empty()) {
        std::vector<std::string> names;
        for (Index v : cyc) names.push_back(labels_[v]);
        throw CycleError(std::move(names));
    }
}

std::vector<Arrow> Preposet::arrows() const {
    std::vector<Arrow> out;
    for (Index i = 0; i < size(); ++i) for_each_bit(succ_[i], [&](Index j) { out.emplace_back(i, j); });
    return out;
}

bool Preposet::is_poset() const {
    for (Index i = 0; i < size(); ++i) {
        bool ok = true;
        for_each_bit(succ_[i], [&](Index j) {
            if (ok && !succ_[j].is_subset_of(succ_[i])) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

Poset::Poset() : d_(build({}, {})) {}

std::shared_ptr<const Poset::Data> Poset::build(std::vector<std::string> labels, std::vector<Mask> below) {
    auto d = std::make_shared<Data>();
    const std::size_t n = labels.size();
    d->labels = std::move(labels);
    for (Index i = 0; i < n; ++i) d->index.emplace(d->labels[i], i);
    d->below = std::move(below);
    d->above.assign(n, Mask(n));
    for (Index j = 0; j < n; ++j) for_each_bit(d->below[j], [&](Index i) { d->above[i].set(j); });
    d->lower.assign(n, {});
    d->upper.assign(n, {});
    for (Index j = 0; j < n; ++j) {
        Mask implied(n);
        for_each_bit(d->below[j], [&](Index k) { implied |= d->below[k]; });
        Mask direct = d->below[j] - implied;
        for_each_bit(direct, [&](Index i) {
            d->lower[j].push_back(i);
            d->upper[i].push_back(j);
        });
    }
    d->topo.resize(n);
    std::iota(d->topo.begin(), d->topo.end(), 0);
    std::stable_sort(d->topo.begin(), d->topo.end(),
                     [&](Index a, Index b) { return d->below[a].count() < d->below[b].count(); });
    return d;
}

Poset Poset::from_relation(std::vector<std::string> labels, const std::vector<Arrow>& relation) {
    check_unique(labels);
    const std::size_t n = labels.size();
    std::vector<std::vector<Index>> adj(n);
    for (auto [a, b] : relation) {
        if (a >= n || b >= n) throw PosetError("relation endpoint out of range");
        if (a == b) throw CycleError({labels[a], labels[a]});
        adj[a].push_back(b);
    }
    std::vector<std::size_t> indeg(n, 0);
    for (auto& out : adj) for (Index b : out) ++indeg[b];
    std::vector<Index> queue;
    for (Index i = 0; i < n; ++i)
        if (!indeg[i]) queue.push_back(i);
    std::vector<Mask> below(n, Mask(n));
    for (std::size_t h = 0; h < queue.size(); ++h) {
        Index a = queue[h];
        for (Index b : adj[a]) {
            below[b] |= below[a];
            below[b].set(a);
            if (--indeg[b] == 0) queue.push_back(b);
        }
    }
    if (queue.size() != n) {
        std::vector<std::string> names;
        for (Index v : find_cycle(adj)) names.push_back(labels[v]);
        throw CycleError(std::move(names));
    }
    return Poset(build(std::move(labels), std::move(below)));
}

Poset Poset::from_labeled_relation(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::string, std::string>>& relation) {
    std::unordered_map<std::string, Index> idx;
    for (Index i = 0; i < labels.size(); ++i) idx.emplace(labels[i], i);
    std::vector<Arrow> rel;
    for (auto& [a, b] : relation) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end()) throw PosetError("unknown element '" + a + "'");
        if (ib == idx.end()) throw PosetError("unknown element '" + b + "'");
        rel.emplace_back(ia->second, ib->second);
    }
    return from_relation(std::move(labels), rel);
}

std::optional<Index> Poset::find(const std::string& label) const {
    auto it = d_->index.find(label);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
}

Index Poset::at(const std::string& label) const {
    auto i = find(label);
    if (!i) throw PosetError("unknown element '" + label + "'");
    return *i;
}

std::vector<Arrow> Poset::covers() const {
    std::vector<Arrow> out;
    for (Index j = 0; j < size(); ++j)
        for (Index i : d_->lower[j]) out.emplace_back(i, j);
    std::sort(out.begin(), out.end());
    return out;
}

Mask Poset::full_mask() const {
    Mask m(size());
    m.set();
    return m;
}

Mask Poset::down_set(Index i) const {
    Mask m = d_->below[i];
    m.set(i);
    return m;
}

Mask Poset::up_set(Index i) const {
    Mask m = d_->above[i];
    m.set(i);
    return m;
}

Mask Poset::closure(const Mask& m) const {
    Mask out = m;
    for_each_bit(m, [&](Index i) { out |= d_->below[i]; });
    return out;
}

Mask Poset::hull(const Mask& m) const {
    Mask out = m;
    for_each_bit(m, [&](Index i) { out |= d_->above[i]; });
    return out;
}

Mask Poset::mask_of(const std::vector<std::string>& labels) const {
    Mask m = empty_mask();
    for (auto& l : labels) m.set(at(l));
    return m;
}

std::vector<Index> Poset::maximal_in(const Mask& m) const {
    std::vector<Index> out;
    for_each_bit(m, [&](Index i) {
        if (!d_->above[i].intersects(m)) out.push_back(i);
    });
    return out;
}

std::vector<Index> Poset::minimal_in(const Mask& m) const {
    std::vector<Index> out;
    for_each_bit(m, [&](Index i) {
        if (!d_->below[i].intersects(m)) out.push_back(i);
    });
    return out;
}

std::vector<Index> Poset::maximal_elements() const { return maximal_in(full_mask()); }
std::vector<Index> Poset::minimal_elements() const { return minimal_in(full_mask()); }

std::optional<Index> Poset::greatest_in(const Mask& m) const {
    auto mx = maximal_in(m);
    if (mx.size() != 1) return std::nullopt;
    if (!m.is_subset_of(down_set(mx[0]))) return std::nullopt;
    return mx[0];
}

std::optional<Index> Poset::greatest() const { return greatest_in(full_mask()); }

std::optional<Index> Poset::least() const {
    auto mn = minimal_elements();
    if (mn.size() != 1 || d_->above[mn[0]].count() + 1 != size()) return std::nullopt;
    return mn[0];
}

int Poset::dimension_of(const Mask& m) const {
    std::vector<int> h(size(), 0);
    int best = -1;
    for (Index v : d_->topo) {
        if (!m.test(v)) continue;
        int hv = 0;
        for_each_bit(d_->below[v] & m, [&](Index u) { hv = std::max(hv, h[u] + 1); });
        h[v] = hv;
        best = std::max(best, hv);
    }
    return best;
}

int Poset::dimension() const { return dimension_of(full_mask()); }

Poset Poset::induced(const Mask& m) const {
    std::vector<Index> idx;
    return induced(m, idx);
}

Poset Poset::induced(const Mask& m, std::vector<Index>& parent_index) const {
    parent_index = bits_of(m);
    const std::size_t k = parent_index.size();
    std::vector<Index> local(size(), 0);
    for (Index i = 0; i < k; ++i) local[parent_index[i]] = i;
    std::vector<std::string> labels;
    labels.reserve(k);
    std::vector<Mask> below(k, Mask(k));
    for (Index i = 0; i < k; ++i) {
        Index v = parent_index[i];
        labels.push_back(d_->labels[v]);
        for_each_bit(d_->below[v] & m, [&](Index u) { below[i].set(local[u]); });
    }
    return Poset(build(std::move(labels), std::move(below)));
}

Poset Poset::dual() const { return Poset(build(d_->labels, d_->above)); }

Poset Poset::relabeled(std::vector<std::string> labels) const {
    if (labels.size() != size()) throw PosetError("relabel size mismatch");
    check_unique(labels);
    return Poset(build(std::move(labels), d_->below));
}

bool Poset::same_as(const Poset& other) const {
    return d_->labels == other.d_->labels && d_->below == other.d_->below;
}

Poset transitive_closure(const Preposet& p) { return Poset::from_relation(p.labels(), p.arrows()); }

bool is_closed_subposet(const Poset& p, const Mask& m) {
    bool ok = true;
    for_each_bit(m, [&](Index i) {
        if (ok && !p.strictly_below(i).is_subset_of(m)) ok = false;
    });
    return ok;
}

bool is_open_subposet(const Poset& p, const Mask& m) {
    bool ok = true;
    for_each_bit(m, [&](Index i) {
        if (ok && !p.strictly_above(i).is_subset_of(m)) ok = false;
    });
    return ok;
}

bool is_full_subposet(const Poset& p, const Mask& m) {
    for (Index x = 0; x < p.size(); ++x) {
        Mask part = p.down_set(x) & m;
        if (part.none()) continue;
        if (!p.greatest_in(part)) return false;
    }
    return true;
}

Mask boundary(const Poset& p) {
    Mask seeds = p.empty_mask();
    for (Index q = 0; q < p.size(); ++q)
        if (p.strictly_above(q).count() == 1) seeds.set(q);
    return p.closure(seeds);
}

Mask coboundary(const Poset& p) { return boundary(p.dual()); }

std::optional<Index> least_upper_bound(const Poset& p, const Mask& m) {
    Mask ub = p.full_mask();
    for_each_bit(m, [&](Index i) { ub &= p.up_set(i); });
    for (auto u = ub.find_first(); u != Mask::npos; u = ub.find_next(u)) {
        if (ub.is_subset_of(p.up_set(static_cast<Index>(u)))) return static_cast<Index>(u);
    }
    return std::nullopt;
}

std::optional<Index> greatest_lower_bound(const Poset& p, const Mask& m) {
    Mask lb = p.full_mask();
    for_each_bit(m, [&](Index i) { lb &= p.down_set(i); });
    for (auto u = lb.find_first(); u != Mask::npos; u = lb.find_next(u)) {
        if (lb.is_subset_of(p.down_set(static_cast<Index>(u)))) return static_cast<Index>(u);
    }
    return std::nullopt;
}

// Pairwise joins suffice: if every bounded pair has a join, an induction over
// the elements of a bounded set produces its join.
bool is_conditionally_complete(const Poset& p) {
    const Index n = static_cast<Index>(p.size());
    for (Index a = 0; a < n; ++a) {
        for (Index b = a + 1; b < n; ++b) {
            Mask ub = p.up_set(a) & p.up_set(b);
            if (ub.none()) continue;
            Mask pair = p.empty_mask();
            pair.set(a);
            pair.set(b);
            if (!least_upper_bound(p, pair)) return false;
        }
    }
    return true;
}

bool is_conditionally_complete_exhaustive(const Poset& p) {
    const Index n = static_cast<Index>(p.size());
    if (n > 20) throw PosetError("exhaustive completeness check is limited to 20 elements");
    for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
        Mask m = p.empty_mask();
        Mask ub = p.full_mask();
        for (Index i = 0; i < n; ++i)
            if (bits & (1u << i)) {
                m.set(i);
                ub &= p.up_set(i);
            }
        if (ub.any() && !least_upper_bound(p, m)) return false;
    }
    return true;
}

Mask atoms(const Poset& p) {
    Mask m = p.empty_mask();
    for (Index i : p.minimal_elements()) m.set(i);
    return m;
}

bool is_atomic(const Poset& p) {
    Mask a = atoms(p);
    for (Index x = 0; x < p.size(); ++x) {
        if (a.test(x)) continue;
        Mask below = p.strictly_below(x) & a;
        if (below.none()) return false;
        auto lub = least_upper_bound(p, below);
        if (!lub || *lub != x) return false;
    }
    return true;
}

std::vector<Index> linear_extension(const Poset& p) {
    std::vector<Index> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        auto ca = p.strictly_below(a).count(), cb = p.strictly_below(b).count();
        if (ca != cb) return ca < cb;
        return p.label(a) < p.label(b);
    });
    return order;
}

std::string mask_to_string(const Poset& p, const Mask& m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for_each_bit(m, [&](Index i) {
        if (!first) os << ' ';
        first = false;
        os << p.label(i);
    });
    os << '}';
    return os.str();
}

std::string face_label(std::vector<std::string> vertices) {
    std::sort(vertices.begin(), vertices.end());
    bool single = std::all_of(vertices.begin(), vertices.end(), [](const std::string& v) { return v.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i && !single) out += ',';
        out += vertices[i];
    }
    return out;
}

Poset simplex_on(const std::vector<std::string>& vertices) {
    const std::size_t k = vertices.size();
    if (k > 20) throw PosetError("simplex on more than 20 vertices is not supported");
    std::vector<std::string> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    const std::uint32_t count = (1u << k) - 1;
    std::vector<std::string> labels;
    std::vector<Arrow> rel;
    for (std::uint32_t s = 1; s <= count; ++s) {
        std::vector<std::string> face;
        for (std::size_t b = 0; b < k; ++b) {
            if (!(s >> b & 1u)) continue;
            face.push_back(sorted[b]);
            std::uint32_t t = s & ~(1u << b);
            if (t) rel.emplace_back(t - 1, s - 1);
        }
        labels.push_back(face_label(face));
    }
    return Poset::from_relation(std::move(labels), rel);
}

}  // namespace zipcert
