#include "zipcert/certify.hpp"
#include "zipcert/homology.hpp"
#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"

#include "search_common.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace zipcert {

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::refuted: return "refuted";
        default: return "exhausted";
    }
}

bool codim_one_in(const Poset& p, const Mask& inner, const Mask& outer) {
    if (!inner.is_subset_of(outer)) return false;
    Mask top = p.empty_mask();
    for (Index m : p.maximal_in(outer)) top.set(m);
    for (Index x : p.maximal_in(inner)) {
        bool covered = false;
        for (Index y : p.upper_covers(x))
            if (top.test(y)) covered = true;
        if (!covered) return false;
    }
    return true;
}

namespace {

using detail::Budget;
using detail::Memo;

struct Split {
    Mask q, r, x;
};

class ConstructionSearch {
public:
    // `dimension_form` selects the simplicial split conditions on C*K.
    ConstructionSearch(const Poset& p, const SearchOptions& opt, bool dimension_form)
        : p_(p), opt_(opt), budget_(opt.node_budget), dimension_form_(dimension_form) {}

    Truth solve_root() {
        Mask all = p_.full_mask();
        if (opt_.jobs <= 1) return solve(all);
        if (auto t = trivial(all)) return *t;
        if (!budget_.tick()) return Truth::unknown;
        std::vector<Split> splits;
        for_each_split(all, [&](Split s) {
            splits.push_back(std::move(s));
            return false;
        });
        std::atomic<std::size_t> next{0};
        std::atomic<bool> found{false}, unknown{false};
        auto worker = [&] {
            for (std::size_t i = next++; i < splits.size() && !found; i = next++) {
                Truth t = solve_split(splits[i]);
                if (t == Truth::yes) found = true;
                if (t == Truth::unknown) unknown = true;
            }
        };
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < opt_.jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        Truth t = found ? Truth::yes : unknown ? Truth::unknown : Truth::no;
        mask_memo_.put(all, t);
        return t;
    }

    std::optional<ConstructionTree> build() {
        ConstructionTree tree{p_, {}};
        if (!build_node(p_.full_mask(), tree.nodes)) return std::nullopt;
        return tree;
    }

    SearchStats stats() { return {budget_.nodes(), mask_memo_.hits() + key_memo_.hits()}; }

private:
    std::optional<Truth> trivial(const Mask& m) const {
        if (m.none()) return Truth::no;
        if (p_.greatest_in(m)) return Truth::yes;
        return std::nullopt;
    }

    // A constructible poset is Z-acyclic, so its Euler characteristic is 1.
    static std::optional<Truth> poset_shortcut(const Poset& sub) {
        if (euler_characteristic(sub) != 1) return Truth::no;
        return std::nullopt;
    }

    // Necessary conditions for a constructible complex K (given as C*K): pure, strongly
    // connected and homologically Cohen-Macaulay at the top level. In dimension at most one
    // these already characterise constructibility.
    std::optional<Truth> simplicial_shortcut(const Mask& m) const {
        std::vector<Index> facets = p_.maximal_in(m);
        const int d = p_.dimension_of(m);
        for (Index f : facets)
            if (p_.dimension_of(p_.down_set(f)) != d) return Truth::no;
        std::vector<int> comp(facets.size());
        std::iota(comp.begin(), comp.end(), 0);
        auto find = [&](int x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (std::size_t i = 0; i < facets.size(); ++i)
            for (std::size_t j = i + 1; j < facets.size(); ++j)
                if (p_.dimension_of(p_.down_set(facets[i]) & p_.down_set(facets[j])) == d - 1)
                    comp[find(static_cast<int>(i))] = find(static_cast<int>(j));
        for (std::size_t i = 0; i < facets.size(); ++i)
            if (find(static_cast<int>(i)) != find(0)) return Truth::no;
        if (d <= 2) return Truth::yes;  // C*K has dimension dim K + 1
        Mask faces = m;
        faces.reset(*p_.least());
        HomologyProfile h = homology(p_.induced(faces), true);
        for (int i = -1; i < d - 1; ++i) {
            std::size_t idx = static_cast<std::size_t>(i - h.first_degree);
            if (h.betti_at(i) != 0 || (idx < h.torsion.size() && !h.torsion[idx].empty())) return Truth::no;
        }
        return std::nullopt;
    }

    bool split_ok(const Split& s) const {
        if (dimension_form_) {
            int dq = p_.dimension_of(s.q), dr = p_.dimension_of(s.r), dx = p_.dimension_of(s.x);
            return dq == dr && dq == dx + 1;
        }
        return s.x.any() && codim_one_in(p_, s.x, s.q) && codim_one_in(p_, s.x, s.r);
    }

    // Splits by subsets M of the maximal elements containing the first one, smallest
    // first and lexicographic within a size; Q = ⌊M⌋ and R = ⌊rest⌋.
    template <class F>
    void for_each_split(const Mask& m, F&& f) const {
        std::vector<Index> maxes = p_.maximal_in(m);
        const std::size_t k = maxes.size();
        if (k < 2) return;
        std::vector<Mask> cones;
        for (Index x : maxes) cones.push_back(p_.down_set(x) & m);
        std::vector<std::size_t> pick;
        auto emit = [&]() -> bool {
            std::vector<bool> in(k, false);
            in[0] = true;
            for (std::size_t i : pick) in[i] = true;
            Split s{p_.empty_mask(), p_.empty_mask(), {}};
            for (std::size_t i = 0; i < k; ++i) (in[i] ? s.q : s.r) |= cones[i];
            s.x = s.q & s.r;
            if (!split_ok(s)) return false;
            return f(std::move(s));
        };
        for (std::size_t extra = 0; extra + 1 < k; ++extra) {
            // Combinations of `extra` indices from 1..k-1 in lexicographic order.
            pick.assign(extra, 0);
            for (std::size_t i = 0; i < extra; ++i) pick[i] = i + 1;
            while (true) {
                if (emit()) return;
                std::size_t i = extra;
                while (i > 0 && pick[i - 1] == k - extra + i - 1) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < extra; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }

    Truth solve_split(const Split& s) {
        Truth a = solve(s.x);
        if (a == Truth::no) return a;
        Truth b = solve(s.q);
        if (b == Truth::no) return b;
        Truth c = solve(s.r);
        if (c == Truth::no) return c;
        return std::min({a, b, c});
    }

    Truth solve(const Mask& m) {
        if (auto t = trivial(m)) return *t;
        if (auto t = mask_memo_.get(m)) return *t;
        if (!budget_.tick()) return Truth::unknown;
        Poset sub = p_.induced(m);
        if (auto t = !opt_.invariant_pruning ? std::nullopt
                     : dimension_form_      ? simplicial_shortcut(m)
                                            : poset_shortcut(sub)) {
            mask_memo_.put(m, *t);
            return *t;
        }
        std::string key = canonical_key(sub);
        if (auto t = key_memo_.get(key)) {
            mask_memo_.put(m, *t);
            return *t;
        }
        Truth result = Truth::no;
        for_each_split(m, [&](const Split& s) {
            Truth t = solve_split(s);
            if (t == Truth::yes) {
                result = Truth::yes;
                return true;
            }
            if (t == Truth::unknown) result = Truth::unknown;
            return false;
        });
        mask_memo_.put(m, result);
        key_memo_.put(key, result);
        return result;
    }

    bool build_node(const Mask& m, std::vector<ConstructionNode>& nodes) {
        const int idx = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[idx].mask = m;
        if (auto top = p_.greatest_in(m)) {
            nodes[idx].kind = ConstructionNode::Kind::cone;
            nodes[idx].apex = *top;
            return true;
        }
        std::optional<Split> chosen;
        for_each_split(m, [&](const Split& s) {
            if (solve_split(s) != Truth::yes) return false;
            chosen = s;
            return true;
        });
        if (!chosen) return false;
        nodes[idx].kind = ConstructionNode::Kind::split;
        nodes[idx].q = static_cast<int>(nodes.size());
        if (!build_node(chosen->q, nodes)) return false;
        nodes[idx].r = static_cast<int>(nodes.size());
        if (!build_node(chosen->r, nodes)) return false;
        nodes[idx].meet = static_cast<int>(nodes.size());
        return build_node(chosen->x, nodes);
    }

    const Poset& p_;
    SearchOptions opt_;
    Budget budget_;
    bool dimension_form_;
    Memo<Mask, MaskHash> mask_memo_;
    Memo<std::string> key_memo_;
};

ConstructionResult run(const Poset& p, const SearchOptions& opt, bool dimension_form) {
    ConstructionResult res;
    if (p.empty()) return res;
    ConstructionSearch s(p, opt, dimension_form);
    Truth t = s.solve_root();
    if (t == Truth::yes) {
        res.tree = s.build();
        res.status = res.tree ? SearchStatus::found : SearchStatus::exhausted;
    } else {
        res.status = t == Truth::no ? SearchStatus::refuted : SearchStatus::exhausted;
    }
    res.stats = s.stats();
    return res;
}

}  // namespace

ConstructionResult find_construction(const Poset& p, const SearchOptions& opt) { return run(p, opt, false); }

ConstructionResult hochster_construction(const FacetComplex& k, const SearchOptions& opt) {
    return run(dual_cone(k.face_poset()), opt, true);
}

namespace {

bool reaches_top_of(const Poset& p, Index x, const Mask& outer, const Mask& outer_max) {
    for (Index y : p.upper_covers(x))
        if (outer.test(y) && outer_max.test(y)) return true;
    return false;
}

Mask maxima(const Poset& p, const Mask& m) {
    Mask out = p.empty_mask();
    for_each_bit(m, [&](Index x) {
        if ((p.strictly_above(x) & m).none()) out.set(x);
    });
    return out;
}

bool closed_in(const Poset& p, const Mask& m, Index& witness_lo, Index& witness_hi) {
    for (auto x = m.find_first(); x != Mask::npos; x = m.find_next(x))
        for (Index y = 0; y < p.size(); ++y)
            if (p.less(y, static_cast<Index>(x)) && !m.test(y)) {
                witness_lo = y;
                witness_hi = static_cast<Index>(x);
                return false;
            }
    return true;
}

}  // namespace

CheckResult verify_construction(const ConstructionTree& t) {
    const Poset& p = t.poset;
    const auto& nodes = t.nodes;
    if (nodes.empty()) return CheckResult::fail("tree has no nodes");
    if (p.empty()) return CheckResult::fail("the empty poset is not constructible");
    if (nodes[0].mask.size() != p.size() || nodes[0].mask.count() != p.size())
        return CheckResult::fail("root does not cover the poset");
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        const ConstructionNode& n = nodes[i];
        const std::string at = "node " + std::to_string(i) + ": ";
        if (n.mask.size() != p.size()) return CheckResult::fail(at + "mask has the wrong width");
        if (n.mask.none()) return CheckResult::fail(at + "empty subposet");
        Index lo = 0, hi = 0;
        if (!closed_in(p, n.mask, lo, hi))
            return CheckResult::fail(at + "not an order ideal: " + p.label(lo) + " < " + p.label(hi));
        if (n.kind == ConstructionNode::Kind::cone) {
            if (n.apex >= p.size() || !n.mask.test(n.apex)) return CheckResult::fail(at + "apex outside the cone");
            for (auto e = n.mask.find_first(); e != Mask::npos; e = n.mask.find_next(e))
                if (!p.leq(static_cast<Index>(e), n.apex))
                    return CheckResult::fail(at + p.label(static_cast<Index>(e)) + " is not below the apex " +
                                             p.label(n.apex));
            continue;
        }
        auto valid = [&](int c) { return c > i && c < static_cast<int>(nodes.size()); };
        if (!valid(n.q) || !valid(n.r) || !valid(n.meet)) return CheckResult::fail(at + "bad child index");
        const Mask& q = nodes[n.q].mask;
        const Mask& r = nodes[n.r].mask;
        const Mask& x = nodes[n.meet].mask;
        if (q.size() != p.size() || r.size() != p.size() || x.size() != p.size())
            return CheckResult::fail(at + "child mask has the wrong width");
        if ((q | r) != n.mask) return CheckResult::fail(at + "Q and R do not cover the node");
        if ((q & r) != x) return CheckResult::fail(at + "meet is not Q ∩ R");
        Mask qmax = maxima(p, q), rmax = maxima(p, r);
        for (auto e = x.find_first(); e != Mask::npos; e = x.find_next(e)) {
            Index xe = static_cast<Index>(e);
            if ((p.strictly_above(xe) & x).any()) continue;
            if (!reaches_top_of(p, xe, q, qmax))
                return CheckResult::fail(at + p.label(xe) + " is not covered by a maximal element of Q");
            if (!reaches_top_of(p, xe, r, rmax))
                return CheckResult::fail(at + p.label(xe) + " is not covered by a maximal element of R");
        }
        stack.push_back(n.q);
        stack.push_back(n.r);
        stack.push_back(n.meet);
    }
    return CheckResult::pass();
}

}  // namespace zipcert
