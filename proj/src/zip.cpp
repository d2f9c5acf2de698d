#include "zipcert/certify.hpp"
#include "zipcert/cylinders.hpp"
#include "zipcert/homology.hpp"
#include "zipcert/iso.hpp"

#include "search_common.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace zipcert {

std::string to_string(ZipGoal g) { return g == ZipGoal::singleton ? "singleton" : "dual-cone"; }

CheckResult check_zip_site(const Poset& p, Index top, Index q, Index r) {
    if (q == r) return CheckResult::fail("q and r coincide");
    const auto& lower = p.lower_covers(top);
    auto covers = [&](Index x) { return std::find(lower.begin(), lower.end(), x) != lower.end(); };
    if (!covers(q) || !covers(r)) return CheckResult::fail(p.label(top) + " does not cover both elements");
    if (p.comparable(q, r)) return CheckResult::fail(p.label(q) + " and " + p.label(r) + " are comparable");
    Mask common_below = p.strictly_below(q) & p.strictly_below(r);
    Mask rest = p.strictly_below(top);
    rest.reset(q);
    rest.reset(r);
    if (!rest.is_subset_of(common_below)) {
        Index s = static_cast<Index>((rest - common_below).find_first());
        return CheckResult::fail(p.label(s) + " lies below " + p.label(top) + " but not below both");
    }
    Mask common_above = p.strictly_above(q) & p.strictly_above(r);
    Mask up = p.up_set(top);
    if (!common_above.is_subset_of(up)) {
        Index s = static_cast<Index>((common_above - up).find_first());
        return CheckResult::fail(p.label(s) + " lies above both but not above " + p.label(top));
    }
    return CheckResult::pass();
}

Poset elementary_zip(const Poset& p, const ZipStep& step) {
    Index a = p.at(step.p), b = p.at(step.q), c = p.at(step.r);
    if (auto res = check_zip_site(p, a, b, c); !res)
        throw PosetError("invalid zip (" + step.p + "; " + step.q + ", " + step.r + "): " + res.reason);
    Mask m = p.empty_mask();
    m.set(a);
    m.set(b);
    m.set(c);
    return quotient(p, m, step.q);
}

bool zip_goal_reached(const Poset& p, ZipGoal goal) {
    return goal == ZipGoal::singleton ? p.size() == 1 : p.least().has_value();
}

Poset replay_zipping(const Poset& p, const std::vector<ZipStep>& steps) {
    Poset cur = p;
    for (const auto& s : steps) cur = elementary_zip(cur, s);
    return cur;
}

namespace {

ZipStep make_step(const Poset& p, Index top, Index q, Index r) {
    std::string a = p.label(q), b = p.label(r);
    if (b < a) std::swap(a, b);
    return {p.label(top), a, b};
}

// Zip sites of p: elements with exactly two lower covers passing the conditions.
std::vector<ZipStep> zip_sites(const Poset& p) {
    std::vector<ZipStep> out;
    for (Index x : linear_extension(p)) {
        const auto& lc = p.lower_covers(x);
        if (lc.size() != 2) continue;
        if (check_zip_site(p, x, lc[0], lc[1])) out.push_back(make_step(p, x, lc[0], lc[1]));
    }
    return out;
}

class ZipSearch {
public:
    ZipSearch(ZipGoal goal, const SearchOptions& opt) : goal_(goal), budget_(opt.node_budget) {}

    Truth dfs(const Poset& cur, std::vector<ZipStep>& path) {
        if (zip_goal_reached(cur, goal_)) return Truth::yes;
        if (goal_ == ZipGoal::singleton && cur.size() % 2 == 0) return Truth::no;
        std::string key = canonical_key(cur);
        if (failed_.count(key)) {
            ++hits_;
            return Truth::no;
        }
        if (!budget_.tick()) return Truth::unknown;
        Truth result = Truth::no;
        for (const ZipStep& s : zip_sites(cur)) {
            path.push_back(s);
            Truth t = dfs(elementary_zip(cur, s), path);
            if (t == Truth::yes) return t;
            path.pop_back();
            if (t == Truth::unknown) result = Truth::unknown;
        }
        if (result == Truth::no) failed_.insert(std::move(key));
        return result;
    }

    SearchStats stats() const { return {budget_.nodes(), hits_}; }

private:
    ZipGoal goal_;
    detail::Budget budget_;
    std::unordered_set<std::string> failed_;
    std::size_t hits_ = 0;
};

}  // namespace

ZipResult find_zipping(const Poset& p, ZipGoal goal, const SearchOptions& opt) {
    ZipResult res;
    if (p.empty()) return res;
    // Each elementary zip is realised by two edge contractions of the order complex, so the
    // homotopy type is preserved and a non-acyclic poset cannot reach a contractible goal.
    if (opt.invariant_pruning && !is_z_acyclic(p)) return res;
    ZipSearch s(goal, opt);
    Truth t = s.dfs(p, res.steps);
    res.status = t == Truth::yes ? SearchStatus::found : t == Truth::no ? SearchStatus::refuted : SearchStatus::exhausted;
    if (t != Truth::yes) res.steps.clear();
    res.stats = s.stats();
    return res;
}

CheckResult verify_zipping(const Poset& p, const std::vector<ZipStep>& steps, ZipGoal goal) {
    Poset cur = p;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const ZipStep& s = steps[i];
        const std::string at = "step " + std::to_string(i) + ": ";
        if (!(s.q < s.r)) return CheckResult::fail(at + "q must precede r");
        auto a = cur.find(s.p), b = cur.find(s.q), c = cur.find(s.r);
        if (!a || !b || !c) return CheckResult::fail(at + "unknown label");
        // Conditions re-derived element by element, independently of the search helpers.
        auto covered_by_top = [&](Index x) {
            if (!cur.less(x, *a)) return false;
            for (Index y = 0; y < cur.size(); ++y)
                if (cur.less(x, y) && cur.less(y, *a)) return false;
            return true;
        };
        if (!covered_by_top(*b) || !covered_by_top(*c)) return CheckResult::fail(at + "top does not cover q and r");
        if (cur.leq(*b, *c) || cur.leq(*c, *b)) return CheckResult::fail(at + "q and r are comparable");
        for (Index x = 0; x < cur.size(); ++x) {
            if (cur.less(x, *a) && x != *b && x != *c && !(cur.less(x, *b) && cur.less(x, *c)))
                return CheckResult::fail(at + cur.label(x) + " is below the top but not below both");
            if (cur.less(*b, x) && cur.less(*c, x) && !cur.leq(*a, x))
                return CheckResult::fail(at + cur.label(x) + " is above q and r but not above the top");
        }
        Mask m = cur.empty_mask();
        m.set(*a);
        m.set(*b);
        m.set(*c);
        std::size_t before = cur.size();
        cur = quotient(cur, m, s.q);
        if (cur.size() + 2 != before) return CheckResult::fail(at + "element count did not drop by two");
    }
    if (!zip_goal_reached(cur, goal)) return CheckResult::fail("final poset does not reach the goal");
    return CheckResult::pass();
}

// ---- constructions to zippings ------------------------------------------------

namespace {

struct LabelTree {
    struct Node {
        ConstructionNode::Kind kind;
        std::set<std::string> labels;
        int q = -1, r = -1, meet = -1;
    };
    std::vector<Node> nodes;
};

LabelTree to_labels(const ConstructionTree& t) {
    LabelTree out;
    for (const auto& n : t.nodes) {
        LabelTree::Node m{n.kind, {}, n.q, n.r, n.meet};
        for_each_bit(n.mask, [&](Index i) { m.labels.insert(t.poset.label(i)); });
        out.nodes.push_back(std::move(m));
    }
    return out;
}

// Rebuilds a tree over `target` (a poset on a subset of the labels) from label sets,
// turning every node with a greatest element into a cone.
ConstructionTree from_labels(const LabelTree& lt, const Poset& target) {
    ConstructionTree out{target, {}};
    auto rec = [&](auto&& self, int i) -> int {
        const auto& n = lt.nodes[i];
        const int idx = static_cast<int>(out.nodes.size());
        out.nodes.emplace_back();
        Mask m = target.empty_mask();
        for (const auto& l : n.labels) m.set(target.at(l));
        out.nodes[idx].mask = m;
        if (auto top = target.greatest_in(m); top || n.kind == ConstructionNode::Kind::cone) {
            out.nodes[idx].kind = ConstructionNode::Kind::cone;
            out.nodes[idx].apex = top ? *top : 0;
            return idx;
        }
        out.nodes[idx].kind = ConstructionNode::Kind::split;
        int q = self(self, n.q);
        int r = self(self, n.r);
        int x = self(self, n.meet);
        out.nodes[idx].q = q;
        out.nodes[idx].r = r;
        out.nodes[idx].meet = x;
        return idx;
    };
    rec(rec, 0);
    return out;
}

struct Site {
    std::string p, q, r;
};

// Descends to a split whose two parts are cones, then follows meets until the meet is a cone.
std::optional<Site> locate_site(const LabelTree& t, const ConstructionTree& ct, int i) {
    const auto& n = t.nodes[i];
    if (n.kind == ConstructionNode::Kind::cone) return std::nullopt;
    const auto& nq = t.nodes[n.q];
    const auto& nr = t.nodes[n.r];
    if (nq.kind != ConstructionNode::Kind::cone) return locate_site(t, ct, n.q);
    if (nr.kind != ConstructionNode::Kind::cone) return locate_site(t, ct, n.r);
    const auto& nx = t.nodes[n.meet];
    if (nx.kind == ConstructionNode::Kind::cone) {
        return Site{ct.poset.label(ct.nodes[n.meet].apex), ct.poset.label(ct.nodes[n.q].apex),
                    ct.poset.label(ct.nodes[n.r].apex)};
    }
    return locate_site(t, ct, n.meet);
}

std::string describe_boundary(const Poset& k, Index x) { return mask_to_string(k, k.strictly_below(x)); }

}  // namespace

std::vector<ZipStep> zipping_from_construction(const Poset& k, const ConstructionTree& dual_tree,
                                               const SearchOptions& fallback, ZipBridgeStats* stats) {
    if (auto ok = verify_construction(dual_tree); !ok) throw SchemeError("construction tree rejected: " + ok.reason);
    {
        std::set<std::string> a(k.labels().begin(), k.labels().end());
        std::set<std::string> b(dual_tree.poset.labels().begin(), dual_tree.poset.labels().end());
        if (a != b || !dual_tree.poset.same_as(k.dual()))
            throw SchemeError("construction tree does not live on the dual poset");
    }
    std::vector<ZipStep> steps;
    Poset cur = k;
    ConstructionTree tree = dual_tree;
    while (cur.size() > 1) {
        LabelTree lt = to_labels(tree);
        auto site = locate_site(lt, tree, 0);
        if (!site) throw SchemeError("dual is a cone but the complex has " + std::to_string(cur.size()) + " elements");
        Index a = cur.at(site->p), b = cur.at(site->q), c = cur.at(site->r);
        if (auto ok = check_zip_site(cur, a, b, c); !ok)
            throw SchemeError("scheme site (" + site->p + "; " + site->q + ", " + site->r + ") is not a zip: " + ok.reason +
                              "; boundary of the cell is " + describe_boundary(cur, a));
        ZipStep step = make_step(cur, a, b, c);
        Poset next = elementary_zip(cur, step);
        steps.push_back(step);
        if (stats) ++stats->steps;
        // Update the scheme by pushing every node through the quotient map.
        for (auto& node : lt.nodes) {
            bool hit = node.labels.erase(step.p) + node.labels.erase(step.r) + node.labels.count(step.q) > 0;
            if (hit) node.labels.insert(step.q);
        }
        cur = next;
        if (cur.size() == 1) break;
        Poset dual = cur.dual();
        ConstructionTree updated = from_labels(lt, dual);
        if (!verify_construction(updated)) {
            if (stats) ++stats->fallbacks;
            auto res = find_construction(dual, fallback);
            if (!res.tree)
                throw SchemeError("no construction of the dual after zipping " + step.p + " (" + to_string(res.status) + ")");
            updated = *res.tree;
        }
        tree = std::move(updated);
    }
    return steps;
}

}  // namespace zipcert
