#include "zipcert/certify.hpp"
#include "zipcert/homology.hpp"
#include "zipcert/iso.hpp"

#include "search_common.hpp"

#include <algorithm>
#include <set>

namespace zipcert {

std::string to_string(ShellGoal g) { return g == ShellGoal::cone ? "cone" : "empty"; }

namespace {

using detail::Budget;
using detail::Memo;

class CollapseSearch {
public:
    CollapseSearch(const Poset& p, std::optional<Mask> target, const SearchOptions& opt)
        : p_(p), target_(std::move(target)), budget_(opt.node_budget), prune_(opt.invariant_pruning) {
        if (target_) target_chi_ = euler_characteristic(p_.induced(*target_));
    }

    // Collapses m onto the target (with_target) or onto a singleton.
    Truth solve(const Mask& m, bool with_target) {
        if (auto t = base(m, with_target)) return *t;
        if (auto t = mask_memo(with_target).get(m)) return *t;
        if (!budget_.tick()) return Truth::unknown;
        Poset sub = p_.induced(m);
        // Collapses preserve the homotopy type of the order complex.
        long long want = with_target ? target_chi_ : 1;
        if (prune_ && euler_characteristic(sub) != want) {
            mask_memo(with_target).put(m, Truth::no);
            return Truth::no;
        }
        std::string key = memo_key(m, sub, with_target);
        if (auto t = keys_.get(key)) {
            mask_memo(with_target).put(m, *t);
            return *t;
        }
        Truth result = Truth::no;
        for_each_move(m, with_target, [&](Index, const Mask& u, const Mask& y) {
            Truth t = std::min(solve(y, false), solve(m - u, with_target));
            if (t == Truth::yes) result = Truth::yes;
            if (t == Truth::unknown) result = Truth::unknown;
            return t == Truth::yes;
        });
        mask_memo(with_target).put(m, result);
        keys_.put(key, result);
        return result;
    }

    // Assumes solve(m, with_target) is yes.
    bool build(const Mask& m, bool with_target, CollapseSequence& out) {
        if (with_target ? m == *target_ : m.count() == 1) return true;
        if (!with_target) {
            if (auto top = p_.greatest_in(m)) {
                Mask u = m;
                u.reset(first_minimal(m));
                out.push_back({p_.label(*top), detail::sorted_labels(p_, u), {}});
                return true;
            }
        }
        bool ok = false;
        for_each_move(m, with_target, [&](Index sigma, const Mask& u, const Mask& y) {
            if (solve(y, false) != Truth::yes || solve(m - u, with_target) != Truth::yes) return false;
            CollapseStep step{p_.label(sigma), detail::sorted_labels(p_, u), {}};
            if (!build(y, false, step.sub)) return true;
            out.push_back(std::move(step));
            ok = build(m - u, with_target, out);
            return true;
        });
        return ok;
    }

    SearchStats stats() { return {budget_.nodes(), point_memo_.hits() + target_memo_.hits() + keys_.hits()}; }

private:
    std::optional<Truth> base(const Mask& m, bool with_target) const {
        if (with_target) {
            if (m == *target_) return Truth::yes;
            if (!target_->is_subset_of(m)) return Truth::no;
            return std::nullopt;
        }
        if (m.none()) return Truth::no;
        if (m.count() == 1 || p_.greatest_in(m)) return Truth::yes;  // a cone collapses onto a point
        return std::nullopt;
    }

    Memo<Mask, MaskHash>& mask_memo(bool with_target) { return with_target ? target_memo_ : point_memo_; }

    std::string memo_key(const Mask& m, const Poset& sub, bool with_target) const {
        if (!with_target) return "P" + canonical_key(sub);
        std::vector<std::uint32_t> colours;
        for_each_bit(m, [&](Index i) { colours.push_back(target_->test(i) ? 1 : 0); });
        return "T" + canonical_form(sub, &colours).key;
    }

    Index first_minimal(const Mask& m) const {
        for (Index x : linear_extension(p_))
            if (m.test(x)) return x;
        return 0;
    }

    // Elementary collapses of m: maximal σ, U up-closed below σ, Y = ⌊σ⌋ ∖ U nonempty.
    template <class F>
    void for_each_move(const Mask& m, bool with_target, F&& f) {
        for (Index sigma : p_.maximal_in(m)) {
            if (with_target && target_->test(sigma)) continue;
            Mask region = detail::free_region(p_, m, sigma);
            if (with_target) region -= *target_;
            Mask down = p_.down_set(sigma) & m;
            bool stop = detail::for_each_upclosed(p_, m, region, sigma, true, [&](const Mask& u) {
                Mask y = down - u;
                if (y.none()) return false;
                return f(sigma, u, y);
            });
            if (stop) return;
        }
    }

    const Poset& p_;
    std::optional<Mask> target_;
    long long target_chi_ = 0;
    Budget budget_;
    bool prune_;
    Memo<Mask, MaskHash> point_memo_, target_memo_;
    Memo<std::string> keys_;
};

}  // namespace

CollapseResult find_collapse(const Poset& p, const std::optional<Mask>& target, const SearchOptions& opt) {
    CollapseResult res;
    if (p.empty()) return res;
    if (target && (target->size() != p.size() || !is_closed_subposet(p, *target) || target->none())) return res;
    CollapseSearch s(p, target, opt);
    Mask all = p.full_mask();
    Truth t = s.solve(all, target.has_value());
    if (t == Truth::yes) {
        res.status = s.build(all, target.has_value(), res.steps) ? SearchStatus::found : SearchStatus::exhausted;
    } else {
        res.status = t == Truth::no ? SearchStatus::refuted : SearchStatus::exhausted;
    }
    res.stats = s.stats();
    return res;
}

Verdict is_collapsible_poset(const Poset& p, const SearchOptions& opt) {
    auto res = find_collapse(p, std::nullopt, opt);
    switch (res.status) {
        case SearchStatus::found: return Verdict::yes(std::to_string(res.steps.size()) + " elementary collapses");
        case SearchStatus::refuted: return Verdict::no("no elementary collapse sequence reaches a point");
        default: return Verdict::unknown("node budget exhausted");
    }
}

namespace {

// Shared replay checks for one removal step; returns the removed set or a failure.
CheckResult removal_step(const Poset& p, const Mask& cur, const std::string& apex, const std::vector<std::string>& removed,
                         Index& top, Mask& u) {
    auto a = p.find(apex);
    if (!a || !cur.test(*a)) return CheckResult::fail("apex " + apex + " is not present");
    top = *a;
    if (!std::is_sorted(removed.begin(), removed.end()) ||
        std::adjacent_find(removed.begin(), removed.end()) != removed.end())
        return CheckResult::fail("removed labels are not sorted and distinct");
    u = p.empty_mask();
    for (const auto& l : removed) {
        auto x = p.find(l);
        if (!x || !cur.test(*x)) return CheckResult::fail("removed element " + l + " is not present");
        u.set(*x);
    }
    if (!u.test(top)) return CheckResult::fail("apex is not removed");
    for (Index x = 0; x < p.size(); ++x) {
        if (!cur.test(x)) continue;
        if (x != top && p.less(top, x)) return CheckResult::fail("apex " + apex + " is not maximal");
        if (u.test(x) && !p.leq(x, top)) return CheckResult::fail(p.label(x) + " is not below the apex");
        for (Index y = 0; y < p.size(); ++y)
            if (u.test(x) && cur.test(y) && p.less(x, y) && !u.test(y))
                return CheckResult::fail("removed set is not up-closed at " + p.label(x) + " < " + p.label(y));
    }
    return CheckResult::pass();
}

CheckResult verify_collapse_on(const Poset& p, Mask cur, const std::optional<Mask>& target, const CollapseSequence& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto& s = seq[i];
        const std::string at = "step " + std::to_string(i) + ": ";
        Index top = 0;
        Mask u;
        if (auto ok = removal_step(p, cur, s.sigma, s.removed, top, u); !ok) return CheckResult::fail(at + ok.reason);
        if (target && (u & *target).any()) return CheckResult::fail(at + "removes part of the target");
        Mask y = (p.down_set(top) & cur) - u;
        if (y.none()) return CheckResult::fail(at + "nothing of the cone survives");
        if (auto ok = verify_collapse_on(p, y, std::nullopt, s.sub); !ok)
            return CheckResult::fail(at + "intersection is not collapsed: " + ok.reason);
        cur -= u;
    }
    if (target ? cur != *target : cur.count() != 1) return CheckResult::fail("sequence does not end at the target");
    return CheckResult::pass();
}

}  // namespace

CheckResult verify_collapse(const Poset& p, const std::optional<Mask>& target, const CollapseSequence& seq) {
    if (p.empty()) return CheckResult::fail("empty poset");
    if (target && (target->size() != p.size() || !is_closed_subposet(p, *target)))
        return CheckResult::fail("target is not a closed subposet");
    return verify_collapse_on(p, p.full_mask(), target, seq);
}

// ---- barycentric lift -----------------------------------------------------------

namespace {

void chains_within(const Poset& p, const Mask& m, std::vector<Index>& cur, std::vector<std::vector<Index>>& out) {
    Mask next = p.empty_mask();
    if (cur.empty()) next = m;
    else next = p.strictly_above(cur.back()) & m;
    for_each_bit(next, [&](Index y) {
        cur.push_back(y);
        out.push_back(cur);
        chains_within(p, m, cur, out);
        cur.pop_back();
    });
}

// Lifts a collapse of the subposet `cur` onto a singleton or the target; returns the final mask.
Mask lift(const Poset& p, Mask cur, const CollapseSequence& seq, SimplicialCollapse& out) {
    for (const auto& s : seq) {
        Index sigma = p.at(s.sigma);
        Mask u = p.mask_of(s.removed);
        Mask down = p.down_set(sigma) & cur;
        Mask y = down - u;
        // Chains of ∂⌊σ⌋ meeting U, longest first, each paired with its extension by σ.
        Mask rim = down;
        rim.reset(sigma);
        std::vector<Index> tmp;
        std::vector<std::vector<Index>> chains;
        chains_within(p, rim, tmp, chains);
        Mask u_rest = u;
        u_rest.reset(sigma);
        std::vector<std::vector<Index>> meeting;
        for (auto& c : chains)
            if (std::any_of(c.begin(), c.end(), [&](Index x) { return u_rest.test(x); })) meeting.push_back(c);
        std::stable_sort(meeting.begin(), meeting.end(),
                         [](const auto& a, const auto& b) { return a.size() > b.size(); });
        for (auto& c : meeting) {
            auto with = c;
            with.push_back(sigma);
            out.emplace_back(detail::chain_label(p, c), detail::chain_label(p, with));
        }
        // The cone σ * Y♭ collapses along the lifted collapse of Y, then {σ} goes with its last edge.
        SimplicialCollapse inner;
        Mask end = lift(p, y, s.sub, inner);
        auto strip = [](const std::string& l) { return l.substr(1, l.size() - 2); };
        for (auto& [a, b] : inner)
            out.emplace_back("{" + strip(a) + "," + p.label(sigma) + "}", "{" + strip(b) + "," + p.label(sigma) + "}");
        Index pt = static_cast<Index>(end.find_first());
        out.emplace_back(detail::chain_label(p, {sigma}), detail::chain_label(p, {pt, sigma}));
        cur -= u;
    }
    return cur;
}

}  // namespace

SimplicialCollapse barycentric_collapse_lift(const Poset& p, const CollapseSequence& seq) {
    SimplicialCollapse out;
    lift(p, p.full_mask(), seq, out);
    return out;
}

CheckResult verify_simplicial_collapse(const Poset& complex, const SimplicialCollapse& pairs,
                                       std::size_t expected_remaining) {
    Mask alive = complex.full_mask();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string at = "pair " + std::to_string(i) + ": ";
        auto a = complex.find(pairs[i].first), b = complex.find(pairs[i].second);
        if (!a || !b || !alive.test(*a) || !alive.test(*b)) return CheckResult::fail(at + "face not present");
        Mask up = complex.strictly_above(*a) & alive;
        if (up.count() != 1 || !up.test(*b)) return CheckResult::fail(at + pairs[i].first + " is not a free face of " + pairs[i].second);
        alive.reset(*a);
        alive.reset(*b);
    }
    if (alive.count() != expected_remaining)
        return CheckResult::fail(std::to_string(alive.count()) + " faces remain, expected " + std::to_string(expected_remaining));
    return CheckResult::pass();
}

// ---- shelling -------------------------------------------------------------------------

namespace {

class ShellSearch {
public:
    ShellSearch(const Poset& p, ShellGoal goal, const SearchOptions& opt)
        : p_(p), goal_(goal), budget_(opt.node_budget), prune_(opt.invariant_pruning) {}

    Truth solve(const Mask& m) {
        if (auto t = base(m)) return *t;
        if (auto t = masks_.get(m)) return *t;
        if (!budget_.tick()) return Truth::unknown;
        Poset sub = p_.induced(m);
        // Shelling onto a cone is a special construction, so the poset must be acyclic.
        if (prune_ && goal_ == ShellGoal::cone && euler_characteristic(sub) != 1) {
            masks_.put(m, Truth::no);
            return Truth::no;
        }
        std::string key = canonical_key(sub);
        if (auto t = keys_.get(key)) {
            masks_.put(m, *t);
            return *t;
        }
        Truth result = Truth::no;
        for_each_move(m, [&](Index, const Mask& u, const Mask& r) {
            Truth t = std::min(solve(r), solve(m - u));
            if (t != Truth::no) result = t;
            return t == Truth::yes;
        });
        masks_.put(m, result);
        keys_.put(key, result);
        return result;
    }

    bool build(const Mask& m, ShellSequence& out) {
        if (base(m) == Truth::yes) return true;
        bool ok = false;
        for_each_move(m, [&](Index x, const Mask& u, const Mask& r) {
            if (solve(r) != Truth::yes || solve(m - u) != Truth::yes) return false;
            ShellStep step{p_.label(x), detail::sorted_labels(p_, u), {}};
            if (!build(r, step.sub)) return true;
            out.push_back(std::move(step));
            ok = build(m - u, out);
            return true;
        });
        return ok;
    }

    SearchStats stats() { return {budget_.nodes(), masks_.hits() + keys_.hits()}; }

private:
    std::optional<Truth> base(const Mask& m) const {
        if (goal_ == ShellGoal::empty) {
            if (m.none()) return Truth::yes;
            return std::nullopt;
        }
        if (m.none()) return Truth::no;
        if (p_.greatest_in(m)) return Truth::yes;
        return std::nullopt;
    }

    template <class F>
    void for_each_move(const Mask& m, F&& f) {
        for (Index x : p_.maximal_in(m)) {
            Mask region = detail::free_region(p_, m, x);
            Mask down = p_.down_set(x) & m;
            bool stop = detail::for_each_upclosed(p_, m, region, x, false, [&](const Mask& u) {
                Mask q = m - u;
                Mask r = down - u;
                if (goal_ == ShellGoal::cone && r.none()) return false;
                if (!codim_one_in(p_, r, q)) return false;
                Mask rest = u;
                rest.reset(x);
                Mask w = p_.closure(rest) & m;
                Mask z = r & w;
                if (!codim_one_in(p_, z, r) || !codim_one_in(p_, z, w)) return false;
                return f(x, u, r);
            });
            if (stop) return;
        }
    }

    const Poset& p_;
    ShellGoal goal_;
    Budget budget_;
    bool prune_;
    Memo<Mask, MaskHash> masks_;
    Memo<std::string> keys_;
};

bool codim_one_check(const Poset& p, const Mask& inner, const Mask& outer) {
    // Verifier-side restatement: every maximal element of `inner` has an upper cover that is
    // maximal in `outer`.
    for (Index x = 0; x < p.size(); ++x) {
        if (!inner.test(x) || (p.strictly_above(x) & inner).any()) continue;
        bool ok = false;
        for (Index y = 0; y < p.size(); ++y)
            if (outer.test(y) && (p.strictly_above(y) & outer).none() && p.less(x, y) &&
                (p.strictly_above(x) & p.strictly_below(y)).none())
                ok = true;
        if (!ok) return false;
    }
    return inner.is_subset_of(outer);
}

CheckResult verify_shelling_on(const Poset& p, Mask cur, const ShellSequence& seq, ShellGoal goal) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto& s = seq[i];
        const std::string at = "step " + std::to_string(i) + ": ";
        Index top = 0;
        Mask u;
        if (auto ok = removal_step(p, cur, s.apex, s.removed, top, u); !ok) return CheckResult::fail(at + ok.reason);
        Mask q = cur - u;
        Mask r = (p.down_set(top) & cur) - u;
        if (goal == ShellGoal::cone && r.none()) return CheckResult::fail(at + "attached cone meets the rest emptily");
        if (!codim_one_check(p, r, q)) return CheckResult::fail(at + "intersection is not of codimension one in the rest");
        Mask rest = u;
        rest.reset(top);
        Mask w = p.closure(rest) & cur;
        Mask z = r & w;
        if (!codim_one_check(p, z, r) || !codim_one_check(p, z, w))
            return CheckResult::fail(at + "side condition on the removed faces fails");
        if (auto ok = verify_shelling_on(p, r, s.sub, goal); !ok)
            return CheckResult::fail(at + "intersection is not shelled: " + ok.reason);
        cur = q;
    }
    if (goal == ShellGoal::empty ? cur.any() : !p.greatest_in(cur).has_value())
        return CheckResult::fail("sequence does not end at " + std::string(goal == ShellGoal::empty ? "the empty poset" : "a cone"));
    return CheckResult::pass();
}

}  // namespace

ShellResult find_shelling(const Poset& p, ShellGoal goal, const SearchOptions& opt) {
    ShellResult res;
    ShellSearch s(p, goal, opt);
    Mask all = p.full_mask();
    Truth t = s.solve(all);
    if (t == Truth::yes) {
        res.status = s.build(all, res.steps) ? SearchStatus::found : SearchStatus::exhausted;
    } else {
        res.status = t == Truth::no ? SearchStatus::refuted : SearchStatus::exhausted;
    }
    res.stats = s.stats();
    return res;
}

CheckResult verify_shelling(const Poset& p, const ShellSequence& seq, ShellGoal goal) {
    return verify_shelling_on(p, p.full_mask(), seq, goal);
}

}  // namespace zipcert
