#include "search_common.hpp"

#include <algorithm>

namespace zipcert::detail {

std::vector<std::string> sorted_labels(const Poset& p, const Mask& m) {
    std::vector<std::string> out;
    for_each_bit(m, [&](Index i) { out.push_back(p.label(i)); });
    std::sort(out.begin(), out.end());
    return out;
}

Mask free_region(const Poset& p, const Mask& cur, Index top) {
    Mask below = p.down_set(top) & cur;
    Mask out = p.empty_mask();
    for_each_bit(below, [&](Index x) {
        if ((p.up_set(x) & cur).is_subset_of(below)) out.set(x);
    });
    return out;
}

bool for_each_upclosed(const Poset& p, const Mask& cur, const Mask& region, Index top, bool include_first,
                       const std::function<bool(const Mask&)>& f) {
    std::vector<Index> rest;
    for_each_bit(region, [&](Index x) {
        if (x != top) rest.push_back(x);
    });
    // Larger elements first, so every upper bound is decided before the element itself.
    std::sort(rest.begin(), rest.end(), [&](Index a, Index b) {
        auto ca = p.strictly_below(a).count(), cb = p.strictly_below(b).count();
        if (ca != cb) return ca > cb;
        return p.label(a) < p.label(b);
    });
    Mask u = p.empty_mask();
    u.set(top);
    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == rest.size()) return f(u);
        Index x = rest[k];
        Mask above = p.strictly_above(x) & cur;
        bool can_include = above.is_subset_of(u);
        for (int pass = 0; pass < 2; ++pass) {
            bool include = (pass == 0) == include_first;
            if (include && !can_include) continue;
            if (include) u.set(x);
            bool stop = self(self, k + 1);
            if (include) u.reset(x);
            if (stop) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

std::string chain_label(const Poset& p, std::vector<Index> chain) {
    std::sort(chain.begin(), chain.end(), [&](Index a, Index b) { return p.less(a, b); });
    std::string l = "{";
    for (std::size_t k = 0; k < chain.size(); ++k) {
        if (k) l += ',';
        l += p.label(chain[k]);
    }
    return l + "}";
}

}  // namespace zipcert::detail
