#include "zipcert/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace zipcert {

namespace {

using Colours = std::vector<std::uint32_t>;

class Canonizer {
public:
    Canonizer(const Poset& p, const Colours* user) : p_(p), n_(p.size()) {
        user_.assign(n_, 0);
        if (user) {
            if (user->size() != n_) throw PosetError("colour vector size mismatch");
            user_ = *user;
        }
        // Twins (same user colour, same lower and upper covers) are swapped by an
        // automorphism fixing everything else, so only one of them needs to be tried.
        std::map<std::tuple<std::uint32_t, std::vector<Index>, std::vector<Index>>, Index> classes;
        twin_.resize(n_);
        for (Index v = 0; v < n_; ++v) {
            auto lo = p.lower_covers(v), up = p.upper_covers(v);
            std::sort(lo.begin(), lo.end());
            std::sort(up.begin(), up.end());
            auto key = std::make_tuple(user_[v], std::move(lo), std::move(up));
            auto it = classes.emplace(std::move(key), static_cast<Index>(classes.size())).first;
            twin_[v] = it->second;
        }
    }

    CanonicalForm run() {
        Colours col(n_);
        for (Index v = 0; v < n_; ++v) col[v] = 0;
        initial_refine(col);
        std::vector<Index> prefix;
        search(col, prefix);
        CanonicalForm out;
        out.order = best_order_;
        out.key.reserve(4 * (best_.size() + 1));
        auto put = [&out](std::uint32_t x) {
            for (int s = 0; s < 32; s += 8) out.key.push_back(static_cast<char>((x >> s) & 0xffu));
        };
        put(static_cast<std::uint32_t>(n_));
        for (auto x : best_) put(x);
        return out;
    }

private:
    // Renumbers colours densely by sorting signatures; returns the number of classes.
    std::size_t renumber(Colours& col, std::vector<std::pair<std::vector<std::uint32_t>, Index>>& sig) {
        std::sort(sig.begin(), sig.end());
        std::uint32_t id = 0;
        for (std::size_t i = 0; i < sig.size(); ++i) {
            if (i && sig[i].first != sig[i - 1].first) ++id;
            col[sig[i].second] = id;
        }
        return n_ ? id + 1 : 0;
    }

    void initial_refine(Colours& col) {
        std::vector<std::pair<std::vector<std::uint32_t>, Index>> sig(n_);
        for (Index v = 0; v < n_; ++v) {
            sig[v].first = {user_[v], static_cast<std::uint32_t>(p_.strictly_below(v).count()),
                            static_cast<std::uint32_t>(p_.strictly_above(v).count()),
                            static_cast<std::uint32_t>(p_.lower_covers(v).size()),
                            static_cast<std::uint32_t>(p_.upper_covers(v).size())};
            sig[v].second = v;
        }
        renumber(col, sig);
    }

    std::size_t refine(Colours& col) {
        std::size_t classes = 0;
        std::vector<std::pair<std::vector<std::uint32_t>, Index>> sig(n_);
        while (true) {
            for (Index v = 0; v < n_; ++v) {
                auto& s = sig[v].first;
                s.clear();
                s.push_back(col[v]);
                std::size_t mark = s.size();
                for (Index u : p_.lower_covers(v)) s.push_back(col[u]);
                std::sort(s.begin() + static_cast<std::ptrdiff_t>(mark), s.end());
                s.push_back(0xffffffffu);
                mark = s.size();
                for (Index u : p_.upper_covers(v)) s.push_back(col[u]);
                std::sort(s.begin() + static_cast<std::ptrdiff_t>(mark), s.end());
                sig[v].second = v;
            }
            std::size_t next = renumber(col, sig);
            if (next == classes) return classes;
            classes = next;
        }
    }

    void leaf(const Colours& col) {
        std::vector<Index> order(n_);
        for (Index v = 0; v < n_; ++v) order[col[v]] = v;
        std::vector<std::uint32_t> enc;
        enc.reserve(3 * n_);
        for (Index pos = 0; pos < n_; ++pos) {
            Index v = order[pos];
            enc.push_back(user_[v]);
            std::vector<std::uint32_t> lows;
            for (Index u : p_.lower_covers(v)) lows.push_back(col[u]);
            std::sort(lows.begin(), lows.end());
            enc.push_back(static_cast<std::uint32_t>(lows.size()));
            enc.insert(enc.end(), lows.begin(), lows.end());
        }
        if (!have_best_ || enc < best_) {
            best_ = std::move(enc);
            best_order_ = std::move(order);
            have_best_ = true;
        } else if (enc == best_) {
            std::vector<Index> gamma(n_);
            bool trivial = true;
            for (Index pos = 0; pos < n_; ++pos) {
                gamma[best_order_[pos]] = order[pos];
                if (best_order_[pos] != order[pos]) trivial = false;
            }
            if (!trivial) generators_.push_back(std::move(gamma));
        }
    }

    Index find(std::vector<Index>& uf, Index x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    }

    void search(Colours col, std::vector<Index>& prefix) {
        std::size_t classes = refine(col);
        if (classes == n_) {
            leaf(col);
            return;
        }
        std::vector<Index> count(classes, 0);
        for (Index v = 0; v < n_; ++v) ++count[col[v]];
        std::uint32_t target = 0;
        while (count[target] < 2) ++target;
        std::vector<Index> cell;
        for (Index v = 0; v < n_; ++v)
            if (col[v] == target) cell.push_back(v);

        std::vector<Index> tried;
        for (Index v : cell) {
            bool skip = false;
            for (Index t : tried)
                if (twin_[t] == twin_[v]) skip = true;
            if (!skip && !tried.empty() && !generators_.empty()) {
                std::vector<Index> uf(n_);
                std::iota(uf.begin(), uf.end(), 0);
                for (auto& g : generators_) {
                    bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](Index x) { return g[x] == x; });
                    if (!fixes) continue;
                    for (Index x = 0; x < n_; ++x) uf[find(uf, x)] = find(uf, g[x]);
                }
                for (Index t : tried)
                    if (find(uf, t) == find(uf, v)) skip = true;
            }
            if (skip) continue;
            Colours child(n_);
            for (Index u = 0; u < n_; ++u) child[u] = 2 * col[u] + (u == v ? 0u : 1u);
            prefix.push_back(v);
            search(std::move(child), prefix);
            prefix.pop_back();
            tried.push_back(v);
        }
    }

    const Poset& p_;
    std::size_t n_;
    Colours user_;
    std::vector<Index> twin_;
    std::vector<std::uint32_t> best_;
    std::vector<Index> best_order_;
    bool have_best_ = false;
    std::vector<std::vector<Index>> generators_;
};

}  // namespace

CanonicalForm canonical_form(const Poset& p, const std::vector<std::uint32_t>* colours) {
    return Canonizer(p, colours).run();
}

std::string canonical_key(const Poset& p) { return canonical_form(p).key; }

std::optional<MonotoneMap> are_isomorphic(const Poset& p, const Poset& q) {
    if (p.size() != q.size() || p.covers().size() != q.covers().size()) return std::nullopt;
    CanonicalForm cp = canonical_form(p), cq = canonical_form(q);
    if (cp.key != cq.key) return std::nullopt;
    std::vector<Index> table(p.size());
    for (Index pos = 0; pos < p.size(); ++pos) table[cp.order[pos]] = cq.order[pos];
    MonotoneMap f(p, q, std::move(table));
    if (!is_isomorphism(f)) throw PosetError("internal error: canonical forms agree but map is not an isomorphism");
    return f;
}

bool isomorphic(const Poset& p, const Poset& q) { return are_isomorphic(p, q).has_value(); }

}  // namespace zipcert
