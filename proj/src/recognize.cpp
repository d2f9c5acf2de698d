#include "zipcert/recognize.hpp"

#include "zipcert/certify.hpp"
#include "zipcert/homology.hpp"
#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"

#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace zipcert {

std::string to_string(Truth t) {
    switch (t) {
        case Truth::yes: return "yes";
        case Truth::no: return "no";
        default: return "unknown";
    }
}

Verdict operator&&(const Verdict& a, const Verdict& b) {
    if (a.is_no()) return a;
    if (b.is_no()) return b;
    if (a.is_unknown()) return a;
    if (b.is_unknown()) return b;
    return a;
}

namespace {

std::string name(const Poset& p, Index i) { return p.label(i); }

// Atoms of P lying below x, as a mask over P.
Mask atoms_below(const Poset& p, const Mask& atom_mask, Index x) { return p.down_set(x) & atom_mask; }

// ⌊x⌋ ≅ Δ^{atoms below x}: right size, atom sets injective and order-reflecting.
bool cone_is_simplex(const Poset& p, const Mask& atom_mask, Index x) {
    Mask cone = p.down_set(x);
    const std::size_t k = atoms_below(p, atom_mask, x).count();
    if (k >= 31 || cone.count() != (std::size_t{1} << k) - 1) return false;
    std::unordered_set<Mask, MaskHash> seen;
    std::vector<Index> elems = bits_of(cone);
    for (Index y : elems)
        if (!seen.insert(atoms_below(p, atom_mask, y)).second) return false;
    for (Index y : elems)
        for (Index z : elems) {
            bool sub = atoms_below(p, atom_mask, y).is_subset_of(atoms_below(p, atom_mask, z));
            if (sub != p.leq(y, z)) return false;
        }
    return true;
}

bool poset_is_simplex(const Poset& p) {
    auto top = p.greatest();
    return top && cone_is_simplex(p, atoms(p), *top);
}

Verdict require_ccp(const Poset& p) {
    if (is_conditionally_complete(p)) return Verdict::yes();
    return Verdict::no("not conditionally complete");
}

std::string cached_key(std::mutex& mu, std::unordered_map<int, std::string>& cache, int k,
                       const std::function<Poset()>& make) {
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    std::string key = canonical_key(make());
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(k, key);
    return key;
}

std::string cube_key(int k) {
    static std::mutex mu;
    static std::unordered_map<int, std::string> cache;
    return cached_key(mu, cache, k, [k] { return cube(k); });
}

// Partitions of `total` into parts ≥ 1 (non-increasing), each part an extra simplex dimension.
void partitions(int total, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (total == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(total, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions(total - part, part, cur, out);
        cur.pop_back();
    }
}

std::string simplex_product_key(const std::vector<int>& dims) {
    static std::mutex mu;
    static std::map<std::vector<int>, std::string> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(dims);
        if (it != cache.end()) return it->second;
    }
    Poset prod = point();
    for (int d : dims) prod = product(prod, simplex(d + 1));
    std::string key = canonical_key(prod);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(dims, key);
    return key;
}

bool cone_is_simplex_product(const Poset& cone) {
    const int d = cone.dimension();
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(d, d, cur, parts);
    std::string key;
    for (auto& dims : parts) {
        std::size_t size = 1;
        for (int x : dims) size *= (std::size_t{1} << (x + 1)) - 1;
        if (size != cone.size()) continue;
        if (key.empty()) key = canonical_key(cone);
        if (key == simplex_product_key(dims)) return true;
    }
    return d == 0 && cone.size() == 1;
}

// Rank function for purity: longest chain below each element.
std::vector<int> heights(const Poset& p) {
    std::vector<int> h(p.size(), 0);
    for (Index x : p.topological_order())
        for (Index y : p.lower_covers(x)) h[x] = std::max(h[x], h[y] + 1);
    return h;
}

Poset strict_down(const Poset& p, Index x) { return p.induced(p.strictly_below(x)); }
Poset strict_up(const Poset& p, Index x) { return p.induced(p.strictly_above(x)); }

// ---- spheres and balls ----

struct Caches {
    std::mutex mu;
    std::unordered_map<std::string, Verdict> sphere;
    std::unordered_map<std::string, Verdict> ball;
};

Caches& caches() {
    static Caches c;
    return c;
}

Verdict sphere_rec(const Poset& p, const RecognizeOptions& opt);
Verdict ball_rec(const Poset& p, const Mask& b, const RecognizeOptions& opt);

Verdict links_verdict(const Poset& p, const Mask* b, const RecognizeOptions& opt) {
    Verdict acc = Verdict::yes();
    for (Index x = 0; x < p.size(); ++x) {
        std::vector<Index> idx;
        Mask lm = p.strictly_below(x) | p.strictly_above(x);
        Poset link = p.induced(lm, idx);
        Verdict v;
        if (b && b->test(x)) {
            Mask lb = link.empty_mask();
            for (Index i = 0; i < idx.size(); ++i)
                if (b->test(idx[i])) lb.set(i);
            v = ball_rec(link, lb, opt);
        } else {
            v = sphere_rec(link, opt);
        }
        if (v.is_no()) return Verdict::no("link of " + name(p, x) + ": " + v.witness);
        if (v.is_unknown() && acc.is_yes()) acc = Verdict::unknown("link of " + name(p, x) + ": " + v.witness);
    }
    return acc;
}

Verdict manifold_shape(const Poset& p, int d) {
    if (p.dimension() != d) return Verdict::no("dimension mismatch");
    if (!is_pure(p).is_yes()) return Verdict::no("not pure");
    if (!is_connected(p)) return Verdict::no("not connected");
    return Verdict::yes();
}

bool is_boundary_of_simplex(const Poset& p, int d) {
    Mask a = atoms(p);
    if (a.count() != static_cast<std::size_t>(d + 2)) return false;
    if (p.size() != (std::size_t{1} << (d + 2)) - 2) return false;
    return is_simplicial(p).is_yes();
}

Verdict sphere_compute(const Poset& p, const RecognizeOptions& opt) {
    const int d = p.dimension();
    if (d == -1) return Verdict::yes("empty poset: the (-1)-sphere");
    if (d == 0) return Verdict::from_bool(p.size() == 2, "0-dimensional with " + std::to_string(p.size()) + " points");
    Verdict shape = manifold_shape(p, d);
    if (!shape.is_yes()) return shape;
    Verdict links = links_verdict(p, nullptr, opt);
    if (links.is_no()) return links;
    if (d == 1) return links;
    if (d == 2) {
        if (!links.is_yes()) return links;
        long long chi = euler_characteristic(p);
        return Verdict::from_bool(chi == 2, "closed surface with Euler characteristic " + std::to_string(chi));
    }
    HomologyProfile h = homology(p, true);
    for (int k = -1; k <= d; ++k) {
        std::size_t expect = (k == d) ? 1 : 0;
        if (h.betti_at(k) != expect) return Verdict::no("not a homology sphere (degree " + std::to_string(k) + ")");
    }
    if (h.has_torsion()) return Verdict::no("homology has torsion");
    if (!links.is_yes()) return links;
    if (is_boundary_of_simplex(p, d)) return Verdict::yes("boundary of a simplex");
    if (!opt.use_certificates) return Verdict::unknown("homology sphere of dimension " + std::to_string(d));
    // A closed manifold minus one open top cell that is constructible is a ball (Zeeman), and
    // gluing the cell back along its boundary sphere gives a sphere.
    Index sigma = p.maximal_elements().front();
    Mask rest = p.full_mask();
    rest.reset(sigma);
    SearchOptions so;
    so.node_budget = opt.search_budget;
    auto res = find_construction(p.induced(rest), so);
    if (res.status == SearchStatus::found)
        return Verdict::yes("complement of " + name(p, sigma) + " is constructible");
    return Verdict::unknown("homology " + std::to_string(d) + "-sphere without a construction certificate");
}

Verdict sphere_rec(const Poset& p, const RecognizeOptions& opt) {
    if (p.size() <= 2) return sphere_compute(p, opt);
    std::string key = canonical_key(p);
    {
        std::lock_guard<std::mutex> lock(caches().mu);
        auto it = caches().sphere.find(key);
        if (it != caches().sphere.end()) return it->second;
    }
    Verdict v = sphere_compute(p, opt);
    if (!v.is_unknown()) {
        std::lock_guard<std::mutex> lock(caches().mu);
        caches().sphere.emplace(std::move(key), v);
    }
    return v;
}

Verdict ball_compute(const Poset& p, const Mask& b, const RecognizeOptions& opt) {
    const int d = p.dimension();
    if (d == -1) return Verdict::no("empty poset is not a ball");
    if (!is_closed_subposet(p, b)) return Verdict::no("boundary is not closed");
    if (d == 0) return Verdict::from_bool(p.size() == 1 && b.none(), "0-dimensional ball must be one point with empty boundary");
    // Cone over a sphere with the base as boundary.
    if (auto top = p.greatest()) {
        Mask base = p.full_mask();
        base.reset(*top);
        if (b == base) {
            Verdict v = sphere_rec(p.induced(base), opt);
            if (v.is_no()) return Verdict::no("cone over a non-sphere: " + v.witness);
            return v;
        }
    }
    Verdict shape = manifold_shape(p, d);
    if (!shape.is_yes()) return shape;
    Verdict links = links_verdict(p, &b, opt);
    if (links.is_no()) return links;
    if (d == 1) {
        if (!links.is_yes()) return links;
        return Verdict::from_bool(b.any(), "closed curve, not an arc");
    }
    if (d == 2) {
        if (!links.is_yes()) return links;
        long long chi = euler_characteristic(p);
        return Verdict::from_bool(b.any() && chi == 1, "surface with boundary and Euler characteristic " + std::to_string(chi));
    }
    if (b.none()) return Verdict::no("empty boundary");
    if (!is_z_acyclic(p)) return Verdict::no("not acyclic");
    if (!links.is_yes()) return links;
    if (!opt.use_certificates) return Verdict::unknown("acyclic manifold of dimension " + std::to_string(d));
    SearchOptions so;
    so.node_budget = opt.search_budget;
    auto res = find_construction(p, so);
    if (res.status == SearchStatus::found) return Verdict::yes("constructible pseudo-manifold");
    return Verdict::unknown("acyclic " + std::to_string(d) + "-manifold without a construction certificate");
}

Verdict ball_rec(const Poset& p, const Mask& b, const RecognizeOptions& opt) {
    if (p.size() <= 2) return ball_compute(p, b, opt);
    std::vector<std::uint32_t> colours(p.size(), 0);
    for_each_bit(b, [&](Index i) { colours[i] = 1; });
    std::string key = canonical_form(p, &colours).key;
    {
        std::lock_guard<std::mutex> lock(caches().mu);
        auto it = caches().ball.find(key);
        if (it != caches().ball.end()) return it->second;
    }
    Verdict v = ball_compute(p, b, opt);
    if (!v.is_unknown()) {
        std::lock_guard<std::mutex> lock(caches().mu);
        caches().ball.emplace(std::move(key), v);
    }
    return v;
}

}  // namespace

Poset comparability_link(const Poset& p, Index x) { return p.induced(p.strictly_below(x) | p.strictly_above(x)); }

Verdict is_simplicial(const Poset& p) {
    Verdict v = require_ccp(p);
    if (!v.is_yes()) return v;
    Mask a = atoms(p);
    for (Index x = 0; x < p.size(); ++x)
        if (!cone_is_simplex(p, a, x)) return Verdict::no("cone of " + name(p, x) + " is not a simplex");
    return Verdict::yes();
}

Verdict is_cubical(const Poset& p) {
    Verdict v = require_ccp(p);
    if (!v.is_yes()) return v;
    for (Index x = 0; x < p.size(); ++x) {
        Poset cone = p.induced(p.down_set(x));
        int k = cone.dimension();
        std::size_t expect = 1;
        for (int i = 0; i < k; ++i) expect *= 3;
        if (cone.size() != expect || canonical_key(cone) != cube_key(k))
            return Verdict::no("cone of " + name(p, x) + " is not a cube");
    }
    return Verdict::yes();
}

Verdict is_cubosimplicial(const Poset& p) {
    Verdict v = require_ccp(p);
    if (!v.is_yes()) return v;
    for (Index x = 0; x < p.size(); ++x)
        if (!cone_is_simplex_product(p.induced(p.down_set(x))))
            return Verdict::no("cone of " + name(p, x) + " is not a product of simplices");
    return Verdict::yes();
}

Verdict is_simple(const Poset& p) {
    Verdict v = require_ccp(p);
    if (!v.is_yes()) return v;
    for (Index s = 0; s < p.size(); ++s)
        for (Index t : bits_of(p.strictly_above(s))) {
            Poset interval = p.induced(p.strictly_above(s) & p.down_set(t));
            if (!poset_is_simplex(interval))
                return Verdict::no("link of " + name(p, s) + " in the cone of " + name(p, t) + " is not a simplex");
        }
    return Verdict::yes();
}

Verdict is_flag(const Poset& p) {
    Verdict s = is_simplicial(p);
    if (!s.is_yes()) return Verdict::no("not simplicial: " + s.witness);
    Mask a = atoms(p);
    std::vector<Index> atom_list = bits_of(a);
    std::unordered_set<Mask, MaskHash> faces;
    for (Index x = 0; x < p.size(); ++x) faces.insert(p.down_set(x) & a);
    for (const Mask& f : std::vector<Mask>(faces.begin(), faces.end())) {
        for (Index v : atom_list) {
            if (f.test(v)) continue;
            Mask s2 = f;
            s2.set(v);
            if (s2.count() < 3 || faces.count(s2)) continue;
            bool all_proper = true;
            for_each_bit(s2, [&](Index u) {
                Mask t = s2;
                t.reset(u);
                if (!faces.count(t)) all_proper = false;
            });
            if (all_proper) return Verdict::no("missing face " + mask_to_string(p, s2));
        }
    }
    return Verdict::yes();
}

Verdict is_nonsingular(const Poset& p) {
    for (Index a = 0; a < p.size(); ++a)
        for (Index b : bits_of(p.strictly_above(a)))
            if ((p.strictly_above(a) & p.strictly_below(b)).count() == 1)
                return Verdict::no("interval [" + name(p, a) + "," + name(p, b) + "] has three elements");
    return Verdict::yes();
}

Verdict is_pure(const Poset& p) {
    if (p.empty()) return Verdict::yes("empty poset: vacuously pure");
    std::vector<int> h = heights(p);
    for (auto [a, b] : p.covers())
        if (h[b] != h[a] + 1) return Verdict::no("maximal chain through " + name(p, a) + " < " + name(p, b) + " is short");
    const int n = p.dimension();
    for (Index m : p.maximal_elements())
        if (h[m] != n) return Verdict::no("maximal element " + name(p, m) + " has dimension " + std::to_string(h[m]));
    return Verdict::yes();
}

Verdict is_codim_one(const Poset& p, const Mask& q) {
    if (!is_closed_subposet(p, q)) return Verdict::no("subposet is not closed");
    if (q.none()) return Verdict::yes("empty subposet: vacuous");
    Mask maxp = p.empty_mask();
    for (Index m : p.maximal_elements()) maxp.set(m);
    for (Index x : p.maximal_in(q)) {
        bool ok = false;
        for (Index y : p.upper_covers(x))
            if (maxp.test(y)) ok = true;
        if (!ok) return Verdict::no(name(p, x) + " is not covered by a maximal element");
    }
    return Verdict::yes();
}

Verdict is_pure_codim_one(const Poset& p, const Mask& q) {
    Verdict v = is_codim_one(p, q);
    if (!v.is_yes()) return v;
    Mask maxp = p.empty_mask();
    for (Index m : p.maximal_elements()) maxp.set(m);
    for (Index x : p.maximal_in(q))
        for (Index y : p.upper_covers(x))
            if (!maxp.test(y)) return Verdict::no(name(p, x) + " is covered by the non-maximal " + name(p, y));
    return Verdict::yes();
}

namespace {

Verdict filtration(const MonotoneMap& f, bool pure) {
    const Poset& s = f.source();
    const Poset& t = f.target();
    for (Index q = 0; q < t.size(); ++q) {
        std::vector<Index> tidx;
        Poset cone = t.induced(t.down_set(q), tidx);
        Mask bd_local = boundary(cone);
        Mask bd = t.empty_mask();
        for_each_bit(bd_local, [&](Index i) { bd.set(tidx[i]); });
        Mask a = f.preimage(t.down_set(q));
        Mask b = f.preimage(bd);
        std::vector<Index> sidx;
        Poset sa = s.induced(a, sidx);
        Mask lb = sa.empty_mask();
        for (Index i = 0; i < sidx.size(); ++i)
            if (b.test(sidx[i])) lb.set(i);
        Verdict v = pure ? is_pure_codim_one(sa, lb) : is_codim_one(sa, lb);
        if (!v.is_yes()) return Verdict::no("over " + t.label(q) + ": " + v.witness);
    }
    return Verdict::yes();
}

}  // namespace

Verdict is_filtration_map(const MonotoneMap& f) { return filtration(f, false); }
Verdict is_pure_filtration_map(const MonotoneMap& f) { return filtration(f, true); }

Verdict is_sphere(const Poset& p, const RecognizeOptions& opt) { return sphere_rec(p, opt); }

Verdict is_ball(const Poset& p, const RecognizeOptions& opt) { return ball_rec(p, boundary(p), opt); }

Verdict is_ball_with_boundary(const Poset& p, const Mask& b, const RecognizeOptions& opt) {
    return ball_rec(p, b, opt);
}

Verdict is_cell_complex(const Poset& p, const RecognizeOptions& opt) {
    Verdict acc = Verdict::yes();
    for (Index x = 0; x < p.size(); ++x) {
        Verdict v = sphere_rec(strict_down(p, x), opt);
        if (v.is_no()) return Verdict::no("boundary of the cell " + name(p, x) + ": " + v.witness);
        if (v.is_unknown() && acc.is_yes()) acc = Verdict::unknown("boundary of the cell " + name(p, x) + ": " + v.witness);
    }
    return acc;
}

Verdict is_cell_complex_with_coboundary(const Poset& p, const Mask& q, const RecognizeOptions& opt) {
    if (!is_open_subposet(p, q)) return Verdict::no("coboundary is not open");
    Verdict acc = Verdict::yes();
    for (Index x = 0; x < p.size(); ++x) {
        Poset bd = strict_down(p, x);
        Verdict v = q.test(x) ? ball_rec(bd.dual(), boundary(bd.dual()), opt) : sphere_rec(bd, opt);
        if (v.is_no()) return Verdict::no("cell " + name(p, x) + ": " + v.witness);
        if (v.is_unknown() && acc.is_yes()) acc = Verdict::unknown("cell " + name(p, x) + ": " + v.witness);
    }
    return acc;
}

Verdict is_manifold(const Poset& p, const Mask& b, const RecognizeOptions& opt) {
    if (!is_closed_subposet(p, b)) return Verdict::no("boundary is not closed");
    Verdict acc = is_pure(p);
    if (acc.is_no()) return acc;
    acc = acc && is_cell_complex(p, opt);
    if (acc.is_no()) return acc;
    // Dual cell complex with coboundary b*: links above each element.
    for (Index x = 0; x < p.size(); ++x) {
        Poset up = strict_up(p, x);
        Verdict v = b.test(x) ? ball_rec(up, boundary(up), opt) : sphere_rec(up, opt);
        if (v.is_no()) return Verdict::no("dual cell of " + name(p, x) + ": " + v.witness);
        acc = acc && v;
    }
    return acc;
}

Verdict is_pseudo_manifold(const Poset& p, const Mask& q, const RecognizeOptions& opt) {
    Verdict acc = is_pure(p);
    if (acc.is_no()) return acc;
    acc = acc && is_cell_complex_with_coboundary(p, q, opt);
    if (acc.is_no()) return acc;
    Poset d = p.dual();
    Mask skel = d.empty_mask();
    for (Index a : d.minimal_elements()) {
        skel.set(a);
        for (Index c : d.upper_covers(a)) skel.set(c);
    }
    Verdict g = is_cell_complex(d.induced(skel), opt);
    if (g.is_no()) return Verdict::no("dual 1-skeleton: " + g.witness);
    return acc && g;
}

Verdict is_pseudo_manifold(const Poset& p, const RecognizeOptions& opt) {
    return is_pseudo_manifold(p, coboundary(p), opt);
}

}  // namespace zipcert
