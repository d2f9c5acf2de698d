#include "zipcert/cylinders.hpp"

#include "zipcert/ops.hpp"

#include <algorithm>
#include <unordered_set>

namespace zipcert {

namespace {

std::vector<std::string> labels_with_prefix_on_clash(const std::vector<std::string>& a,
                                                     const std::vector<std::string>& b) {
    std::unordered_set<std::string> seen(a.begin(), a.end());
    bool clash = std::any_of(b.begin(), b.end(), [&](const std::string& l) { return seen.count(l) > 0; });
    std::vector<std::string> out;
    for (auto& l : a) out.push_back(clash ? "1." + l : l);
    for (auto& l : b) out.push_back(clash ? "2." + l : l);
    return out;
}

Poset two_chain(const std::string& lo, const std::string& hi) {
    return Poset::from_relation({lo, hi}, {{0, 1}});
}

// Index of the element labelled `l`, for posets built with known labels.
Index idx(const Poset& p, const std::string& l) { return p.at(l); }

}  // namespace

Preposet adjunction(const Poset& p, const Mask& domain, const MonotoneMap& f) {
    std::vector<Index> dom = bits_of(domain);
    if (f.source().size() != dom.size()) throw MapError("attaching map source does not match the domain");
    const Poset& q = f.target();
    std::vector<Index> cls(p.size());
    std::vector<std::string> rest;
    std::vector<Index> local(p.size(), 0);
    for (Index i = 0; i < dom.size(); ++i) local[dom[i]] = i;
    for (Index x = 0; x < p.size(); ++x) {
        if (domain.test(x)) continue;
        cls[x] = static_cast<Index>(rest.size());
        rest.push_back(p.label(x));
    }
    const Index off = static_cast<Index>(rest.size());
    for (Index x = 0; x < p.size(); ++x)
        if (domain.test(x)) cls[x] = off + f(local[x]);
    std::vector<Arrow> arrows;
    for (Index b = 0; b < p.size(); ++b)
        for_each_bit(p.strictly_below(b), [&](Index a) {
            if (cls[a] != cls[b]) arrows.emplace_back(cls[a], cls[b]);
        });
    for (Index b = 0; b < q.size(); ++b)
        for_each_bit(q.strictly_below(b), [&](Index a) { arrows.emplace_back(off + a, off + b); });
    return Preposet(labels_with_prefix_on_clash(rest, q.labels()), arrows);
}

Preposet quotient_preposet(const Poset& p, const Mask& m, std::optional<std::string> point_label) {
    Mask rest = ~m;
    std::string name;
    if (point_label) {
        name = *point_label;
    } else {
        name = "*";
        while (p.find(name)) name += '\'';
    }
    Poset pt = point(name);
    std::vector<Index> table(m.count(), 0);
    MonotoneMap c(p.induced(m), pt, table);
    return adjunction(p, m, c);
}

Poset quotient(const Poset& p, const Mask& m, std::optional<std::string> point_label) {
    return transitive_closure(quotient_preposet(p, m, std::move(point_label)));
}

Preposet amalgam(const Poset& p, const Poset& q, const Mask& a, const Mask& b, const std::vector<Index>& h) {
    if (h.size() != a.count()) throw MapError("amalgam map size differs from the domain");
    Mask image = q.empty_mask();
    for (Index t : h) image.set(t);
    if (image != b || image.count() != h.size()) throw MapError("amalgam map is not a bijection onto B");
    MonotoneMap f(p.induced(a), q, h);
    Poset bq = q.induced(b);
    std::vector<Index> bidx = bits_of(b);
    std::vector<Index> local(q.size(), 0);
    for (Index i = 0; i < bidx.size(); ++i) local[bidx[i]] = i;
    std::vector<Index> hl(h.size());
    for (Index i = 0; i < h.size(); ++i) hl[i] = local[h[i]];
    if (!is_isomorphism(MonotoneMap(f.source(), bq, hl))) throw MapError("amalgam map is not an isomorphism");
    return adjunction(p, a, f);
}

namespace {

Preposet cylinder(const MonotoneMap& f, bool glue_lower) {
    const Poset& s = f.source();
    Poset pc = product(s, two_chain("1", "2"));
    Mask dom = pc.empty_mask();
    for (Index a = 0; a < s.size(); ++a) dom.set(2 * a + (glue_lower ? 0 : 1));
    MonotoneMap attach(pc.induced(dom), f.target(), f.table());
    return adjunction(pc, dom, attach);
}

std::string underscore_for(const Poset& p) { return fresh_label(p, "_"); }

std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

// Closure of the graph of f inside P×Q, as a set of pairs.
std::vector<Arrow> graph_closure(const MonotoneMap& f) {
    const Poset& p = f.source();
    const Poset& q = f.target();
    std::vector<bool> in(p.size() * q.size(), false);
    for (Index x = 0; x < p.size(); ++x)
        for_each_bit(p.down_set(x), [&](Index a) {
            for_each_bit(q.down_set(f(x)), [&](Index b) { in[a * q.size() + b] = true; });
        });
    std::vector<Arrow> out;
    for (Index a = 0; a < p.size(); ++a)
        for (Index b = 0; b < q.size(); ++b)
            if (in[a * q.size() + b]) out.emplace_back(a, b);
    return out;
}

}  // namespace

Preposet mc(const MonotoneMap& f) { return cylinder(f, true); }

Preposet mc_star(const MonotoneMap& f) { return cylinder(f, false); }

Preposet lmc(const MonotoneMap& f) {
    const Poset& p = f.source();
    const Poset& q = f.target();
    const std::string up = underscore_for(p), uq = underscore_for(q);
    // P × V where V has 0, 1 below 2; the 0-copy is glued to Q along f.
    Poset v = Poset::from_relation({"0", "1", "2"}, {{0, 2}, {1, 2}});
    Poset pv = product(p, v);
    std::vector<std::string> names(pv.size());
    for (Index a = 0; a < p.size(); ++a) {
        names[3 * a] = "#" + p.label(a);
        names[3 * a + 1] = pair_label(p.label(a), uq);
        names[3 * a + 2] = pair_label(p.label(a), q.label(f(a)));
    }
    pv = pv.relabeled(names);
    std::vector<std::string> qnames;
    for (Index b = 0; b < q.size(); ++b) qnames.push_back(pair_label(up, q.label(b)));
    Poset qr = q.relabeled(qnames);
    Mask dom = pv.empty_mask();
    for (Index a = 0; a < p.size(); ++a) dom.set(3 * a);
    MonotoneMap attach(pv.induced(dom), qr, f.table());
    return adjunction(pv, dom, attach);
}

Mask tmc_in_join(const MonotoneMap& f) {
    const Poset& p = f.source();
    const Poset& q = f.target();
    Poset j = join(p, q);
    const std::string up = underscore_for(p), uq = underscore_for(q);
    Mask m = j.empty_mask();
    for (Index a = 0; a < p.size(); ++a) m.set(idx(j, pair_label(p.label(a), uq)));
    for (Index b = 0; b < q.size(); ++b) m.set(idx(j, pair_label(up, q.label(b))));
    for (auto [a, b] : graph_closure(f)) m.set(idx(j, pair_label(p.label(a), q.label(b))));
    return m;
}

Poset tmc(const MonotoneMap& f) { return join(f.source(), f.target()).induced(tmc_in_join(f)); }

Preposet tmc_by_amalgam(const MonotoneMap& f) {
    const Poset& p = f.source();
    const Poset& q = f.target();
    Poset pq = product(p, q);
    Mask rmask = pq.empty_mask();
    for (auto [a, b] : graph_closure(f)) rmask.set(a * static_cast<Index>(q.size()) + b);
    std::vector<Index> ridx;
    Poset r = pq.induced(rmask, ridx);
    std::vector<Index> to_p(r.size()), to_q(r.size());
    for (Index i = 0; i < r.size(); ++i) {
        to_p[i] = ridx[i] / static_cast<Index>(q.size());
        to_q[i] = ridx[i] % static_cast<Index>(q.size());
    }
    Poset a = transitive_closure(mc(MonotoneMap(r, p, to_p)));
    Poset b = transitive_closure(mc(MonotoneMap(r, q, to_q)));
    Mask ma = a.empty_mask(), mb = b.empty_mask();
    std::vector<Index> h;
    for (Index i = 0; i < r.size(); ++i) {
        // The free copy R×{2} carries labels "(r,2)"; prefixes appear only on clashes.
        auto find_copy = [&](const Poset& x) {
            std::string l = pair_label(r.label(i), "2");
            if (auto k = x.find(l)) return *k;
            return x.at("1." + l);
        };
        ma.set(find_copy(a));
        Index kb = find_copy(b);
        mb.set(kb);
        h.push_back(kb);
    }
    return amalgam(a, b, ma, mb, h);
}

Mask lmc_in_tmc(const MonotoneMap& f) {
    const Poset& p = f.source();
    const Poset& q = f.target();
    Poset t = tmc(f);
    const std::string up = underscore_for(p), uq = underscore_for(q);
    Mask lm = t.empty_mask();
    for (Index a = 0; a < p.size(); ++a) {
        lm.set(idx(t, pair_label(p.label(a), uq)));
        lm.set(idx(t, pair_label(p.label(a), q.label(f(a)))));
    }
    for (Index b = 0; b < q.size(); ++b) lm.set(idx(t, pair_label(up, q.label(b))));
    return lm;
}

TmcRetraction tmc_retraction(const MonotoneMap& f) {
    const Poset& p = f.source();
    const Poset& q = f.target();
    if (!is_conditionally_complete(q)) throw MapError("tmc retraction requires a conditionally complete target");
    Poset t = tmc(f);
    const std::string up = underscore_for(p), uq = underscore_for(q);
    Mask lm = lmc_in_tmc(f);
    Poset l = t.induced(lm);

    // Decode tmc labels back to (kind, p, q).
    std::vector<Index> tp(t.size(), 0), tq(t.size(), 0);
    std::vector<int> kind(t.size(), 0);  // 0: P, 1: Q, 2: R
    for (Index a = 0; a < p.size(); ++a) {
        Index i = idx(t, pair_label(p.label(a), uq));
        kind[i] = 0;
        tp[i] = a;
    }
    for (Index b = 0; b < q.size(); ++b) {
        Index i = idx(t, pair_label(up, q.label(b)));
        kind[i] = 1;
        tq[i] = b;
    }
    for (auto [a, b] : graph_closure(f)) {
        Index i = idx(t, pair_label(p.label(a), q.label(b)));
        kind[i] = 2;
        tp[i] = a;
        tq[i] = b;
    }
    auto r_of = [&](Index i) -> Index {
        if (kind[i] != 2) return i;
        return idx(t, pair_label(p.label(tp[i]), q.label(f(tp[i]))));
    };
    auto g_of = [&](Index i) -> Index {
        if (kind[i] != 2) return i;
        Mask pair = q.empty_mask();
        pair.set(tq[i]);
        pair.set(f(tp[i]));
        auto y = least_upper_bound(q, pair);
        if (!y) throw MapError("missing least upper bound in the target");
        return idx(t, pair_label(p.label(tp[i]), q.label(*y)));
    };
    std::vector<Index> rt(t.size());
    for (Index i = 0; i < t.size(); ++i) rt[i] = l.at(t.label(r_of(i)));
    MonotoneMap retraction(t, l, rt);

    Poset interval = cube(1);  // "0" < "*" > "1"
    Poset ti = product(t, interval);
    std::vector<Index> ht(ti.size());
    const Index i0 = interval.at("0"), i1 = interval.at("1"), im = interval.at("*");
    for (Index i = 0; i < t.size(); ++i) {
        ht[i * 3 + i0] = i;
        ht[i * 3 + im] = g_of(i);
        ht[i * 3 + i1] = r_of(i);
    }
    MonotoneMap homotopy(ti, t, ht);
    return {t, lm, retraction, homotopy};
}

Pullback pullback(const MonotoneMap& f, const MonotoneMap& g) {
    if (!f.target().same_as(g.target())) throw MapError("pullback of maps with different targets");
    const Poset& p = f.source();
    const Poset& q = g.source();
    Poset pq = product(p, q);
    Mask m = pq.empty_mask();
    for (Index a = 0; a < p.size(); ++a)
        for (Index b = 0; b < q.size(); ++b)
            if (f(a) == g(b)) m.set(a * static_cast<Index>(q.size()) + b);
    std::vector<Index> pidx;
    Poset x = pq.induced(m, pidx);
    std::vector<Index> t1(x.size()), t2(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        t1[i] = pidx[i] / static_cast<Index>(q.size());
        t2[i] = pidx[i] % static_cast<Index>(q.size());
    }
    return {x, MonotoneMap(x, p, t1), MonotoneMap(x, q, t2)};
}

MonotoneMap hatcher_map(const MonotoneMap& f, Index r, Index q) {
    if (!f.target().less(q, r)) throw MapError("hatcher map needs r > q");
    const Poset& p = f.source();
    Mask fr = f.fiber(r), fq = f.fiber(q);
    if (!is_full_subposet(p, fq)) throw MapError("hatcher map needs full fibres");
    std::vector<Index> ridx, qidx;
    Poset sr = p.induced(fr, ridx);
    Poset sq = p.induced(fq, qidx);
    std::vector<Index> local(p.size(), 0);
    for (Index i = 0; i < qidx.size(); ++i) local[qidx[i]] = i;
    std::vector<Index> table(sr.size());
    for (Index i = 0; i < sr.size(); ++i) {
        auto top = p.greatest_in(p.down_set(ridx[i]) & fq);
        if (!top) throw MapError("element " + p.label(ridx[i]) + " has no greatest element below it in the fibre");
        table[i] = local[*top];
    }
    return MonotoneMap(sr, sq, table);
}

void validate_diagram(const Diagram& d) {
    const Poset& ix = d.index;
    if (d.nodes.size() != ix.size()) throw DiagramError("diagram node count differs from index size");
    auto related = [&](Index a, Index b) { return d.covariant ? ix.less(b, a) : ix.less(a, b); };
    for (Index a = 0; a < ix.size(); ++a)
        for (Index b = 0; b < ix.size(); ++b) {
            if (!related(a, b)) continue;
            auto it = d.edges.find({a, b});
            if (it == d.edges.end())
                throw DiagramError("missing edge " + ix.label(a) + " -> " + ix.label(b));
            if (!it->second.source().same_as(d.nodes[a]) || !it->second.target().same_as(d.nodes[b]))
                throw DiagramError("edge " + ix.label(a) + " -> " + ix.label(b) + " has the wrong endpoints");
        }
    for (Index a = 0; a < ix.size(); ++a)
        for (Index b = 0; b < ix.size(); ++b)
            for (Index c = 0; c < ix.size(); ++c) {
                if (!related(a, b) || !related(b, c)) continue;
                const auto& ab = d.edges.at({a, b});
                const auto& bc = d.edges.at({b, c});
                const auto& ac = d.edges.at({a, c});
                for (Index x = 0; x < d.nodes[a].size(); ++x)
                    if (bc(ab(x)) != ac(x))
                        throw DiagramError("diagram does not commute on " + ix.label(a) + " > " + ix.label(b) +
                                           " > " + ix.label(c));
            }
}

Preposet hocolim(const Diagram& d) {
    validate_diagram(d);
    const Poset& ix = d.index;
    std::vector<Index> offset(ix.size() + 1, 0);
    for (Index l = 0; l < ix.size(); ++l) offset[l + 1] = offset[l] + static_cast<Index>(d.nodes[l].size());
    std::vector<std::string> labels;
    std::unordered_set<std::string> seen;
    bool clash = false;
    for (auto& n : d.nodes)
        for (auto& l : n.labels())
            if (!seen.insert(l).second) clash = true;
    for (Index l = 0; l < ix.size(); ++l)
        for (auto& s : d.nodes[l].labels()) labels.push_back(clash ? ix.label(l) + ":" + s : s);
    std::vector<Arrow> arrows;
    for (Index l = 0; l < ix.size(); ++l) {
        const Poset& pl = d.nodes[l];
        for (Index b = 0; b < pl.size(); ++b)
            for_each_bit(pl.strictly_below(b), [&](Index a) { arrows.emplace_back(offset[l] + a, offset[l] + b); });
    }
    for (auto& [key, f] : d.edges) {
        auto [a, b] = key;
        if (d.covariant) {
            // p ∈ P_a lies above q ∈ P_b when some p' ≤ p maps to q.
            for (Index p = 0; p < d.nodes[a].size(); ++p) {
                Mask hit = d.nodes[b].empty_mask();
                for_each_bit(d.nodes[a].down_set(p), [&](Index pp) { hit.set(f(pp)); });
                for_each_bit(hit, [&](Index q) { arrows.emplace_back(offset[b] + q, offset[a] + p); });
            }
        } else {
            // q ∈ P_b lies above p ∈ P_a when some q' ≥ q maps to p; here a < b.
            for (Index q = 0; q < d.nodes[b].size(); ++q) {
                Mask hit = d.nodes[a].empty_mask();
                for_each_bit(d.nodes[b].up_set(q), [&](Index qq) { hit.set(f(qq)); });
                for_each_bit(hit, [&](Index p) { arrows.emplace_back(offset[a] + p, offset[b] + q); });
            }
        }
    }
    return Preposet(std::move(labels), arrows);
}

namespace {

Diagram fibre_diagram(const MonotoneMap& f) {
    Diagram d;
    d.index = f.target();
    for (Index q = 0; q < d.index.size(); ++q) d.nodes.push_back(f.source().induced(f.fiber(q)));
    for (Index r = 0; r < d.index.size(); ++r)
        for_each_bit(d.index.strictly_below(r), [&](Index q) { d.edges.emplace(Arrow{r, q}, hatcher_map(f, r, q)); });
    return d;
}

}  // namespace

Reconstruction hocolim_reconstruct(const MonotoneMap& f) {
    if (!is_full_map(f)) throw MapError("hocolim reconstruction requires a full map");
    Preposet h = hocolim(fibre_diagram(f));
    if (!h.is_poset()) throw MapError("homotopy colimit of the fibres is not a poset");
    Poset hp = transitive_closure(h);
    const Poset& src = f.source();
    std::vector<Index> table(hp.size());
    for (Index i = 0; i < hp.size(); ++i) table[i] = src.at(hp.label(i));
    return {hp, MonotoneMap(hp, src, table)};
}

std::vector<MonotoneMap> homma_factorization(const MonotoneMap& f) {
    if (!is_full_map(f)) throw MapError("Homma factorization requires a full map");
    if (!f.is_surjective()) throw MapError("Homma factorization requires a surjective map");
    const Poset& src = f.source();
    const Poset& tgt = f.target();
    Diagram base = fibre_diagram(f);
    std::vector<Index> order = linear_extension(tgt);
    std::vector<std::string> point_name(tgt.size());
    for (Index q = 0; q < tgt.size(); ++q) {
        std::string name = "@" + tgt.label(q);
        while (src.find(name)) name += '\'';
        point_name[q] = name;
    }

    // Stage i: the fibres over the first i elements of `order` are single points.
    auto stage = [&](std::size_t i) {
        std::vector<bool> collapsed(tgt.size(), false);
        for (std::size_t k = 0; k < i; ++k) collapsed[order[k]] = true;
        Diagram d;
        d.index = tgt;
        for (Index q = 0; q < tgt.size(); ++q) d.nodes.push_back(collapsed[q] ? point(point_name[q]) : base.nodes[q]);
        for (auto& [key, g] : base.edges) {
            auto [r, q] = key;
            std::vector<Index> table(d.nodes[r].size());
            if (collapsed[q]) {
                std::fill(table.begin(), table.end(), 0);
            } else if (collapsed[r]) {
                throw MapError("linear extension is not down-closed");
            } else {
                table = g.table();
            }
            d.edges.emplace(key, MonotoneMap(d.nodes[r], d.nodes[q], table));
        }
        return transitive_closure(hocolim(d));
    };

    std::vector<Poset> stages;
    for (std::size_t i = 0; i <= order.size(); ++i) stages.push_back(stage(i));
    std::vector<MonotoneMap> factors;
    for (std::size_t i = 1; i <= order.size(); ++i) {
        const Poset& from = i == 1 ? src : stages[i - 1];
        const Poset& to = stages[i];
        const bool last = i == order.size();
        std::vector<Index> table(from.size());
        for (Index x = 0; x < from.size(); ++x) {
            const std::string& l = from.label(x);
            std::string image;
            if (auto s = src.find(l)) {
                Index q = f(*s);
                image = (q == order[i - 1]) ? point_name[q] : l;
            } else {
                image = l;
            }
            if (last) {
                // The final stage is Q itself, with points named after its elements.
                Index q = 0;
                while (point_name[q] != image) ++q;
                table[x] = q;
            } else {
                table[x] = to.at(image);
            }
        }
        factors.emplace_back(from, last ? tgt : to, table);
    }
    return factors;
}

}  // namespace zipcert
