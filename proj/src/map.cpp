#include "zipcert/map.hpp"

#include <unordered_map>

namespace zipcert {

MonotoneMap::MonotoneMap(Poset source, Poset target, std::vector<Index> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
    if (table_.size() != source_.size()) throw MapError("map table size differs from source size");
    for (Index t : table_)
        if (t >= target_.size()) throw MapError("map value out of range");
    for (Index b = 0; b < source_.size(); ++b) {
        for (Index a : source_.lower_covers(b)) {
            if (!target_.leq(table_[a], table_[b]))
                throw MapError("map is not monotone at " + source_.label(a) + " < " + source_.label(b));
        }
    }
}

MonotoneMap MonotoneMap::identity(const Poset& p) {
    std::vector<Index> t(p.size());
    for (Index i = 0; i < p.size(); ++i) t[i] = i;
    return MonotoneMap(p, p, std::move(t));
}

MonotoneMap MonotoneMap::from_labels(Poset source, Poset target,
                                     const std::vector<std::pair<std::string, std::string>>& assignment) {
    std::vector<Index> t(source.size(), 0);
    std::vector<bool> seen(source.size(), false);
    for (auto& [a, b] : assignment) {
        Index i = source.at(a);
        t[i] = target.at(b);
        seen[i] = true;
    }
    for (Index i = 0; i < source.size(); ++i)
        if (!seen[i]) throw MapError("map undefined at " + source.label(i));
    return MonotoneMap(std::move(source), std::move(target), std::move(t));
}

Mask MonotoneMap::fiber(Index q) const {
    Mask m = source_.empty_mask();
    for (Index i = 0; i < table_.size(); ++i)
        if (table_[i] == q) m.set(i);
    return m;
}

Mask MonotoneMap::preimage(const Mask& m) const {
    Mask out = source_.empty_mask();
    for (Index i = 0; i < table_.size(); ++i)
        if (m.test(table_[i])) out.set(i);
    return out;
}

Mask MonotoneMap::image(const Mask& m) const {
    Mask out = target_.empty_mask();
    for_each_bit(m, [&](Index i) { out.set(table_[i]); });
    return out;
}

bool MonotoneMap::is_injective() const { return image(source_.full_mask()).count() == source_.size(); }
bool MonotoneMap::is_surjective() const { return image(source_.full_mask()).count() == target_.size(); }

MonotoneMap MonotoneMap::then(const MonotoneMap& other) const {
    if (!target_.same_as(other.source_)) throw MapError("composition of incompatible maps");
    std::vector<Index> t(table_.size());
    for (Index i = 0; i < t.size(); ++i) t[i] = other.table_[table_[i]];
    return MonotoneMap(source_, other.target_, std::move(t));
}

MonotoneMap MonotoneMap::dual() const { return MonotoneMap(source_.dual(), target_.dual(), table_); }

bool is_closed_map(const MonotoneMap& f) {
    const Poset& s = f.source();
    for (Index p = 0; p < s.size(); ++p)
        if (f.image(s.down_set(p)) != f.target().down_set(f(p))) return false;
    return true;
}

bool is_open_map(const MonotoneMap& f) {
    const Poset& s = f.source();
    for (Index p = 0; p < s.size(); ++p)
        if (f.image(s.up_set(p)) != f.target().up_set(f(p))) return false;
    return true;
}

bool is_embedding(const MonotoneMap& f) {
    const Poset& s = f.source();
    for (Index x = 0; x < s.size(); ++x)
        for (Index y = 0; y < s.size(); ++y)
            if (f.target().leq(f(x), f(y)) && !s.leq(x, y)) return false;
    return true;
}

bool is_full_map(const MonotoneMap& f) {
    for (Index q = 0; q < f.target().size(); ++q)
        if (!is_full_subposet(f.source(), f.fiber(q))) return false;
    return true;
}

bool is_isomorphism(const MonotoneMap& f) {
    return f.source().size() == f.target().size() && f.is_injective() && is_embedding(f);
}

MonotoneMap atom_embedding(const Poset& p) {
    if (!is_atomic(p)) throw PosetError("atom_embedding requires an atomic poset");
    std::vector<Index> atom_list = bits_of(atoms(p));
    std::vector<std::string> names;
    for (Index a : atom_list) names.push_back(p.label(a));
    Poset simplex = simplex_on(names);
    std::vector<Index> table(p.size());
    for (Index x = 0; x < p.size(); ++x) {
        std::vector<std::string> face;
        for (Index a : atom_list)
            if (p.leq(a, x)) face.push_back(p.label(a));
        table[x] = simplex.at(face_label(face));
    }
    return MonotoneMap(p, std::move(simplex), std::move(table));
}

}  // namespace zipcert
