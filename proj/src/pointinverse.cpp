#include "zipcert/certify.hpp"

namespace zipcert {

namespace {

Verdict constructible(const Poset& p, const SearchOptions& opt, const std::string& what) {
    if (p.empty()) return Verdict::no(what + " is empty");
    auto res = find_construction(p, opt);
    if (res.status == SearchStatus::found) return Verdict::yes();
    if (res.status == SearchStatus::refuted) return Verdict::no(what + " is not constructible");
    return Verdict::unknown(what + ": search budget exhausted");
}

}  // namespace

PointInverseReport point_inverse_dual_constructibility(const MonotoneMap& f, const SearchOptions& opt) {
    PointInverseReport rep;
    const Poset& src = f.source();
    const Poset& tgt = f.target();

    // Route A: f* is a filtration map whose preimages of cones (dual cones of the target)
    // have constructible duals.
    Verdict a = is_filtration_map(f.dual());
    if (a.is_no()) a = Verdict::no("dual map is not a filtration map: " + a.witness);
    for (Index s = 0; s < tgt.size() && !a.is_no(); ++s)
        a = a && constructible(src.induced(f.preimage(tgt.up_set(s))).dual(), opt,
                               "preimage of the dual cone of " + tgt.label(s));
    rep.constructible_map = a;

    // Route B: each point-inverse has a constructible dual.
    Verdict b = Verdict::yes();
    for (Index s = 0; s < tgt.size() && !b.is_no(); ++s)
        b = b && constructible(src.induced(f.fiber(s)).dual(), opt, "fibre over " + tgt.label(s));
    rep.fibres_constructible = b;

    if (a.value == b.value) rep.verdict = b;
    else if (a.is_unknown() || b.is_unknown()) rep.verdict = Verdict::unknown("one route is undecided");
    else rep.verdict = Verdict::unknown("routes disagree: map route " + to_string(a.value) + ", fibre route " + to_string(b.value));
    if (!is_full_map(f) && !rep.verdict.is_no()) rep.verdict.witness += " (map is not full)";
    return rep;
}

}  // namespace zipcert
