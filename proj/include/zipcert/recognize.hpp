#pragma once

#include "zipcert/complex.hpp"
#include "zipcert/map.hpp"

#include <cstddef>
#include <string>

namespace zipcert {

// Ordered so that the weakest value wins under conjunction.
enum class Truth { no = 0, unknown = 1, yes = 2 };

std::string to_string(Truth t);

struct Verdict {
    Truth value = Truth::unknown;
    std::string witness;

    static Verdict yes(std::string w = {}) { return {Truth::yes, std::move(w)}; }
    static Verdict no(std::string w) { return {Truth::no, std::move(w)}; }
    static Verdict unknown(std::string w) { return {Truth::unknown, std::move(w)}; }
    static Verdict from_bool(bool b, std::string witness_if_no) {
        return b ? yes() : no(std::move(witness_if_no));
    }

    bool is_yes() const { return value == Truth::yes; }
    bool is_no() const { return value == Truth::no; }
    bool is_unknown() const { return value == Truth::unknown; }
};

// Conjunction: keeps the first "no", otherwise the first "unknown".
Verdict operator&&(const Verdict& a, const Verdict& b);

struct RecognizeOptions {
    // Node budget for the construction searches backing high-dimensional sphere and ball verdicts.
    std::size_t search_budget = 200'000;
    bool use_certificates = true;
};

Verdict is_simplicial(const Poset& p);
Verdict is_cubical(const Poset& p);
Verdict is_cubosimplicial(const Poset& p);
Verdict is_simple(const Poset& p);
Verdict is_flag(const Poset& p);
Verdict is_nonsingular(const Poset& p);

Verdict is_pure(const Poset& p);
// Q must be a closed subposet; the empty Q passes vacuously.
Verdict is_codim_one(const Poset& p, const Mask& q);
Verdict is_pure_codim_one(const Poset& p, const Mask& q);

Verdict is_filtration_map(const MonotoneMap& f);
Verdict is_pure_filtration_map(const MonotoneMap& f);

// Exact when the order complex has dimension at most 2. Above that a "yes" needs a
// construction certificate (see README); otherwise the verdict is unknown.
Verdict is_sphere(const Poset& p, const RecognizeOptions& opt = {});
// Ball with boundary ∂P (the poset boundary).
Verdict is_ball(const Poset& p, const RecognizeOptions& opt = {});
Verdict is_ball_with_boundary(const Poset& p, const Mask& boundary_mask, const RecognizeOptions& opt = {});

Verdict is_cell_complex(const Poset& p, const RecognizeOptions& opt = {});
// Coboundary Q must be open; checked through the sphere/ball criterion on the cones.
Verdict is_cell_complex_with_coboundary(const Poset& p, const Mask& q, const RecognizeOptions& opt = {});
Verdict is_manifold(const Poset& p, const Mask& boundary_mask, const RecognizeOptions& opt = {});
Verdict is_pseudo_manifold(const Poset& p, const Mask& coboundary_mask, const RecognizeOptions& opt = {});
Verdict is_pseudo_manifold(const Poset& p, const RecognizeOptions& opt = {});

// Poset of elements comparable with but distinct from x; its order complex is the link of x in P♭.
Poset comparability_link(const Poset& p, Index x);

}  // namespace zipcert
