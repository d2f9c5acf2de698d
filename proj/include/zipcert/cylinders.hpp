#pragma once

#include "zipcert/map.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zipcert {

// Pushout of P ⊃ A --f--> Q with x ≤ y whenever some representative of x lies
// below some representative of y. `f` has the induced poset on `domain` as source.
Preposet adjunction(const Poset& p, const Mask& domain, const MonotoneMap& f);

// P with the subset `m` identified to one point (labelled `point_label`, or a fresh
// "*" label). The adjunction relation is transitively closed; a cycle raises CycleError.
Poset quotient(const Poset& p, const Mask& m, std::optional<std::string> point_label = std::nullopt);
Preposet quotient_preposet(const Poset& p, const Mask& m, std::optional<std::string> point_label = std::nullopt);

// Amalgam along an isomorphism h between induced subposets A ⊆ P and B ⊆ Q,
// given as a table from elements of A to elements of Q.
Preposet amalgam(const Poset& p, const Poset& q, const Mask& a, const Mask& b, const std::vector<Index>& h);

// Mapping cylinders. Carriers: Q plus the copy P×{2} (labels "(p,2)").
Preposet mc(const MonotoneMap& f);
Preposet mc_star(const MonotoneMap& f);
// Long mapping cylinder: MC(f) with a second collar on P. Labels "(p,_)", "(p,f(p))", "(_,q)".
Preposet lmc(const MonotoneMap& f);

// Thick mapping cylinder as a closed subposet of the join P*Q (join labels).
Poset tmc(const MonotoneMap& f);
Mask tmc_in_join(const MonotoneMap& f);
// The same object assembled as MC(π_P|R) ∪_R MC(π_Q|R).
Preposet tmc_by_amalgam(const MonotoneMap& f);

// P ∪ Γ(f) ∪ Q inside tmc(f); its induced order is the transitive closure of lmc(f).
Mask lmc_in_tmc(const MonotoneMap& f);

// Retraction and homotopy built from the formulas (p,q) ↦ (p,f(p)) and
// (p,q) ↦ (p, q ∨ f(p)). The MonotoneMap constructors reject the result with a
// witness pair whenever the formulas are not order-preserving.
struct TmcRetraction {
    Poset tmc;
    Mask lmc;                 // P ∪ Γ(f) ∪ Q inside tmc
    MonotoneMap retraction;   // tmc -> tmc restricted to lmc
    MonotoneMap homotopy;     // tmc × I -> tmc, I the three-element 1-simplex
};
TmcRetraction tmc_retraction(const MonotoneMap& f);

struct Pullback {
    Poset poset;
    MonotoneMap to_first;
    MonotoneMap to_second;
};
Pullback pullback(const MonotoneMap& f, const MonotoneMap& g);

// f_rq: F_r -> F_q, p ↦ greatest element of ⌊p⌋ ∩ F_q. Requires f full and r > q.
MonotoneMap hatcher_map(const MonotoneMap& f, Index r, Index q);

struct Diagram {
    Poset index;
    std::vector<Poset> nodes;
    // Keyed by (λ, μ) with λ > μ for covariant diagrams, λ < μ for contravariant ones.
    std::map<Arrow, MonotoneMap> edges;
    bool covariant = true;
};

class DiagramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void validate_diagram(const Diagram& d);
Preposet hocolim(const Diagram& d);

struct Reconstruction {
    Poset hocolim;
    MonotoneMap iso;  // hocolim -> source of f
};
Reconstruction hocolim_reconstruct(const MonotoneMap& f);

// Factors f through |Q| maps, each collapsing a single fibre; the composite equals f.
std::vector<MonotoneMap> homma_factorization(const MonotoneMap& f);

}  // namespace zipcert
