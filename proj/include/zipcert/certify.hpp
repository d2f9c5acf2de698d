#pragma once

#include "zipcert/complex.hpp"
#include "zipcert/recognize.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zipcert {

enum class SearchStatus { found, refuted, exhausted };
std::string to_string(SearchStatus s);

struct SearchOptions {
    std::size_t node_budget = 5'000'000;
    unsigned jobs = 1;
    // Prune with necessary topological conditions (Euler characteristic, acyclicity,
    // Cohen-Macaulay homology). Turning this off leaves the plain combinatorial search.
    bool invariant_pruning = true;
};

struct SearchStats {
    std::size_t nodes = 0;
    std::size_t memo_hits = 0;
};

// Result of a verifier: ok, or the first violated condition.
struct CheckResult {
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

// ---- Constructibility -------------------------------------------------------

struct ConstructionNode {
    enum class Kind { cone, split };
    Kind kind = Kind::cone;
    Mask mask;        // over the tree's poset
    Index apex = 0;   // cone nodes: the greatest element of mask
    int q = -1, r = -1, meet = -1;  // split nodes: child node indices
};

struct ConstructionTree {
    Poset poset;
    std::vector<ConstructionNode> nodes;  // nodes[0] is the root; children have larger indices
};

struct ConstructionResult {
    SearchStatus status = SearchStatus::refuted;
    std::optional<ConstructionTree> tree;
    SearchStats stats;
};

ConstructionResult find_construction(const Poset& p, const SearchOptions& opt = {});
CheckResult verify_construction(const ConstructionTree& t);

// Search on the face poset K using the dimension form of the split conditions; the
// returned tree lives on C*K (the face poset with the empty face at the bottom).
ConstructionResult hochster_construction(const FacetComplex& k, const SearchOptions& opt = {});

// ---- Zipping ----------------------------------------------------------------

struct ZipStep {
    std::string p, q, r;  // labels in the poset before the step; q < r as strings
    bool operator==(const ZipStep& o) const { return p == o.p && q == o.q && r == o.r; }
};

enum class ZipGoal { singleton, dual_cone };
std::string to_string(ZipGoal g);

CheckResult check_zip_site(const Poset& p, Index top, Index q, Index r);
// The identified triple is labelled with q's label.
Poset elementary_zip(const Poset& p, const ZipStep& step);
bool zip_goal_reached(const Poset& p, ZipGoal goal);

struct ZipResult {
    SearchStatus status = SearchStatus::refuted;
    std::vector<ZipStep> steps;
    SearchStats stats;
};

ZipResult find_zipping(const Poset& p, ZipGoal goal, const SearchOptions& opt = {});
CheckResult verify_zipping(const Poset& p, const std::vector<ZipStep>& steps, ZipGoal goal);
// Replays steps and returns the final poset; throws on an invalid step.
Poset replay_zipping(const Poset& p, const std::vector<ZipStep>& steps);

class SchemeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ZipBridgeStats {
    std::size_t steps = 0;
    // Scheme updates whose pushed-forward tree failed verification and was replaced by search.
    std::size_t fallbacks = 0;
};

// Zips the cell complex K onto a singleton following a construction tree of K*.
std::vector<ZipStep> zipping_from_construction(const Poset& k, const ConstructionTree& dual_tree,
                                               const SearchOptions& fallback = {}, ZipBridgeStats* stats = nullptr);

// ---- Edge zipping -------------------------------------------------------------

struct EdgeZipStep {
    std::string v, w;  // w is merged into v
};

FacetComplex edge_contract(const FacetComplex& k, const std::string& v, const std::string& w);
bool is_elementary_edge_zip(const FacetComplex& k, const std::string& v, const std::string& w);

struct EdgeZipResult {
    SearchStatus status = SearchStatus::refuted;
    std::vector<EdgeZipStep> steps;
    SearchStats stats;
};

EdgeZipResult find_edge_zipping(const FacetComplex& k, const FacetComplex& target, const SearchOptions& opt = {});
CheckResult verify_edge_zipping(const FacetComplex& k, const std::vector<EdgeZipStep>& steps,
                                const FacetComplex& target);
// Zip sequence on the face poset of K realising the edge contractions.
std::vector<ZipStep> zipping_from_edge_zipping(const FacetComplex& k, const std::vector<EdgeZipStep>& steps);

// ---- Collapsing ---------------------------------------------------------------

// P = Q ∪ ⌊sigma⌋ with Q = P minus `removed`; `sub` collapses ⌊sigma⌋ ∩ Q to a point.
struct CollapseStep {
    std::string sigma;
    std::vector<std::string> removed;  // sorted; contains sigma
    std::vector<CollapseStep> sub;
};
using CollapseSequence = std::vector<CollapseStep>;

struct CollapseResult {
    SearchStatus status = SearchStatus::refuted;
    CollapseSequence steps;
    SearchStats stats;
};

// Collapse onto the closed subposet `target`; an empty optional means "onto some singleton".
CollapseResult find_collapse(const Poset& p, const std::optional<Mask>& target, const SearchOptions& opt = {});
Verdict is_collapsible_poset(const Poset& p, const SearchOptions& opt = {});
CheckResult verify_collapse(const Poset& p, const std::optional<Mask>& target, const CollapseSequence& seq);

// Elementary simplicial collapses on P♭: (free face, coface) pairs of chain labels.
using SimplicialCollapse = std::vector<std::pair<std::string, std::string>>;
SimplicialCollapse barycentric_collapse_lift(const Poset& p, const CollapseSequence& seq);
// `complex` is a simplicial face poset; checks every pair is a free face removal.
CheckResult verify_simplicial_collapse(const Poset& complex, const SimplicialCollapse& pairs,
                                       std::size_t expected_remaining);

// ---- Shelling -------------------------------------------------------------------

enum class ShellGoal { cone, empty };
std::string to_string(ShellGoal g);

// P = Q ∪ ⌊apex⌋ with Q = P minus `removed`; `sub` shells R = Q ∩ ⌊apex⌋ (same goal).
struct ShellStep {
    std::string apex;
    std::vector<std::string> removed;  // sorted; contains apex
    std::vector<ShellStep> sub;
};
using ShellSequence = std::vector<ShellStep>;

struct ShellResult {
    SearchStatus status = SearchStatus::refuted;
    ShellSequence steps;
    SearchStats stats;
};

ShellResult find_shelling(const Poset& p, ShellGoal goal = ShellGoal::cone, const SearchOptions& opt = {});
CheckResult verify_shelling(const Poset& p, const ShellSequence& seq, ShellGoal goal = ShellGoal::cone);

// ---- Maps ---------------------------------------------------------------------------

struct PointInverseReport {
    Verdict verdict;
    Verdict constructible_map;   // f* is a filtration map with constructible preimages of cones
    Verdict fibres_constructible;  // every f^{-1}(σ)* is constructible
};
PointInverseReport point_inverse_dual_constructibility(const MonotoneMap& f, const SearchOptions& opt = {});

// Every maximal element of `inner` is covered by a maximal element of `outer`; shared by searchers and verifiers.
bool codim_one_in(const Poset& p, const Mask& inner, const Mask& outer);

}  // namespace zipcert
