#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace zipcert {

using Index = std::uint32_t;
using Mask = boost::dynamic_bitset<std::uint64_t>;
using Arrow = std::pair<Index, Index>;

struct MaskHash {
    std::size_t operator()(const Mask& m) const;
};

// Iterate the set bits of a mask in increasing order.
template <class F>
void for_each_bit(const Mask& m, F&& f) {
    for (auto i = m.find_first(); i != Mask::npos; i = m.find_next(i)) f(static_cast<Index>(i));
}

std::vector<Index> bits_of(const Mask& m);

class PosetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a relation contains a directed cycle; carries the cycle as labels.
class CycleError : public PosetError {
public:
    explicit CycleError(std::vector<std::string> cycle);
    const std::vector<std::string>& cycle() const { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

void validate_label(const std::string& label);

// A set with a strictly acyclic relation. The relation is stored as given;
// it need not be transitive.
class Preposet {
public:
    Preposet() = default;
    Preposet(std::vector<std::string> labels, const std::vector<Arrow>& arrows);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(Index i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool has_arrow(Index i, Index j) const { return succ_[i].test(j); }
    const Mask& successors(Index i) const { return succ_[i]; }
    std::vector<Arrow> arrows() const;

    // True when the relation is already transitive, i.e. it is a strict partial order.
    bool is_poset() const;

private:
    std::vector<std::string> labels_;
    std::vector<Mask> succ_;
};

class Poset {
public:
    Poset();

    // Builds the poset generated by `relation` (any acyclic generating set).
    static Poset from_relation(std::vector<std::string> labels, const std::vector<Arrow>& relation);
    static Poset from_labeled_relation(std::vector<std::string> labels,
                                       const std::vector<std::pair<std::string, std::string>>& relation);

    std::size_t size() const { return d_->labels.size(); }
    bool empty() const { return size() == 0; }
    const std::string& label(Index i) const { return d_->labels[i]; }
    const std::vector<std::string>& labels() const { return d_->labels; }
    std::optional<Index> find(const std::string& label) const;
    Index at(const std::string& label) const;

    bool less(Index a, Index b) const { return d_->below[b].test(a); }
    bool leq(Index a, Index b) const { return a == b || less(a, b); }
    bool comparable(Index a, Index b) const { return leq(a, b) || leq(b, a); }
    const Mask& strictly_below(Index i) const { return d_->below[i]; }
    const Mask& strictly_above(Index i) const { return d_->above[i]; }
    const std::vector<Index>& lower_covers(Index i) const { return d_->lower[i]; }
    const std::vector<Index>& upper_covers(Index i) const { return d_->upper[i]; }
    std::vector<Arrow> covers() const;

    Mask empty_mask() const { return Mask(size()); }
    Mask full_mask() const;
    Mask down_set(Index i) const;
    Mask up_set(Index i) const;
    Mask closure(const Mask& m) const;
    Mask hull(const Mask& m) const;
    Mask mask_of(const std::vector<std::string>& labels) const;

    std::vector<Index> maximal_elements() const;
    std::vector<Index> minimal_elements() const;
    std::vector<Index> maximal_in(const Mask& m) const;
    std::vector<Index> minimal_in(const Mask& m) const;
    std::optional<Index> greatest() const;
    std::optional<Index> least() const;
    std::optional<Index> greatest_in(const Mask& m) const;

    // Length of the longest chain minus one; -1 for the empty poset.
    int dimension() const;
    int dimension_of(const Mask& m) const;

    // Order-preserving enumeration of the carrier (smaller down-sets first).
    const std::vector<Index>& topological_order() const { return d_->topo; }

    Poset induced(const Mask& m) const;
    // Induced poset together with the indices (in this poset) of its elements.
    Poset induced(const Mask& m, std::vector<Index>& parent_index) const;
    Poset dual() const;
    Poset relabeled(std::vector<std::string> labels) const;

    bool same_as(const Poset& other) const;

private:
    struct Data {
        std::vector<std::string> labels;
        std::unordered_map<std::string, Index> index;
        std::vector<Mask> below;
        std::vector<Mask> above;
        std::vector<std::vector<Index>> lower;
        std::vector<std::vector<Index>> upper;
        std::vector<Index> topo;
    };
    explicit Poset(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static std::shared_ptr<const Data> build(std::vector<std::string> labels, std::vector<Mask> below);

    std::shared_ptr<const Data> d_;
};

Poset transitive_closure(const Preposet& p);

// Predicates on subposets (masks over a parent poset).
bool is_closed_subposet(const Poset& p, const Mask& m);
bool is_open_subposet(const Poset& p, const Mask& m);
bool is_full_subposet(const Poset& p, const Mask& m);

Mask boundary(const Poset& p);
Mask coboundary(const Poset& p);

bool is_conditionally_complete(const Poset& p);
// Same property checked over every nonempty bounded subset; at most 20 elements.
bool is_conditionally_complete_exhaustive(const Poset& p);
std::optional<Index> least_upper_bound(const Poset& p, const Mask& m);
std::optional<Index> greatest_lower_bound(const Poset& p, const Mask& m);

Mask atoms(const Poset& p);
bool is_atomic(const Poset& p);

// Elements sorted by (|down-set|, label).
std::vector<Index> linear_extension(const Poset& p);

std::string mask_to_string(const Poset& p, const Mask& m);

// Label of the face spanned by `vertices`: sorted vertex labels, concatenated when
// all are single characters and comma-separated otherwise.
std::string face_label(std::vector<std::string> vertices);

// The simplex on the given vertex labels: all nonempty subsets ordered by inclusion.
Poset simplex_on(const std::vector<std::string>& vertices);

}  // namespace zipcert
