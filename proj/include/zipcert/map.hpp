#pragma once

#include "zipcert/poset.hpp"

namespace zipcert {

class MapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Order-preserving map between two posets. Monotonicity is checked on construction.
class MonotoneMap {
public:
    MonotoneMap(Poset source, Poset target, std::vector<Index> table);

    static MonotoneMap identity(const Poset& p);
    static MonotoneMap from_labels(Poset source, Poset target,
                                   const std::vector<std::pair<std::string, std::string>>& assignment);

    const Poset& source() const { return source_; }
    const Poset& target() const { return target_; }
    const std::vector<Index>& table() const { return table_; }
    Index operator()(Index i) const { return table_[i]; }

    Mask fiber(Index q) const;
    Mask preimage(const Mask& m) const;
    Mask image(const Mask& m) const;
    bool is_injective() const;
    bool is_surjective() const;

    // Composite "other after this".
    MonotoneMap then(const MonotoneMap& other) const;
    MonotoneMap dual() const;

private:
    Poset source_;
    Poset target_;
    std::vector<Index> table_;
};

bool is_closed_map(const MonotoneMap& f);
bool is_open_map(const MonotoneMap& f);
bool is_embedding(const MonotoneMap& f);
bool is_full_map(const MonotoneMap& f);
bool is_isomorphism(const MonotoneMap& f);

// sigma -> atoms below sigma, landing in the simplex on the atoms. Requires an atomic poset.
MonotoneMap atom_embedding(const Poset& p);

}  // namespace zipcert
