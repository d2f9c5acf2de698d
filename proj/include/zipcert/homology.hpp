#pragma once

#include "zipcert/poset.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace zipcert {

// Sparse integer column: (row, coefficient) pairs sorted by row.
using SparseColumn = std::vector<std::pair<Index, long>>;

struct ChainComplex {
    // chains[k] lists the k-simplices of the order complex, each a chain p0 < ... < pk.
    std::vector<std::vector<std::vector<Index>>> chains;
    // boundary[k] maps degree k to degree k-1 (boundary[0] is empty), one column per k-chain.
    std::vector<std::vector<SparseColumn>> boundary;

    std::size_t rank(std::size_t k) const { return k < chains.size() ? chains[k].size() : 0; }
    std::size_t top_degree() const { return chains.empty() ? 0 : chains.size() - 1; }
};

ChainComplex order_complex_chain(const Poset& p, std::size_t max_chains = 2'000'000);
bool boundary_squares_to_zero(const ChainComplex& c);

struct HomologyProfile {
    bool reduced = false;
    // Index i holds degree i + first_degree; reduced profiles start at degree -1.
    int first_degree = 0;
    std::vector<std::size_t> betti;
    std::vector<std::vector<mpz_class>> torsion;
    long long euler = 0;

    std::size_t betti_at(int degree) const;
    bool has_torsion() const;
    bool is_trivial() const;  // all groups zero
};

HomologyProfile homology(const ChainComplex& c, bool reduced = false);
HomologyProfile homology(const Poset& p, bool reduced = false);
std::vector<std::size_t> mod2_betti(const ChainComplex& c, bool reduced = false);

// Invariant factors (nonzero diagonal of the Smith form, ascending divisibility) of a
// column-sparse integer matrix with `rows` rows.
std::vector<mpz_class> invariant_factors(const std::vector<SparseColumn>& columns, std::size_t rows);

bool is_z_acyclic(const Poset& p);
long long euler_characteristic(const Poset& p);
bool is_connected(const Poset& p);

}  // namespace zipcert
