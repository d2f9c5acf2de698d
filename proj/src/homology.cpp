#include "zipcert/homology.hpp"

#include <boost/functional/hash.hpp>
#include <boost/pending/disjoint_sets.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace zipcert {

namespace {

using ChainIndex = std::unordered_map<std::vector<Index>, Index, boost::hash<std::vector<Index>>>;

void extend_chains(const Poset& p, std::vector<Index>& chain, ChainComplex& c, std::size_t& total,
                   std::size_t limit) {
    const std::size_t k = chain.size() - 1;
    if (c.chains.size() <= k) c.chains.resize(k + 1);
    c.chains[k].push_back(chain);
    if (++total > limit) throw std::length_error("order complex exceeds the chain limit");
    for_each_bit(p.strictly_above(chain.back()), [&](Index y) {
        chain.push_back(y);
        extend_chains(p, chain, c, total, limit);
        chain.pop_back();
    });
}

using Line = std::map<Index, mpz_class>;

std::vector<mpz_class> dense_smith(std::vector<std::vector<mpz_class>> a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        auto place_min = [&](bool whole_block) {
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (!whole_block && i != t && j != t) continue;
                    if (sgn(a[i][j]) == 0) continue;
                    if (bi == m || abs(a[i][j]) < abs(a[bi][bj])) bi = i, bj = j;
                }
            if (bi == m) return false;
            std::swap(a[t], a[bi]);
            for (auto& row : a) std::swap(row[t], row[bj]);
            return true;
        };
        if (!place_min(true)) break;
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(a[i][t]) == 0) continue;
                mpz_class q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                if (sgn(a[i][t]) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(a[t][j]) == 0) continue;
                mpz_class q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                if (sgn(a[t][j]) != 0) clean = false;
            }
            if (!clean) {
                place_min(false);
                continue;
            }
            // Divisibility: fold a row with an indivisible entry into the pivot row.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t jj = t; jj < n; ++jj) a[t][jj] += a[i][jj];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

std::vector<std::size_t> ranks_from(const ChainComplex& c, std::vector<std::vector<mpz_class>>* factors) {
    std::vector<std::size_t> r(c.chains.size() + 1, 0);
    if (factors) factors->assign(c.chains.size() + 1, {});
    for (std::size_t k = 1; k < c.chains.size(); ++k) {
        auto f = invariant_factors(c.boundary[k], c.chains[k - 1].size());
        r[k] = f.size();
        if (factors) (*factors)[k] = std::move(f);
    }
    return r;
}

std::size_t gf2_rank(const std::vector<SparseColumn>& cols, std::size_t rows) {
    std::unordered_map<std::size_t, Mask> pivots;
    std::size_t rank = 0;
    for (const auto& col : cols) {
        Mask v(rows);
        for (auto [r, x] : col)
            if (x % 2 != 0) v.flip(r);
        while (v.any()) {
            std::size_t low = v.find_first();
            auto it = pivots.find(low);
            if (it == pivots.end()) {
                pivots.emplace(low, v);
                ++rank;
                break;
            }
            v ^= it->second;
        }
    }
    return rank;
}

}  // namespace

ChainComplex order_complex_chain(const Poset& p, std::size_t max_chains) {
    ChainComplex c;
    std::size_t total = 0;
    std::vector<Index> chain;
    for (Index x = 0; x < p.size(); ++x) {
        chain.assign(1, x);
        extend_chains(p, chain, c, total, max_chains);
    }
    for (auto& deg : c.chains) std::sort(deg.begin(), deg.end());
    c.boundary.resize(c.chains.size());
    ChainIndex prev;
    for (std::size_t k = 0; k < c.chains.size(); ++k) {
        ChainIndex cur;
        for (Index i = 0; i < c.chains[k].size(); ++i) cur.emplace(c.chains[k][i], i);
        if (k > 0) {
            auto& cols = c.boundary[k];
            cols.reserve(c.chains[k].size());
            for (const auto& ch : c.chains[k]) {
                SparseColumn col;
                for (std::size_t i = 0; i < ch.size(); ++i) {
                    std::vector<Index> face(ch);
                    face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                    col.emplace_back(prev.at(face), i % 2 == 0 ? 1 : -1);
                }
                std::sort(col.begin(), col.end());
                cols.push_back(std::move(col));
            }
        }
        prev = std::move(cur);
    }
    return c;
}

bool boundary_squares_to_zero(const ChainComplex& c) {
    for (std::size_t k = 2; k < c.chains.size(); ++k) {
        for (const auto& col : c.boundary[k]) {
            std::map<Index, long> acc;
            for (auto [mid, a] : col)
                for (auto [low, b] : c.boundary[k - 1][mid]) acc[low] += a * b;
            for (auto& [row, v] : acc)
                if (v != 0) return false;
        }
    }
    return true;
}

std::vector<mpz_class> invariant_factors(const std::vector<SparseColumn>& columns, std::size_t rows) {
    // Work on lines (the columns) with a row-occupancy index; unit pivots are eliminated
    // sparsely, the remainder goes to a dense Smith form.
    std::vector<Line> lines(columns.size());
    std::vector<std::set<Index>> occ(rows);
    for (Index l = 0; l < columns.size(); ++l)
        for (auto [r, x] : columns[l])
            if (x != 0) {
                lines[l][r] = x;
                occ[r].insert(l);
            }
    std::vector<bool> alive(lines.size(), true);
    std::vector<mpz_class> out;
    for (;;) {
        std::size_t best_cost = SIZE_MAX;
        Index bl = 0, br = 0;
        for (Index l = 0; l < lines.size() && best_cost > 0; ++l) {
            if (!alive[l]) continue;
            for (auto& [r, x] : lines[l]) {
                if (abs(x) != 1) continue;
                std::size_t cost = (lines[l].size() - 1) * (occ[r].size() - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    bl = l;
                    br = r;
                    if (cost == 0) break;
                }
            }
        }
        if (best_cost == SIZE_MAX) break;
        const Line pivot = lines[bl];
        const mpz_class v = pivot.at(br);
        std::vector<Index> others(occ[br].begin(), occ[br].end());
        for (Index m : others) {
            if (m == bl) continue;
            mpz_class factor = lines[m][br] * v;
            for (auto& [r, a] : pivot) {
                mpz_class& e = lines[m][r];
                bool was_zero = sgn(e) == 0;
                e -= factor * a;
                if (sgn(e) == 0) {
                    lines[m].erase(r);
                    occ[r].erase(m);
                } else if (was_zero) {
                    occ[r].insert(m);
                }
            }
        }
        for (auto& [r, a] : pivot) occ[r].erase(bl);
        lines[bl].clear();
        alive[bl] = false;
        out.emplace_back(1);
    }
    std::vector<Index> rest_lines;
    std::set<Index> rest_rows;
    for (Index l = 0; l < lines.size(); ++l)
        if (alive[l] && !lines[l].empty()) {
            rest_lines.push_back(l);
            for (auto& [r, x] : lines[l]) rest_rows.insert(r);
        }
    if (!rest_lines.empty()) {
        std::vector<Index> row_pos(rows, 0);
        Index k = 0;
        for (Index r : rest_rows) row_pos[r] = k++;
        std::vector<std::vector<mpz_class>> dense(rest_lines.size(), std::vector<mpz_class>(rest_rows.size(), 0));
        for (std::size_t i = 0; i < rest_lines.size(); ++i)
            for (auto& [r, x] : lines[rest_lines[i]]) dense[i][row_pos[r]] = x;
        for (auto& d : dense_smith(std::move(dense))) out.push_back(d);
    }
    return out;
}

std::size_t HomologyProfile::betti_at(int degree) const {
    int i = degree - first_degree;
    if (i < 0 || i >= static_cast<int>(betti.size())) return 0;
    return betti[static_cast<std::size_t>(i)];
}

bool HomologyProfile::has_torsion() const {
    return std::any_of(torsion.begin(), torsion.end(), [](const auto& t) { return !t.empty(); });
}

bool HomologyProfile::is_trivial() const {
    return !has_torsion() && std::all_of(betti.begin(), betti.end(), [](std::size_t b) { return b == 0; });
}

HomologyProfile homology(const ChainComplex& c, bool reduced) {
    std::vector<std::vector<mpz_class>> factors;
    std::vector<std::size_t> r = ranks_from(c, &factors);
    const std::size_t top = c.chains.size();
    HomologyProfile h;
    h.reduced = reduced;
    for (std::size_t k = 0; k < top; ++k) h.euler += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(c.rank(k));
    // The augmentation has rank one exactly when there are vertices.
    const std::size_t aug = (reduced && c.rank(0) > 0) ? 1 : 0;
    if (reduced) {
        h.first_degree = -1;
        h.euler -= 1;
        h.betti.push_back(1 - aug);
        h.torsion.emplace_back();
    }
    for (std::size_t k = 0; k < top; ++k) {
        std::size_t out_rank = (k == 0) ? aug : r[k];
        h.betti.push_back(c.rank(k) - out_rank - r[k + 1]);
        std::vector<mpz_class> tors;
        for (auto& f : factors[k + 1])
            if (f > 1) tors.push_back(f);
        h.torsion.push_back(std::move(tors));
    }
    return h;
}

HomologyProfile homology(const Poset& p, bool reduced) { return homology(order_complex_chain(p), reduced); }

std::vector<std::size_t> mod2_betti(const ChainComplex& c, bool reduced) {
    const std::size_t top = c.chains.size();
    std::vector<std::size_t> r(top + 1, 0);
    for (std::size_t k = 1; k < top; ++k) r[k] = gf2_rank(c.boundary[k], c.chains[k - 1].size());
    const std::size_t aug = (reduced && c.rank(0) > 0) ? 1 : 0;
    std::vector<std::size_t> out;
    if (reduced) out.push_back(1 - aug);
    for (std::size_t k = 0; k < top; ++k) out.push_back(c.rank(k) - (k == 0 ? aug : r[k]) - r[k + 1]);
    return out;
}

bool is_z_acyclic(const Poset& p) { return homology(p, true).is_trivial(); }

long long euler_characteristic(const Poset& p) {
    ChainComplex c = order_complex_chain(p);
    long long chi = 0;
    for (std::size_t k = 0; k < c.chains.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(c.rank(k));
    return chi;
}

bool is_connected(const Poset& p) {
    if (p.size() == 0) return false;
    std::vector<std::size_t> rank(p.size()), parent(p.size());
    boost::disjoint_sets<std::size_t*, std::size_t*> ds(rank.data(), parent.data());
    for (Index i = 0; i < p.size(); ++i) ds.make_set(i);
    for (auto [a, b] : p.covers()) ds.union_set(a, b);
    const std::size_t root = ds.find_set(0);
    for (Index i = 1; i < p.size(); ++i)
        if (ds.find_set(i) != root) return false;
    return true;
}

}  // namespace zipcert
