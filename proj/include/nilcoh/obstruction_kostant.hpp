#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilcoh/lie_algebra.hpp"

namespace nilcoh {

/* Weyl group element with its action on the root lattice written in
   simple-root coordinates: (w v)_i = sum_j action[i][j] v_j. */
struct WeylElement {
    std::vector<std::size_t> word;  // reduced word of simple reflection indices
    std::size_t length = 0;
    std::vector<std::vector<int>> action;
};

Weight weyl_apply(const WeylElement& w, const Weight& v);

/* Full Weyl group by breadth-first closure over the simple reflections,
   deduplicated on the action matrix, sorted by (length, word). */
std::vector<WeylElement> weyl_group(const RootSystem& r);

/* rows[n] = sorted multiset { rho - w(rho) : l(w) = n } in simple-root
   coordinates.  Row sizes follow the length generating function; the top
   row sits in degree #positive roots and holds the positive-root sum. */
struct KostantTable {
    std::string type;
    std::size_t rank = 0;
    std::vector<std::vector<Weight>> rows;
};

KostantTable kostant_table(const RootSystem& r);

/* One realization of the weight equation
     gamma1 + gamma2 = gamma3 + p * wt(sigma)
   between classes of a per-degree weight table and a nonempty monomial
   sigma in the dual basis weights.  condition1 records the equation
   (true for every emitted realization), condition2 the degree match
   a1 + a2 = a3 + 2 |sigma|. */
struct ObstructionSolution {
    Weight gamma1, gamma2, gamma3;
    std::size_t a1 = 0, a2 = 0, a3 = 0;
    std::vector<Weight> sigma;  // sorted multiset of basis weights
    bool condition1 = false;
    bool condition2 = false;
};

struct ObstructionReport {
    Fp p = 3;
    std::size_t degree_cap = 0;
    bool obstructed = false;  // some realization satisfies both conditions
    std::vector<ObstructionSolution> solutions;
    /* Degree bookkeeping used throughout: a table class of row n counts
       with cohomological degree n and sigma with degree 2 |sigma|. */
    std::string normalization;
};

/* Scans a per-degree weight table (Kostant rows or a computed ordinary
   cohomology table) for ring-splitting obstructions.  gamma1 and gamma2
   range over unordered pairs of positive-degree classes up to degree_cap,
   gamma3 over all classes including the degree-0 unit, and sigma over
   monomial realizations with 1 <= |sigma| <= (a1 + a2 - a3) / 2.
   basis_weights lists the dual basis weights in positive convention
   (componentwise nonnegative, nonzero).  Unobstructed means no emitted
   realization satisfies the weight and the degree condition at once. */
ObstructionReport splitting_obstructions(const std::vector<std::vector<Weight>>& table, Fp p,
                                         const std::vector<Weight>& basis_weights,
                                         std::size_t degree_cap);

}  // namespace nilcoh
