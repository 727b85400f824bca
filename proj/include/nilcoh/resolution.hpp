#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilcoh/fp_matrix.hpp"
#include "nilcoh/restricted_env.hpp"

namespace nilcoh {

/* Element of a free module F = u(n)^b, stored as sorted (flat index, coeff)
   pairs with flat index = generator slot * dim u(n) + PBW monomial index. */
using FlatVec = std::vector<std::pair<std::uint64_t, Fp>>;

/* One generator of a free module in the resolution.  `image` is its
   boundary in the previous free module; empty in homological degree 0. */
struct FreeGenerator {
    Weight weight;  // positive cone, same convention as the cohomology tables
    FlatVec image;
};

struct ResolutionOptions {
    std::size_t max_degree = 6;
    /* Largest dim u(n) accepted without `force`. */
    std::uint64_t dimension_budget = 3125;
    bool force = false;
    /* Upper bound on block-elimination work (matrix cells touched); 0 means
       unlimited.  When exceeded the builder stops after the last completed
       homological degree and returns a partial resolution, never a wrong
       table. */
    std::uint64_t work_budget = 0;
    /* Force every elimination block onto the dense path; used as an
       independent oracle against the default size-based dispatch. */
    bool prefer_dense = false;
    /* Optional per-degree expected Betti numbers.  When degree m is covered
       and the computed value differs, the builder stops after degree m:
       callers hunting for the first deficit against spectral-page totals
       need nothing deeper.  The returned prefix is still exact. */
    std::vector<std::size_t> early_stop_betti;
    /* Directory for the resolution cache; empty disables caching. */
    std::string cache_dir;
};

/* Minimal free resolution  ... -> F_2 -> F_1 -> F_0 ->> k  over u(n).
   Minimality: every boundary lands in I*F (no unit coefficients), so
   b_m = dim F_m equals dim H^m(u(n),k) and Ext is the graded dual of the
   generator table. */
struct MinimalResolution {
    UAlgebra env;
    std::vector<std::vector<FreeGenerator>> gens;  // gens[m], m = 0..degree_reached
    std::size_t degree_reached = 0;
    bool complete = false;  // reached the requested max_degree

    std::vector<std::size_t> betti() const;
    /* Generator weights in homological degree m, in stored (ascending) order. */
    std::vector<Weight> generator_weights(std::size_t m) const;
};

/* Builds the minimal resolution degree by degree.  Each step computes the
   kernel of the previous boundary weight block by weight block, spans the
   non-minimal part I*K from already-known kernel elements at lower weights,
   and adjoins one new generator per kernel vector that survives echelon
   reduction against that span (first-nonzero pivot in PBW order, so the
   choice is deterministic).  Exactness and minimality are asserted, not
   assumed.  Throws budget_error when dim u(n) exceeds the dimension budget
   and force is not set. */
MinimalResolution minimal_resolution(const UAlgebra& u, const ResolutionOptions& opts = {});

/* Cohomology class: a linear functional on the degree-m generators.  The
   dual basis classes produced by ext_generators are weight-homogeneous;
   products keep a single weight because the boundary maps are weight
   graded. */
struct ExtClass {
    std::size_t degree = 0;
    Weight weight;
    std::vector<Fp> functional;  // one coordinate per generator of F_degree

    bool is_zero() const;
};

/* Dual basis of the degree-m Betti space, in generator order. */
std::vector<ExtClass> ext_generators(const MinimalResolution& r, std::size_t m);

/* The degree-2 classes dual to generators of weight p*gamma for a basis
   weight gamma are the symmetric (polynomial) generators X_gamma; this
   helper selects them.  `gamma` is in the positive cone. */
ExtClass symmetric_generator(const MinimalResolution& r, const Weight& gamma);

/* Yoneda product x*y: lifts y to a chain map phi_i : F_{y.degree+i} -> F_i
   (weight-block linear solves; any lift gives the same class) and evaluates
   x on phi_{x.degree}.  Requires x.degree + y.degree <= degree_reached. */
ExtClass yoneda_product(const MinimalResolution& r, const ExtClass& x, const ExtClass& y);

/* True iff s*x = 0 in Ext. */
bool annihilator_probe(const MinimalResolution& r, const ExtClass& x, const ExtClass& s);

}  // namespace nilcoh
