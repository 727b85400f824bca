#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilcoh/fp_matrix.hpp"
#include "nilcoh/lie_algebra.hpp"

namespace nilcoh {

/* Isomorphism class of a k[x]/(x^p)-module: weakly decreasing block
   sizes, each between 1 and p.  A block of size exactly p is free. */
struct JordanType {
    std::vector<std::size_t> blocks;
    std::uint32_t p = 3;

    std::size_t dimension() const;
    bool operator==(const JordanType&) const = default;
};

void validate_or_throw(const JordanType& t);

std::string jordan_to_string(const JordanType& t);  // e.g. "[5,1]"

/* Upper shift matrix realizing the type over F_p. */
FpMatrix jordan_matrix(const JordanType& t);

/* Type of a nilpotent matrix from the ranks of its powers: the number
   of blocks of size >= s is rank(m^{s-1}) - rank(m^s).  Requires m
   square with m^p = 0; no closed-form shortcuts anywhere downstream,
   every operation below reduces to this oracle. */
JordanType jordan_type(const FpMatrix& m);

/* Type of the tensor product module: x acts as x (x) 1 + 1 (x) x,
   materialized and measured. */
JordanType tensor_type(const JordanType& a, const JordanType& b);

/* Type of the exterior square: x acts as the derivation
   x.(v ^ w) = (x.v) ^ w + v ^ (x.w). */
JordanType exterior_square_type(const JordanType& a);

/* Number of free blocks (size exactly p). */
std::size_t free_multiplicity(const JordanType& t);

/* For an algebra with an abelian ideal v of codimension one spanned by
   the listed basis indices and the remaining generator: the Jordan type
   of the generator's action on the dual of v (equal to that on v, the
   partitions of a matrix and its transpose agree).  These first
   cohomology module types serve as supporting evidence for verdicts,
   never as standalone ones. */
JordanType h1_module(const LieAlgebra& a, const std::vector<std::size_t>& ideal,
                     std::size_t generator);

}  // namespace nilcoh
