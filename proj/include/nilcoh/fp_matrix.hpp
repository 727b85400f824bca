#pragma once

#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

#include "nilcoh/fp.hpp"

namespace nilcoh {

/* Matrix over F_p with two interchangeable storage layouts.
   Matrices with both sides below kDenseLimit are held as a dense
   row-major array; anything larger is a sorted coordinate list of
   nonzero entries.  All public operations are representation-agnostic
   and the two paths are cross-checked in the test suite. */
class FpMatrix {
  public:
    static constexpr std::size_t kDenseLimit = 512;

    FpMatrix(std::size_t rows, std::size_t cols, PrimeField field);

    /* Force a specific representation (used by the equivalence oracle). */
    static FpMatrix make_dense(std::size_t rows, std::size_t cols, PrimeField field);
    static FpMatrix make_sparse(std::size_t rows, std::size_t cols, PrimeField field);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }
    bool is_dense() const { return dense_; }

    Fp at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Fp v);

    std::size_t nnz() const;

    /* Sorted (row, col, value) triples of the nonzero entries. */
    std::vector<std::tuple<std::size_t, std::size_t, Fp>> entries() const;

    bool operator==(const FpMatrix& o) const;

  private:
    std::size_t rows_, cols_;
    PrimeField field_;
    bool dense_;
    std::vector<Fp> d_;  // dense storage, row-major
    mutable std::vector<std::tuple<std::size_t, std::size_t, Fp>> coo_;  // sparse storage
    mutable bool coo_sorted_ = true;
    void sort_coo() const;

    friend struct RowWorkspace;
};

struct RrefResult {
    FpMatrix matrix;
    std::vector<std::size_t> pivots;  // pivot column per pivot row, ascending
};

/* Reduced row echelon form with deterministic first-nonzero pivoting.
   rref() dispatches to the OpenMP kernel when compiled in; rref_serial()
   is the plain reference implementation kept for testing and benchmarks. */
RrefResult rref(const FpMatrix& m);
RrefResult rref_serial(const FpMatrix& m);

std::size_t rank(const FpMatrix& m);

/* Basis of the right kernel {x : m x = 0}; one dense vector per basis
   element, ordered by ascending free column. */
std::vector<std::vector<Fp>> kernel_basis(const FpMatrix& m);

/* One exact solution of m x = b, or nullopt when inconsistent.
   Free variables are set to zero. */
std::optional<std::vector<Fp>> solve(const FpMatrix& m, const std::vector<Fp>& b);

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);

FpMatrix matmul(const FpMatrix& a, const FpMatrix& b);

FpMatrix fp_identity(std::size_t n, PrimeField field);

/* Internal row-list elimination engine shared by rref/kernel/solve and
   the resolution builder; exposed for the benchmark target. Rows are
   sorted (col, val) pairs. Returns pivot columns; `rows` becomes the
   reduced echelon form. */
std::vector<std::size_t> eliminate_rows(
    std::vector<std::vector<std::pair<std::uint32_t, Fp>>>& rows,
    std::size_t cols, const PrimeField& f, bool parallel);

}  // namespace nilcoh
