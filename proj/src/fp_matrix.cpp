#include "nilcoh/fp_matrix.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilcoh {

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field),
      dense_(rows < kDenseLimit && cols < kDenseLimit) {
    if (dense_) d_.assign(rows_ * cols_, 0);
}

FpMatrix FpMatrix::make_dense(std::size_t rows, std::size_t cols, PrimeField field) {
    FpMatrix m(0, 0, field);
    m.rows_ = rows;
    m.cols_ = cols;
    m.dense_ = true;
    m.d_.assign(rows * cols, 0);
    return m;
}

FpMatrix FpMatrix::make_sparse(std::size_t rows, std::size_t cols, PrimeField field) {
    FpMatrix m(0, 0, field);
    m.rows_ = rows;
    m.cols_ = cols;
    m.dense_ = false;
    m.d_.clear();
    return m;
}

void FpMatrix::sort_coo() const {
    if (coo_sorted_) return;
    std::sort(coo_.begin(), coo_.end());
    coo_sorted_ = true;
}

Fp FpMatrix::at(std::size_t r, std::size_t c) const {
    NILCOH_ASSERT(r < rows_ && c < cols_, "matrix index out of range");
    if (dense_) return d_[r * cols_ + c];
    sort_coo();
    auto it = std::lower_bound(coo_.begin(), coo_.end(),
                               std::tuple<std::size_t, std::size_t, Fp>{r, c, 0});
    if (it != coo_.end() && std::get<0>(*it) == r && std::get<1>(*it) == c)
        return std::get<2>(*it);
    return 0;
}

void FpMatrix::set(std::size_t r, std::size_t c, Fp v) {
    NILCOH_ASSERT(r < rows_ && c < cols_, "matrix index out of range");
    NILCOH_ASSERT(v < field_.p(), "residue out of range");
    if (dense_) {
        d_[r * cols_ + c] = v;
        return;
    }
    sort_coo();
    auto it = std::lower_bound(coo_.begin(), coo_.end(),
                               std::tuple<std::size_t, std::size_t, Fp>{r, c, 0});
    bool found = it != coo_.end() && std::get<0>(*it) == r && std::get<1>(*it) == c;
    if (found) {
        if (v == 0)
            coo_.erase(it);
        else
            std::get<2>(*it) = v;
    } else if (v != 0) {
        coo_.insert(it, {r, c, v});
    }
}

std::size_t FpMatrix::nnz() const {
    if (!dense_) return coo_.size();
    std::size_t n = 0;
    for (Fp v : d_)
        if (v) ++n;
    return n;
}

std::vector<std::tuple<std::size_t, std::size_t, Fp>> FpMatrix::entries() const {
    if (!dense_) {
        sort_coo();
        return coo_;
    }
    std::vector<std::tuple<std::size_t, std::size_t, Fp>> out;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (d_[r * cols_ + c]) out.push_back({r, c, d_[r * cols_ + c]});
    return out;
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_.p() != o.field().p())
        return false;
    return entries() == o.entries();
}

namespace {

using SparseRow = std::vector<std::pair<std::uint32_t, Fp>>;

/* row_j -= coef * row_r, merging sorted column lists. */
SparseRow axpy(const SparseRow& rj, Fp coef, const SparseRow& rr, const PrimeField& f) {
    SparseRow out;
    out.reserve(rj.size() + rr.size());
    std::size_t a = 0, b = 0;
    while (a < rj.size() || b < rr.size()) {
        if (b == rr.size() || (a < rj.size() && rj[a].first < rr[b].first)) {
            out.push_back(rj[a++]);
        } else if (a == rj.size() || rr[b].first < rj[a].first) {
            out.push_back({rr[b].first, f.neg(f.mul(coef, rr[b].second))});
            ++b;
        } else {
            Fp v = f.sub(rj[a].second, f.mul(coef, rr[b].second));
            if (v) out.push_back({rj[a].first, v});
            ++a;
            ++b;
        }
    }
    return out;
}

Fp row_entry(const SparseRow& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, Fp{0}),
                               [](const auto& x, const auto& y) { return x.first < y.first; });
    if (it != row.end() && it->first == c) return it->second;
    return 0;
}

}  // namespace

std::vector<std::size_t> eliminate_rows(std::vector<SparseRow>& rows, std::size_t cols,
                                        const PrimeField& f, bool parallel) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const std::size_t n = rows.size();
    for (std::uint32_t c = 0; c < cols && r < n; ++c) {
        // Rows at positions >= r have all columns < c already cleared, so a
        // pivot candidate is any such row whose leading entry sits at c.
        std::size_t piv = n;
        for (std::size_t i = r; i < n; ++i) {
            if (!rows[i].empty() && rows[i][0].first == c) {
                piv = i;
                break;
            }
        }
        if (piv == n) continue;
        std::swap(rows[r], rows[piv]);
        Fp lead = rows[r][0].second;
        if (lead != 1) {
            Fp s = f.inv(lead);
            for (auto& e : rows[r]) e.second = f.mul(e.second, s);
        }
        const SparseRow& pr = rows[r];
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel && n > 64)
#endif
        for (long long j = 0; j < static_cast<long long>(n); ++j) {
            if (static_cast<std::size_t>(j) == r) continue;
            Fp coef = row_entry(rows[j], c);
            if (coef) rows[j] = axpy(rows[j], coef, pr, f);
        }
        pivots.push_back(c);
        ++r;
    }
    (void)parallel;
    return pivots;
}

namespace {

std::vector<SparseRow> to_rows(const FpMatrix& m) {
    std::vector<SparseRow> rows(m.rows());
    for (const auto& [r, c, v] : m.entries())
        rows[r].push_back({static_cast<std::uint32_t>(c), v});
    return rows;
}

FpMatrix from_rows(const std::vector<SparseRow>& rows, std::size_t cols,
                   const PrimeField& f, bool dense) {
    FpMatrix m = dense ? FpMatrix::make_dense(rows.size(), cols, f)
                       : FpMatrix::make_sparse(rows.size(), cols, f);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) m.set(r, c, v);
    return m;
}

RrefResult rref_impl(const FpMatrix& m, bool parallel) {
    auto rows = to_rows(m);
    auto pivots = eliminate_rows(rows, m.cols(), m.field(), parallel);
    return {from_rows(rows, m.cols(), m.field(), m.is_dense()), pivots};
}

}  // namespace

RrefResult rref(const FpMatrix& m) { return rref_impl(m, true); }
RrefResult rref_serial(const FpMatrix& m) { return rref_impl(m, false); }

std::size_t rank(const FpMatrix& m) {
    auto rows = to_rows(m);
    return eliminate_rows(rows, m.cols(), m.field(), true).size();
}

std::vector<std::vector<Fp>> kernel_basis(const FpMatrix& m) {
    auto rows = to_rows(m);
    auto pivots = eliminate_rows(rows, m.cols(), m.field(), true);
    const PrimeField& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Fp>> basis;
    for (std::size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Fp> x(m.cols(), 0);
        x[fc] = 1;
        // Pivot row i solves x[pivots[i]] = -R[i][fc].
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            Fp v = row_entry(rows[i], static_cast<std::uint32_t>(fc));
            if (v) x[pivots[i]] = f.neg(v);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<std::vector<Fp>> solve(const FpMatrix& m, const std::vector<Fp>& b) {
    NILCOH_ASSERT(b.size() == m.rows(), "solve: right-hand side size mismatch");
    auto rows = to_rows(m);
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (b[r]) rows[r].push_back({static_cast<std::uint32_t>(m.cols()), b[r]});
    auto pivots = eliminate_rows(rows, m.cols() + 1, m.field(), true);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<Fp> x(m.cols(), 0);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = row_entry(rows[i], static_cast<std::uint32_t>(m.cols()));
    return x;
}

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
    NILCOH_ASSERT(a.field().p() == b.field().p(), "kronecker: field mismatch");
    std::size_t rows = a.rows() * b.rows(), cols = a.cols() * b.cols();
    FpMatrix out(rows, cols, a.field());
    const PrimeField& f = a.field();
    for (const auto& [ra, ca, va] : a.entries())
        for (const auto& [rb, cb, vb] : b.entries())
            out.set(ra * b.rows() + rb, ca * b.cols() + cb, f.mul(va, vb));
    return out;
}

FpMatrix matmul(const FpMatrix& a, const FpMatrix& b) {
    NILCOH_ASSERT(a.field().p() == b.field().p(), "matmul: field mismatch");
    NILCOH_ASSERT(a.cols() == b.rows(), "matmul: inner dimensions differ");
    const PrimeField& f = a.field();
    /* Group b by row so each nonzero of a is expanded once. */
    std::vector<std::vector<std::pair<std::size_t, Fp>>> brows(b.rows());
    for (const auto& [rb, cb, vb] : b.entries()) brows[rb].emplace_back(cb, vb);
    FpMatrix out(a.rows(), b.cols(), f);
    for (const auto& [ra, ca, va] : a.entries())
        for (const auto& [cb, vb] : brows[ca])
            out.set(ra, cb, f.add(out.at(ra, cb), f.mul(va, vb)));
    return out;
}

FpMatrix fp_identity(std::size_t n, PrimeField field) {
    FpMatrix out(n, n, field);
    for (std::size_t i = 0; i < n; ++i) out.set(i, i, 1);
    return out;
}

}  // namespace nilcoh
