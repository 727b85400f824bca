#include "nilcoh/jordan_modules.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nilcoh {

std::size_t JordanType::dimension() const {
    return std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
}

void validate_or_throw(const JordanType& t) {
    (void)PrimeField(t.p);  // rejects non-prime moduli
    for (std::size_t i = 0; i < t.blocks.size(); ++i) {
        if (t.blocks[i] < 1 || t.blocks[i] > t.p)
            throw input_error("Jordan block sizes must lie in [1, p]");
        if (i && t.blocks[i] > t.blocks[i - 1])
            throw input_error("Jordan blocks must be weakly decreasing");
    }
}

std::string jordan_to_string(const JordanType& t) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < t.blocks.size(); ++i) os << (i ? "," : "") << t.blocks[i];
    os << "]";
    return os.str();
}

FpMatrix jordan_matrix(const JordanType& t) {
    validate_or_throw(t);
    std::size_t n = t.dimension();
    FpMatrix m(n, n, PrimeField(t.p));
    std::size_t off = 0;
    for (std::size_t b : t.blocks) {
        for (std::size_t i = 0; i + 1 < b; ++i) m.set(off + i, off + i + 1, 1);
        off += b;
    }
    return m;
}

JordanType jordan_type(const FpMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("jordan_type: matrix is not square");
    const std::uint32_t p = m.field().p();

    /* ranks[s] = rank(m^s); stops early once the power vanishes. */
    std::vector<std::size_t> ranks{m.rows()};
    FpMatrix power = fp_identity(m.rows(), m.field());
    for (std::uint32_t s = 1; s <= p && ranks.back() > 0; ++s) {
        power = matmul(power, m);
        ranks.push_back(rank(power));
    }
    if (ranks.back() != 0)
        throw input_error("jordan_type: matrix is not annihilated by its p-th power");
    ranks.resize(p + 2, 0);

    JordanType t;
    t.p = p;
    for (std::size_t s = p; s >= 1; --s) {
        std::size_t at_least_s = ranks[s - 1] - ranks[s];
        std::size_t at_least_next = ranks[s] - ranks[s + 1];
        for (std::size_t c = at_least_next; c < at_least_s; ++c) t.blocks.push_back(s);
    }
    std::sort(t.blocks.rbegin(), t.blocks.rend());
    NILCOH_ASSERT(t.dimension() == m.rows(), "jordan_type: partition does not fill the space");
    return t;
}

namespace {

FpMatrix add(const FpMatrix& a, const FpMatrix& b) {
    NILCOH_ASSERT(a.rows() == b.rows() && a.cols() == b.cols(), "add: shape mismatch");
    const PrimeField& f = a.field();
    FpMatrix out = a;
    for (const auto& [r, c, v] : b.entries()) out.set(r, c, f.add(out.at(r, c), v));
    return out;
}

}  // namespace

JordanType tensor_type(const JordanType& a, const JordanType& b) {
    validate_or_throw(a);
    validate_or_throw(b);
    if (a.p != b.p) throw input_error("tensor_type: factors live over different primes");
    FpMatrix ma = jordan_matrix(a), mb = jordan_matrix(b);
    PrimeField f(a.p);
    FpMatrix t = add(kronecker(ma, fp_identity(mb.rows(), f)),
                     kronecker(fp_identity(ma.rows(), f), mb));
    return jordan_type(t);
}

JordanType exterior_square_type(const JordanType& a) {
    validate_or_throw(a);
    FpMatrix m = jordan_matrix(a);
    const std::size_t n = m.rows();
    const PrimeField& f = m.field();

    /* Basis e_i ^ e_j, i < j, ordered lexicographically. */
    std::vector<std::vector<std::size_t>> pair_index(n, std::vector<std::size_t>(n, 0));
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pair_index[i][j] = count++;

    FpMatrix d(count, count, f);
    auto accumulate = [&](std::size_t x, std::size_t y, std::size_t col, Fp v) {
        if (x == y) return;
        std::size_t row = x < y ? pair_index[x][y] : pair_index[y][x];
        Fp signed_v = x < y ? v : f.neg(v);
        d.set(row, col, f.add(d.at(row, col), signed_v));
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t col = pair_index[i][j];
            for (const auto& [k, c, v] : m.entries()) {
                if (c == i) accumulate(k, j, col, v);
                if (c == j) accumulate(i, k, col, v);
            }
        }
    return jordan_type(d);
}

std::size_t free_multiplicity(const JordanType& t) {
    validate_or_throw(t);
    return static_cast<std::size_t>(
        std::count(t.blocks.begin(), t.blocks.end(), static_cast<std::size_t>(t.p)));
}

JordanType h1_module(const LieAlgebra& a, const std::vector<std::size_t>& ideal,
                     std::size_t generator) {
    validate_or_throw(a);
    std::vector<std::size_t> v = ideal;
    std::sort(v.begin(), v.end());
    if (std::unique(v.begin(), v.end()) != v.end())
        throw input_error("h1_module: repeated ideal index");
    for (std::size_t i : v)
        if (i >= a.dim) throw input_error("h1_module: ideal index out of range");
    if (generator >= a.dim || std::binary_search(v.begin(), v.end(), generator))
        throw input_error("h1_module: generator must be a basis index outside the ideal");
    if (v.size() + 1 != a.dim)
        throw input_error("h1_module: ideal must have codimension one");

    for (std::size_t x : v)
        for (std::size_t y : v) {
            auto br = a.bracket_of(x, y);
            for (Fp c : br)
                if (c) throw input_error("h1_module: ideal is not commutative");
        }

    std::vector<std::size_t> pos(a.dim, a.dim);
    for (std::size_t t = 0; t < v.size(); ++t) pos[v[t]] = t;
    FpMatrix m(v.size(), v.size(), a.field);
    for (std::size_t t = 0; t < v.size(); ++t) {
        auto br = a.bracket_of(generator, v[t]);
        for (std::size_t k = 0; k < a.dim; ++k) {
            if (!br[k]) continue;
            if (pos[k] == a.dim)
                throw input_error("h1_module: bracket leaves the ideal");
            m.set(pos[k], t, br[k]);
        }
    }
    return jordan_type(m);
}

}  // namespace nilcoh
