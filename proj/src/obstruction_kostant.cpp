#include "nilcoh/obstruction_kostant.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace nilcoh {

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

/* Simple reflection as a matrix on simple-root coordinates:
   row i picks up -cartan[i][j], everything else passes through. */
Matrix reflection(const RootSystem& r, std::size_t i) {
    Matrix m = identity(r.rank);
    for (std::size_t j = 0; j < r.rank; ++j) m[i][j] -= r.cartan[i][j];
    return m;
}

Matrix mul(const Matrix& a, const Matrix& b) {
    std::size_t n = a.size();
    Matrix c(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (!a[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

}  // namespace

Weight weyl_apply(const WeylElement& w, const Weight& v) {
    NILCOH_ASSERT(w.action.size() == v.size(), "weyl_apply: rank mismatch");
    Weight out(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += w.action[i][j] * v[j];
    return out;
}

std::vector<WeylElement> weyl_group(const RootSystem& r) {
    std::map<Matrix, WeylElement> seen;
    WeylElement id;
    id.action = identity(r.rank);
    seen.emplace(id.action, id);

    std::vector<Matrix> refl;
    for (std::size_t i = 0; i < r.rank; ++i) refl.push_back(reflection(r, i));

    std::vector<WeylElement> frontier{id};
    while (!frontier.empty()) {
        std::vector<WeylElement> next;
        for (const auto& w : frontier)
            for (std::size_t i = 0; i < r.rank; ++i) {
                WeylElement sw;
                sw.action = mul(refl[i], w.action);
                if (seen.count(sw.action)) continue;
                sw.length = w.length + 1;
                sw.word.reserve(w.word.size() + 1);
                sw.word.push_back(i);
                sw.word.insert(sw.word.end(), w.word.begin(), w.word.end());
                seen.emplace(sw.action, sw);
                next.push_back(std::move(sw));
            }
        frontier = std::move(next);
    }

    std::vector<WeylElement> out;
    out.reserve(seen.size());
    for (auto& [m, w] : seen) out.push_back(std::move(w));
    std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.word < b.word;
    });
    return out;
}

KostantTable kostant_table(const RootSystem& r) {
    KostantTable t;
    t.type = r.type;
    t.rank = r.rank;
    t.rows.assign(r.positive_roots.size() + 1, {});

    const Weight two_rho = r.two_rho();
    for (const auto& w : weyl_group(r)) {
        Weight diff = weight_sub(two_rho, weyl_apply(w, two_rho));
        Weight half(diff.size(), 0);
        for (std::size_t i = 0; i < diff.size(); ++i) {
            NILCOH_ASSERT(diff[i] % 2 == 0 && diff[i] >= 0,
                          "kostant_table: rho - w(rho) left the positive root lattice");
            half[i] = diff[i] / 2;
        }
        NILCOH_ASSERT(w.length < t.rows.size(),
                      "kostant_table: length exceeds the positive-root count");
        t.rows[w.length].push_back(std::move(half));
    }
    for (auto& row : t.rows) {
        NILCOH_ASSERT(!row.empty(), "kostant_table: empty length stratum");
        std::sort(row.begin(), row.end());
    }
    return t;
}

namespace {

/* Multisets of basis weights of the given exact sum, sizes 1..cap,
   nondecreasing index order. */
void realizations(const std::vector<Weight>& basis, std::size_t start, std::size_t cap,
                  Weight remaining, std::vector<Weight>& current,
                  std::vector<std::vector<Weight>>& out) {
    if (weight_is_zero(remaining)) {
        if (!current.empty()) out.push_back(current);
        return;
    }
    if (current.size() == cap) return;
    for (std::size_t b = start; b < basis.size(); ++b) {
        bool fits = true;
        for (std::size_t i = 0; i < remaining.size(); ++i)
            if (basis[b][i] > remaining[i]) {
                fits = false;
                break;
            }
        if (!fits) continue;
        current.push_back(basis[b]);
        realizations(basis, b, cap, weight_sub(remaining, basis[b]), current, out);
        current.pop_back();
    }
}

std::vector<Weight> unique_row(const std::vector<Weight>& row) {
    std::vector<Weight> u = row;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

}  // namespace

ObstructionReport splitting_obstructions(const std::vector<std::vector<Weight>>& table, Fp p,
                                         const std::vector<Weight>& basis_weights,
                                         std::size_t degree_cap) {
    std::size_t rank = basis_weights.empty() ? 0 : basis_weights[0].size();
    for (const auto& b : basis_weights) {
        bool nonneg = !weight_is_zero(b) && b.size() == rank;
        for (int c : b)
            if (c < 0) nonneg = false;
        if (!nonneg)
            throw input_error(
                "splitting_obstructions: basis weights must be nonzero, componentwise "
                "nonnegative, and of one rank (positive convention)");
    }
    for (const auto& row : table)
        for (const auto& g : row)
            if (g.size() != rank)
                throw input_error("splitting_obstructions: table weight rank differs from basis");

    ObstructionReport rep;
    rep.p = p;
    rep.degree_cap = degree_cap;
    rep.normalization =
        "degrees are cohomological: a row-n class counts as degree n, sigma as degree 2|sigma|";

    const std::size_t top = table.empty() ? 0 : table.size() - 1;
    const std::size_t cap = std::min(degree_cap, top);
    std::vector<std::vector<Weight>> uniq(cap + 1);
    for (std::size_t a = 0; a <= cap && a < table.size(); ++a) uniq[a] = unique_row(table[a]);

    for (std::size_t a1 = 1; a1 <= cap; ++a1)
        for (const Weight& g1 : uniq[a1])
            for (std::size_t a2 = a1; a2 <= cap; ++a2)
                for (const Weight& g2 : uniq[a2]) {
                    if (a2 == a1 && g2 < g1) continue;  // unordered pair, canonical order
                    Weight sum = weight_add(g1, g2);
                    for (std::size_t a3 = 0; a3 <= cap && a3 + 2 <= a1 + a2; ++a3)
                        for (const Weight& g3 : uniq[a3]) {
                            Weight target(sum.size(), 0);
                            bool divisible = true;
                            for (std::size_t i = 0; i < sum.size(); ++i) {
                                int d = sum[i] - g3[i];
                                if (d < 0 || d % static_cast<int>(p) != 0) {
                                    divisible = false;
                                    break;
                                }
                                target[i] = d / static_cast<int>(p);
                            }
                            if (!divisible || weight_is_zero(target)) continue;
                            std::vector<std::vector<Weight>> sigmas;
                            std::vector<Weight> scratch;
                            realizations(basis_weights, 0, (a1 + a2 - a3) / 2, target, scratch,
                                         sigmas);
                            for (auto& s : sigmas) {
                                ObstructionSolution sol;
                                sol.gamma1 = g1;
                                sol.gamma2 = g2;
                                sol.gamma3 = g3;
                                sol.a1 = a1;
                                sol.a2 = a2;
                                sol.a3 = a3;
                                std::sort(s.begin(), s.end());
                                sol.sigma = std::move(s);
                                sol.condition1 = true;
                                sol.condition2 = a1 + a2 == a3 + 2 * sol.sigma.size();
                                if (sol.condition2) rep.obstructed = true;
                                rep.solutions.push_back(std::move(sol));
                            }
                        }
                }

    std::sort(rep.solutions.begin(), rep.solutions.end(),
              [](const ObstructionSolution& x, const ObstructionSolution& y) {
                  auto key = [](const ObstructionSolution& s) {
                      return std::tie(s.a1, s.gamma1, s.a2, s.gamma2, s.a3, s.gamma3, s.sigma);
                  };
                  return key(x) < key(y);
              });
    return rep;
}

}  // namespace nilcoh
