#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilcoh {

/* Error taxonomy shared across the library.  The CLI maps these to
   process exit codes: input_error -> 2, budget_error -> 3,
   internal_error -> 4. */
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

#define NILCOH_ASSERT(cond, msg)                                      \
    do {                                                              \
        if (!(cond)) throw ::nilcoh::internal_error(                  \
            std::string("internal assertion failed: ") + (msg));     \
    } while (0)

using Fp = std::uint32_t;  // residue in [0, p)

/* Arithmetic in the prime field F_p for a small odd prime p.
   All residues are kept normalized in [0, p). */
class PrimeField {
  public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p < 3 || !is_prime(p) )
            throw input_error("field characteristic must be an odd prime >= 3, got " +
                              std::to_string(p));
    }

    std::uint32_t p() const { return p_; }

    Fp reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Fp>(r);
    }
    Fp add(Fp a, Fp b) const { Fp s = a + b; return s >= p_ ? s - p_ : s; }
    Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }
    Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
    Fp mul(Fp a, Fp b) const {
        return static_cast<Fp>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Fp pow(Fp a, std::uint64_t e) const {
        Fp r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    /* Fermat inverse; p is prime and a != 0. */
    Fp inv(Fp a) const {
        if (a == 0) throw internal_error("division by zero in F_" + std::to_string(p_));
        return pow(a, p_ - 2);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

  private:
    std::uint32_t p_;
};

}  // namespace nilcoh
