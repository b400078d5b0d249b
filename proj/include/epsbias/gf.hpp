#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "epsbias/errors.hpp"

namespace epsbias {

// Integer encoding of a field element: sum coeffs[i] * p^i, coeffs in the
// polynomial basis (constant term first). Fields larger than 2^16 are out of
// scope, so encodings fit in 16 bits.
using felem = std::uint16_t;

struct FieldSpec {
    std::uint32_t p = 2;                  // prime characteristic
    std::uint32_t r = 1;                  // extension degree
    std::vector<std::uint32_t> modulus;   // monic irreducible, constant term first, degree r
    std::uint32_t q = 2;                  // p^r

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

// Dense polynomials over F_p, constant term first, no trailing-zero guarantee.
using Poly = std::vector<std::uint32_t>;

inline int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

inline Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    const int dg = degree(g);
    // g monic by construction
    for (int i = degree(f); i >= dg; --i) {
        const std::uint32_t c = f[static_cast<size_t>(i)];
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) {
            auto& fij = f[static_cast<size_t>(i - dg + j)];
            fij = (fij + p * c - (c * g[static_cast<size_t>(j)]) % p) % p;
        }
    }
    f.resize(static_cast<size_t>(dg));
    f.resize(static_cast<size_t>(std::max(dg, 1)), 0);
    return f;
}

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(prod), mod, p);
}

inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const int d = degree(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    if (f[0] == 0) return false;  // divisible by x
    // trial division by every monic polynomial of degree 1..d/2
    for (int e = 1; 2 * e <= d; ++e) {
        std::uint64_t count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (std::uint64_t lower = 0; lower < count; ++lower) {
            Poly g(static_cast<size_t>(e) + 1, 0);
            std::uint64_t v = lower;
            for (int i = 0; i < e; ++i) {
                g[static_cast<size_t>(i)] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            g[static_cast<size_t>(e)] = 1;
            if (degree(poly_mod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

}  // namespace detail

// Exact arithmetic in GF(p^r) on integer-encoded elements, with the trace map
// to F_p and additive character evaluation. Multiplication runs on log/exp
// tables over a generator; construction cost is O(q log q) polynomial work.
// Immutable after construction; all operations are const and re-entrant.
class Field {
  public:
    static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t r,
                                             std::optional<std::vector<std::uint32_t>> modulus = {}) {
        if (!detail::is_prime(p))
            throw CompositeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
        if (r < 1) throw BadParameters("extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
            q *= p;
            if (q > 65536) throw BadParameters("fields with q > 2^16 are unsupported");
        }
        std::vector<std::uint32_t> mod;
        if (modulus) {
            mod = *modulus;
            for (auto& c : mod) c %= p;
            if (mod.size() != static_cast<size_t>(r) + 1 || mod.back() != 1)
                throw BadParameters("modulus must be monic of degree exactly r");
            if (!detail::is_irreducible(mod, p))
                throw ReducibleModulus("modulus is reducible over F_" + std::to_string(p));
        } else {
            mod = smallest_irreducible(p, r);
        }
        return std::shared_ptr<const Field>(new Field(p, r, std::move(mod), static_cast<std::uint32_t>(q)));
    }

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t p() const { return spec_.p; }
    std::uint32_t r() const { return spec_.r; }
    std::uint32_t q() const { return spec_.q; }
    const std::vector<std::uint32_t>& modulus() const { return spec_.modulus; }

    felem add(felem a, felem b) const {
        if (spec_.p == 2) return a ^ b;
        std::uint32_t res = 0, pw = 1;
        std::uint32_t x = a, y = b;
        for (std::uint32_t i = 0; i < spec_.r; ++i) {
            res += ((x + y) % spec_.p) * pw;
            x /= spec_.p;
            y /= spec_.p;
            pw *= spec_.p;
        }
        return static_cast<felem>(res);
    }

    felem sub(felem a, felem b) const { return add(a, neg(b)); }

    felem neg(felem a) const {
        if (spec_.p == 2) return a;
        std::uint32_t res = 0, pw = 1, x = a;
        for (std::uint32_t i = 0; i < spec_.r; ++i) {
            res += ((spec_.p - x % spec_.p) % spec_.p) * pw;
            x /= spec_.p;
            pw *= spec_.p;
        }
        return static_cast<felem>(res);
    }

    felem mul(felem a, felem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(static_cast<std::uint32_t>(log_[a]) + log_[b]) % (spec_.q - 1)];
    }

    felem inv(felem a) const {
        if (a == 0) throw DivisionByZero("inverse of zero");
        return exp_[(spec_.q - 1 - log_[a]) % (spec_.q - 1)];
    }

    felem div(felem a, felem b) const {
        if (b == 0) throw DivisionByZero("division by zero");
        if (a == 0) return 0;
        return exp_[(static_cast<std::uint32_t>(log_[a]) + (spec_.q - 1) - log_[b]) % (spec_.q - 1)];
    }

    felem pow(felem a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? felem{1} : felem{0};
        return exp_[static_cast<std::uint32_t>((log_[a] * (e % (spec_.q - 1))) % (spec_.q - 1))];
    }

    // Field trace to F_p, as a value in [0, p).
    std::uint32_t trace(felem x) const { return trace_[x]; }

    // Additive character omega^{tr(a*x)}, omega = e^{2 pi i / p}. Exact +-1
    // for p = 2 via character_sign.
    std::complex<double> character(felem a, felem x) const { return roots_[trace_[mul(a, x)]]; }

    int character_sign(felem a, felem x) const { return 1 - 2 * static_cast<int>(trace_[mul(a, x)]); }

    std::vector<std::uint32_t> coeffs(felem e) const {
        std::vector<std::uint32_t> c(spec_.r);
        std::uint32_t v = e;
        for (std::uint32_t i = 0; i < spec_.r; ++i) {
            c[i] = v % spec_.p;
            v /= spec_.p;
        }
        return c;
    }

    felem encode(const std::vector<std::uint32_t>& coeffs) const {
        if (coeffs.size() != spec_.r) throw BadParameters("coefficient vector has wrong length");
        std::uint32_t v = 0, pw = 1;
        for (std::uint32_t i = 0; i < spec_.r; ++i) {
            if (coeffs[i] >= spec_.p) throw BadParameters("coefficient out of range");
            v += coeffs[i] * pw;
            pw *= spec_.p;
        }
        return static_cast<felem>(v);
    }

    const std::vector<std::uint8_t>& trace_table() const { return trace_; }

    friend bool operator==(const Field& a, const Field& b) { return a.spec_ == b.spec_; }

  private:
    Field(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> mod, std::uint32_t q) {
        spec_ = FieldSpec{p, r, std::move(mod), q};
        build_tables();
    }

    static std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t r) {
        // Smallest integer encoding of the non-leading coefficients; fixes the
        // default modulus (and hence all encodings) across runs and machines.
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < r; ++i) count *= p;
        for (std::uint64_t lower = 0; lower < count; ++lower) {
            detail::Poly f(static_cast<size_t>(r) + 1, 0);
            std::uint64_t v = lower;
            for (std::uint32_t i = 0; i < r; ++i) {
                f[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            f[r] = 1;
            if (detail::is_irreducible(f, p)) return f;
        }
        throw Error("no irreducible polynomial found");  // unreachable
    }

    detail::Poly to_poly(std::uint32_t e) const {
        detail::Poly f(spec_.r, 0);
        for (std::uint32_t i = 0; i < spec_.r; ++i) {
            f[i] = e % spec_.p;
            e /= spec_.p;
        }
        return f;
    }

    std::uint32_t from_poly(const detail::Poly& f) const {
        std::uint32_t v = 0, pw = 1;
        for (std::uint32_t i = 0; i < spec_.r; ++i) {
            v += (i < f.size() ? f[i] : 0) * pw;
            pw *= spec_.p;
        }
        return v;
    }

    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
        return from_poly(detail::poly_mul_mod(to_poly(a), to_poly(b), spec_.modulus, spec_.p));
    }

    std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t res = 1, base = a;
        while (e) {
            if (e & 1) res = slow_mul(res, base);
            base = slow_mul(base, base);
            e >>= 1;
        }
        return res;
    }

    bool is_generator(std::uint32_t g, const std::vector<std::uint64_t>& prime_factors) const {
        for (std::uint64_t f : prime_factors)
            if (slow_pow(g, (spec_.q - 1) / f) == 1) return false;
        return true;
    }

    void build_tables() {
        const std::uint32_t q = spec_.q;
        log_.assign(q, 0);
        exp_.assign(q - 1, 0);

        std::uint32_t g = 1;
        if (q > 2) {
            std::vector<std::uint64_t> factors;
            std::uint64_t m = q - 1;
            for (std::uint64_t f = 2; f * f <= m; ++f) {
                if (m % f == 0) {
                    factors.push_back(f);
                    while (m % f == 0) m /= f;
                }
            }
            if (m > 1) factors.push_back(m);
            while (!is_generator(g, factors)) ++g;
        }

        std::uint32_t x = 1;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            exp_[i] = static_cast<felem>(x);
            log_[x] = static_cast<std::uint32_t>(i);
            x = slow_mul(x, g);
        }

        trace_.assign(q, 0);
        for (std::uint32_t e = 0; e < q; ++e) {
            // sum of Frobenius conjugates x^{p^i}, i = 0..r-1; equals the
            // textbook sum over i = 1..r because x^{p^r} = x
            detail::Poly tot(spec_.r, 0);
            std::uint64_t frob = 1;
            for (std::uint32_t i = 0; i < spec_.r; ++i) {
                const auto t = to_poly(slow_pow(e, frob));
                for (std::uint32_t j = 0; j < spec_.r; ++j) tot[j] = (tot[j] + t[j]) % spec_.p;
                frob *= spec_.p;
            }
            if (detail::degree(tot) > 0) throw Error("trace left the prime field");  // unreachable
            trace_[e] = static_cast<std::uint8_t>(tot[0]);
        }

        roots_.resize(spec_.p);
        for (std::uint32_t j = 0; j < spec_.p; ++j) {
            if (spec_.p == 2) {
                roots_[j] = std::complex<double>(j == 0 ? 1.0 : -1.0, 0.0);
            } else {
                const double ang = 2.0 * std::numbers::pi * j / spec_.p;
                roots_[j] = std::complex<double>(std::cos(ang), std::sin(ang));
            }
        }
    }

    FieldSpec spec_;
    std::vector<std::uint32_t> log_;   // log_[x] for x != 0
    std::vector<felem> exp_;           // exp_[i] = g^i
    std::vector<std::uint8_t> trace_;  // tr: F_q -> F_p
    std::vector<std::complex<double>> roots_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline void require_same_field(const Field& a, const Field& b) {
    if (!(a == b)) throw FieldMismatch("elements belong to different fields");
}

}  // namespace epsbias
