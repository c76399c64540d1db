#include "isoeq/gf.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>

namespace isoeq {
namespace {

// Dense q x q add/mul tables up to this size; exp/log tables beyond.
constexpr int kDenseLimit = 256;
constexpr int kMaxQ = 1 << 16;

bool is_prime(int n) {
    if (n < 2) return false;
    for (long long i = 2; i * i <= n; ++i) {
        if (n % i == 0) return false;
    }
    return true;
}

// Polynomials over GF(p): little-endian int coefficient vectors.
using Poly = std::vector<int>;

int poly_deg(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[i] != 0) return i;
    }
    return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
    }
    return r;
}

// Reduces a modulo the monic polynomial mod, in place.
void poly_reduce(Poly& a, const Poly& mod, int p) {
    const int e = poly_deg(mod);
    for (int i = poly_deg(a); i >= e; --i) {
        const int c = a[i];
        if (c == 0) continue;
        for (int j = 0; j <= e; ++j) {
            a[i - e + j] = ((a[i - e + j] - c * mod[j]) % p + p) % p;
        }
    }
    a.resize(static_cast<std::size_t>(e), 0);
}

// Remainder of f modulo monic g.
Poly poly_rem(Poly f, const Poly& g, int p) {
    const int dg = poly_deg(g);
    for (int i = poly_deg(f); i >= dg; --i) {
        const int c = f[i];
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) {
            f[i - dg + j] = ((f[i - dg + j] - c * g[j]) % p + p) % p;
        }
    }
    f.resize(static_cast<std::size_t>(std::max(dg, 1)), 0);
    return f;
}

bool poly_is_zero(const Poly& f) { return poly_deg(f) < 0; }

// Irreducibility by trial division with every monic polynomial of degree
// 1..deg(f)/2; complete for the degrees this library accepts.
bool is_irreducible(const Poly& f, int p) {
    const int e = poly_deg(f);
    if (e < 1) return false;
    for (int d = 1; 2 * d <= e; ++d) {
        // Monic candidates of degree d, low coefficients counted base p.
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long enc = 0; enc < count; ++enc) {
            Poly g(static_cast<std::size_t>(d) + 1, 0);
            long long v = enc;
            for (int i = 0; i < d; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<int>(v % p);
                v /= p;
            }
            g[static_cast<std::size_t>(d)] = 1;
            if (poly_is_zero(poly_rem(f, g, p))) return false;
        }
    }
    return true;
}

std::vector<int> factor_distinct_primes(int n) {
    std::vector<int> out;
    for (int f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

struct Field::Tables {
    int p = 2;
    int e = 1;
    int q = 2;
    std::vector<int> modulus;  // empty for e == 1

    bool dense = true;
    std::vector<Elem> add_tab;  // q*q when dense
    std::vector<Elem> mul_tab;  // q*q when dense
    std::vector<Elem> neg_tab;  // q
    std::vector<Elem> inv_tab;  // q (entry 0 unused) when dense
    std::vector<Elem> exp_tab;  // q-1 powers of a generator, sparse path
    std::vector<int> log_tab;   // q, log_tab[0] == -1, sparse path

    std::vector<int> decode(Elem x) const {
        std::vector<int> c(static_cast<std::size_t>(e), 0);
        int v = x;
        for (int i = 0; i < e; ++i) {
            c[static_cast<std::size_t>(i)] = v % p;
            v /= p;
        }
        return c;
    }

    Elem encode(const Poly& c) const {
        int v = 0;
        for (int i = e - 1; i >= 0; --i) {
            const int coef = i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)] : 0;
            v = v * p + coef;
        }
        return static_cast<Elem>(v);
    }

    Elem raw_add(Elem x, Elem y) const {
        if (e == 1) return static_cast<Elem>((x + y) % p);
        int v = 0;
        int px = 1;
        int a = x;
        int b = y;
        for (int i = 0; i < e; ++i) {
            v += ((a % p + b % p) % p) * px;
            a /= p;
            b /= p;
            px *= p;
        }
        return static_cast<Elem>(v);
    }

    Elem raw_neg(Elem x) const {
        if (e == 1) return static_cast<Elem>((p - x % p) % p);
        int v = 0;
        int px = 1;
        int a = x;
        for (int i = 0; i < e; ++i) {
            v += ((p - a % p) % p) * px;
            a /= p;
            px *= p;
        }
        return static_cast<Elem>(v);
    }

    Elem raw_mul(Elem x, Elem y) const {
        if (e == 1) return static_cast<Elem>((static_cast<long long>(x) * y) % p);
        Poly r = poly_mul(decode(x), decode(y), p);
        poly_reduce(r, modulus, p);
        return encode(r);
    }

    Elem raw_pow(Elem x, long long n) const {
        Elem r = 1;
        Elem base = x;
        while (n > 0) {
            if (n & 1) r = raw_mul(r, base);
            base = raw_mul(base, base);
            n >>= 1;
        }
        return r;
    }
};

Field Field::make(int p, int e) {
    require(e >= 1, Errc::Precondition, "field exponent must be at least 1");
    require(is_prime(p), Errc::NotPrime, "p = " + std::to_string(p) + " is not prime");

    long long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        require(q <= kMaxQ, Errc::TooLarge,
                "field size " + std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^16");
    }

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->e = e;
    t->q = static_cast<int>(q);

    if (e > 1) {
        // Smallest monic irreducible of degree e, low coefficients counted base p.
        long long count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (long long enc = 0; enc < count && t->modulus.empty(); ++enc) {
            Poly f(static_cast<std::size_t>(e) + 1, 0);
            long long v = enc;
            for (int i = 0; i < e; ++i) {
                f[static_cast<std::size_t>(i)] = static_cast<int>(v % p);
                v /= p;
            }
            f[static_cast<std::size_t>(e)] = 1;
            if (is_irreducible(f, p)) t->modulus = f;
        }
        require(!t->modulus.empty(), Errc::NoIrreducibleFound,
                "no irreducible modulus of degree " + std::to_string(e) + " over GF(" +
                    std::to_string(p) + ")");
    }

    const int n = t->q;
    t->neg_tab.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) t->neg_tab[static_cast<std::size_t>(x)] = t->raw_neg(static_cast<Elem>(x));

    t->dense = n <= kDenseLimit;
    if (t->dense) {
        t->add_tab.resize(static_cast<std::size_t>(n) * n);
        t->mul_tab.resize(static_cast<std::size_t>(n) * n);
        t->inv_tab.assign(static_cast<std::size_t>(n), 0);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                const Elem s = t->raw_add(static_cast<Elem>(x), static_cast<Elem>(y));
                const Elem m = t->raw_mul(static_cast<Elem>(x), static_cast<Elem>(y));
                t->add_tab[static_cast<std::size_t>(x) * n + y] = s;
                t->mul_tab[static_cast<std::size_t>(x) * n + y] = m;
                if (m == 1) t->inv_tab[static_cast<std::size_t>(x)] = static_cast<Elem>(y);
            }
        }
    } else {
        // Multiplicative group is cyclic of order q-1; find a generator by
        // checking g^((q-1)/l) != 1 for each prime l | q-1.
        const int order = n - 1;
        const std::vector<int> primes = factor_distinct_primes(order);
        Elem gen = 0;
        for (int g = 2; g < n && gen == 0; ++g) {
            bool ok = true;
            for (int l : primes) {
                if (t->raw_pow(static_cast<Elem>(g), order / l) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) gen = static_cast<Elem>(g);
        }
        require(gen != 0, Errc::NoIrreducibleFound, "no multiplicative generator found");
        t->exp_tab.resize(static_cast<std::size_t>(order));
        t->log_tab.assign(static_cast<std::size_t>(n), -1);
        Elem cur = 1;
        for (int i = 0; i < order; ++i) {
            t->exp_tab[static_cast<std::size_t>(i)] = cur;
            t->log_tab[cur] = i;
            cur = t->raw_mul(cur, gen);
        }
    }

    return Field(std::move(t));
}

int Field::p() const noexcept { return tables_->p; }
int Field::e() const noexcept { return tables_->e; }
int Field::q() const noexcept { return tables_->q; }
const std::vector<int>& Field::modulus() const noexcept { return tables_->modulus; }

Elem Field::add(Elem x, Elem y) const noexcept {
    const Tables& t = *tables_;
    if (t.dense) return t.add_tab[static_cast<std::size_t>(x) * t.q + y];
    return t.raw_add(x, y);
}

Elem Field::neg(Elem x) const noexcept { return tables_->neg_tab[x]; }

Elem Field::sub(Elem x, Elem y) const noexcept { return add(x, neg(y)); }

Elem Field::mul(Elem x, Elem y) const noexcept {
    const Tables& t = *tables_;
    if (t.dense) return t.mul_tab[static_cast<std::size_t>(x) * t.q + y];
    if (x == 0 || y == 0) return 0;
    const int order = t.q - 1;
    return t.exp_tab[static_cast<std::size_t>((t.log_tab[x] + t.log_tab[y]) % order)];
}

Elem Field::inv(Elem x) const {
    require(x != 0, Errc::ZeroInverse, "zero has no multiplicative inverse");
    const Tables& t = *tables_;
    if (t.dense) return t.inv_tab[x];
    const int order = t.q - 1;
    return t.exp_tab[static_cast<std::size_t>((order - t.log_tab[x]) % order)];
}

std::vector<int> Field::coefficients(Elem x) const { return tables_->decode(x); }

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(static_cast<std::size_t>(q()));
    std::iota(out.begin(), out.end(), static_cast<Elem>(0));
    return out;
}

std::vector<ProjectivePoint> Field::projective_line() const {
    std::vector<ProjectivePoint> out;
    out.reserve(static_cast<std::size_t>(q()) + 1);
    for (Elem a : elements()) out.push_back({a, 1});
    out.push_back({1, 0});
    return out;
}

ProjectivePoint Field::projective_canonical(Elem alpha, Elem beta) const {
    require(alpha != 0 || beta != 0, Errc::Precondition, "projective point (0, 0) is undefined");
    if (beta != 0) return {mul(alpha, inv(beta)), 1};
    return {1, 0};
}

bool Field::operator==(const Field& other) const noexcept {
    return tables_ == other.tables_ || (p() == other.p() && e() == other.e());
}

}  // namespace isoeq
