#include "engine/scalars.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scalars {

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; (long)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Characteristic::Characteristic(int p_) : p(p_) {
    if (p != 0 && !is_prime(p))
        throw std::runtime_error("characteristic must be 0 or a prime, got " + std::to_string(p));
}

RootOfUnity zeta(long n, long k, Characteristic ch) {
    if (n < 1) throw std::runtime_error("root of unity order must be positive");
    k = mod_pos(k, n);
    long g = std::gcd(k, n);
    // zeta_n^k has exact order n/g; store the reduced pair.
    RootOfUnity r{n / g, k / g};
    if (r.d == 1) r.k = 0;
    if (ch.p != 0 && r.d % ch.p == 0)
        throw std::runtime_error("no root of unity of order " + std::to_string(r.d) +
                                 " in characteristic " + std::to_string(ch.p));
    return r;
}

RootOfUnity one_root() { return RootOfUnity{1, 0}; }

RootOfUnity neg_one(Characteristic ch) {
    return ch.p == 2 ? one_root() : RootOfUnity{2, 1};
}

RootOfUnity mul(const RootOfUnity& a, const RootOfUnity& b, Characteristic ch) {
    long l = std::lcm(a.d, b.d);
    return zeta(l, a.k * (l / a.d) + b.k * (l / b.d), ch);
}

RootOfUnity inv(const RootOfUnity& a) { return zeta(a.d, -a.k); }

RootOfUnity pow(const RootOfUnity& a, long e, Characteristic ch) {
    return zeta(a.d, mod_pos(e, a.d) * a.k, ch);
}

std::string to_string(const RootOfUnity& a) {
    if (a.d == 1) return "1";
    if (a.d == 2) return "-1";
    return "zeta(" + std::to_string(a.d) + "," + std::to_string(a.k) + ")";
}

RootOfUnity parse_root(const std::string& text, Characteristic ch) {
    if (text == "1") return one_root();
    if (text == "-1") return neg_one(ch);
    if (text.rfind("zeta(", 0) == 0 && text.back() == ')') {
        std::string body = text.substr(5, text.size() - 6);
        auto comma = body.find(',');
        if (comma != std::string::npos) {
            try {
                long n = std::stol(body.substr(0, comma));
                long k = std::stol(body.substr(comma + 1));
                return zeta(n, k, ch);
            } catch (const std::invalid_argument&) {
            } catch (const std::out_of_range&) {
            }
        }
    }
    throw std::runtime_error("cannot parse scalar literal '" + text + "'");
}

bool q_number_is_zero(long m, const RootOfUnity& q, Characteristic ch) {
    if (m < 0) throw std::runtime_error("q-number index must be non-negative");
    if (m == 0) return true;
    if (q.is_one()) return ch.p != 0 && m % ch.p == 0;
    // (m)_q = (q^m - 1)/(q - 1): zero iff ord(q) divides m.
    return m % q.d == 0;
}

bool q_factorial_nonzero(long m, const RootOfUnity& q, Characteristic ch) {
    for (long i = 1; i <= m; ++i)
        if (q_number_is_zero(i, q, ch)) return false;
    return true;
}

std::optional<long> height(const RootOfUnity& q, Characteristic ch) {
    if (q.d > 1) return q.d;
    if (ch.p != 0) return (long)ch.p;
    return std::nullopt;
}

namespace {

// Integer polynomial helpers used only to build Phi_N.
using ZPoly = std::vector<mpz_class>;

ZPoly x_pow_minus_one(long n) {
    ZPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    return p;
}

// Exact division of integer polynomials (remainder must vanish).
ZPoly zpoly_div(const ZPoly& num, const ZPoly& den) {
    ZPoly rem = num;
    ZPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    long dd = (long)den.size() - 1;
    for (long i = (long)rem.size() - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        mpz_class c = rem[i] / den[dd];
        quot[i - dd] = c;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= c * den[j];
    }
    for (const auto& c : rem)
        if (c != 0) throw std::runtime_error("cyclotomic division left a remainder");
    return quot;
}

ZPoly cyclotomic(long n) {
    ZPoly phi = x_pow_minus_one(n);
    for (long d = 1; d < n; ++d)
        if (n % d == 0) phi = zpoly_div(phi, cyclotomic(d));
    return phi;
}

long mod_inverse(long a, long p) {
    long t = 0, newt = 1, r = p, newr = mod_pos(a, p);
    while (newr != 0) {
        long q = r / newr;
        std::tie(t, newt) = std::pair<long, long>(newt, t - q * newt);
        std::tie(r, newr) = std::pair<long, long>(newr, r - q * newr);
    }
    if (r != 1) throw std::runtime_error("not invertible mod p");
    return mod_pos(t, p);
}

using PPoly = std::vector<long>;  // coefficients mod p, constant term first

PPoly ppoly_mod(const PPoly& a, const PPoly& f, long p) {
    PPoly r = a;
    long df = (long)f.size() - 1;
    for (long i = (long)r.size() - 1; i >= df; --i) {
        if (r[i] == 0) continue;
        long c = r[i];  // f is monic
        for (long j = 0; j <= df; ++j) r[i - df + j] = mod_pos(r[i - df + j] - c * f[j], p);
    }
    r.resize(std::min<size_t>(r.size(), df));
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

bool ppoly_divides(const PPoly& f, const PPoly& a, long p) {
    return ppoly_mod(a, f, p).empty();
}

// Lexicographically first monic degree-d divisor of Phi_N mod p, scanning
// coefficient vectors (c_0, ..., c_{d-1}) as a base-p counter. Every such
// divisor is irreducible because all irreducible factors of Phi_N mod p
// share the degree ord_N(p).
PPoly first_factor(const PPoly& phi, long d, long p) {
    std::vector<long> coef(d, 0);
    while (true) {
        PPoly f(coef.begin(), coef.end());
        f.push_back(1);
        if (ppoly_divides(f, phi, p)) return f;
        long i = 0;
        while (i < d && ++coef[i] == p) coef[i++] = 0;
        if (i == d) throw std::runtime_error("no factor of the cyclotomic polynomial found");
    }
}

long multiplicative_order(long a, long n) {
    if (n == 1) return 1;
    long v = mod_pos(a, n), acc = v;
    for (long e = 1; e <= n; ++e) {
        if (acc == 1) return e;
        acc = (acc * v) % n;
    }
    throw std::runtime_error("element not invertible mod n");
}

}  // namespace

SplittingField::SplittingField(Characteristic ch_, long conductor_) : ch(ch_), conductor(conductor_) {
    if (conductor < 1) throw std::runtime_error("conductor must be positive");
    if (ch.p != 0 && conductor % ch.p == 0)
        throw std::runtime_error("conductor " + std::to_string(conductor) +
                                 " is divisible by the characteristic " + std::to_string(ch.p));
    ZPoly phi = cyclotomic(conductor);
    if (ch.p == 0) {
        degree = (int)phi.size() - 1;
        modulus.assign(phi.begin(), phi.end());
    } else {
        PPoly phip(phi.size());
        for (size_t i = 0; i < phi.size(); ++i) {
            mpz_class r = phi[i] % ch.p;
            phip[i] = mod_pos(r.get_si(), ch.p);
        }
        long d = multiplicative_order(ch.p, conductor);
        PPoly f = first_factor(phip, d, ch.p);
        degree = (int)d;
        modulus.assign(f.begin(), f.end());
    }

    // Reduction table for x^(degree+i), built by repeated multiplication by x.
    std::vector<mpq_class> cur(degree, 0);  // x^degree mod modulus
    for (int j = 0; j < degree; ++j) cur[j] = -modulus[j];
    if (ch.p != 0)
        for (auto& v : cur) v = mod_pos((long)v.get_num().get_si(), ch.p);
    for (int i = 0; i + 1 < degree; ++i) {
        power_table.push_back(cur);
        std::vector<mpq_class> next(degree, 0);
        mpq_class top = cur[degree - 1];
        for (int j = degree - 1; j > 0; --j) next[j] = cur[j - 1];
        for (int j = 0; j < degree; ++j) next[j] += top * -modulus[j];
        if (ch.p != 0)
            for (auto& v : next) {
                mpz_class r = v.get_num() % ch.p;
                v = mod_pos(r.get_si(), ch.p);
            }
        cur = next;
    }
    if (degree >= 1 && power_table.size() < (size_t)std::max(0, degree - 1))
        throw std::runtime_error("power table construction failed");

    // zeta^j for all j < conductor; zeta = x unless the field is trivial.
    std::vector<mpq_class> z(degree, 0);
    if (degree == 1) {
        // Phi_1 = x - 1 or Phi_2 = x + 1 or a degree-1 factor f = x - r: zeta = r.
        z[0] = -modulus[0];
        if (ch.p != 0) {
            mpz_class r = z[0].get_num() % ch.p;
            z[0] = mod_pos(r.get_si(), ch.p);
        }
    } else {
        z[1] = 1;
    }
    FieldElement acc{this, std::vector<mpq_class>(degree, 0)};
    acc.c[0] = 1;
    FieldElement zfe{this, z};
    for (long j = 0; j < conductor; ++j) {
        zeta_powers.push_back(acc.c);
        acc = mul(acc, zfe);
    }
    if (!(acc == fe_one(*this)))
        throw std::runtime_error("zeta does not have the conductor as its order");
}

bool FieldElement::is_zero() const {
    for (const auto& v : c)
        if (v != 0) return false;
    return true;
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (field != o.field) throw std::runtime_error("comparing elements of different fields");
    return c == o.c;
}

FieldElement fe_zero(const SplittingField& F) {
    return FieldElement{&F, std::vector<mpq_class>(F.degree, 0)};
}

FieldElement fe_one(const SplittingField& F) { return fe_from_int(F, 1); }

FieldElement fe_from_int(const SplittingField& F, long n) {
    FieldElement r = fe_zero(F);
    r.c[0] = F.ch.p == 0 ? mpq_class(n) : mpq_class(mod_pos(n, F.ch.p));
    return r;
}

FieldElement embed(const RootOfUnity& q, const SplittingField& F) {
    if (F.conductor % q.d != 0)
        throw std::runtime_error("order " + std::to_string(q.d) + " does not divide conductor " +
                                 std::to_string(F.conductor));
    long j = mod_pos(q.k * (F.conductor / q.d), F.conductor);
    return FieldElement{&F, F.zeta_powers[j]};
}

namespace {

void reduce_mod_p(FieldElement& a) {
    long p = a.field->ch.p;
    if (p == 0) return;
    for (auto& v : a.c) {
        if (v.get_den() != 1) throw std::runtime_error("non-integer coefficient in char p");
        mpz_class r = v.get_num() % p;
        v = mod_pos(r.get_si(), p);
    }
}

}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
    if (a.field != b.field) throw std::runtime_error("field mismatch in add");
    FieldElement r = a;
    for (int i = 0; i < a.field->degree; ++i) r.c[i] += b.c[i];
    reduce_mod_p(r);
    return r;
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
    if (a.field != b.field) throw std::runtime_error("field mismatch in sub");
    FieldElement r = a;
    for (int i = 0; i < a.field->degree; ++i) r.c[i] -= b.c[i];
    reduce_mod_p(r);
    return r;
}

FieldElement neg(const FieldElement& a) {
    FieldElement r = a;
    for (auto& v : r.c) v = -v;
    reduce_mod_p(r);
    return r;
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    if (a.field != b.field) throw std::runtime_error("field mismatch in mul");
    const SplittingField& F = *a.field;
    int d = F.degree;
    std::vector<mpq_class> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b.c[j] == 0) continue;
            prod[i + j] += a.c[i] * b.c[j];
        }
    }
    FieldElement r = fe_zero(F);
    for (int i = 0; i < d; ++i) r.c[i] = prod[i];
    for (int i = 0; i + 1 < d; ++i) {
        if (prod[d + i] == 0) continue;
        for (int j = 0; j < d; ++j) r.c[j] += prod[d + i] * F.power_table[i][j];
    }
    reduce_mod_p(r);
    return r;
}

FieldElement mul_root(const FieldElement& a, const RootOfUnity& q) {
    return mul(a, embed(q, *a.field));
}

FieldElement inverse(const FieldElement& a) {
    if (a.is_zero()) throw std::runtime_error("division by zero field element");
    const SplittingField& F = *a.field;
    // Extended Euclid on polynomials over Q or F_p.
    using Poly = std::vector<mpq_class>;
    auto trim = [](Poly& p) { while (!p.empty() && p.back() == 0) p.pop_back(); };
    auto modp = [&](mpq_class v) -> mpq_class {
        if (F.ch.p == 0) return v;
        mpz_class r = v.get_num() % F.ch.p;
        return mod_pos(r.get_si(), F.ch.p);
    };
    auto invc = [&](const mpq_class& v) -> mpq_class {
        if (F.ch.p == 0) return 1 / v;
        return mod_inverse(v.get_num().get_si(), F.ch.p);
    };
    Poly r0(F.modulus.begin(), F.modulus.end());
    if (F.ch.p != 0)
        for (auto& v : r0) v = modp(v);
    Poly r1 = a.c;
    trim(r1);
    Poly s0{}, s1{mpq_class(1)};
    while (true) {
        trim(r1);
        if (r1.empty()) throw std::runtime_error("element shares a factor with the modulus");
        if (r1.size() == 1) break;
        // r0 = q*r1 + rem
        Poly rem = r0, q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        mpq_class lead_inv = invc(r1.back());
        for (long i = (long)rem.size() - 1; i >= (long)r1.size() - 1; --i) {
            if (rem[i] == 0) continue;
            mpq_class c = modp(rem[i] * lead_inv);
            q[i - (r1.size() - 1)] = c;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[i - (r1.size() - 1) + j] = modp(rem[i - (r1.size() - 1) + j] - c * r1[j]);
        }
        trim(rem);
        // s_next = s0 - q*s1
        Poly snext(std::max(s0.size(), q.size() + s1.size()), 0);
        for (size_t i = 0; i < s0.size(); ++i) snext[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) snext[i + j] = modp(snext[i + j] - q[i] * s1[j]);
        trim(snext);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = snext;
    }
    mpq_class unit_inv = invc(r1[0]);
    FieldElement out = fe_zero(F);
    for (size_t i = 0; i < s1.size() && i < (size_t)F.degree; ++i) out.c[i] = modp(s1[i] * unit_inv);
    if (s1.size() > (size_t)F.degree) throw std::runtime_error("inverse exceeded field degree");
    return out;
}

std::optional<RootOfUnity> as_root_of_unity(const FieldElement& a) {
    const SplittingField& F = *a.field;
    for (long j = 0; j < F.conductor; ++j)
        if (a.c == F.zeta_powers[j]) return zeta(F.conductor, j);
    return std::nullopt;
}

std::string to_string(const FieldElement& a) {
    std::string s = "[";
    for (int i = 0; i < a.field->degree; ++i) {
        if (i) s += ",";
        s += a.c[i].get_str();
    }
    return s + "]";
}

}  // namespace scalars
