#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

// Exact scalar arithmetic: symbolic roots of unity and elements of a fixed
// splitting field Q(zeta_N) or F_p(zeta_N). No floating point anywhere.

namespace scalars {

// Field characteristic: 0 or a prime.
struct Characteristic {
    int p = 0;

    Characteristic() = default;
    explicit Characteristic(int p_);

    bool operator==(const Characteristic&) const = default;
};

// A root of unity zeta_d^k stored gcd-reduced, so d is the exact
// multiplicative order and 0 <= k < d with gcd(k, d) = 1.
// In characteristic p the order must be coprime to p; p-power content in a
// requested order is rejected at construction, never silently dropped.
struct RootOfUnity {
    long d = 1;
    long k = 0;

    bool operator==(const RootOfUnity&) const = default;
    bool operator<(const RootOfUnity& o) const {
        return d != o.d ? d < o.d : k < o.k;
    }

    long order() const { return d; }
    bool is_one() const { return d == 1; }
};

// zeta(n, k) reduced; validates n >= 1 and, when ch.p > 0, gcd(order, p) = 1.
RootOfUnity zeta(long n, long k, Characteristic ch = Characteristic());

RootOfUnity one_root();
// -1 as a negation unit: zeta(2,1) except in characteristic 2 where -1 = 1.
RootOfUnity neg_one(Characteristic ch);

RootOfUnity mul(const RootOfUnity& a, const RootOfUnity& b, Characteristic ch = Characteristic());
RootOfUnity inv(const RootOfUnity& a);
RootOfUnity pow(const RootOfUnity& a, long e, Characteristic ch = Characteristic());

// Canonical text form: "1", "-1", or "zeta(n,k)".
std::string to_string(const RootOfUnity& a);
// Parses the same literal syntax, plus "zeta(n,k)^e" style is not accepted;
// inputs are exactly "1", "-1" or "zeta(n,k)".
RootOfUnity parse_root(const std::string& text, Characteristic ch = Characteristic());

// True iff (m)_q = 1 + q + ... + q^{m-1} vanishes (m = 0 counts as zero).
bool q_number_is_zero(long m, const RootOfUnity& q, Characteristic ch);
// True iff (m)_q^! = (1)_q (2)_q ... (m)_q is non-zero.
bool q_factorial_nonzero(long m, const RootOfUnity& q, Characteristic ch);
// height(q): ord(q) if ord(q) > 1; p if q = 1 in characteristic p > 0;
// infinity (nullopt) if q = 1 in characteristic 0.
std::optional<long> height(const RootOfUnity& q, Characteristic ch);

// Splitting field with a fixed primitive N-th root of unity zeta.
// char 0: Q[x]/(Phi_N), rational coefficients.
// char p: F_p[x]/(f) where f is the lexicographically first irreducible
// factor of Phi_N mod p; its degree is ord_N(p).
struct SplittingField {
    Characteristic ch;
    long conductor = 1;
    int degree = 1;
    // Monic modulus; modulus[i] multiplies x^i, size degree+1.
    std::vector<mpq_class> modulus;
    // x^(degree+i) reduced mod modulus, for i in [0, degree-1).
    std::vector<std::vector<mpq_class>> power_table;
    // zeta^j reduced, for j in [0, N).
    std::vector<std::vector<mpq_class>> zeta_powers;

    SplittingField(Characteristic ch_, long conductor_);
};

// Element of a SplittingField: coefficient vector of length field->degree.
// In characteristic p all coefficients are integers in [0, p).
struct FieldElement {
    const SplittingField* field = nullptr;
    std::vector<mpq_class> c;

    bool is_zero() const;
    bool operator==(const FieldElement& o) const;
};

FieldElement fe_zero(const SplittingField& F);
FieldElement fe_one(const SplittingField& F);
FieldElement fe_from_int(const SplittingField& F, long n);
// Embeds q into F; error unless order(q) divides the conductor.
FieldElement embed(const RootOfUnity& q, const SplittingField& F);

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement inverse(const FieldElement& a);
FieldElement mul_root(const FieldElement& a, const RootOfUnity& q);

// Recognizes a as zeta^j for some j (conductor-indexed), if it is one.
std::optional<RootOfUnity> as_root_of_unity(const FieldElement& a);

std::string to_string(const FieldElement& a);

long gcd_long(long a, long b);
long lcm_long(long a, long b);

}  // namespace scalars
