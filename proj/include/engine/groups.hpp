#pragma once

#include <map>
#include <string>
#include <vector>

#include "engine/scalars.hpp"

// Finite groups as explicit multiplication tables with named generators,
// plus subgroups and linear (degree-one) characters with root-of-unity values.

namespace groups {

struct FiniteGroup {
    int n = 0;
    std::vector<std::vector<int>> table;  // table[a][b] = a*b
    int identity = 0;
    std::vector<int> inverse;
    std::vector<std::string> gen_names;
    std::vector<int> gen_elems;
    std::vector<int> element_order;
    std::vector<std::string> element_word;  // shortest generator word per element

    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const { return inverse[a]; }
    int pow(int a, long e) const;
    int conjugate(int x, int g) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
    int commutator(int a, int b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    int generator(const std::string& name) const;
    // Parses "1" or products like "a*b^2*nu^-1".
    int element_by_word(const std::string& word) const;
};

// Builds and fully validates a group from an explicit table.
// Associativity is checked exhaustively for n <= 512, else on random triples.
FiniteGroup make_table_group(std::vector<std::vector<int>> table, int identity,
                             std::vector<std::string> gen_names, std::vector<int> gen_elems);

FiniteGroup make_cyclic(int m, const std::string& gen_name);

// Gamma_n quotient: generators nu, a, b with b a = nu a b, nu a = a nu^-1,
// nu b = b nu, nu^n = a^m_a = b^m_b = 1, of order n*m_a*m_b.
// Errors when the relations collapse nu (m_a odd with n > 2, or n not
// dividing m_b), instead of silently building a smaller group.
FiniteGroup make_gamma_quotient(int n, int m_a, int m_b);

// Central extension 1 -> <eps> -> G -> (Z/2)^theta -> 1 of order 2^(theta+1):
// generators eps (central, order 2) and s_1..s_theta with
// s_i s_j = eps^commutation[i][j] s_j s_i and s_i^2 = eps^square_flags[i].
// commutation must be symmetric with zero diagonal; entries are 0/1.
FiniteGroup make_epsilon_twisted(int theta, const std::vector<std::vector<int>>& commutation,
                                 const std::vector<int>& square_flags);

// Generator names of the two factors must be disjoint.
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);

struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> elems;  // sorted
    std::map<int, int> position;

    int size() const { return (int)elems.size(); }
    bool contains(int g) const { return position.count(g) != 0; }
    int pos(int g) const;
};

Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> elems);
Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<int>& gens);
Subgroup whole_group(const FiniteGroup& G);

std::vector<int> conjugacy_class(const FiniteGroup& G, int g);  // sorted
Subgroup centralizer(const FiniteGroup& G, int g);
Subgroup center(const FiniteGroup& G);

struct LinearCharacter {
    Subgroup domain;
    std::vector<scalars::RootOfUnity> values;  // indexed by domain position

    scalars::RootOfUnity operator()(int g) const { return values[domain.pos(g)]; }
};

// Validates multiplicativity, chi(1) = 1 and ord(chi(g)) | ord(g).
LinearCharacter make_character(Subgroup domain, std::vector<scalars::RootOfUnity> values,
                               scalars::Characteristic ch);

// All linear characters of H with values in roots of unity of the given
// characteristic (value orders coprime to p when p > 0), in a deterministic
// order. In characteristic 0 the count is |H/[H,H]| exactly.
std::vector<LinearCharacter> linear_characters(const Subgroup& H, scalars::Characteristic ch,
                                               size_t cap = 4096);

// Restriction of a character to a subgroup of its domain.
LinearCharacter restrict_character(const LinearCharacter& chi, const Subgroup& smaller,
                                   scalars::Characteristic ch);

// The subgroup as a standalone group. Element k of group corresponds to
// parent element to_parent[k]; from_parent is the inverse map (-1 outside H).
struct ExtractedGroup {
    FiniteGroup group;
    std::vector<int> to_parent;
    std::vector<int> from_parent;
};

ExtractedGroup as_group(const Subgroup& H);

}  // namespace groups
