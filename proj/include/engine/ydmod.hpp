#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "engine/groups.hpp"
#include "engine/scalars.hpp"

namespace ydmod {

// Yetter-Drinfeld module over a finite group with monomial action: every basis
// vector carries a group degree, every group element acts by a basis
// permutation with root-of-unity scalars. Modules produced by adjoint powers
// that do not admit such a basis fall back to an exact matrix action over a
// splitting field (slow path, same type).
struct YDModule {
    const groups::FiniteGroup* G = nullptr;
    int dim = 0;
    std::vector<int> deg;                                   // [b] -> group element
    std::vector<std::vector<int>> act_perm;                 // [g][b] -> basis index
    std::vector<std::vector<scalars::RootOfUnity>> act_scal;  // [g][b] -> scalar
    bool monomial = true;
    // slow path: column b of act_mat[g] is the image of basis vector b
    std::shared_ptr<scalars::SplittingField> field;
    std::vector<std::vector<std::vector<scalars::FieldElement>>> act_mat;

    bool is_zero() const { return dim == 0; }
};

YDModule zero_module(const groups::FiniteGroup& G);

// validates the representation property and h V_g = V_{hgh^-1} exhaustively
YDModule make_module(const groups::FiniteGroup& G, std::vector<int> deg,
                     std::vector<std::vector<int>> act_perm,
                     std::vector<std::vector<scalars::RootOfUnity>> act_scal);

// induced module M(g^G, chi). Basis = conjugacy class of g in ascending element
// order; the transversal element for class member c is the minimal x with
// x g x^-1 = c; the action is h . e_c = chi(t_{c'}^-1 h t_c) e_{c'}.
YDModule induce(const groups::FiniteGroup& G, int g, const groups::LinearCharacter& chi);

std::vector<int> support(const YDModule& M);  // sorted distinct degrees
bool is_absolutely_simple(const YDModule& M);
// scalar of x acting on the degree-c line; requires a dim-1 component at c
scalars::RootOfUnity component_scalar(const YDModule& M, int c, int x);
// character of the centralizer of c on the degree-c line; requires abs. simple
groups::LinearCharacter module_character(const YDModule& M, int c);
// canonical form: minimal support element + character on its centralizer
std::string iso_fingerprint_module(const YDModule& M);
// transport the module structure along conjugation by x (sends V_g to V_{xgx^-1})
YDModule conjugated_module(const YDModule& M, int x);
YDModule dual_module(const YDModule& M);

// monomial operator between spaces of equal dimension; index of v_a (x) w_b in
// V (x) W is a*dim(W)+b
struct MonomialOp {
    int dim = 0;
    std::vector<int> perm;
    std::vector<scalars::RootOfUnity> scal;
};
// c_{V,W}(v (x) w) = deg(v).w (x) v
MonomialOp braiding(const YDModule& V, const YDModule& W);
MonomialOp compose(const MonomialOp& f, const MonomialOp& g);  // f after g
bool is_identity_op(const MonomialOp& f);
bool c_squared_is_identity(const YDModule& V, const YDModule& W);
bool yang_baxter_holds(const YDModule& V);

// X_m^{V,W} inside V^{(x)m} (x) W computed by the phi recursion. Basis vectors
// are stored per degree in the word basis (m V-letters then one W-letter).
struct AdjointPower {
    int m = 0;
    int total_dim = 0;
    std::shared_ptr<scalars::SplittingField> field;
    struct Component {
        int degree;
        std::vector<std::map<std::vector<int>, scalars::FieldElement>> basis;
    };
    std::vector<Component> components;  // sorted by degree, empty ones omitted
};
AdjointPower adjoint_power_detail(const YDModule& V, const YDModule& W, int m,
                                  scalars::Characteristic ch);
// the same subspace packaged as an abstract module (zero module when X_m = 0)
YDModule adjoint_power(const YDModule& V, const YDModule& W, int m,
                       scalars::Characteristic ch);

struct YDTuple {
    const groups::FiniteGroup* G = nullptr;
    std::vector<YDModule> modules;
    scalars::Characteristic ch;
};
YDTuple make_tuple(const groups::FiniteGroup& G, std::vector<YDModule> modules,
                   scalars::Characteristic ch);
// the supports of all entries generate the group
bool supports_generate(const YDTuple& M);

struct CartanEntry {
    bool exceeds_cap = false;
    int value = 0;
};
CartanEntry cartan_entry(const YDTuple& M, int i, int j, int cap = 8);
struct CartanMatrixResult {
    bool complete = false;
    std::vector<std::vector<int>> A;
    std::vector<std::pair<int, int>> exceeded;
};
CartanMatrixResult cartan_matrix(const YDTuple& M, int cap = 8);

// R_i(M): dualizes entry i, applies (ad M_i)^{-a_ij} to the others; every
// produced entry must be absolutely simple (throws with diagnostics otherwise)
YDTuple reflect(const YDTuple& M, int i, int cap = 8);
std::string iso_fingerprint(const YDTuple& M);
bool is_braid_indecomposable(const YDTuple& M);

struct RestrictedTuple {
    std::shared_ptr<groups::FiniteGroup> H;  // the subgroup as a standalone group
    std::vector<int> to_parent;              // H element -> parent element
    YDTuple tuple;
};
RestrictedTuple restrict_tuple(const YDTuple& M, const groups::Subgroup& H);

// literal evaluation of the scalar conditions defining the pair classes
struct PairClass {
    std::string tag = "none";  // wp0..wp8, wp22_0, wp22_1, none
    int n = 0;                 // for wp1: order of tau(t)
    std::string to_string() const;
};
PairClass classify_pair(const YDModule& V, const YDModule& W, scalars::Characteristic ch,
                        int cap = 8);

// closed-form predictions for adjoint powers; never runs the phi recursion
struct PredictionLevel {
    int m = 1;
    bool zero = false;
    std::optional<bool> abs_simple;
    std::optional<int> degree;  // a representative degree element of X_m
    std::optional<int> dim;
    std::vector<std::pair<int, scalars::RootOfUnity>> character;  // (element, value)
};
struct AdjointPrediction {
    std::string setting;  // rosso | two-two | two-one | three-one | two-three | three-two | commuting
    std::vector<PredictionLevel> levels;
    std::optional<int> vanishing_degree;  // least m with X_m = 0 when known
    std::optional<int> a12, a21;          // Cartan entries when the lemma pins them
};
std::optional<AdjointPrediction> predict_pair(const YDModule& V, const YDModule& W,
                                              scalars::Characteristic ch);

}  // namespace ydmod
