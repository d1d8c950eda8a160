#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engine/ydmod.hpp"

namespace cartan {

// Rows index the reflecting vertex: entry (i,j) is the coefficient a_ij.
using Matrix = std::vector<std::vector<long>>;
// Coordinates of a lattice vector in the simple-root basis.
using Root = std::vector<long>;

// Throws unless a is a generalized Cartan matrix: square, diagonal 2,
// nonpositive off-diagonal entries, and a_ij = 0 exactly when a_ji = 0.
void check_gcm(const Matrix& a);

// Connectivity of the off-diagonal support graph.
bool is_indecomposable(const Matrix& a);

enum class GCMType { Fin, Aff, Ind };
std::string to_string(GCMType t);

// Kac trichotomy for an indecomposable generalized Cartan matrix.
GCMType classify_gcm(const Matrix& a);

struct FiniteTypeName {
    char family = '?';  // one of A B C D E F G
    int rank = 0;
    std::string to_string() const;
};

// Names an indecomposable finite-type matrix by canonical-form matching
// over simultaneous row/column permutations.  nullopt when not finite type.
std::optional<FiniteTypeName> finite_type_name(const Matrix& a);

// True when every indecomposable block is of finite type.
bool is_finite_type(const Matrix& a);

// Matrix of alpha_j -> alpha_j - a_ij alpha_i in the simple-root basis.
Matrix simple_reflection_matrix(const Matrix& a, int i);

struct ExploreCaps {
    int max_objects = 1024;
    long max_roots = 10000;
    int adjoint_cap = 8;
};

struct GraphObject {
    std::string fingerprint;
    Matrix cartan;
    std::vector<int> edges;  // edges[i] = object reached by the i-th reflection
    std::optional<ydmod::YDTuple> tuple;
};

struct SemiCartanGraph {
    int theta = 0;
    std::vector<GraphObject> objects;
    std::vector<std::vector<Root>> roots;  // all real roots per object, sorted
    bool complete = false;                 // object closure reached within caps
    bool is_finite = false;                // root closure reached within caps
    bool is_cartan_graph = false;          // all graph and root-system axioms verified
    bool is_standard = false;
    bool indecomposable = false;
    bool admits_all_reflections = false;
    std::vector<std::string> diagnostics;

    std::vector<Root> positive_roots(int obj) const;
};

// Breadth-first closure of the tuple under reflections, keyed by
// isomorphism fingerprints, followed by root closure and axiom checks.
SemiCartanGraph explore(const ydmod::YDTuple& seed, const ExploreCaps& caps = {});

// A fully specified abstract graph: one matrix per object and the
// reflection maps; explore validates it and computes the roots.
struct AbstractSeed {
    int theta = 0;
    std::vector<Matrix> matrices;
    std::vector<std::vector<int>> reflections;  // [object][i] -> object
};
SemiCartanGraph explore(const AbstractSeed& seed, const ExploreCaps& caps = {});

// Some object whose matrix is of finite type.  Throws a falsification
// diagnostic if none exists in a verified finite Cartan graph.
int finite_type_witness(const SemiCartanGraph& C);

// Greedy reduced decomposition of a longest word starting at obj:
// repeatedly the smallest index whose image root stays positive.
std::vector<int> longest_word(const SemiCartanGraph& C, int obj);

// beta_m = s_{i_1} ... s_{i_{m-1}} (alpha_{i_m}); checks the word is a
// reduced longest word: pairwise distinct positive roots exhausting the
// positive roots at obj.
std::vector<Root> beta_sequence(const SemiCartanGraph& C, int obj,
                                const std::vector<int>& word);

struct GroupoidElement {
    int source = 0;
    int target = 0;
    Matrix m;
};

// All morphisms with the given source, as matrices into each target frame.
std::vector<GroupoidElement> groupoid_elements_from(const SemiCartanGraph& C, int obj,
                                                    long cap = 20000);

// Orbits of the full root set at obj under the automorphism group of obj.
std::vector<std::vector<Root>> weyl_orbits(const SemiCartanGraph& C, int obj);

// Matches a finite connected indecomposable rank-3 graph against the
// catalog: A3-point-present, std-C3, std-B3, case3..case6, or none.
std::string rank3_catalog_match(const SemiCartanGraph& C);

}  // namespace cartan
