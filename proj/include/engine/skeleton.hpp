#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engine/cartan.hpp"
#include "engine/nichols.hpp"
#include "engine/ydmod.hpp"

namespace skeleton {

// Decorated diagram attached to a tuple of absolutely simple modules:
// one vertex per entry carrying the support size, a_ij*a_ji edges between
// vertices, dashed when the supports do not commute elementwise, oriented
// toward the -1 side when the other Cartan entry is below -1.

enum class VertexMarker {
    none,
    double_circle,     // support point with a two-dimensional isotypic component
    tetrahedron_class, // four-element support, no two elements commute
    dihedral_class,    // four-element support splitting into two commuting pairs
};

struct Vertex {
    int points = 1;  // support size = dimension of the entry
    // scalar of s on V_s for one-point vertices
    std::optional<scalars::RootOfUnity> label;
    // scalar ratio (s' on V_s) / (s on V_s) for two-point supports {s, s'};
    // independent of the choice of support element
    std::optional<scalars::RootOfUnity> pair_ratio;
    VertexMarker marker = VertexMarker::none;
};

struct Edge {
    int i = 0, j = 0;        // vertex indices, i < j
    int multiplicity = 1;    // a_ij * a_ji
    int oriented_to = -1;    // vertex the arrow points at, -1 when unoriented
    bool double_arrow = false;  // both entries -2; not a valid skeleton edge
    bool dashed = false;     // supports do not commute elementwise
    // sigma_i(s_j) sigma_j(s_i), present iff some endpoint has one point
    std::optional<scalars::RootOfUnity> label;
};

struct Skeleton {
    int theta = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    const Edge* edge_between(int i, int j) const;  // nullptr when a_ij = 0
};

std::string to_string(const Skeleton& S);

// Catalog identity of a skeleton. finite_type marks the entries whose
// Nichols algebras are finite-dimensional in every rank (the simply-laced
// and tailed families, plus the two rank-3 mixed chains); extended marks
// the rank-2 entries beyond those families.
struct SkeletonType {
    std::string family;  // alpha, beta, beta', beta'', gamma, delta, epsilon, phi,
                         // b2gamma2, b2gamma3a..b2gamma3e, b2gamma3x, b2t, b2gamma4,
                         // or "none"
    int theta = 0;
    bool finite_type = false;
    bool extended = false;
    // chain parameter p with 1 - p + p^2 = 0 where the family carries one
    std::optional<scalars::RootOfUnity> parameter;

    bool matched() const { return family != "none"; }
    std::string name() const;  // "alpha_3", "beta'_3", "b2gamma4", "none"

    bool operator==(const SkeletonType&) const = default;
};

// Catalog metadata, one row per family.
struct CatalogEntry {
    std::string family;
    int theta_min = 2;
    int theta_max = 9;      // classification bound, not a mathematical one
    bool finite_type = false;
    bool extended = false;
    std::string description;
};
const std::vector<CatalogEntry>& catalog();

// Reads the decorated diagram off the tuple. Throws when an entry is not
// absolutely simple with a one-dimensional isotypic component (unsupported),
// when some Cartan entry exceeds the adjoint cap, or when a pair violates
// the skeleton condition (both entries of a nonzero pair below -1).
Skeleton extract_skeleton(const ydmod::YDTuple& M, int cap = 8);

// Matches the diagram against the catalog over all vertex orderings
// (theta <= 9). family "none" when nothing matches.
SkeletonType classify_skeleton(const Skeleton& S, scalars::Characteristic ch);

// A realized tuple together with the group that owns it.
struct Realization {
    std::shared_ptr<const groups::FiniteGroup> G;
    ydmod::YDTuple tuple;  // tuple.G == G.get()
    SkeletonType type;
    // presentation over the construction group before any restriction to the
    // subgroup generated by the supports; equals (G, tuple) when the supports
    // already generate
    std::shared_ptr<const groups::FiniteGroup> ambient;
    ydmod::YDTuple ambient_tuple;
    bool restricted = false;
};

// Canonical tuple with the requested skeleton: epsilon-twisted groups for
// the one-parameter families, a Gamma_3 quotient times cyclic factors for
// the mixed chains. Characters are found by a bounded search, first hit in
// the enumeration order; the result is re-extracted and re-classified as a
// consistency check. Throws when the family does not exist in the given
// characteristic, naming the failed condition.
Realization realize_skeleton(const std::string& family, int theta,
                             scalars::Characteristic ch);

// 0/1 anticommutation pattern of the canonical construction group: entry
// (i, j) is 1 exactly when vertices i and j are joined in the family's
// diagram. Defined for the single-group families alpha, beta, gamma, delta,
// epsilon and phi.
std::vector<std::vector<int>> family_commutation(const std::string& family, int theta);

// Per-reflection behaviour of the skeleton: every catalog family is fixed
// by every reflection except the two mixed chains, which swap with each
// other under the reflection at the last vertex.
struct ReflectionCheckEntry {
    int k = 0;             // reflected vertex, 1-based
    std::string from;      // type name before
    std::string to;        // type name after
    std::string expected;  // predicted type name
    bool type_ok = false;
    bool skeleton_fixed = false;  // diagram equality when the type is predicted fixed
    std::string note;
};
struct ReflectionReport {
    SkeletonType base;
    bool all_ok = true;
    std::vector<ReflectionCheckEntry> entries;
};
ReflectionReport skeleton_reflection_check(const ydmod::YDTuple& M, int cap = 8);

// Diagram equality: points, markers, one-point labels and all edge data;
// two-point ratios are compared only when both sides carry one.
bool skeletons_match(const Skeleton& A, const Skeleton& B, bool compare_ratios = false);

// Full verdict for a tuple: membership checks, skeleton, reflection graph,
// Nichols dimension, and the consistency of the three finiteness criteria.
// Inconsistencies are reported, never thrown.
struct TupleReport {
    int theta = 0;
    scalars::Characteristic ch;
    bool entries_simple = true;
    bool supports_generate = false;
    bool group_abelian = false;
    bool braid_indecomposable = false;

    bool has_skeleton = false;
    std::string skeleton_error;  // reason when absent
    std::optional<Skeleton> skel;
    SkeletonType type;
    bool skeleton_finite = false;
    std::string skeleton_evidence;

    cartan::SemiCartanGraph graph;
    bool groupoid_conclusive = false;  // closure reached within caps
    bool groupoid_finite = false;
    std::string groupoid_evidence;

    bool nichols_attempted = false;
    nichols::DimensionResult dimension;
    nichols::HilbertSeries series;
    bool have_series = false;
    std::string nichols_evidence;

    bool consistent = true;
    std::string inconsistency;
    std::vector<std::string> notes;
};
TupleReport classify_tuple(const ydmod::YDTuple& M,
                           const cartan::ExploreCaps& caps = {},
                           const nichols::HilbertCaps& hcaps = {});

}  // namespace skeleton
