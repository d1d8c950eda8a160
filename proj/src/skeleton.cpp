#include "engine/skeleton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace skeleton {

using scalars::Characteristic;
using scalars::RootOfUnity;

const Edge* Skeleton::edge_between(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (const auto& e : edges)
        if (e.i == i && e.j == j) return &e;
    return nullptr;
}

namespace {

std::string marker_text(VertexMarker m) {
    switch (m) {
        case VertexMarker::none: return "none";
        case VertexMarker::double_circle: return "double-circle";
        case VertexMarker::tetrahedron_class: return "tetrahedron";
        case VertexMarker::dihedral_class: return "dihedral";
    }
    return "none";
}

}  // namespace

std::string to_string(const Skeleton& S) {
    std::ostringstream os;
    os << "skeleton theta " << S.theta << "\n";
    for (int i = 0; i < S.theta; ++i) {
        const Vertex& v = S.vertices[i];
        os << "vertex " << (i + 1) << " points " << v.points;
        if (v.label) os << " label " << scalars::to_string(*v.label);
        if (v.pair_ratio) os << " ratio " << scalars::to_string(*v.pair_ratio);
        if (v.marker != VertexMarker::none) os << " marker " << marker_text(v.marker);
        os << "\n";
    }
    std::vector<Edge> es = S.edges;
    std::sort(es.begin(), es.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    for (const auto& e : es) {
        os << "edge " << (e.i + 1) << " " << (e.j + 1) << " mult " << e.multiplicity << " "
           << (e.dashed ? "dashed" : "continuous");
        if (e.oriented_to >= 0) os << " oriented " << (e.oriented_to + 1);
        if (e.double_arrow) os << " double-arrow";
        if (e.label) os << " label " << scalars::to_string(*e.label);
        os << "\n";
    }
    return os.str();
}

std::string SkeletonType::name() const {
    if (family == "none") return "none";
    if (extended) return family;
    return family + "_" + std::to_string(theta);
}

// ---------------------------------------------------------------------------
// extraction

Skeleton extract_skeleton(const ydmod::YDTuple& M, int cap) {
    const int th = (int)M.modules.size();
    if (th == 0) throw std::runtime_error("extract_skeleton: empty tuple");
    const groups::FiniteGroup& G = *M.G;

    Skeleton S;
    S.theta = th;
    std::vector<std::vector<int>> supp(th);
    for (int i = 0; i < th; ++i) {
        const ydmod::YDModule& Mi = M.modules[i];
        if (Mi.is_zero())
            throw std::runtime_error("extract_skeleton: entry " + std::to_string(i + 1) +
                                     " is the zero module; unsupported input");
        if (!ydmod::is_absolutely_simple(Mi))
            throw std::runtime_error("extract_skeleton: entry " + std::to_string(i + 1) +
                                     " is not absolutely simple; unsupported input");
        supp[i] = ydmod::support(Mi);
        int pts = (int)supp[i].size();
        if (Mi.dim != pts)
            throw std::runtime_error(
                "extract_skeleton: no skeleton: entry " + std::to_string(i + 1) + " has a " +
                std::to_string(Mi.dim / pts) +
                "-dimensional isotypic component, so its centralizer character is not linear");
        Vertex v;
        v.points = pts;
        if (pts == 1) {
            v.label = ydmod::component_scalar(Mi, supp[i][0], supp[i][0]);
        } else if (pts == 2) {
            // both support elements give the same ratio: for {s, s'} the
            // scalar of s' s^-1 on V_s equals the one of s s'^-1 on V_{s'}
            RootOfUnity a = ydmod::component_scalar(Mi, supp[i][0], supp[i][1]);
            RootOfUnity b = ydmod::component_scalar(Mi, supp[i][0], supp[i][0]);
            v.pair_ratio = scalars::mul(a, scalars::inv(b), M.ch);
        } else if (pts == 4) {
            int commuting = 0;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (G.mul(supp[i][a], supp[i][b]) == G.mul(supp[i][b], supp[i][a])) ++commuting;
            if (commuting == 0) v.marker = VertexMarker::tetrahedron_class;
            else if (commuting == 2) v.marker = VertexMarker::dihedral_class;
        }
        S.vertices.push_back(v);
    }

    ydmod::CartanMatrixResult A = ydmod::cartan_matrix(M, cap);
    if (!A.complete) {
        auto [i, j] = A.exceeded.front();
        throw std::runtime_error("extract_skeleton: Cartan entry (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ") exceeds the adjoint cap " +
                                 std::to_string(cap));
    }

    for (int i = 0; i < th; ++i) {
        for (int j = i + 1; j < th; ++j) {
            long aij = A.A[i][j], aji = A.A[j][i];
            if ((aij == 0) != (aji == 0))
                throw std::runtime_error("extract_skeleton: no skeleton: Cartan entries (" +
                                         std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                         ") vanish on one side only");
            if (aij == 0) continue;
            if (aij != -1 && aji != -1)
                throw std::runtime_error(
                    "extract_skeleton: no skeleton: Cartan entries a(" + std::to_string(i + 1) +
                    "," + std::to_string(j + 1) + ") = " + std::to_string(aij) + " and a(" +
                    std::to_string(j + 1) + "," + std::to_string(i + 1) + ") = " +
                    std::to_string(aji) + " are both below -1");
            Edge e;
            e.i = i;
            e.j = j;
            e.multiplicity = (int)(aij * aji);
            if (aij == -1 && aji < -1) e.oriented_to = j;
            else if (aji == -1 && aij < -1) e.oriented_to = i;
            bool commuting = true;
            for (int x : supp[i])
                for (int y : supp[j])
                    if (G.mul(x, y) != G.mul(y, x)) commuting = false;
            e.dashed = !commuting;
            if (S.vertices[i].points == 1 || S.vertices[j].points == 1) {
                // one support is central, so both factors are defined and
                // independent of the chosen support elements
                RootOfUnity a = ydmod::component_scalar(M.modules[i], supp[i][0], supp[j][0]);
                RootOfUnity b = ydmod::component_scalar(M.modules[j], supp[j][0], supp[i][0]);
                e.label = scalars::mul(a, b, M.ch);
            }
            S.edges.push_back(e);
        }
    }
    return S;
}

// ---------------------------------------------------------------------------
// catalog templates and matching

namespace {

enum class LX { any, one, minus_one, param, param_inv, minus_param };

struct TVertex {
    int points = 2;
    LX label = LX::any;
    VertexMarker marker = VertexMarker::none;
};

struct TEdge {
    int a = 0, b = 0;
    int mult = 1;
    bool dashed = true;
    int oriented_to = -1;  // template position
    LX label = LX::any;
    bool double_arrow = false;
};

struct Template {
    std::string family;
    int theta = 0;
    bool finite_type = false;
    bool extended = false;
    bool needs_param = false;  // resolved p must satisfy (3)_{-p} = 0
    int required_char = -1;    // -1 any, -2 "not two", else exact
    std::vector<TVertex> v;
    std::vector<TEdge> e;
};

// anticommuting generator pairs of the canonical epsilon-twisted group,
// shared between the diagram templates and the realization plans
std::vector<std::pair<int, int>> adjacency(const std::string& family, int theta) {
    std::vector<std::pair<int, int>> adj;
    if (family == "alpha" || family == "beta") {
        for (int i = 0; i + 1 < theta; ++i) adj.push_back({i, i + 1});
    } else if (family == "gamma") {
        for (int i = 0; i + 2 < theta; ++i) adj.push_back({i, i + 1});
    } else if (family == "delta") {
        for (int i = 0; i + 2 < theta; ++i) adj.push_back({i, i + 1});
        adj.push_back({theta - 3, theta - 1});
    } else if (family == "epsilon") {
        for (int i = 0; i + 2 < theta; ++i) adj.push_back({i, i + 1});
        adj.push_back({2, theta - 1});
    } else if (family == "phi") {
        adj.push_back({2, 3});
    } else {
        throw std::logic_error("adjacency: unknown family " + family);
    }
    return adj;
}

Template simply_laced(const std::string& family, int theta) {
    Template t;
    t.family = family;
    t.theta = theta;
    t.finite_type = true;
    t.v.assign(theta, TVertex{2, LX::any, VertexMarker::none});
    for (auto [a, b] : adjacency(family, theta))
        t.e.push_back(TEdge{a, b, 1, true, -1, LX::any, false});
    return t;
}

std::vector<Template> templates_for(int theta) {
    std::vector<Template> out;
    if (theta >= 2) out.push_back(simply_laced("alpha", theta));
    if (theta >= 4) out.push_back(simply_laced("delta", theta));
    if (theta >= 6 && theta <= 8) out.push_back(simply_laced("epsilon", theta));
    if (theta >= 3) {
        {
            Template t = simply_laced("beta", theta);
            t.required_char = 3;
            t.e.back() = TEdge{theta - 2, theta - 1, 2, true, theta - 1, LX::any, false};
            out.push_back(t);
        }
        {
            Template t;
            t.family = "gamma";
            t.theta = theta;
            t.finite_type = true;
            t.required_char = -2;
            t.v.assign(theta - 1, TVertex{2, LX::any, VertexMarker::none});
            t.v.push_back(TVertex{1, LX::minus_one, VertexMarker::none});
            for (int i = 0; i + 2 < theta; ++i)
                t.e.push_back(TEdge{i, i + 1, 1, true, -1, LX::any, false});
            t.e.push_back(TEdge{theta - 2, theta - 1, 2, false, theta - 2, LX::minus_one, false});
            out.push_back(t);
        }
        {
            Template t;
            t.family = "beta'";
            t.theta = theta;
            t.finite_type = (theta == 3);
            t.needs_param = true;
            t.v.assign(theta - 1, TVertex{1, LX::param, VertexMarker::none});
            t.v.push_back(TVertex{3, LX::any, VertexMarker::none});
            for (int i = 0; i + 2 < theta; ++i)
                t.e.push_back(TEdge{i, i + 1, 1, false, -1, LX::param_inv, false});
            t.e.push_back(TEdge{theta - 2, theta - 1, 2, false, theta - 1, LX::param_inv, false});
            out.push_back(t);
        }
        {
            Template t;
            t.family = "beta''";
            t.theta = theta;
            t.finite_type = (theta == 3);
            t.needs_param = true;
            t.v.assign(theta - 2, TVertex{1, LX::param, VertexMarker::none});
            t.v.push_back(TVertex{2, LX::minus_param, VertexMarker::none});
            t.v.push_back(TVertex{3, LX::any, VertexMarker::none});
            for (int i = 0; i + 3 < theta; ++i)
                t.e.push_back(TEdge{i, i + 1, 1, false, -1, LX::param_inv, false});
            t.e.push_back(TEdge{theta - 3, theta - 2, 2, false, theta - 2, LX::param_inv, false});
            t.e.push_back(TEdge{theta - 2, theta - 1, 2, true, theta - 1, LX::any, false});
            out.push_back(t);
        }
    }
    if (theta == 4) {
        Template t;
        t.family = "phi";
        t.theta = 4;
        t.finite_type = true;
        t.required_char = -2;
        t.v = {TVertex{1, LX::minus_one, VertexMarker::none},
               TVertex{1, LX::minus_one, VertexMarker::none},
               TVertex{2, LX::any, VertexMarker::none}, TVertex{2, LX::any, VertexMarker::none}};
        t.e = {TEdge{0, 1, 1, false, -1, LX::minus_one, false},
               TEdge{1, 2, 2, false, 2, LX::minus_one, false},
               TEdge{2, 3, 1, true, -1, LX::any, false}};
        out.push_back(t);
    }
    if (theta == 2) {
        auto pair_entry = [](std::string fam, TVertex v0, TVertex v1, TEdge e01) {
            Template t;
            t.family = std::move(fam);
            t.theta = 2;
            t.extended = true;
            t.v = {v0, v1};
            t.e = {e01};
            return t;
        };
        {
            Template t = pair_entry("b2gamma2", TVertex{2, LX::any, VertexMarker::none},
                                    TVertex{2, LX::any, VertexMarker::none},
                                    TEdge{0, 1, 2, true, 1, LX::any, false});
            t.required_char = 3;
            out.push_back(t);
        }
        out.push_back(pair_entry("b2gamma3a",
                                 TVertex{1, LX::any, VertexMarker::double_circle},
                                 TVertex{3, LX::any, VertexMarker::none},
                                 TEdge{0, 1, 2, false, 1, LX::any, false}));
        out.push_back(pair_entry("b2gamma3b", TVertex{2, LX::any, VertexMarker::none},
                                 TVertex{3, LX::any, VertexMarker::none},
                                 TEdge{0, 1, 2, true, 1, LX::any, false}));
        {
            Template t = pair_entry("b2gamma3c", TVertex{1, LX::param, VertexMarker::none},
                                    TVertex{3, LX::any, VertexMarker::none},
                                    TEdge{0, 1, 2, false, 1, LX::param_inv, false});
            t.needs_param = true;
            out.push_back(t);
        }
        out.push_back(pair_entry("b2gamma3d", TVertex{1, LX::one, VertexMarker::none},
                                 TVertex{3, LX::any, VertexMarker::none},
                                 TEdge{0, 1, 2, false, 1, LX::any, false}));
        out.push_back(pair_entry("b2gamma3e", TVertex{1, LX::one, VertexMarker::none},
                                 TVertex{3, LX::any, VertexMarker::none},
                                 TEdge{0, 1, 4, false, 1, LX::any, false}));
        out.push_back(pair_entry("b2gamma3x", TVertex{2, LX::any, VertexMarker::none},
                                 TVertex{3, LX::any, VertexMarker::none},
                                 TEdge{0, 1, 4, true, -1, LX::any, true}));
        {
            Template t = pair_entry("b2t", TVertex{1, LX::param, VertexMarker::none},
                                    TVertex{4, LX::any, VertexMarker::tetrahedron_class},
                                    TEdge{0, 1, 3, false, 1, LX::any, false});
            t.needs_param = true;
            out.push_back(t);
        }
        out.push_back(pair_entry("b2gamma4", TVertex{2, LX::any, VertexMarker::none},
                                 TVertex{4, LX::any, VertexMarker::dihedral_class},
                                 TEdge{0, 1, 2, true, 1, LX::any, false}));
    }
    return out;
}

bool lx_ok(LX lx, const std::optional<RootOfUnity>& val, std::optional<RootOfUnity>& p,
           Characteristic ch) {
    switch (lx) {
        case LX::any: return true;
        case LX::one: return val && val->is_one();
        case LX::minus_one: return val && *val == scalars::neg_one(ch);
        case LX::param:
            if (!val) return false;
            if (p) return *val == *p;
            p = *val;
            return true;
        case LX::param_inv:
            if (!val) return false;
            if (p) return *val == scalars::inv(*p);
            p = scalars::inv(*val);
            return true;
        case LX::minus_param:
            if (!val) return false;
            if (p) return *val == scalars::mul(scalars::neg_one(ch), *p, ch);
            p = scalars::mul(scalars::neg_one(ch), *val, ch);
            return true;
    }
    return false;
}

struct MatchResult {
    bool ok = false;
    std::optional<RootOfUnity> p;
};

bool match_rec(const Skeleton& S, const Template& T, Characteristic ch, int pos,
               std::vector<int>& assign, std::vector<char>& used, std::optional<RootOfUnity>& p) {
    const int th = T.theta;
    if (pos == th) {
        if (T.needs_param) {
            if (!p) return false;
            RootOfUnity mp = scalars::mul(scalars::neg_one(ch), *p, ch);
            if (!scalars::q_number_is_zero(3, mp, ch)) return false;
        }
        return true;
    }
    for (int v = 0; v < th; ++v) {
        if (used[v]) continue;
        const Vertex& sv = S.vertices[v];
        const TVertex& tv = T.v[pos];
        if (sv.points != tv.points || sv.marker != tv.marker) continue;
        std::optional<RootOfUnity> p2 = p;
        const std::optional<RootOfUnity>& attached =
            tv.points == 1 ? sv.label : (tv.points == 2 ? sv.pair_ratio : std::nullopt);
        if (!lx_ok(tv.label, attached, p2, ch)) continue;
        bool edges_ok = true;
        for (int q = 0; q < pos && edges_ok; ++q) {
            const TEdge* te = nullptr;
            for (const auto& cand : T.e)
                if ((cand.a == q && cand.b == pos) || (cand.a == pos && cand.b == q)) te = &cand;
            const Edge* se = S.edge_between(assign[q], v);
            if (!te) {
                if (se) edges_ok = false;
                continue;
            }
            if (!se || se->multiplicity != te->mult || se->dashed != te->dashed ||
                se->double_arrow != te->double_arrow) {
                edges_ok = false;
                continue;
            }
            int want = -1;
            if (te->oriented_to == q) want = assign[q];
            else if (te->oriented_to == pos) want = v;
            if (se->oriented_to != want) {
                edges_ok = false;
                continue;
            }
            if (!lx_ok(te->label, se->label, p2, ch)) edges_ok = false;
        }
        if (!edges_ok) continue;
        assign[pos] = v;
        used[v] = 1;
        if (match_rec(S, T, ch, pos + 1, assign, used, p2)) {
            p = p2;
            return true;
        }
        used[v] = 0;
    }
    return false;
}

MatchResult match_template(const Skeleton& S, const Template& T, Characteristic ch) {
    MatchResult r;
    if (S.theta != T.theta || (int)S.edges.size() != (int)T.e.size()) return r;
    if (T.required_char == 3 && ch.p != 3) return r;
    if (T.required_char == -2 && ch.p == 2) return r;
    std::multiset<int> sp, tp;
    for (const auto& v : S.vertices) sp.insert(v.points);
    for (const auto& v : T.v) tp.insert(v.points);
    if (sp != tp) return r;
    std::vector<int> assign(T.theta, -1);
    std::vector<char> used(T.theta, 0);
    std::optional<RootOfUnity> p;
    if (match_rec(S, T, ch, 0, assign, used, p)) {
        r.ok = true;
        r.p = p;
    }
    return r;
}

}  // namespace

SkeletonType classify_skeleton(const Skeleton& S, Characteristic ch) {
    if (S.theta < 1) throw std::runtime_error("classify_skeleton: empty skeleton");
    if (S.theta > 9)
        throw std::runtime_error("classify_skeleton: matching is limited to nine vertices");
    if ((int)S.vertices.size() != S.theta)
        throw std::runtime_error("classify_skeleton: vertex count does not match theta");
    for (const Template& T : templates_for(S.theta)) {
        MatchResult m = match_template(S, T, ch);
        if (m.ok) {
            SkeletonType t;
            t.family = T.family;
            t.theta = S.theta;
            t.finite_type = T.finite_type;
            t.extended = T.extended;
            t.parameter = m.p;
            return t;
        }
    }
    return SkeletonType{"none", S.theta, false, false, std::nullopt};
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> rows = {
        {"alpha", 2, 9, true, false,
         "simply laced chain: two-point vertices joined by single dashed edges"},
        {"beta", 3, 9, true, false,
         "chain of two-point vertices with a doubled dashed edge toward the last vertex; "
         "characteristic three only"},
        {"beta'", 3, 9, true, false,
         "chain of one-point vertices labeled p with a doubled continuous edge into a "
         "three-point vertex; 1 - p + p^2 = 0; finite type exactly at three vertices"},
        {"beta''", 3, 9, true, false,
         "one-point chain, a two-point vertex labeled -p, then a doubled dashed edge into a "
         "three-point vertex; 1 - p + p^2 = 0; finite type exactly at three vertices"},
        {"gamma", 3, 9, true, false,
         "chain of two-point vertices with a doubled continuous edge toward the chain and a "
         "one-point end labeled -1; characteristic not two"},
        {"delta", 4, 9, true, false, "simply laced, branching at the second-to-last chain vertex"},
        {"epsilon", 6, 8, true, false, "simply laced, branching at the third chain vertex"},
        {"phi", 4, 4, true, false,
         "two one-point vertices labeled -1, a doubled continuous edge into a two-point "
         "vertex, then a single dashed edge; characteristic not two"},
        {"b2gamma2", 2, 2, false, true,
         "two two-point vertices, doubled dashed oriented edge; characteristic three"},
        {"b2gamma3a", 2, 2, false, true,
         "double-circled point (two-dimensional isotypic component) with a doubled continuous "
         "edge into a three-point vertex; outside the strict skeleton formalism"},
        {"b2gamma3b", 2, 2, false, true,
         "two-point vertex with a doubled dashed oriented edge into a three-point vertex"},
        {"b2gamma3c", 2, 2, false, true,
         "one-point vertex labeled p with a doubled continuous oriented edge into a "
         "three-point vertex; 1 - p + p^2 = 0"},
        {"b2gamma3d", 2, 2, false, true,
         "one-point vertex labeled 1 with a doubled continuous oriented edge into a "
         "three-point vertex"},
        {"b2gamma3e", 2, 2, false, true,
         "one-point vertex labeled 1 with a quadrupled continuous oriented edge into a "
         "three-point vertex"},
        {"b2gamma3x", 2, 2, false, true,
         "two-point and three-point vertices with a quadrupled dashed edge, arrows both ways "
         "(both Cartan entries -2); not a skeleton in the strict sense"},
        {"b2t", 2, 2, false, true,
         "one-point vertex labeled p with a tripled continuous edge into a four-point "
         "tetrahedral class; 1 - p + p^2 = 0"},
        {"b2gamma4", 2, 2, false, true,
         "two-point vertex with a doubled dashed oriented edge into a four-point dihedral "
         "class"},
    };
    return rows;
}

// ---------------------------------------------------------------------------
// realization

namespace {

std::string normalize_family(const std::string& f) {
    if (f == "betap") return "beta'";
    if (f == "betapp") return "beta''";
    return f;
}

// smallest root of unity p with 1 - p + p^2 = 0, i.e. (3)_{-p} = 0
RootOfUnity solve_chain_parameter(Characteristic ch) {
    for (long d = 1; d <= 12; ++d) {
        if (ch.p > 0 && d % ch.p == 0) continue;
        for (long k = (d == 1 ? 0 : 1); k < d; ++k) {
            if (d > 1 && std::gcd(k, d) != 1) continue;
            RootOfUnity r = scalars::zeta(d, k, ch);
            if (scalars::q_number_is_zero(3, scalars::mul(scalars::neg_one(ch), r, ch), ch))
                return r;
        }
    }
    throw std::logic_error("solve_chain_parameter: no root of order <= 12 found");
}

struct PairCond {
    int i = 0, j = 0;   // vertex indices, i < j
    int ei = 0, ej = 0; // group elements evaluated by sigma_i and sigma_j
    RootOfUnity prod;   // required sigma_i(ei) * sigma_j(ej)
};

struct Plan {
    std::shared_ptr<groups::FiniteGroup> G;
    std::vector<int> sup;  // support element per vertex
    std::vector<std::vector<std::pair<int, RootOfUnity>>> unary;
    std::vector<PairCond> pairs;
};

Plan eps_twisted_plan(int theta, const std::vector<std::pair<int, int>>& adj) {
    std::vector<std::vector<int>> comm(theta, std::vector<int>(theta, 0));
    for (auto [a, b] : adj) comm[a][b] = comm[b][a] = 1;
    Plan P;
    P.G = std::make_shared<groups::FiniteGroup>(
        groups::make_epsilon_twisted(theta, comm, std::vector<int>(theta, 0)));
    for (int i = 0; i < theta; ++i)
        P.sup.push_back(P.G->generator("s" + std::to_string(i + 1)));
    P.unary.resize(theta);
    return P;
}

bool pair_adjacent(const std::vector<std::pair<int, int>>& adj, int i, int j) {
    for (auto [a, b] : adj)
        if ((a == i && b == j) || (a == j && b == i)) return true;
    return false;
}

std::vector<groups::LinearCharacter> solve_characters(const Plan& P, Characteristic ch,
                                                      const std::string& what) {
    const int th = (int)P.sup.size();
    std::vector<std::vector<groups::LinearCharacter>> cand(th);
    for (int i = 0; i < th; ++i) {
        groups::Subgroup H = groups::centralizer(*P.G, P.sup[i]);
        for (auto& chi : groups::linear_characters(H, ch, 8192)) {
            bool ok = true;
            for (const auto& [e, val] : P.unary[i]) {
                if (!H.contains(e))
                    throw std::logic_error("realize_skeleton: condition element outside the "
                                           "centralizer of vertex " + std::to_string(i + 1));
                if (!(chi(e) == val)) { ok = false; break; }
            }
            if (ok) cand[i].push_back(chi);
        }
        if (cand[i].empty())
            throw std::runtime_error("realize_skeleton: " + what +
                                     ": no centralizer character satisfies the vertex " +
                                     std::to_string(i + 1) + " conditions");
    }
    std::vector<std::vector<const PairCond*>> by_hi(th);
    for (const auto& pc : P.pairs) by_hi[std::max(pc.i, pc.j)].push_back(&pc);

    std::vector<groups::LinearCharacter> chosen(th);
    std::function<bool(int)> dfs = [&](int i) -> bool {
        if (i == th) return true;
        for (const auto& chi : cand[i]) {
            bool ok = true;
            for (const PairCond* pc : by_hi[i]) {
                const groups::LinearCharacter& a = pc->i == i ? chi : chosen[pc->i];
                const groups::LinearCharacter& b = pc->j == i ? chi : chosen[pc->j];
                if (!(scalars::mul(a(pc->ei), b(pc->ej), ch) == pc->prod)) { ok = false; break; }
            }
            if (!ok) continue;
            chosen[i] = chi;
            if (dfs(i + 1)) return true;
        }
        return false;
    };
    if (!dfs(0))
        throw std::runtime_error("realize_skeleton: " + what +
                                 ": character search exhausted without satisfying the pair "
                                 "conditions");
    return chosen;
}

}  // namespace

std::vector<std::vector<int>> family_commutation(const std::string& family, int theta) {
    std::vector<std::vector<int>> comm(theta, std::vector<int>(theta, 0));
    for (auto [a, b] : adjacency(normalize_family(family), theta)) comm[a][b] = comm[b][a] = 1;
    return comm;
}

Realization realize_skeleton(const std::string& family_in, int theta, Characteristic ch) {
    const std::string family = normalize_family(family_in);
    const RootOfUnity one = scalars::one_root();
    const RootOfUnity m1 = scalars::neg_one(ch);

    auto range_check = [&](int lo, int hi) {
        if (theta < lo || theta > hi)
            throw std::runtime_error("realize_skeleton: " + family + " needs between " +
                                     std::to_string(lo) + " and " + std::to_string(hi) +
                                     " vertices, got " + std::to_string(theta));
    };

    Plan P;
    if (family == "alpha" || family == "beta" || family == "gamma" || family == "delta" ||
        family == "epsilon" || family == "phi") {
        if (family == "alpha") range_check(2, 9);
        else if (family == "beta") range_check(3, 9);
        else if (family == "gamma") range_check(3, 9);
        else if (family == "delta") range_check(4, 9);
        else if (family == "epsilon") range_check(6, 8);
        else range_check(4, 4);
        if (family == "beta" && ch.p != 3)
            throw std::runtime_error(
                "realize_skeleton: beta_" + std::to_string(theta) +
                " has no realization in characteristic " + std::to_string(ch.p) +
                ": the last vertex needs sigma(s) = 1 with (3)_1 = 0, which holds only in "
                "characteristic three");
        if ((family == "gamma" || family == "phi") && ch.p == 2)
            throw std::runtime_error("realize_skeleton: " + family +
                                     " has no realization in characteristic two: it needs a "
                                     "vertex label -1 distinct from 1");
        std::vector<std::pair<int, int>> adj = adjacency(family, theta);
        P = eps_twisted_plan(theta, adj);
        const int eps = P.G->generator("eps");
        for (int i = 0; i < theta; ++i) P.unary[i].push_back({P.sup[i], m1});
        if (family == "beta") P.unary[theta - 1] = {{P.sup[theta - 1], one}};
        for (int i = 0; i < theta; ++i) {
            for (int j = i + 1; j < theta; ++j) {
                bool adjac = pair_adjacent(adj, i, j);
                if (family == "gamma") {
                    if (i == theta - 2 && j == theta - 1) {
                        P.pairs.push_back({i, j, P.sup[j], P.sup[i], m1});
                        continue;
                    }
                    if (!adjac) P.pairs.push_back({i, j, P.sup[j], P.sup[i], one});
                    if (j < theta - 1) P.pairs.push_back({i, j, eps, eps, one});
                    continue;
                }
                if (family == "phi") {
                    RootOfUnity want = (j == i + 1 && j <= 2) ? m1 : one;
                    if (adjac) P.pairs.push_back({i, j, eps, eps, one});
                    else P.pairs.push_back({i, j, P.sup[j], P.sup[i], want});
                    continue;
                }
                // alpha, beta, delta, epsilon
                P.pairs.push_back({i, j, eps, eps, one});
                if (!adjac) P.pairs.push_back({i, j, P.sup[j], P.sup[i], one});
            }
        }
    } else if (family == "beta'" || family == "beta''") {
        range_check(3, 9);
        const RootOfUnity p = solve_chain_parameter(ch);
        const RootOfUnity pinv = scalars::inv(p);
        const int central = family == "beta'" ? theta - 1 : theta - 2;
        groups::FiniteGroup amb =
            central > 0 ? groups::make_cyclic(6, "s1")
                        : groups::make_gamma_quotient(3, 2, family == "beta'" ? 3 : 6);
        if (central > 0) {
            for (int i = 2; i <= central; ++i)
                amb = groups::direct_product(amb, groups::make_cyclic(6, "s" + std::to_string(i)));
            amb = groups::direct_product(
                amb, groups::make_gamma_quotient(3, 2, family == "beta'" ? 3 : 6));
        }
        P.G = std::make_shared<groups::FiniteGroup>(std::move(amb));
        const groups::FiniteGroup& G = *P.G;
        for (int i = 0; i < central; ++i) P.sup.push_back(G.generator("s" + std::to_string(i + 1)));
        if (family == "beta''") P.sup.push_back(G.generator("b"));
        P.sup.push_back(G.generator("a"));
        P.unary.resize(theta);
        const int nu = G.generator("nu");
        const int nu2 = G.pow(nu, 2);
        // s_theta s_{theta-1} = eps s_{theta-1} s_theta with eps = nu^2
        if (family == "beta''" &&
            G.mul(P.sup[theta - 1], P.sup[theta - 2]) !=
                G.mul(nu2, G.mul(P.sup[theta - 2], P.sup[theta - 1])))
            throw std::logic_error("realize_skeleton: gamma-quotient relations are off");
        for (int i = 0; i < central; ++i) P.unary[i].push_back({P.sup[i], p});
        if (family == "beta''") {
            P.unary[theta - 2].push_back({P.sup[theta - 2], m1});
            P.unary[theta - 2].push_back({nu2, scalars::mul(m1, p, ch)});
        }
        P.unary[theta - 1].push_back({P.sup[theta - 1], m1});
        for (int i = 0; i < theta; ++i) {
            for (int j = i + 1; j < theta; ++j) {
                if (family == "beta''" && i == theta - 2 && j == theta - 1) {
                    int b = P.sup[theta - 2];
                    P.pairs.push_back({i, j, nu2, G.mul(nu2, G.mul(b, b)), one});
                    continue;
                }
                RootOfUnity want = (j == i + 1) ? pinv : one;
                P.pairs.push_back({i, j, P.sup[j], P.sup[i], want});
            }
        }
    } else {
        throw std::runtime_error("realize_skeleton: unknown family " + family_in);
    }

    std::vector<groups::LinearCharacter> sigma =
        solve_characters(P, ch, family + "_" + std::to_string(theta));
    std::vector<ydmod::YDModule> mods;
    for (int i = 0; i < theta; ++i) mods.push_back(ydmod::induce(*P.G, P.sup[i], sigma[i]));
    ydmod::YDTuple T = ydmod::make_tuple(*P.G, std::move(mods), ch);

    Realization R;
    R.ambient = P.G;
    R.ambient_tuple = T;
    std::vector<int> gens;
    for (const auto& mod : T.modules)
        for (int s : ydmod::support(mod)) gens.push_back(s);
    groups::Subgroup H = groups::subgroup_generated(*P.G, gens);
    if (H.size() < P.G->n) {
        ydmod::RestrictedTuple rt = ydmod::restrict_tuple(T, H);
        R.G = rt.H;
        R.tuple = std::move(rt.tuple);
        R.restricted = true;
    } else {
        R.G = P.G;
        R.tuple = std::move(T);
    }

    Skeleton S = extract_skeleton(R.tuple, 8);
    R.type = classify_skeleton(S, ch);
    if (R.type.family != family || R.type.theta != theta)
        throw std::logic_error("realize_skeleton: " + family + "_" + std::to_string(theta) +
                               " produced a tuple whose skeleton classifies as " + R.type.name());
    return R;
}

// ---------------------------------------------------------------------------
// reflection behaviour

bool skeletons_match(const Skeleton& A, const Skeleton& B, bool compare_ratios) {
    if (A.theta != B.theta || A.edges.size() != B.edges.size()) return false;
    for (int i = 0; i < A.theta; ++i) {
        const Vertex& a = A.vertices[i];
        const Vertex& b = B.vertices[i];
        if (a.points != b.points || a.marker != b.marker || a.label != b.label) return false;
        if (compare_ratios && a.pair_ratio != b.pair_ratio) return false;
    }
    auto key = [](const Edge& e) {
        return std::tuple(e.i, e.j, e.multiplicity, e.oriented_to, e.dashed, e.double_arrow,
                          e.label);
    };
    std::vector<Edge> ea = A.edges, eb = B.edges;
    auto lt = [&](const Edge& x, const Edge& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); };
    std::sort(ea.begin(), ea.end(), lt);
    std::sort(eb.begin(), eb.end(), lt);
    for (size_t k = 0; k < ea.size(); ++k)
        if (key(ea[k]) != key(eb[k])) return false;
    return true;
}

ReflectionReport skeleton_reflection_check(const ydmod::YDTuple& M, int cap) {
    ReflectionReport R;
    Skeleton S0 = extract_skeleton(M, cap);
    R.base = classify_skeleton(S0, M.ch);
    if (!R.base.matched())
        throw std::runtime_error(
            "skeleton_reflection_check: the skeleton matches no catalog entry");
    const int th = S0.theta;
    for (int k = 0; k < th; ++k) {
        ReflectionCheckEntry E;
        E.k = k + 1;
        E.from = R.base.name();
        SkeletonType expect = R.base;
        if (k == th - 1 && (R.base.family == "beta'" || R.base.family == "beta''"))
            expect.family = R.base.family == "beta'" ? "beta''" : "beta'";
        E.expected = expect.name();
        try {
            ydmod::YDTuple Mk = ydmod::reflect(M, k, cap);
            Skeleton Sk = extract_skeleton(Mk, cap);
            SkeletonType Tk = classify_skeleton(Sk, M.ch);
            E.to = Tk.name();
            E.type_ok = Tk.family == expect.family && Tk.theta == expect.theta &&
                        Tk.parameter == expect.parameter;
            E.skeleton_fixed =
                expect.family == R.base.family ? skeletons_match(S0, Sk, false) : E.type_ok;
            if (!E.type_ok || !E.skeleton_fixed) {
                R.all_ok = false;
                E.note = "deviates from the predicted skeleton";
            }
        } catch (const std::exception& ex) {
            E.note = ex.what();
            R.all_ok = false;
        }
        R.entries.push_back(E);
    }
    return R;
}

// ---------------------------------------------------------------------------
// full tuple verdict

namespace {

bool group_is_abelian(const groups::FiniteGroup& G) {
    for (int a : G.gen_elems)
        for (int b : G.gen_elems)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

}  // namespace

TupleReport classify_tuple(const ydmod::YDTuple& M, const cartan::ExploreCaps& caps,
                           const nichols::HilbertCaps& hcaps) {
    TupleReport R;
    R.theta = (int)M.modules.size();
    R.ch = M.ch;
    R.group_abelian = group_is_abelian(*M.G);
    for (int i = 0; i < R.theta; ++i) {
        if (M.modules[i].is_zero() || !ydmod::is_absolutely_simple(M.modules[i])) {
            R.entries_simple = false;
            R.notes.push_back("entry " + std::to_string(i + 1) + " is not absolutely simple");
        }
    }
    R.supports_generate = ydmod::supports_generate(M);
    if (!R.supports_generate)
        R.notes.push_back("the supports do not generate the group; verdicts describe the "
                          "subgroup they generate only indirectly");
    R.braid_indecomposable = ydmod::is_braid_indecomposable(M);
    if (!R.braid_indecomposable && R.theta > 1)
        R.notes.push_back("the braiding is decomposable; connected components classify "
                          "independently");

    try {
        R.skel = extract_skeleton(M, caps.adjoint_cap);
        R.has_skeleton = true;
    } catch (const std::exception& ex) {
        R.skeleton_error = ex.what();
    }
    if (R.has_skeleton) {
        R.type = classify_skeleton(*R.skel, M.ch);
        if (R.theta >= 3) R.skeleton_finite = R.type.finite_type;
        else if (R.theta == 2)
            R.skeleton_finite = R.type.matched() && R.type.family != "b2gamma3x";
        else R.skeleton_finite = true;  // a single absolutely simple vertex
        R.skeleton_evidence = R.type.matched()
                                  ? "matched catalog entry " + R.type.name() +
                                        " by exact scalar comparison"
                                  : "skeleton outside the catalog";
    } else {
        R.type = SkeletonType{"none", R.theta, false, false, std::nullopt};
        R.skeleton_evidence = "no skeleton: " + R.skeleton_error;
    }

    try {
        R.graph = cartan::explore(M, caps);
    } catch (const std::exception& ex) {
        R.notes.push_back(std::string("exploration failed: ") + ex.what());
    }
    R.groupoid_finite = R.graph.complete && R.graph.is_finite && R.graph.is_cartan_graph &&
                        R.graph.admits_all_reflections;
    R.groupoid_conclusive = R.graph.complete && R.graph.is_finite;
    if (R.groupoid_finite) {
        R.groupoid_evidence = "reflection closure complete: " +
                              std::to_string(R.graph.objects.size()) + " objects, " +
                              std::to_string(R.graph.roots.empty() ? 0 : R.graph.roots[0].size()) +
                              " real roots per object, all axioms verified exactly";
    } else if (R.graph.complete && !R.graph.is_finite) {
        R.groupoid_evidence = "no finite root system within the root cap " +
                              std::to_string(caps.max_roots) + "; verified-up-to-cap";
    } else if (!R.graph.complete) {
        R.groupoid_evidence = "reflection closure exceeded the object cap " +
                              std::to_string(caps.max_objects) + "; verified-up-to-cap";
    } else {
        R.groupoid_evidence = "root system finite but a graph axiom failed";
    }

    if (R.groupoid_finite) {
        R.nichols_attempted = true;
        R.dimension = nichols::nichols_dimension(M, R.graph, hcaps);
        if (R.dimension.finite) {
            try {
                R.series = nichols::hilbert_series(M, R.graph, hcaps);
                R.have_series = true;
                R.nichols_evidence =
                    "dimension from the root-module factorization, exact integer arithmetic";
            } catch (const std::exception& ex) {
                R.notes.push_back(std::string("series computation failed: ") + ex.what());
            }
        } else {
            R.nichols_evidence = "a root module has no vanishing level within the degree cap; "
                                 "reported infinite";
        }
    } else {
        R.nichols_evidence = "not attempted: no verified finite root system";
    }

    const bool eligible = R.entries_simple && R.supports_generate && R.braid_indecomposable &&
                          !R.group_abelian && R.theta >= 2;
    if (eligible) {
        auto flag = [&](const std::string& what) {
            R.consistent = false;
            if (!R.inconsistency.empty()) R.inconsistency += "; ";
            R.inconsistency += what;
        };
        if (R.skeleton_finite && R.graph.complete && !R.graph.is_finite)
            flag("finite-type skeleton but the root closure did not terminate");
        if (!R.skeleton_finite && R.groupoid_finite)
            flag("finite Weyl groupoid without a finite-type skeleton");
        if (R.nichols_attempted && R.dimension.finite && !R.skeleton_finite)
            flag("finite Nichols dimension without a finite-type skeleton");
        if (R.nichols_attempted && !R.dimension.finite && R.skeleton_finite)
            flag("finite-type skeleton but an infinite root module");
    }
    return R;
}

}  // namespace skeleton
