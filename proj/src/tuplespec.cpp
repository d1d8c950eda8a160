#include "engine/tuplespec.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tuplespec {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error("tuple spec: " + what); }

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> keys) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : keys)
            if (item.key() == k) { known = true; break; }
        if (!known) bad(where + ": unknown key \"" + item.key() + "\"");
    }
}

const json& get_field(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) bad(where + ": missing \"" + key + "\"");
    return j.at(key);
}

long long get_integer(const json& j, const std::string& where, const char* key) {
    const json& v = get_field(j, where, key);
    if (!v.is_number_integer()) bad(where + ": \"" + key + "\" must be an integer");
    return v.get<long long>();
}

std::string get_string(const json& j, const std::string& where, const char* key) {
    const json& v = get_field(j, where, key);
    if (!v.is_string()) bad(where + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

std::vector<int> int_row(const json& v, const std::string& where) {
    if (!v.is_array()) bad(where + " must be an array of integers");
    std::vector<int> out;
    for (const json& e : v) {
        if (!e.is_number_integer()) bad(where + " must be an array of integers");
        out.push_back(e.get<int>());
    }
    return out;
}

GroupSpec parse_group(const json& j, const std::string& where) {
    if (!j.is_object()) bad(where + ": group block must be an object");
    GroupSpec g;
    g.kind = get_string(j, where, "kind");
    if (g.kind == "cyclic") {
        check_keys(j, where, {"kind", "n", "gen"});
        g.n = (int)get_integer(j, where, "n");
        g.gen = get_string(j, where, "gen");
    } else if (g.kind == "gamma_quotient") {
        check_keys(j, where, {"kind", "n", "m_a", "m_b"});
        g.n = (int)get_integer(j, where, "n");
        g.m_a = (int)get_integer(j, where, "m_a");
        g.m_b = (int)get_integer(j, where, "m_b");
    } else if (g.kind == "epsilon_twisted") {
        check_keys(j, where, {"kind", "theta", "commutation", "squares"});
        g.theta = (int)get_integer(j, where, "theta");
        const json& comm = get_field(j, where, "commutation");
        if (!comm.is_array() || (int)comm.size() != g.theta)
            bad(where + ": \"commutation\" must be a theta-by-theta 0/1 matrix");
        for (const json& row : comm) {
            g.commutation.push_back(int_row(row, where + ": \"commutation\" rows"));
            if ((int)g.commutation.back().size() != g.theta)
                bad(where + ": \"commutation\" must be a theta-by-theta 0/1 matrix");
        }
        g.squares = int_row(get_field(j, where, "squares"), where + ": \"squares\"");
        if ((int)g.squares.size() != g.theta)
            bad(where + ": \"squares\" must list one 0/1 flag per vertex");
    } else if (g.kind == "product") {
        check_keys(j, where, {"kind", "factors"});
        const json& f = get_field(j, where, "factors");
        if (!f.is_array() || f.size() < 2) bad(where + ": a product needs at least two factors");
        for (size_t i = 0; i < f.size(); ++i)
            g.factors.push_back(
                parse_group(f[i], where + ".factors[" + std::to_string(i) + "]"));
    } else {
        bad(where + ": unknown group kind \"" + g.kind + "\"");
    }
    return g;
}

json group_to_json(const GroupSpec& g) {
    json j;
    j["kind"] = g.kind;
    if (g.kind == "cyclic") {
        j["n"] = g.n;
        j["gen"] = g.gen;
    } else if (g.kind == "gamma_quotient") {
        j["n"] = g.n;
        j["m_a"] = g.m_a;
        j["m_b"] = g.m_b;
    } else if (g.kind == "epsilon_twisted") {
        j["theta"] = g.theta;
        j["commutation"] = g.commutation;
        j["squares"] = g.squares;
    } else {
        j["factors"] = json::array();
        for (const GroupSpec& f : g.factors) j["factors"].push_back(group_to_json(f));
    }
    return j;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string join_longs(const std::vector<long long>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

std::string root_text(const cartan::Root& r) {
    std::string out;
    for (size_t i = 0; i < r.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(r[i]);
    }
    return out;
}

void matrix_lines(std::ostringstream& o, const cartan::Matrix& A) {
    for (const auto& row : A) {
        o << " ";
        for (long v : row) o << " " << v;
        o << "\n";
    }
}

void indent_block(std::ostringstream& o, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) o << "  " << line << "\n";
}

std::vector<std::vector<int>> braid_component_partition(const ydmod::YDTuple& T) {
    const int th = (int)T.modules.size();
    std::vector<int> parent(th);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (int i = 0; i < th; ++i)
        for (int j = i + 1; j < th; ++j)
            if (!ydmod::c_squared_is_identity(T.modules[i], T.modules[j]))
                parent[find(i)] = find(j);
    std::map<int, std::vector<int>> by_root;
    for (int i = 0; i < th; ++i) by_root[find(i)].push_back(i + 1);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

void crosscheck_lines(std::ostringstream& o, const nichols::CrosscheckReport& c, long degree) {
    o << "crosscheck-degree-" << degree << ": " << (c.match ? "match" : "MISMATCH") << "\n";
    o << "  product: " << join_longs(c.product_dims) << "\n";
    o << "  oracle: " << join_longs(c.oracle_dims) << "\n";
}

cartan::ExploreCaps explore_caps(const Caps& caps) {
    cartan::ExploreCaps ec;
    ec.max_objects = caps.objects;
    ec.max_roots = caps.roots;
    ec.adjoint_cap = caps.adjoint;
    return ec;
}

nichols::HilbertCaps hilbert_caps(const Caps& caps) {
    nichols::HilbertCaps hc;
    hc.adjoint_cap = caps.adjoint;
    return hc;
}

}  // namespace

TupleSpec parse_tuple(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& ex) {
        bad(std::string("invalid JSON: ") + ex.what());
    }
    if (!j.is_object()) bad("document must be an object");
    check_keys(j, "document",
               {"characteristic", "group", "restrict_to_support", "modules", "caps"});
    TupleSpec s;
    s.characteristic = (int)get_integer(j, "document", "characteristic");
    try {
        (void)scalars::Characteristic(s.characteristic);
    } catch (const std::exception& ex) {
        bad(std::string("characteristic: ") + ex.what());
    }
    s.group = parse_group(get_field(j, "document", "group"), "group");
    if (j.contains("restrict_to_support")) {
        if (!j.at("restrict_to_support").is_boolean())
            bad("\"restrict_to_support\" must be a boolean");
        s.restrict_to_support = j.at("restrict_to_support").get<bool>();
    }
    const json& mods = get_field(j, "document", "modules");
    if (!mods.is_array() || mods.empty()) bad("\"modules\" must be a nonempty array");
    for (size_t i = 0; i < mods.size(); ++i) {
        const std::string where = "modules[" + std::to_string(i) + "]";
        const json& m = mods[i];
        if (!m.is_object()) bad(where + ": must be an object");
        check_keys(m, where, {"degree", "character"});
        ModuleSpec ms;
        ms.degree = get_string(m, where, "degree");
        if (m.contains("character")) {
            const json& ch = m.at("character");
            if (!ch.is_array()) bad(where + ": \"character\" must be an array of [word, scalar]");
            for (const json& pair : ch) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
                    !pair[1].is_string())
                    bad(where + ": \"character\" entries must be [word, scalar] string pairs");
                ms.character.push_back({pair[0].get<std::string>(), pair[1].get<std::string>()});
            }
        }
        s.modules.push_back(std::move(ms));
    }
    if (j.contains("caps")) {
        const json& c = j.at("caps");
        if (!c.is_object()) bad("\"caps\" must be an object");
        check_keys(c, "caps", {"adjoint", "objects", "roots", "oracle_degree", "oracle_budget"});
        if (c.contains("adjoint")) s.caps.adjoint = (int)get_integer(c, "caps", "adjoint");
        if (c.contains("objects")) s.caps.objects = (int)get_integer(c, "caps", "objects");
        if (c.contains("roots")) s.caps.roots = (long)get_integer(c, "caps", "roots");
        if (c.contains("oracle_degree"))
            s.caps.oracle_degree = (int)get_integer(c, "caps", "oracle_degree");
        if (c.contains("oracle_budget"))
            s.caps.oracle_budget = get_integer(c, "caps", "oracle_budget");
        if (s.caps.adjoint < 1 || s.caps.objects < 1 || s.caps.roots < 1 ||
            s.caps.oracle_degree < 0 || s.caps.oracle_budget < 1)
            bad("caps must be positive");
    }
    return s;
}

TupleSpec parse_tuple_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tuple(buf.str());
}

std::string write_tuple(const TupleSpec& s) {
    json j;
    j["characteristic"] = s.characteristic;
    j["group"] = group_to_json(s.group);
    if (s.restrict_to_support) j["restrict_to_support"] = true;
    j["modules"] = json::array();
    for (const ModuleSpec& m : s.modules) {
        json mj;
        mj["degree"] = m.degree;
        if (!m.character.empty()) {
            mj["character"] = json::array();
            for (const auto& [w, v] : m.character) mj["character"].push_back({w, v});
        }
        j["modules"].push_back(std::move(mj));
    }
    j["caps"] = {{"adjoint", s.caps.adjoint},
                 {"objects", s.caps.objects},
                 {"roots", s.caps.roots},
                 {"oracle_degree", s.caps.oracle_degree},
                 {"oracle_budget", s.caps.oracle_budget}};
    return j.dump(2) + "\n";
}

groups::FiniteGroup build_group(const GroupSpec& g) {
    if (g.kind == "cyclic") return groups::make_cyclic(g.n, g.gen);
    if (g.kind == "gamma_quotient") return groups::make_gamma_quotient(g.n, g.m_a, g.m_b);
    if (g.kind == "epsilon_twisted")
        return groups::make_epsilon_twisted(g.theta, g.commutation, g.squares);
    if (g.kind == "product") {
        if (g.factors.size() < 2) bad("a product needs at least two factors");
        groups::FiniteGroup acc = build_group(g.factors[0]);
        for (size_t i = 1; i < g.factors.size(); ++i)
            acc = groups::direct_product(acc, build_group(g.factors[i]));
        return acc;
    }
    bad("unknown group kind \"" + g.kind + "\"");
}

BuiltTuple build(const TupleSpec& spec) {
    auto G = std::make_shared<groups::FiniteGroup>(build_group(spec.group));
    const scalars::Characteristic ch(spec.characteristic);
    BuiltTuple out;
    std::vector<ydmod::YDModule> mods;
    for (size_t i = 0; i < spec.modules.size(); ++i) {
        const ModuleSpec& m = spec.modules[i];
        const std::string where = "modules[" + std::to_string(i) + "]";
        int g = 0;
        try {
            g = G->element_by_word(m.degree);
        } catch (const std::exception& ex) {
            bad(where + ": degree: " + ex.what());
        }
        groups::Subgroup Z = groups::centralizer(*G, g);
        std::vector<std::pair<int, scalars::RootOfUnity>> want;
        for (const auto& [word, literal] : m.character) {
            int e = 0;
            try {
                e = G->element_by_word(word);
                want.push_back({e, scalars::parse_root(literal, ch)});
            } catch (const std::exception& ex) {
                bad(where + ": character constraint \"" + word + "\": " + ex.what());
            }
            if (!Z.contains(e))
                bad(where + ": constraint element \"" + word +
                    "\" is outside the centralizer of the degree");
        }
        const groups::LinearCharacter* pick = nullptr;
        std::vector<groups::LinearCharacter> chars = groups::linear_characters(Z, ch, 8192);
        for (const groups::LinearCharacter& chi : chars) {
            bool ok = true;
            for (const auto& [e, v] : want)
                if (!(chi(e) == v)) { ok = false; break; }
            if (ok) { pick = &chi; break; }
        }
        if (!pick) bad(where + ": no character of the centralizer matches the assignment");
        mods.push_back(ydmod::induce(*G, g, *pick));
        out.module_degrees.push_back(m.degree);
    }
    ydmod::YDTuple T = ydmod::make_tuple(*G, std::move(mods), ch);
    if (spec.restrict_to_support) {
        std::vector<int> gens;
        for (const ydmod::YDModule& m : T.modules)
            for (int s : ydmod::support(m)) gens.push_back(s);
        groups::Subgroup H = groups::subgroup_generated(*G, gens);
        if (H.size() < G->n) {
            ydmod::RestrictedTuple rt = ydmod::restrict_tuple(T, H);
            out.G = rt.H;
            out.tuple = std::move(rt.tuple);
            return out;
        }
    }
    out.G = G;
    out.tuple = std::move(T);
    return out;
}

TupleSpec realize_spec(const std::string& family, int theta, scalars::Characteristic ch) {
    skeleton::Realization R = skeleton::realize_skeleton(family, theta, ch);
    const std::string f = R.type.family;
    TupleSpec s;
    s.characteristic = ch.p;
    if (f == "beta'" || f == "beta''") {
        const int central = f == "beta'" ? theta - 1 : theta - 2;
        GroupSpec gamma;
        gamma.kind = "gamma_quotient";
        gamma.n = 3;
        gamma.m_a = 2;
        gamma.m_b = f == "beta'" ? 3 : 6;
        if (central == 0) {
            s.group = gamma;
        } else {
            GroupSpec prod;
            prod.kind = "product";
            for (int i = 1; i <= central; ++i) {
                GroupSpec c;
                c.kind = "cyclic";
                c.n = 6;
                c.gen = "s" + std::to_string(i);
                prod.factors.push_back(std::move(c));
            }
            prod.factors.push_back(std::move(gamma));
            s.group = std::move(prod);
        }
    } else {
        GroupSpec g;
        g.kind = "epsilon_twisted";
        g.theta = theta;
        g.commutation = skeleton::family_commutation(f, theta);
        g.squares = std::vector<int>(theta, 0);
        s.group = std::move(g);
    }
    s.restrict_to_support = R.restricted;
    const groups::FiniteGroup& G = *R.ambient;
    for (const ydmod::YDModule& mod : R.ambient_tuple.modules) {
        ModuleSpec m;
        const int c = ydmod::support(mod)[0];
        const groups::LinearCharacter chi = ydmod::module_character(mod, c);
        m.degree = G.element_word[c];
        std::vector<int> gens;
        groups::Subgroup span = groups::subgroup_generated(G, {});
        for (int e : chi.domain.elems) {
            if (span.contains(e)) continue;
            gens.push_back(e);
            span = groups::subgroup_generated(G, gens);
            if (span.size() == chi.domain.size()) break;
        }
        for (int e : gens) m.character.push_back({G.element_word[e], scalars::to_string(chi(e))});
        s.modules.push_back(std::move(m));
    }

    BuiltTuple B = build(s);
    skeleton::Skeleton S = skeleton::extract_skeleton(B.tuple, s.caps.adjoint);
    skeleton::SkeletonType T = skeleton::classify_skeleton(S, ch);
    if (T.name() != R.type.name())
        throw std::logic_error("realize_spec: " + R.type.name() +
                               " serialized to a file that classifies as " + T.name());
    return s;
}

RunResult run_classify(const BuiltTuple& M, const Caps& caps, long crosscheck_degree) {
    RunResult r;
    r.report = skeleton::classify_tuple(M.tuple, explore_caps(caps), hilbert_caps(caps));
    r.cartan = ydmod::cartan_matrix(M.tuple, caps.adjoint);
    if (!r.report.braid_indecomposable)
        r.braid_components = braid_component_partition(M.tuple);
    if (r.report.theta == 3 && r.report.graph.complete && r.report.graph.is_finite &&
        r.report.graph.indecomposable)
        r.rank3_case = cartan::rank3_catalog_match(r.report.graph);
    if (crosscheck_degree > 0) {
        if (!r.report.groupoid_finite) {
            r.warnings.push_back("cross-check skipped: no verified finite root system");
        } else {
            long long total = 0;
            for (const ydmod::YDModule& m : M.tuple.modules) total += m.dim;
            long long cost = 1;
            bool over = false;
            for (long i = 0; i < crosscheck_degree; ++i) {
                cost *= total;
                if (cost > caps.oracle_budget) { over = true; break; }
            }
            if (over) {
                r.warnings.push_back(
                    "cross-check skipped: (total dim)^degree exceeds the oracle budget");
            } else {
                try {
                    r.crosscheck = nichols::hilbert_oracle_crosscheck(
                        M.tuple, r.report.graph, crosscheck_degree, hilbert_caps(caps));
                    r.crosscheck_degree = crosscheck_degree;
                } catch (const std::exception& ex) {
                    r.warnings.push_back(std::string("cross-check failed to run: ") + ex.what());
                }
            }
        }
    }
    return r;
}

std::string verdict(const skeleton::TupleReport& rep) {
    if (!rep.consistent) return "inconsistent";
    const bool eligible = rep.entries_simple && rep.supports_generate &&
                          rep.braid_indecomposable && !rep.group_abelian && rep.theta >= 2;
    const bool skeleton_capped =
        !rep.has_skeleton && rep.skeleton_error.find("cap") != std::string::npos;
    if (eligible && rep.has_skeleton && rep.skeleton_finite) return "finite-dimensional";
    if (eligible && rep.has_skeleton && !rep.skeleton_finite) return "infinite-dimensional";
    if (eligible && !rep.has_skeleton && !skeleton_capped) return "infinite-dimensional";
    if (rep.nichols_attempted && rep.dimension.finite) return "finite-dimensional";
    if (rep.nichols_attempted && !rep.dimension.finite) return "infinite-dimensional-up-to-cap";
    if (!eligible) return "out-of-scope";
    return "inconclusive";
}

int exit_code(const skeleton::TupleReport& rep) {
    const std::string v = verdict(rep);
    if (v == "inconclusive" || v == "infinite-dimensional-up-to-cap") return 2;
    if (v == "finite-dimensional" && !(rep.nichols_attempted && rep.dimension.finite)) return 2;
    return 0;
}

namespace {

void echo_lines(std::ostringstream& o, const TupleSpec& spec, const BuiltTuple& M) {
    o << "characteristic: " << spec.characteristic << "\n";
    o << "group: order " << M.G->n << ", generators";
    for (const std::string& g : M.G->gen_names) o << " " << g;
    o << "\n";
    o << "theta: " << M.tuple.modules.size() << "\n";
    for (size_t i = 0; i < M.tuple.modules.size(); ++i) {
        o << "module " << i + 1 << ": degree " << M.module_degrees[i] << ", dim "
          << M.tuple.modules[i].dim << "\n";
    }
}

void cartan_matrix_lines(std::ostringstream& o, const ydmod::CartanMatrixResult& cm) {
    o << "cartan-matrix:\n";
    std::set<std::pair<int, int>> holes(cm.exceeded.begin(), cm.exceeded.end());
    for (size_t i = 0; i < cm.A.size(); ++i) {
        o << " ";
        for (size_t j = 0; j < cm.A[i].size(); ++j) {
            if (holes.count({(int)i, (int)j}))
                o << " ?";
            else
                o << " " << cm.A[i][j];
        }
        o << "\n";
    }
    if (!cm.complete) o << "  (entries marked ? exceeded the adjoint cap)\n";
}

}  // namespace

std::string render_text(const TupleSpec& spec, const BuiltTuple& M, const RunResult& r) {
    const skeleton::TupleReport& rep = r.report;
    std::ostringstream o;
    echo_lines(o, spec, M);
    o << "entries-absolutely-simple: " << yesno(rep.entries_simple) << "\n";
    o << "supports-generate: " << yesno(rep.supports_generate) << "\n";
    o << "group-abelian: " << yesno(rep.group_abelian) << "\n";
    o << "braid-indecomposable: " << yesno(rep.braid_indecomposable) << "\n";
    if (!r.braid_components.empty()) {
        o << "decomposition:";
        for (const auto& comp : r.braid_components) {
            o << " {";
            for (size_t i = 0; i < comp.size(); ++i) o << (i ? " " : "") << comp[i];
            o << "}";
        }
        o << "\n";
    }
    cartan_matrix_lines(o, r.cartan);
    if (rep.has_skeleton) {
        o << "skeleton:\n";
        indent_block(o, to_string(*rep.skel));
    } else {
        o << "skeleton: none (" << rep.skeleton_error << ")\n";
    }
    o << "skeleton-type: " << rep.type.name() << "\n";
    o << "skeleton-finite-type: " << yesno(rep.skeleton_finite) << "\n";
    o << "skeleton-evidence: " << rep.skeleton_evidence << "\n";
    std::string pos_roots = "-";
    if (!rep.graph.objects.empty() && !rep.graph.roots.empty())
        pos_roots = std::to_string(rep.graph.positive_roots(0).size());
    o << "groupoid: conclusive " << yesno(rep.groupoid_conclusive) << ", finite "
      << yesno(rep.groupoid_finite) << ", objects " << rep.graph.objects.size()
      << ", positive-roots " << pos_roots << ", standard " << yesno(rep.graph.is_standard)
      << ", cartan-graph " << yesno(rep.graph.is_cartan_graph) << "\n";
    o << "groupoid-evidence: " << rep.groupoid_evidence << "\n";
    if (!r.rank3_case.empty()) o << "rank3-case: " << r.rank3_case << "\n";
    if (rep.nichols_attempted) {
        if (rep.dimension.finite)
            o << "dimension: " << rep.dimension.value << " = " << rep.dimension.factored << "\n";
        else
            o << "dimension: infinite\n";
    } else {
        o << "dimension: not computed\n";
    }
    o << "nichols-evidence: " << rep.nichols_evidence << "\n";
    if (rep.have_series) {
        o << "hilbert-series:\n";
        indent_block(o, nichols::to_string(rep.series));
    }
    if (r.crosscheck) crosscheck_lines(o, *r.crosscheck, r.crosscheck_degree);
    if (!r.warnings.empty()) {
        o << "warnings:\n";
        for (const std::string& w : r.warnings) o << "  - " << w << "\n";
    }
    o << "consistent: " << yesno(rep.consistent) << "\n";
    if (!rep.consistent) o << "inconsistency: " << rep.inconsistency << "\n";
    if (!rep.notes.empty()) {
        o << "notes:\n";
        for (const std::string& n : rep.notes) o << "  - " << n << "\n";
    }
    o << "verdict: " << verdict(rep) << "\n";
    return o.str();
}

std::string render_json(const TupleSpec& spec, const BuiltTuple& M, const RunResult& r) {
    const skeleton::TupleReport& rep = r.report;
    json j;
    j["characteristic"] = spec.characteristic;
    j["group"] = {{"order", M.G->n}, {"generators", M.G->gen_names}};
    j["theta"] = M.tuple.modules.size();
    j["modules"] = json::array();
    for (size_t i = 0; i < M.tuple.modules.size(); ++i)
        j["modules"].push_back(
            {{"degree", M.module_degrees[i]}, {"dim", M.tuple.modules[i].dim}});
    j["entries_absolutely_simple"] = rep.entries_simple;
    j["supports_generate"] = rep.supports_generate;
    j["group_abelian"] = rep.group_abelian;
    j["braid_indecomposable"] = rep.braid_indecomposable;
    if (!r.braid_components.empty()) j["decomposition"] = r.braid_components;
    json cm = json::array();
    std::set<std::pair<int, int>> holes(r.cartan.exceeded.begin(), r.cartan.exceeded.end());
    for (size_t i = 0; i < r.cartan.A.size(); ++i) {
        json row = json::array();
        for (size_t jx = 0; jx < r.cartan.A[i].size(); ++jx) {
            if (holes.count({(int)i, (int)jx}))
                row.push_back(nullptr);
            else
                row.push_back(r.cartan.A[i][jx]);
        }
        cm.push_back(std::move(row));
    }
    j["cartan_matrix"] = std::move(cm);
    j["cartan_complete"] = r.cartan.complete;
    if (rep.has_skeleton)
        j["skeleton"] = to_string(*rep.skel);
    else
        j["skeleton"] = nullptr;
    j["skeleton_error"] = rep.skeleton_error;
    j["skeleton_type"] = rep.type.name();
    j["skeleton_finite_type"] = rep.skeleton_finite;
    j["skeleton_evidence"] = rep.skeleton_evidence;
    long long pos_roots = -1;
    if (!rep.graph.objects.empty() && !rep.graph.roots.empty())
        pos_roots = (long long)rep.graph.positive_roots(0).size();
    j["groupoid"] = {{"conclusive", rep.groupoid_conclusive},
                     {"finite", rep.groupoid_finite},
                     {"objects", rep.graph.objects.size()},
                     {"positive_roots", pos_roots},
                     {"standard", rep.graph.is_standard},
                     {"cartan_graph", rep.graph.is_cartan_graph}};
    j["groupoid_evidence"] = rep.groupoid_evidence;
    if (!r.rank3_case.empty()) j["rank3_case"] = r.rank3_case;
    if (rep.nichols_attempted)
        j["dimension"] = {{"finite", rep.dimension.finite},
                          {"value", rep.dimension.value},
                          {"factored", rep.dimension.factored}};
    else
        j["dimension"] = nullptr;
    j["nichols_evidence"] = rep.nichols_evidence;
    if (rep.have_series) {
        json lines = json::array();
        std::istringstream in(nichols::to_string(rep.series));
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        j["hilbert_series"] = std::move(lines);
    }
    if (r.crosscheck)
        j["crosscheck"] = {{"degree", r.crosscheck_degree},
                           {"match", r.crosscheck->match},
                           {"product", r.crosscheck->product_dims},
                           {"oracle", r.crosscheck->oracle_dims}};
    j["warnings"] = r.warnings;
    j["consistent"] = rep.consistent;
    j["inconsistency"] = rep.inconsistency;
    j["notes"] = rep.notes;
    j["verdict"] = verdict(rep);
    return j.dump(2) + "\n";
}

CommandOutput run_cartan(const BuiltTuple& M, const Caps& caps) {
    ydmod::CartanMatrixResult cm = ydmod::cartan_matrix(M.tuple, caps.adjoint);
    std::ostringstream o;
    cartan_matrix_lines(o, cm);
    return {o.str(), cm.complete ? 0 : 2};
}

CommandOutput run_explore(const BuiltTuple& M, const Caps& caps) {
    cartan::SemiCartanGraph C = cartan::explore(M.tuple, explore_caps(caps));
    std::ostringstream o;
    o << "objects: " << C.objects.size() << "\n";
    o << "complete: " << yesno(C.complete) << "\n";
    o << "finite: " << yesno(C.is_finite) << "\n";
    o << "cartan-graph: " << yesno(C.is_cartan_graph) << "\n";
    o << "standard: " << yesno(C.is_standard) << "\n";
    o << "indecomposable: " << yesno(C.indecomposable) << "\n";
    for (size_t x = 0; x < C.objects.size(); ++x) {
        o << "object " << x + 1 << " matrix:\n";
        matrix_lines(o, C.objects[x].cartan);
    }
    if (!C.roots.empty()) {
        std::vector<cartan::Root> pos = C.positive_roots(0);
        o << "object 1 positive-roots: " << pos.size() << "\n";
        for (const cartan::Root& rt : pos) o << "  " << root_text(rt) << "\n";
    }
    for (const std::string& d : C.diagnostics) o << "diagnostic: " << d << "\n";
    return {o.str(), C.complete && C.is_finite ? 0 : 2};
}

CommandOutput run_hilbert(const BuiltTuple& M, const Caps& caps, bool single_t,
                          long crosscheck_degree) {
    cartan::SemiCartanGraph C = cartan::explore(M.tuple, explore_caps(caps));
    std::ostringstream o;
    if (!(C.complete && C.is_finite && C.is_cartan_graph && C.admits_all_reflections)) {
        o << "no verified finite root system within the caps; series not computed\n";
        for (const std::string& d : C.diagnostics) o << "diagnostic: " << d << "\n";
        return {o.str(), 2};
    }
    nichols::DimensionResult dim = nichols::nichols_dimension(M.tuple, C, hilbert_caps(caps));
    if (!dim.finite) {
        o << "dimension: infinite (a root module has no vanishing level within the degree "
             "cap)\n";
        return {o.str(), 2};
    }
    nichols::HilbertSeries series = nichols::hilbert_series(M.tuple, C, hilbert_caps(caps));
    if (single_t) {
        long max_total = 0;
        for (const auto& [e, c] : series.coeff)
            max_total = std::max(max_total, std::accumulate(e.begin(), e.end(), 0L));
        std::vector<long long> by_degree = nichols::collapse_total_degree(series, max_total);
        o << "hilbert-series (single variable):\n";
        for (size_t k = 0; k < by_degree.size(); ++k)
            if (by_degree[k] != 0) o << "  " << k << " : " << by_degree[k] << "\n";
    } else {
        o << "hilbert-series:\n";
        indent_block(o, nichols::to_string(series));
    }
    o << "dimension: " << dim.value << " = " << dim.factored << "\n";
    if (crosscheck_degree > 0) {
        nichols::CrosscheckReport cc = nichols::hilbert_oracle_crosscheck(
            M.tuple, C, crosscheck_degree, hilbert_caps(caps));
        crosscheck_lines(o, cc, crosscheck_degree);
        if (!cc.match) return {o.str(), 2};
    }
    return {o.str(), 0};
}

CommandOutput run_oracle(const BuiltTuple& M, const Caps& caps) {
    const ydmod::YDModule S = nichols::direct_sum(M.tuple.modules);
    std::ostringstream o;
    long long cost = 1;
    for (int n = 0; n <= caps.oracle_degree; ++n) {
        if (n > 0) cost *= S.dim;
        if (cost > caps.oracle_budget) {
            o << "degree " << n << ": budget exceeded\n";
            return {o.str(), 2};
        }
        o << "degree " << n << ": "
          << nichols::symmetrizer_graded_dim(S, n, M.tuple.ch, 0) << "\n";
    }
    return {o.str(), 0};
}

CommandOutput run_catalog_rank3(const BuiltTuple& M, const Caps& caps) {
    if (M.tuple.modules.size() != 3)
        throw std::runtime_error("catalog-rank3 needs a rank-3 tuple, got theta " +
                                 std::to_string(M.tuple.modules.size()));
    cartan::SemiCartanGraph C = cartan::explore(M.tuple, explore_caps(caps));
    std::ostringstream o;
    if (!(C.complete && C.is_finite)) {
        o << "no finite root system within the caps; no catalog case applies\n";
        for (const std::string& d : C.diagnostics) o << "diagnostic: " << d << "\n";
        return {o.str(), 2};
    }
    if (!C.indecomposable) {
        o << "case: none (the graph is decomposable)\n";
        return {o.str(), 0};
    }
    o << "case: " << cartan::rank3_catalog_match(C) << "\n";
    for (size_t x = 0; x < C.objects.size(); ++x) {
        o << "object " << x + 1 << " matrix:\n";
        matrix_lines(o, C.objects[x].cartan);
        std::vector<cartan::Root> pos = C.positive_roots((int)x);
        o << "object " << x + 1 << " positive-roots: " << pos.size() << "\n";
        for (const cartan::Root& rt : pos) o << "  " << root_text(rt) << "\n";
    }
    return {o.str(), 0};
}

}  // namespace tuplespec
