#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "engine/skeleton.hpp"

// Tuple specification files and the batch pipeline over them. A specification
// is a JSON document naming a group constructor, one induced module per
// vertex, and the run caps; reports render as deterministic text or JSON.
//
// Document schema:
//   {
//     "characteristic": 0,
//     "group": <group block>,
//     "restrict_to_support": false,            // optional, default false
//     "modules": [
//       {"degree": "<word>", "character": [["<word>", "<scalar>"], ...]},
//       ...
//     ],
//     "caps": {"adjoint": 8, "objects": 1024, "roots": 10000,
//              "oracle_degree": 4, "oracle_budget": 4000000}   // optional
//   }
// group blocks:
//   {"kind": "cyclic", "n": 6, "gen": "u"}
//   {"kind": "gamma_quotient", "n": 3, "m_a": 2, "m_b": 3}
//   {"kind": "epsilon_twisted", "theta": 2,
//    "commutation": [[0,1],[1,0]], "squares": [0,0]}
//   {"kind": "product", "factors": [<group block>, ...]}       // folded left
//
// Degree and constraint words use the generator-word syntax of the
// constructed group ("a*b^2*nu^-1", "1"); scalars are "1", "-1" or
// "zeta(n,k)". Each module is induced from the conjugacy class of its degree
// and the first enumerated character of the degree's centralizer satisfying
// every constraint; constraints on a generating set of the centralizer pin
// the character uniquely. With restrict_to_support set, the finished tuple is
// restricted to the subgroup generated by the supports when that subgroup is
// proper. Unknown keys are rejected.

namespace tuplespec {

struct Caps {
    int adjoint = 8;
    int objects = 1024;
    long roots = 10000;
    int oracle_degree = 4;
    long long oracle_budget = 4000000;
};

struct GroupSpec {
    std::string kind;  // cyclic | gamma_quotient | epsilon_twisted | product
    int n = 0;         // cyclic, gamma_quotient
    int m_a = 0;       // gamma_quotient
    int m_b = 0;
    std::string gen;   // cyclic generator name
    int theta = 0;     // epsilon_twisted
    std::vector<std::vector<int>> commutation;
    std::vector<int> squares;
    std::vector<GroupSpec> factors;  // product
};

struct ModuleSpec {
    std::string degree;
    std::vector<std::pair<std::string, std::string>> character;  // (word, scalar)
};

struct TupleSpec {
    int characteristic = 0;
    GroupSpec group;
    bool restrict_to_support = false;
    std::vector<ModuleSpec> modules;
    Caps caps;
};

// Strict parse: unknown keys, wrong types and malformed values are reported
// with the offending key. write_tuple emits canonical two-space-indented
// JSON; parse(write_tuple(s)) reproduces s exactly.
TupleSpec parse_tuple(const std::string& json_text);
TupleSpec parse_tuple_file(const std::string& path);
std::string write_tuple(const TupleSpec& spec);

groups::FiniteGroup build_group(const GroupSpec& g);

// Constructed group and tuple. G owns the group the tuple lives over: the
// constructed group, or the standalone support subgroup after restriction.
struct BuiltTuple {
    std::shared_ptr<const groups::FiniteGroup> G;
    ydmod::YDTuple tuple;
    std::vector<std::string> module_degrees;  // input degree words, echoed
};
BuiltTuple build(const TupleSpec& spec);

// Specification file reproducing the canonical realization of a catalog
// skeleton; building it back classifies to the advertised family (asserted).
TupleSpec realize_spec(const std::string& family, int theta, scalars::Characteristic ch);

struct RunResult {
    skeleton::TupleReport report;
    ydmod::CartanMatrixResult cartan;
    std::vector<std::vector<int>> braid_components;  // 1-based, when decomposable
    std::string rank3_case;                          // rank-3 finite graphs only
    std::optional<nichols::CrosscheckReport> crosscheck;
    long crosscheck_degree = 0;
    std::vector<std::string> warnings;
};

// Full pipeline: classify_tuple plus the report-only extras (explicit Cartan
// matrix, braid decomposition, rank-3 catalog case, optional oracle
// cross-check of the Hilbert series at the given total degree).
RunResult run_classify(const BuiltTuple& M, const Caps& caps, long crosscheck_degree = 0);

// finite-dimensional | infinite-dimensional | infinite-dimensional-up-to-cap
// | out-of-scope | inconsistent | inconclusive
std::string verdict(const skeleton::TupleReport& rep);
// 0 completed, 2 inconclusive: a cap was hit before the verdict settled
int exit_code(const skeleton::TupleReport& rep);

std::string render_text(const TupleSpec& spec, const BuiltTuple& M, const RunResult& r);
// Same data as a JSON document (schema mirrors the text report field names).
std::string render_json(const TupleSpec& spec, const BuiltTuple& M, const RunResult& r);

// Renderers for the single-stage commands; code is 0 or 2 as above.
struct CommandOutput {
    std::string text;
    int code = 0;
};
CommandOutput run_cartan(const BuiltTuple& M, const Caps& caps);
CommandOutput run_explore(const BuiltTuple& M, const Caps& caps);
CommandOutput run_hilbert(const BuiltTuple& M, const Caps& caps, bool single_t,
                          long crosscheck_degree);
CommandOutput run_oracle(const BuiltTuple& M, const Caps& caps);
CommandOutput run_catalog_rank3(const BuiltTuple& M, const Caps& caps);

}  // namespace tuplespec
