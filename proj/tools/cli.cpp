#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "engine/tuplespec.hpp"

// Subcommands over tuple specification files. Reports go to stdout and are
// byte-for-byte deterministic; timing goes to stderr. Exit codes: 0 the run
// completed, 2 a cap was hit before the verdict settled, 1 invalid input.

int main(int argc, char** argv) {
    CLI::App app{"classification engine for tuples of Yetter-Drinfeld modules"};
    app.require_subcommand(1);

    std::string file, out_path, family;
    int theta = 0;
    int chr = 0;
    long crosscheck = 0;
    bool json_report = false;
    bool single_t = false;
    bool multivariate = false;
    int f_adjoint = 8, f_objects = 1024, f_oracle_degree = 4;
    long f_roots = 10000;

    auto add_caps = [&](CLI::App* c) {
        c->add_option("--cap-adjoint", f_adjoint, "adjoint vanishing search cap");
        c->add_option("--cap-objects", f_objects, "reflection closure object cap");
        c->add_option("--cap-roots", f_roots, "root closure cap");
        c->add_option("--oracle-max-degree", f_oracle_degree, "oracle total-degree cap");
        c->add_option("--char", chr, "characteristic override");
    };

    CLI::App* c_classify = app.add_subcommand("classify", "full classification report");
    c_classify->add_option("file", file, "tuple specification file")->required();
    c_classify->add_flag("--json", json_report, "emit the report as JSON");
    c_classify->add_option("--crosscheck", crosscheck, "oracle cross-check total degree");
    add_caps(c_classify);

    CLI::App* c_cartan = app.add_subcommand("cartan", "Cartan matrix of the tuple");
    c_cartan->add_option("file", file, "tuple specification file")->required();
    add_caps(c_cartan);

    CLI::App* c_explore = app.add_subcommand("explore", "reflection closure and root system");
    c_explore->add_option("file", file, "tuple specification file")->required();
    add_caps(c_explore);

    CLI::App* c_hilbert = app.add_subcommand("hilbert", "Hilbert series and dimension");
    c_hilbert->add_option("file", file, "tuple specification file")->required();
    CLI::Option* o_single = c_hilbert->add_flag("--single-t", single_t, "collapse to one variable");
    CLI::Option* o_multi =
        c_hilbert->add_flag("--multivariate", multivariate, "one variable per vertex (default)");
    o_single->excludes(o_multi);
    c_hilbert->add_option("--crosscheck", crosscheck, "oracle cross-check total degree");
    add_caps(c_hilbert);

    CLI::App* c_oracle = app.add_subcommand("oracle", "symmetrizer ranks of the direct sum");
    c_oracle->add_option("file", file, "tuple specification file")->required();
    add_caps(c_oracle);

    CLI::App* c_realize = app.add_subcommand("realize", "write a catalog realization file");
    c_realize->add_option("family", family, "catalog family name")->required();
    c_realize->add_option("theta", theta, "number of vertices")->required();
    c_realize->add_option("--char", chr, "characteristic");
    c_realize->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* c_rank3 = app.add_subcommand("catalog-rank3", "rank-3 root system catalog case");
    c_rank3->add_option("file", file, "tuple specification file")->required();
    add_caps(c_rank3);

    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (app.got_subcommand(c_realize)) {
            tuplespec::TupleSpec spec =
                tuplespec::realize_spec(family, theta, scalars::Characteristic(chr));
            const std::string text = tuplespec::write_tuple(spec);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot write " + out_path);
                f << text;
            }
        } else {
            CLI::App* active = app.get_subcommands().front();
            tuplespec::TupleSpec spec = tuplespec::parse_tuple_file(file);
            if (active->count("--char")) spec.characteristic = chr;
            tuplespec::Caps caps = spec.caps;
            if (active->count("--cap-adjoint")) caps.adjoint = f_adjoint;
            if (active->count("--cap-objects")) caps.objects = f_objects;
            if (active->count("--cap-roots")) caps.roots = f_roots;
            if (active->count("--oracle-max-degree")) caps.oracle_degree = f_oracle_degree;
            tuplespec::BuiltTuple M = tuplespec::build(spec);
            if (app.got_subcommand(c_classify)) {
                tuplespec::RunResult r = tuplespec::run_classify(M, caps, crosscheck);
                std::cout << (json_report ? tuplespec::render_json(spec, M, r)
                                          : tuplespec::render_text(spec, M, r));
                code = tuplespec::exit_code(r.report);
            } else if (app.got_subcommand(c_cartan)) {
                tuplespec::CommandOutput o = tuplespec::run_cartan(M, caps);
                std::cout << o.text;
                code = o.code;
            } else if (app.got_subcommand(c_explore)) {
                tuplespec::CommandOutput o = tuplespec::run_explore(M, caps);
                std::cout << o.text;
                code = o.code;
            } else if (app.got_subcommand(c_hilbert)) {
                tuplespec::CommandOutput o = tuplespec::run_hilbert(M, caps, single_t, crosscheck);
                std::cout << o.text;
                code = o.code;
            } else if (app.got_subcommand(c_oracle)) {
                tuplespec::CommandOutput o = tuplespec::run_oracle(M, caps);
                std::cout << o.text;
                code = o.code;
            } else {
                tuplespec::CommandOutput o = tuplespec::run_catalog_rank3(M, caps);
                std::cout << o.text;
                code = o.code;
            }
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cerr << "elapsed-ms: " << ms << "\n";
    return code;
}
