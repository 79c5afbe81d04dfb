// gm4: command line front end.
//
// exit status: 0 success / Yes, 1 No, 2 Inconclusive, 3 invalid input, 4 other error

#include "gm4/assembly.hpp"
#include "gm4/manifest.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace gm4;

namespace {

enum Exit { Ok = 0, No = 1, Inconclusive = 2, Invalid = 3, Failure = 4 };

struct InvalidInput : Error {
    using Error::Error;
};

GraphStructure load_valid(const std::string& path) {
    GraphStructure gs;
    try {
        gs = load_structure(path);
    } catch (const Error& e) {
        // parse errors and unreadable files
        throw InvalidInput(path + ": " + e.what());
    }
    auto diag = validate_structure(gs);
    if (!diag.empty()) throw InvalidInput(path + ": invalid structure\n" + to_string(diag));
    return gs;
}

Mat2 matrix_arg(const std::string& text) {
    try {
        return parse_mat2(text);
    } catch (const Error& e) {
        throw InvalidInput(e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-manifold structures: validation, invariants, reduction, comparison"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text"}));

    std::string file, file2, matrix;
    int search_bound = 2;

    auto* validate = app.add_subcommand("validate", "check a manifest");
    validate->add_option("file", file)->required();

    auto* invariants = app.add_subcommand("invariants", "print the invariant report");
    invariants->add_option("file", file)->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "contract fiber-preserving glueings, print the reduced manifest");
    reduce_cmd->add_option("file", file)->required();

    auto* compare = app.add_subcommand("compare", "decide whether two structures are isomorphic (after reduction)");
    compare->add_option("a", file)->required();
    compare->add_option("b", file2)->required();
    compare->add_option("--search-bound", search_bound, "coefficient bound of the fiber search")->check(CLI::NonNegativeNumber);

    auto* matclass = app.add_subcommand("matclass", "SL(2,Z) conjugacy class of a matrix");
    matclass->add_option("matrix", matrix)->required();

    auto* psi_cmd = app.add_subcommand("psi", "Meyer function of a matrix");
    psi_cmd->add_option("matrix", matrix)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            load_valid(file);
            std::cout << "valid\n";
            return Ok;
        }
        if (*invariants) {
            std::cout << invariant_report(load_valid(file)).to_text();
            return Ok;
        }
        if (*reduce_cmd) {
            std::cout << serialize(to_manifest(reduce(load_valid(file))));
            return Ok;
        }
        if (*compare) {
            auto a = reduce(load_valid(file));
            auto b = reduce(load_valid(file2));
            auto c = isomorphic_reduced(a, b, search_bound);
            std::cout << c.to_text();
            return c.answer == Comparison::Yes ? Ok : (c.answer == Comparison::No ? No : Inconclusive);
        }
        if (*matclass) {
            std::cout << classify(matrix_arg(matrix)).to_string() << "\n";
            return Ok;
        }
        if (*psi_cmd) {
            std::cout << to_string(psi(matrix_arg(matrix))) << "\n";
            return Ok;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Invalid;
    } catch (const ReductionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Invalid;
    } catch (const NotInSL2Z& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    return Failure;
}
