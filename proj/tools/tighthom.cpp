#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tighthom/cli.hpp"
#include "tighthom/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Exact certificates for tight homomorphisms between classical Hermitian Lie "
        "algebras: verification, tightness, branching, hulls and shape enumeration."};
    app.set_version_flag("--version", std::string("tighthom ") + tighthom::library_version);
    app.require_subcommand(1);

    tighthom::CliOptions opts;
    bool compact = false;
    std::vector<std::string> args;
    std::string chosen;

    auto add_common = [&](CLI::App* c) {
        c->add_flag("--compact", compact, "single-line JSON output");
        c->add_flag("--matrices", opts.include_matrices,
                    "include matrix payloads beyond the verify images");
    };

    auto expr_command = [&](const std::string& name, const std::string& desc) {
        CLI::App* c = app.add_subcommand(name, desc);
        c->add_option("expr", args, "expression, e.g. \"comp(std(SP_TO_SU,2),rho(2))\"")
            ->required()
            ->expected(1);
        add_common(c);
        c->callback([&chosen, name] { chosen = name; });
        return c;
    };

    expr_command("verify", "check the bracket relations and report the exact residual");
    CLI::App* certify = expr_command("certify", "compute the tightness certificate");
    certify->add_flag("--expect-tight", opts.expect_tight,
                      "exit 1 unless the certificate is tight");
    certify->add_flag("--expect-holomorphic", opts.expect_holomorphic,
                      "exit 1 unless the certificate is holomorphic");
    CLI::App* decompose =
        expr_command("decompose", "split the target module into invariant blocks");
    decompose->add_option("--seed", opts.seed, "deterministic draw sequence");
    CLI::App* hull =
        expr_command("hull", "compute the Hermitian hull and its embedding certificate");
    hull->add_option("--seed", opts.seed, "deterministic draw sequence");
    CLI::App* realize =
        expr_command("realize", "realize a shape literal and check the full roundtrip");
    realize->add_option("--seed", opts.seed, "deterministic draw sequence");
    expr_command("canonicalize",
                 "rewrite an algebra using the preferred member of each low-rank "
                 "isomorphism class");

    CLI::App* enumerate =
        app.add_subcommand("enumerate", "list every admissible shape for a target");
    enumerate->add_option("target", args, "su P Q | sp N | sostar N | alg(...) expression")
        ->required()
        ->expected(1, 3);
    enumerate->add_option("--bounds", opts.bounds,
                          "cap the capacity a single entry may consume");
    add_common(enumerate);
    enumerate->callback([&chosen] { chosen = "enumerate"; });

    CLI::App* catalog = app.add_subcommand(
        "catalog", "print the built-in constructions and symbolic diagrams");
    add_common(catalog);
    catalog->callback([&chosen] { chosen = "catalog"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tighthom::cli_exit_input_error;
    }

    const tighthom::CliResult result = tighthom::run_command(chosen, args, opts);
    std::cout << result.document.dump(compact ? -1 : 2) << "\n";
    if (!result.diagnostic.empty()) std::cerr << result.diagnostic << "\n";
    return result.exit_code;
}
