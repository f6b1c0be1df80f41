#pragma once

// Command layer: runs one subcommand against the library and returns a
// report document plus a process exit code.
//
//   exit 0  command succeeded and every checked property held
//   exit 1  mathematical negative: a verification failed or an
//           --expect-* assertion was violated
//   exit 2  input error: unparseable expression, bad arguments, or an
//           operation rejected by the library
//
// The document goes to stdout as JSON; `diagnostic` is stderr text.

#include <string>
#include <utility>
#include <vector>

#include "tighthom/branching.hpp"
#include "tighthom/catalog.hpp"
#include "tighthom/diagrams.hpp"
#include "tighthom/expr.hpp"
#include "tighthom/hull.hpp"
#include "tighthom/report.hpp"
#include "tighthom/shapes.hpp"
#include "tighthom/tightness.hpp"

namespace tighthom {

struct CliOptions {
    bool expect_tight = false;        // certify: fail (exit 1) unless tight
    bool expect_holomorphic = false;  // certify: fail (exit 1) unless holomorphic
    long bounds = 0;                  // enumerate: cap on one entry's capacity (0 = rank)
    unsigned long seed = 0;           // decompose/hull/realize: deterministic draw sequence
    bool include_matrices = false;    // matrix payloads beyond the verify images
};

struct CliResult {
    int exit_code = 0;
    Json document;
    std::string diagnostic;  // stderr text; empty when nothing went wrong
};

inline constexpr int cli_exit_success = 0;
inline constexpr int cli_exit_negative = 1;
inline constexpr int cli_exit_input_error = 2;

namespace cli_detail {

inline CliResult input_error(const std::string& command, const std::string& message) {
    CliResult r;
    r.exit_code = cli_exit_input_error;
    r.document = report_document(command, "");
    r.document["error"] = message;
    r.diagnostic = command + ": " + message;
    return r;
}

/// Parses the single expression argument and hands the tree to the handler;
/// maps positioned and library errors to exit code 2.
template <typename F>
CliResult with_expression(const std::string& command, const std::vector<std::string>& args,
                          F&& handler) {
    if (args.size() != 1)
        return input_error(command, "takes exactly one expression argument");
    try {
        SpecExpression tree = parse_spec(args[0]);
        return handler(tree);
    } catch (const SpecError& e) {
        return input_error(command, e.what());
    } catch (const std::exception& e) {
        return input_error(command, e.what());
    }
}

inline CliResult run_verify(const std::vector<std::string>& args, const CliOptions&) {
    return with_expression("verify", args, [&](const SpecExpression& tree) {
        Homomorphism rho = elaborate_homomorphism(tree);
        const Rational residual = verify_homomorphism(rho);
        const bool ok = is_zero(residual);
        CliResult r;
        r.document = report_document("verify", tree.print());
        r.document["homomorphism"] = json_homomorphism(rho, true);
        r.document["residual"] = json_rational(residual);
        r.document["verified"] = ok;
        if (!ok) {
            r.exit_code = cli_exit_negative;
            r.diagnostic = "verify: bracket residual " + residual.get_str() + " is nonzero";
        }
        return r;
    });
}

inline CliResult run_certify(const std::vector<std::string>& args, const CliOptions& opts) {
    return with_expression("certify", args, [&](const SpecExpression& tree) {
        Homomorphism rho = elaborate_homomorphism(tree);
        const TightnessCertificate cert = certify(rho);
        const Theorem1Result t1 = theorem1_check(rho);
        CliResult r;
        r.document = report_document("certify", tree.print());
        r.document["homomorphism"] = json_homomorphism(rho, opts.include_matrices);
        r.document["certificate"] = json_certificate(cert);
        Json t1j;
        t1j["status"] = theorem1_status_name(t1.status);
        t1j["holomorphic"] = t1.holomorphic;
        r.document["theorem1"] = t1j;
        if (opts.expect_tight && !cert.tight) {
            r.exit_code = cli_exit_negative;
            r.diagnostic = "certify: expected tight, but the weighted sum " +
                           cert.weighted_sum.get_str() + " differs from the target rank " +
                           std::to_string(cert.target_rank);
        } else if (opts.expect_holomorphic && !cert.holomorphic) {
            r.exit_code = cli_exit_negative;
            r.diagnostic = "certify: expected holomorphic, but the holomorphy residual is " +
                           cert.holomorphy_residual.get_str();
        }
        return r;
    });
}

inline CliResult run_decompose(const std::vector<std::string>& args, const CliOptions& opts) {
    return with_expression("decompose", args, [&](const SpecExpression& tree) {
        Homomorphism rho = elaborate_homomorphism(tree);
        const DecompositionReport rep = invariant_decomposition(rho, opts.seed);
        CliResult r;
        r.document = report_document("decompose", tree.print());
        r.document["homomorphism"] = json_homomorphism(rho, opts.include_matrices);
        r.document["seed"] = opts.seed;
        r.document["decomposition"] = json_decomposition(rep, opts.include_matrices);
        if (rep.residual_kind != ResidualKind::COMPLETE) {
            r.exit_code = cli_exit_negative;
            r.diagnostic = std::string("decompose: ") + residual_kind_name(rep.residual_kind);
        }
        return r;
    });
}

inline CliResult run_hull(const std::vector<std::string>& args, const CliOptions& opts) {
    return with_expression("hull", args, [&](const SpecExpression& tree) {
        Homomorphism rho = elaborate_homomorphism(tree);
        const HullResult h = hermitian_hull(rho, opts.seed);
        CliResult r;
        r.document = report_document("hull", tree.print());
        r.document["homomorphism"] = json_homomorphism(rho, opts.include_matrices);
        r.document["seed"] = opts.seed;
        r.document["hull"] = json_hull(h, opts.include_matrices);
        return r;
    });
}

inline CliResult run_enumerate(const std::vector<std::string>& args, const CliOptions& opts) {
    const std::string usage =
        "usage: enumerate su P Q | enumerate sp N | enumerate sostar N | "
        "enumerate 'alg(...)'";
    AlgebraDescriptor target;
    std::string echo;
    try {
        if (args.size() == 1 && args[0].find('(') != std::string::npos) {
            SpecExpression tree = parse_spec(args[0]);
            target = elaborate_algebra(tree);
            echo = tree.print();
        } else if (!args.empty()) {
            const std::string& fam = args[0];
            std::vector<long> params;
            for (std::size_t i = 1; i < args.size(); ++i) params.push_back(std::stol(args[i]));
            if (fam == "su" && params.size() == 2)
                target = su_algebra(params[0], params[1]);
            else if (fam == "sp" && params.size() == 1)
                target = sp_algebra(params[0]);
            else if ((fam == "sostar" || fam == "so*") && params.size() == 1)
                target = sostar_algebra(params[0]);
            else
                return input_error("enumerate", usage);
            echo = fam;
            for (long p : params) echo += " " + std::to_string(p);
        } else {
            return input_error("enumerate", usage);
        }
        const ShapeBounds bounds{opts.bounds};
        const auto shapes = enumerate_shapes(target, bounds);
        CliResult r;
        r.document = report_document("enumerate", echo);
        r.document["target"] = json_descriptor(target);
        r.document["max_part"] = bounds.max_part;  // 0 = no cap beyond the rank
        r.document["count"] = shapes.size();
        Json list = Json::array();
        for (const auto& s : shapes) list.push_back(json_shape(s));
        r.document["shapes"] = list;
        return r;
    } catch (const SpecError& e) {
        return input_error("enumerate", e.what());
    } catch (const std::exception& e) {
        return input_error("enumerate", e.what());
    }
}

inline CliResult run_realize(const std::vector<std::string>& args, const CliOptions& opts) {
    return with_expression("realize", args, [&](const SpecExpression& tree) {
        ShapeRecord shape = elaborate_shape(tree);
        Homomorphism rho = realize_shape(shape);
        const Rational residual = verify_homomorphism(rho);
        const TightnessCertificate cert = certify(rho);
        const ShapeRecord back = recover_shape(rho, opts.seed);
        const bool matches = back.target == shape.target && back.entries == shape.entries;
        CliResult r;
        r.document = report_document("realize", tree.print());
        r.document["shape"] = json_shape(shape);
        r.document["homomorphism"] = json_homomorphism(rho, opts.include_matrices);
        r.document["residual"] = json_rational(residual);
        r.document["certificate"] = json_certificate(cert);
        Json rec = Json::array();
        for (const auto& e : back.entries) rec.push_back(e.str());
        r.document["recovered_entries"] = rec;
        r.document["recovered_matches"] = matches;
        if (!is_zero(residual) || !cert.tight || !matches) {
            r.exit_code = cli_exit_negative;
            r.diagnostic = "realize: the realized homomorphism failed a check (residual " +
                           residual.get_str() + ", tight " + (cert.tight ? "true" : "false") +
                           ", recovered_matches " + (matches ? "true" : "false") + ")";
        }
        return r;
    });
}

inline CliResult run_canonicalize(const std::vector<std::string>& args, const CliOptions&) {
    return with_expression("canonicalize", args, [&](const SpecExpression& tree) {
        AlgebraDescriptor a = elaborate_algebra(tree);
        const AlgebraDescriptor c = canonicalize(a);
        CliResult r;
        r.document = report_document("canonicalize", tree.print());
        r.document["algebra"] = json_descriptor(a);
        r.document["canonical"] = json_descriptor(c);
        return r;
    });
}

inline CliResult run_catalog(const std::vector<std::string>& args, const CliOptions&) {
    if (!args.empty()) return input_error("catalog", "takes no arguments");
    CliResult r;
    r.document = report_document("catalog", "");
    auto alpha_of = [](const Homomorphism& h) {
        return json_rational(pullback_coefficients(h)[0]);
    };
    Json std_inc = Json::array();
    {
        Json row;
        row["name"] = "SP_TO_SU";
        row["signature"] = "std(SP_TO_SU,n)";
        row["source"] = "sp(2n,R)";
        row["target"] = "su(n,n)";
        row["alpha"] = alpha_of(std_inclusion(StdInclusionKind::SP_TO_SU, 2));
        row["tight"] = "always";
        std_inc.push_back(row);
    }
    {
        Json row;
        row["name"] = "SOSTAR_TO_SU";
        row["signature"] = "std(SOSTAR_TO_SU,n)";
        row["source"] = "so*(2n)";
        row["target"] = "su(n,n)";
        row["alpha"] = alpha_of(std_inclusion(StdInclusionKind::SOSTAR_TO_SU, 2));
        row["tight"] = "iff n is even";
        std_inc.push_back(row);
    }
    {
        Json row;
        row["name"] = "SU_TO_SP";
        row["signature"] = "std(SU_TO_SP,m,n)";
        row["source"] = "su(m,n)";
        row["target"] = "sp(2(m+n),R)";
        row["alpha"] = alpha_of(std_inclusion(StdInclusionKind::SU_TO_SP, 1, 1));
        row["tight"] = "iff m = n";
        std_inc.push_back(row);
    }
    {
        Json row;
        row["name"] = "SU_TO_SOSTAR";
        row["signature"] = "std(SU_TO_SOSTAR,m,n)";
        row["source"] = "su(m,n)";
        row["target"] = "so*(2(m+n))";
        row["alpha"] = alpha_of(std_inclusion(StdInclusionKind::SU_TO_SOSTAR, 1, 1));
        row["tight"] = "iff n is m or m+1";
        std_inc.push_back(row);
    }
    r.document["standard_inclusions"] = std_inc;
    Json other = Json::array();
    {
        Json row;
        row["signature"] = "so2incl(k,n)";
        row["source"] = "so(2,k)";
        row["target"] = "so(2,n)";
        row["note"] = "corner inclusion; tight and holomorphic";
        other.push_back(row);
    }
    {
        Json row;
        row["signature"] = "rho(n)";
        row["source"] = "su(1,1)";
        row["target"] = "sp(2n,R)";
        row["note"] =
            "irreducible 2n-dimensional representation; tight and positive for every n, "
            "holomorphic only for n = 1";
        other.push_back(row);
    }
    {
        Json row;
        row["signature"] = "spin(p[,EVEN|ODD])";
        row["source"] = "so(2,p)";
        row["target"] = "see spin_targets";
        row["note"] = "(half-)spin representation on the even Clifford module; "
                      "tight and holomorphic";
        other.push_back(row);
    }
    {
        Json row;
        row["signature"] = "disc(A,s1,...,sk)";
        row["source"] = "su(1,1)";
        row["target"] = "A";
        row["note"] = "diagonal disc with one sign (+1/-1) per simple factor";
        other.push_back(row);
    }
    {
        Json row;
        row["signature"] = "polydisc(A)";
        row["source"] = "su(1,1)^rk(A)";
        row["target"] = "A";
        row["note"] = "maximal polydisc";
        other.push_back(row);
    }
    r.document["other_constructors"] = other;
    Json spin_rows = Json::array();
    for (long p = 3; p <= 10; ++p) {
        Json row;
        row["p"] = p;
        row["p_mod_8"] = p % 8;
        row["target"] = spin_target(p).str();
        spin_rows.push_back(row);
    }
    r.document["spin_targets"] = spin_rows;
    Json diagrams = Json::array();
    for (DiagramId id : {DiagramId::SO2P, DiagramId::E6, DiagramId::E7})
        diagrams.push_back(json_diagram(diagram_catalog(id)));
    r.document["diagrams"] = diagrams;
    return r;
}

}  // namespace cli_detail

/// Executes one command.  Commands: verify, certify, decompose, hull,
/// enumerate, realize, canonicalize, catalog.
inline CliResult run_command(const std::string& command, const std::vector<std::string>& args,
                             const CliOptions& opts = {}) {
    using namespace cli_detail;
    if (command == "verify") return run_verify(args, opts);
    if (command == "certify") return run_certify(args, opts);
    if (command == "decompose") return run_decompose(args, opts);
    if (command == "hull") return run_hull(args, opts);
    if (command == "enumerate") return run_enumerate(args, opts);
    if (command == "realize") return run_realize(args, opts);
    if (command == "canonicalize") return run_canonicalize(args, opts);
    if (command == "catalog") return run_catalog(args, opts);
    return input_error(command.empty() ? "(none)" : command,
                       "unknown command (expected verify, certify, decompose, hull, "
                       "enumerate, realize, canonicalize or catalog)");
}

}  // namespace tighthom
