#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symhodge/json_io.hpp"
#include "symhodge/verify.hpp"

namespace {

using namespace symhodge;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

OrderedJson report_to_json(const VerificationReport& report) {
    OrderedJson out;
    out["schema_version"] = 1;
    out["suite"] = report.suite;
    out["n"] = report.n;
    out["trials"] = report.trials;
    out["seed"] = report.seed;
    out["checks"] = OrderedJson::array();
    for (const auto& check : report.checks) {
        OrderedJson c;
        c["id"] = check.id;
        c["anchor"] = check.anchor;
        c["kind"] = check.kind;
        c["value"] = check.value;
        c["threshold"] = check.threshold;
        c["pass"] = check.pass;
        out["checks"].push_back(std::move(c));
    }
    out["pass"] = report.pass;
    return out;
}

struct CommonOutput {
    std::string format = "json";
};

void emit(const CommonOutput& output, const OrderedJson& json, const std::string& text) {
    if (output.format == "json") {
        std::cout << json.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Numerical symplectic/Lefschetz Hodge linear algebra"};
    app.set_help_flag("--help", "Print help");
    app.require_subcommand(1);

    // star
    auto* star_cmd = app.add_subcommand("star", "Apply the symplectic (or Hodge) star to a form");
    std::string star_omega, star_form, star_j;
    bool star_hodge = false;
    CommonOutput star_out;
    star_cmd->add_option("--omega", star_omega, "Symplectic form JSON file")->required();
    star_cmd->add_option("--form", star_form, "Multivector JSON file")->required();
    star_cmd->add_flag("--hodge", star_hodge, "Apply the Hodge star (star_s composed with the Weil operator)");
    star_cmd->add_option("--j", star_j, "Complex structure JSON file (default: standard)");
    star_cmd->add_option("--format", star_out.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "Lefschetz decomposition report");
    std::string dec_omega, dec_form;
    CommonOutput dec_out;
    dec_cmd->add_option("--omega", dec_omega, "Symplectic form JSON file")->required();
    dec_cmd->add_option("--form", dec_form, "Multivector JSON file")->required();
    dec_cmd->add_option("--format", dec_out.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // darboux
    auto* dar_cmd = app.add_subcommand("darboux", "Darboux basis of a symplectic form");
    std::string dar_omega;
    CommonOutput dar_out;
    dar_cmd->add_option("--omega", dar_omega, "Symplectic form JSON file")->required();
    dar_cmd->add_option("--format", dar_out.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "Run a verification suite");
    ver_cmd->set_help_flag("--help", "Print help");
    std::string suite = "all";
    VerifyOptions options;
    CommonOutput ver_out;
    ver_cmd->add_option("--suite", suite, "core|sl2|variation|timorin|all")
        ->check(CLI::IsMember({"core", "sl2", "variation", "timorin", "all"}));
    ver_cmd->add_option("--n", options.max_n, "Cap on the half-dimension range (0 = suite default)");
    ver_cmd->add_option("--trials", options.trials, "Trials per check (0 = per-check default)");
    ver_cmd->add_option("--seed", options.seed, "Random seed");
    ver_cmd->add_option("--tol", options.tol, "Algebraic residual tolerance");
    ver_cmd->add_option("--h", options.fd_h, "Finite-difference step");
    ver_cmd->add_option("--format", ver_out.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // mixed-hr
    auto* mhr_cmd = app.add_subcommand("mixed-hr", "Gram matrices and eigenvalues for a mixed collection");
    std::string mhr_input;
    CommonOutput mhr_out;
    mhr_cmd->add_option("--input", mhr_input, "Mixed collection JSON file")->required();
    mhr_cmd->add_option("--format", mhr_out.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // af
    auto* af_cmd = app.add_subcommand("af", "Top-coefficient Alexandrov-Fenchel inequality check");
    std::string af_input;
    CommonOutput af_out;
    af_cmd->add_option("--input", af_input, "Inequality input JSON file")->required();
    af_cmd->add_option("--format", af_out.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // psi
    auto* psi_cmd = app.add_subcommand("psi", "Convexity scan of -log of the mixed top coefficient");
    std::string psi_input;
    int psi_grid = 33;
    CommonOutput psi_out;
    psi_cmd->add_option("--input", psi_input, "Inequality input JSON file")->required();
    psi_cmd->add_option("--grid", psi_grid, "Number of uniform grid points inside (0,1)")
        ->check(CLI::PositiveNumber);
    psi_cmd->add_option("--format", psi_out.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints the message; 0 for --help
        return code == 0 ? kExitPass : kExitInputError;
    }

    if (star_cmd->parsed()) {
        const SymplecticForm omega = symplectic_from_json(load_json_file(star_omega));
        const Multivector u = multivector_from_json(load_json_file(star_form));
        Multivector result(u.n());
        if (star_hodge) {
            const ComplexStructure j = star_j.empty()
                                           ? ComplexStructure::standard(omega.n())
                                           : complex_structure_from_json(load_json_file(star_j));
            result = hodge_star(omega, j, u);
        } else {
            result = sympl_star(omega, u);
        }
        std::ostringstream text;
        text << "star result with " << result.terms().size() << " terms\n";
        emit(star_out, multivector_to_json(result), text.str());
        return kExitPass;
    }

    if (dec_cmd->parsed()) {
        const SymplecticForm omega = symplectic_from_json(load_json_file(dec_omega));
        const Multivector u = multivector_from_json(load_json_file(dec_form));
        const LefschetzDecomposition dec = lefschetz_decompose(omega, u);
        std::ostringstream text;
        text << "grade " << dec.k << ", " << dec.components.size()
             << " primitive components, reconstruction residual " << dec.reconstruction_residual << "\n";
        emit(dec_out, decomposition_to_json(dec), text.str());
        return kExitPass;
    }

    if (dar_cmd->parsed()) {
        const SymplecticForm omega = symplectic_from_json(load_json_file(dar_omega));
        const DarbouxBasis db = darboux_basis(omega);
        std::ostringstream text;
        text << "Darboux basis with standard-form residual " << db.standard_form_residual << "\n";
        emit(dar_out, darboux_to_json(db), text.str());
        return kExitPass;
    }

    if (ver_cmd->parsed()) {
        const VerificationReport report = run_suite(suite, options);
        std::cerr << "# wall_clock_ms=" << report.wall_ms << "\n";
        emit(ver_out, report_to_json(report), report_to_text(report));
        return report.pass ? kExitPass : kExitVerificationFailure;
    }

    if (mhr_cmd->parsed()) {
        const MixedCollection mc = mixed_from_json(load_json_file(mhr_input));
        OrderedJson blocks = OrderedJson::array();
        std::ostringstream text;
        bool all_positive = true;
        for (int k = 0; k <= mc.n(); ++k) {
            for (int p = 0; p <= k; ++p) {
                const GramReport report = mixed_hr_gram(mc, k, p, k - p);
                if (report.dimension == 0) continue;
                blocks.push_back(gram_report_to_json(report));
                const bool positive = report.min_eigenvalue > 0.0;
                all_positive = all_positive && positive;
                text << (positive ? "PASS" : "FAIL") << "  k=" << report.k << " (p,q)=(" << report.p
                     << "," << report.q << ") dim=" << report.dimension
                     << " min_eigenvalue=" << report.min_eigenvalue << "\n";
            }
        }
        OrderedJson out;
        out["n"] = mc.n();
        out["blocks"] = std::move(blocks);
        out["positive"] = all_positive;
        emit(mhr_out, out, text.str());
        return all_positive ? kExitPass : kExitVerificationFailure;
    }

    if (af_cmd->parsed()) {
        const AfInput input = af_input_from_json(load_json_file(af_input));
        const AfReport report = af_check(input.n, input.j, input.alpha1, input.alpha2, input.t_alphas);
        std::ostringstream text;
        text << (report.holds ? "HOLDS" : "VIOLATED") << "  lhs=" << report.lhs << " rhs=" << report.rhs
             << " gap=" << report.gap << "\n";
        emit(af_out, af_report_to_json(report), text.str());
        return report.holds ? kExitPass : kExitVerificationFailure;
    }

    if (psi_cmd->parsed()) {
        const AfInput input = af_input_from_json(load_json_file(psi_input));
        std::vector<double> grid;
        grid.reserve(static_cast<size_t>(psi_grid));
        for (int g = 0; g < psi_grid; ++g) grid.push_back((g + 0.5) / psi_grid);
        const PsiReport report =
            psi_convexity_scan(input.n, input.j, input.alpha1, input.alpha2, input.t_alphas, grid);
        std::ostringstream text;
        text << (report.convex ? "CONVEX" : "NOT CONVEX")
             << "  min_second_difference=" << report.min_second_difference << "\n";
        emit(psi_out, psi_report_to_json(report), text.str());
        return report.convex ? kExitPass : kExitVerificationFailure;
    }

    return kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
