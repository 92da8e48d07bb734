#include "symhodge/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace symhodge {

namespace {

const Json& require_field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw validation_error(std::string("missing required field \"") + name + "\"");
    }
    return j.at(name);
}

int int_field(const Json& j, const char* name) {
    const Json& f = require_field(j, name);
    if (!f.is_number_integer()) {
        throw validation_error(std::string("field \"") + name + "\" must be an integer");
    }
    return f.get<int>();
}

double number_field(const Json& j, const char* name) {
    const Json& f = require_field(j, name);
    if (!f.is_number()) {
        throw validation_error(std::string("field \"") + name + "\" must be a number");
    }
    return f.get<double>();
}

}  // namespace

Multivector multivector_from_json(const Json& j) {
    const int n = int_field(j, "n");
    if (n < 1 || n > kMaxHalfDim) {
        throw validation_error("multivector field \"n\" outside supported range [1, " +
                               std::to_string(kMaxHalfDim) + "]");
    }
    Multivector u(n);
    const Json& terms = require_field(j, "terms");
    if (!terms.is_array()) throw validation_error("field \"terms\" must be an array");
    for (size_t idx = 0; idx < terms.size(); ++idx) {
        const Json& term = terms[idx];
        const Json& blade = require_field(term, "blade");
        if (!blade.is_array()) {
            throw validation_error("terms[" + std::to_string(idx) + "].blade must be an array of indices");
        }
        std::vector<int> gens;
        for (const Json& g : blade) {
            if (!g.is_number_integer()) {
                throw validation_error("terms[" + std::to_string(idx) + "].blade entries must be integers");
            }
            const int gi = g.get<int>();
            if (gi < 0 || gi >= 2 * n) {
                throw validation_error("terms[" + std::to_string(idx) + "].blade index " +
                                       std::to_string(gi) + " outside [0, 2n)");
            }
            gens.push_back(gi);
        }
        // Canonicalize: sort ascending, tracking the permutation parity; a
        // repeated generator kills the term.
        int sign = 1;
        bool repeated = false;
        for (size_t a = 0; a < gens.size() && !repeated; ++a) {
            for (size_t b = a + 1; b < gens.size(); ++b) {
                if (gens[a] == gens[b]) {
                    repeated = true;
                    break;
                }
                if (gens[a] > gens[b]) {
                    std::swap(gens[a], gens[b]);
                    sign = -sign;
                }
            }
        }
        if (repeated) continue;
        Blade mask = 0;
        for (int gi : gens) mask |= Blade{1} << gi;
        const Complex c{number_field(term, "re"), number_field(term, "im")};
        u.add_term(mask, static_cast<double>(sign) * c);
    }
    u.prune(kPruneRel * u.max_abs());
    return u;
}

OrderedJson multivector_to_json(const Multivector& u) {
    OrderedJson out;
    out["n"] = u.n();
    out["terms"] = OrderedJson::array();
    for (const auto& [mask, c] : u.terms()) {
        OrderedJson term;
        OrderedJson blade = OrderedJson::array();
        for (Blade m = mask; m; m &= m - 1) blade.push_back(std::countr_zero(m));
        term["blade"] = std::move(blade);
        term["re"] = c.real();
        term["im"] = c.imag();
        out["terms"].push_back(std::move(term));
    }
    return out;
}

RMat matrix_from_json(const Json& j, int expected_dim, const std::string& field) {
    if (!j.is_array() || j.size() != static_cast<size_t>(expected_dim)) {
        throw validation_error("field \"" + field + "\" must be a " + std::to_string(expected_dim) + "x" +
                               std::to_string(expected_dim) + " matrix");
    }
    RMat m(expected_dim, expected_dim);
    for (int r = 0; r < expected_dim; ++r) {
        const Json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<size_t>(expected_dim)) {
            throw validation_error("field \"" + field + "\" row " + std::to_string(r) +
                                   " must have " + std::to_string(expected_dim) + " entries");
        }
        for (int c = 0; c < expected_dim; ++c) {
            const Json& entry = row[static_cast<size_t>(c)];
            if (!entry.is_number()) {
                throw validation_error("field \"" + field + "\" entry (" + std::to_string(r) + "," +
                                       std::to_string(c) + ") must be a number");
            }
            m(r, c) = entry.get<double>();
        }
    }
    return m;
}

OrderedJson matrix_to_json(const RMat& m) {
    OrderedJson out = OrderedJson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        OrderedJson row = OrderedJson::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

SymplecticForm symplectic_from_json(const Json& j) {
    const int n = int_field(j, "n");
    if (n < 1 || n > kMaxHalfDim) {
        throw validation_error("symplectic form field \"n\" outside supported range [1, " +
                               std::to_string(kMaxHalfDim) + "]");
    }
    return SymplecticForm(n, matrix_from_json(require_field(j, "matrix"), 2 * n, "matrix"));
}

OrderedJson symplectic_to_json(const SymplecticForm& omega) {
    OrderedJson out;
    out["n"] = omega.n();
    out["matrix"] = matrix_to_json(omega.matrix());
    return out;
}

ComplexStructure complex_structure_from_json(const Json& j) {
    const int n = int_field(j, "n");
    if (n < 1 || n > kMaxHalfDim) {
        throw validation_error("complex structure field \"n\" outside supported range");
    }
    return ComplexStructure(n, matrix_from_json(require_field(j, "matrix"), 2 * n, "matrix"));
}

FormFamily family_from_json(const Json& j) {
    const int n = int_field(j, "n");
    if (n < 1 || n > kMaxHalfDim) {
        throw validation_error("form family field \"n\" outside supported range");
    }
    const Json& coeffs = require_field(j, "coeffs");
    if (!coeffs.is_array() || coeffs.empty()) {
        throw validation_error("field \"coeffs\" must be a non-empty array of matrices");
    }
    std::vector<RMat> matrices;
    for (size_t d = 0; d < coeffs.size(); ++d) {
        matrices.push_back(matrix_from_json(coeffs[d], 2 * n, "coeffs[" + std::to_string(d) + "]"));
    }
    return FormFamily(n, std::move(matrices), number_field(j, "t_min"), number_field(j, "t_max"));
}

MixedCollection mixed_from_json(const Json& j) {
    const int n = int_field(j, "n");
    if (n < 1 || n > kMaxHalfDim) {
        throw validation_error("mixed collection field \"n\" outside supported range");
    }
    ComplexStructure cs = j.contains("J")
                              ? ComplexStructure(n, matrix_from_json(j.at("J"), 2 * n, "J"))
                              : ComplexStructure::standard(n);
    const Json& alphas = require_field(j, "alphas");
    if (!alphas.is_array()) throw validation_error("field \"alphas\" must be an array of matrices");
    std::vector<RMat> matrices;
    for (size_t idx = 0; idx < alphas.size(); ++idx) {
        matrices.push_back(matrix_from_json(alphas[idx], 2 * n, "alphas[" + std::to_string(idx) + "]"));
    }
    return build_mixed(n, cs, matrices);
}

AfInput af_input_from_json(const Json& j) {
    const int n = int_field(j, "n");
    if (n < 2 || n > kMaxHalfDim) {
        throw validation_error("field \"n\" must lie in [2, " + std::to_string(kMaxHalfDim) + "]");
    }
    ComplexStructure cs = j.contains("J")
                              ? ComplexStructure(n, matrix_from_json(j.at("J"), 2 * n, "J"))
                              : ComplexStructure::standard(n);
    AfInput input{n, std::move(cs),
                  two_form_from_matrix(n, matrix_from_json(require_field(j, "alpha1"), 2 * n, "alpha1")),
                  two_form_from_matrix(n, matrix_from_json(require_field(j, "alpha2"), 2 * n, "alpha2")),
                  {}};
    if (j.contains("T")) {
        const Json& t = j.at("T");
        if (!t.is_array()) throw validation_error("field \"T\" must be an array of matrices");
        for (size_t idx = 0; idx < t.size(); ++idx) {
            input.t_alphas.push_back(
                two_form_from_matrix(n, matrix_from_json(t[idx], 2 * n, "T[" + std::to_string(idx) + "]")));
        }
    }
    return input;
}

OrderedJson darboux_to_json(const DarbouxBasis& db) {
    OrderedJson out;
    out["n"] = db.n;
    out["P"] = matrix_to_json(db.P);
    out["P_inv"] = matrix_to_json(db.P_inv);
    out["standard_form_residual"] = db.standard_form_residual;
    return out;
}

OrderedJson decomposition_to_json(const LefschetzDecomposition& dec) {
    OrderedJson out;
    out["k"] = dec.k;
    out["components"] = OrderedJson::array();
    for (const auto& comp : dec.components) {
        OrderedJson c;
        c["r"] = comp.r;
        c["form"] = multivector_to_json(comp.form);
        out["components"].push_back(std::move(c));
    }
    out["reconstruction_residual"] = dec.reconstruction_residual;
    return out;
}

OrderedJson gram_report_to_json(const GramReport& report) {
    OrderedJson out;
    out["k"] = report.k;
    out["pq"] = OrderedJson::array({report.p, report.q});
    if (std::isnan(report.min_eigenvalue)) {
        out["min_eigenvalue"] = nullptr;
    } else {
        out["min_eigenvalue"] = report.min_eigenvalue;
    }
    out["dimension"] = report.dimension;
    out["hermitian_asymmetry"] = report.hermitian_asymmetry;
    return out;
}

OrderedJson af_report_to_json(const AfReport& report) {
    OrderedJson out;
    out["lhs"] = report.lhs;
    out["rhs"] = report.rhs;
    out["gap"] = report.gap;
    out["holds"] = report.holds;
    return out;
}

OrderedJson psi_report_to_json(const PsiReport& report) {
    OrderedJson out;
    out["grid"] = report.grid;
    out["psi"] = report.psi;
    out["min_second_difference"] = report.min_second_difference;
    out["convex"] = report.convex;
    return out;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw validation_error(std::string("malformed JSON: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open input file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw validation_error("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace symhodge
