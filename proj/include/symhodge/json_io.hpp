#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "symhodge/complex_structure.hpp"
#include "symhodge/symplectic.hpp"
#include "symhodge/timorin.hpp"
#include "symhodge/variation.hpp"

namespace symhodge {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Parse errors and schema violations surface as validation_error with the
// offending field named.

Multivector multivector_from_json(const Json& j);
OrderedJson multivector_to_json(const Multivector& u);

RMat matrix_from_json(const Json& j, int expected_dim, const std::string& field);
OrderedJson matrix_to_json(const RMat& m);

SymplecticForm symplectic_from_json(const Json& j);
OrderedJson symplectic_to_json(const SymplecticForm& omega);

ComplexStructure complex_structure_from_json(const Json& j);

FormFamily family_from_json(const Json& j);

MixedCollection mixed_from_json(const Json& j);

struct AfInput {
    int n = 0;
    ComplexStructure j;
    Multivector alpha1;
    Multivector alpha2;
    std::vector<Multivector> t_alphas;
};

// {"n": int, "J": matrix (optional, standard by default),
//  "alpha1": matrix, "alpha2": matrix, "T": [matrix, ...]}
AfInput af_input_from_json(const Json& j);

OrderedJson darboux_to_json(const DarbouxBasis& db);
OrderedJson decomposition_to_json(const LefschetzDecomposition& dec);
OrderedJson gram_report_to_json(const GramReport& report);
OrderedJson af_report_to_json(const AfReport& report);
OrderedJson psi_report_to_json(const PsiReport& report);

Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);

}  // namespace symhodge
