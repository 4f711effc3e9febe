#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "bisep/module.hpp"

namespace bisep {

using json = nlohmann::ordered_json;

// {"kind": "Q"} | {"kind": "Fp", "p": 2} | {"kind": "Fpk", "p": 2, "k": 2, "modulus": [1,1,1]}
json field_to_json(const Field& f);
Field field_from_json(const json& j);
// Short names used on the command line: q, f2, f3, f2^2.
Field field_from_name(const std::string& name);

// Q: "num/den" strings; F_p: ints; F_{p^k}: coefficient lists.
json scalar_to_json(const Field& f, const Scalar& s);
Scalar scalar_from_json(const Field& f, const json& j);
json vec_to_json(const Field& f, const Vec& v);
Vec vec_from_json(const Field& f, const json& j, std::size_t n);
json matrix_to_json(const Matrix& m);  // list of rows
Matrix matrix_from_json(const Field& f, const json& j, std::size_t rows, std::size_t cols);

json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const json& j);
// iota is written column-major: iota[j] is the image of s_j.
json extension_to_json(const Extension& e);
Extension extension_from_json(const json& j);
json bimodule_to_json(const Bimodule& m);
Bimodule bimodule_from_json(const json& j);

using Subject = std::variant<Extension, Bimodule>;
// An extension has "iota", a bimodule "left"/"right".
Subject subject_from_json(const json& j);
json subject_to_json(const Subject& s);

// Parse errors surface as Error(Parse); validation errors keep their kind.
json load_json_file(const std::string& path);

}  // namespace bisep
