#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "slicesemi/contour.hpp"
#include "slicesemi/operators.hpp"
#include "slicesemi/semigroup.hpp"

namespace slicesemi {

using json = nlohmann::json;

// {"algebra": "H", "coeffs": [...]}
json element_to_json(const Element& x);
Element element_from_json(const json& j);

// {"algebra": "H", "m": 2, "entries": [[[...], [...]], ...]}, entries row
// by row, each entry a coefficient list.
json op_to_json(const OpMatrix& M);
OpMatrix op_from_json(const json& j);

json vec_to_json(const ModuleVec& x);
ModuleVec vec_from_json(const json& j);

json certificate_to_json(const ContourCertificate& c);

std::string format_double(double v);  // shortest round-trip-safe decimal

// "a,b,multiplicity" per sphere
std::string spectrum_csv(const SphereSpectrum& s);

// header row, then t plus the coefficients of T(t)x (or of T(t) row-major
// with full = true)
std::string trace_csv(const SemigroupTrace& trace, const ModuleVec* x, bool full);

std::string matrix_csv(const RealMatrix& m);

// signed multiplication table, entries like "+e12" / "-e3"
std::string algebra_table_csv(const Algebra& alg);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);

}  // namespace slicesemi
