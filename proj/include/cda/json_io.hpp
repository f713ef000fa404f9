#pragma once

// JSON forms of scalars, field elements and algebra elements.
//
// Scalars: {"re_num","re_den","im_num","im_den","center"}, with big integers
// as decimal strings; Eisenstein scalars carry "basis":"omega" and store the
// omega-basis pair. Input additionally accepts the compact pair [a, b] where
// a and b are integers or "p/q" strings; the center then comes from context.

#include "json.hpp"

#include "cda/algebra.hpp"

namespace cda {

using json = nlohmann::json;

json scalar_to_json(const QuadScalar& x);
QuadScalar scalar_from_json(const json& j, CenterId context);
BigRat rational_from_json(const json& j);

json field_to_json(const FieldElem& x);
FieldElem field_from_json(const json& j, const ExtPtr& ext);

json algebra_elem_to_json(const AlgebraElem& a);
AlgebraElem algebra_elem_from_json(const json& j, const AlgPtr& alg);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace cda
