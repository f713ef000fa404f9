#include "cda/json_io.hpp"

#include <fstream>
#include <sstream>

namespace cda {

json scalar_to_json(const QuadScalar& x) {
  json j;
  j["re_num"] = x.a().get_num().get_str();
  j["re_den"] = x.a().get_den().get_str();
  j["im_num"] = x.b().get_num().get_str();
  j["im_den"] = x.b().get_den().get_str();
  j["center"] = center_name(x.center());
  if (x.center() == CenterId::EisensteinQomega) j["basis"] = "omega";
  return j;
}

namespace {

BigInt int_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorCode::InvalidArgument, "bad integer " + j.dump());
    return v;
  }
  throw Error(ErrorCode::InvalidArgument, "expected integer, got " + j.dump());
}

}  // namespace

BigRat rational_from_json(const json& j) {
  if (j.is_number_integer()) return BigRat(j.get<long>());
  if (j.is_string()) {
    BigRat r;
    if (r.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorCode::InvalidArgument, "bad rational " + j.dump());
    r.canonicalize();
    return r;
  }
  throw Error(ErrorCode::InvalidArgument, "expected rational, got " + j.dump());
}

QuadScalar scalar_from_json(const json& j, CenterId context) {
  if (j.is_array()) {
    if (j.size() != 2) throw Error(ErrorCode::InvalidArgument, "scalar pair needs two entries: " + j.dump());
    return QuadScalar(context, rational_from_json(j[0]), rational_from_json(j[1]));
  }
  if (j.is_number_integer() || j.is_string()) return QuadScalar(context, rational_from_json(j), BigRat(0));
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "bad scalar " + j.dump());
  CenterId c = j.contains("center") ? center_from_name(j.at("center").get<std::string>()) : context;
  if (c != context) throw Error(ErrorCode::CenterMismatch, "scalar center differs from context");
  if (j.contains("basis") && j.at("basis") != "omega")
    throw Error(ErrorCode::InvalidArgument, "unsupported scalar basis " + j.at("basis").dump());
  BigRat a(int_from_json(j.at("re_num")), int_from_json(j.value("re_den", json(1))));
  BigRat b(int_from_json(j.at("im_num")), int_from_json(j.value("im_den", json(1))));
  if (a.get_den() == 0 || b.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in scalar");
  return QuadScalar(c, a, b);
}

json field_to_json(const FieldElem& x) {
  json arr = json::array();
  for (const auto& c : x.coeffs()) arr.push_back(scalar_to_json(c));
  return arr;
}

FieldElem field_from_json(const json& j, const ExtPtr& ext) {
  if (!j.is_array() || static_cast<int>(j.size()) != ext->degree())
    throw Error(ErrorCode::InvalidArgument, "field element needs " + std::to_string(ext->degree()) + " coefficients");
  Poly c;
  for (const auto& v : j) c.push_back(scalar_from_json(v, ext->center()));
  return ext->from_coeffs(std::move(c));
}

json algebra_elem_to_json(const AlgebraElem& a) {
  json arr = json::array();
  for (const auto& x : a.coords()) arr.push_back(field_to_json(x));
  return arr;
}

AlgebraElem algebra_elem_from_json(const json& j, const AlgPtr& alg) {
  if (!j.is_array() || static_cast<int>(j.size()) != alg->degree())
    throw Error(ErrorCode::InvalidArgument, "algebra element needs " + std::to_string(alg->degree()) + " coordinates");
  std::vector<FieldElem> xs;
  for (const auto& v : j) xs.push_back(field_from_json(v, alg->extension()));
  return AlgebraElem(alg, std::move(xs));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace cda
