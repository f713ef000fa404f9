#include "cda/fixtures.hpp"

#include <cmath>

#include "fixtures_data.hpp"

namespace cda {

std::complex<double> refine_root(const Poly& poly, std::complex<double> z) {
  for (int it = 0; it < 100; ++it) {
    std::complex<double> f = 0.0, df = 0.0;
    for (size_t k = poly.size(); k-- > 0;) {
      df = df * z + f;
      f = f * z + poly[k].to_complex();
    }
    if (std::abs(df) == 0.0) break;
    std::complex<double> step = f / df;
    z -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(z))) break;
  }
  return z;
}

namespace {

Fixture parse_fixture(const json& j) {
  Fixture f;
  try {
    f.name = j.at("name").get<std::string>();
    std::string kind = j.value("kind", std::string("algebra"));
    f.center = center_from_name(j.at("center").get<std::string>());
    f.degree = j.at("degree").get<int>();
    f.gamma = scalar_from_json(j.at("gamma"), f.center);
    if (kind == "data") {
      f.data_only = true;
      f.relative_discriminant.unit = QuadScalar::one(f.center);
      for (const auto& pe : j.at("relative_discriminant")) {
        f.relative_discriminant.factors.push_back(
            {scalar_from_json(pe.at("prime"), f.center), pe.at("exponent").get<unsigned>()});
      }
      for (const auto& ld : j.at("local_data"))
        f.local_data.push_back({scalar_from_json(ld.at("prime"), f.center), ld.at("local_index").get<int>()});
      return f;
    }
    if (kind != "algebra") throw Error(ErrorCode::InvalidFixture, f.name + ": unknown kind " + kind);
    Poly minpoly, sigma;
    for (const auto& c : j.at("minpoly")) minpoly.push_back(scalar_from_json(c, f.center));
    for (const auto& c : j.at("sigma_image")) sigma.push_back(scalar_from_json(c, f.center));
    if (static_cast<int>(minpoly.size()) != f.degree + 1)
      throw Error(ErrorCode::InvalidFixture, f.name + ": degree does not match minimal polynomial");
    const json& hint = j.at("embedding_root_hint");
    std::complex<double> root = refine_root(minpoly, {hint.at(0).get<double>(), hint.at(1).get<double>()});
    ExtPtr ext = FieldExtension::create(f.name, f.center, minpoly, sigma, root);
    f.algebra = Algebra::create(f.name, ext, f.gamma);
    for (const auto& b : j.at("oe_basis")) f.oe_basis.push_back(field_from_json(b, ext));
    if (static_cast<int>(f.oe_basis.size()) != f.degree)
      throw Error(ErrorCode::InvalidFixture, f.name + ": O_E basis must have " + std::to_string(f.degree) + " elements");
    for (const auto& p : j.value("division_primes", json::array()))
      f.division_primes.push_back(canonical_associate(scalar_from_json(p, f.center)).canon);
    f.cyclotomic_ell = j.value("cyclotomic_ell", 0);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidFixture, "fixture '" + f.name + "': " + e.what());
  }
  return f;
}

}  // namespace

FixtureRegistry FixtureRegistry::from_json(const json& j) {
  FixtureRegistry r;
  try {
    r.version_ = j.at("version").get<int>();
    if (r.version_ != 1) throw Error(ErrorCode::InvalidFixture, "unsupported registry version " + std::to_string(r.version_));
    for (const auto& fj : j.at("fixtures")) {
      Fixture f = parse_fixture(fj);
      if (r.fixtures_.count(f.name)) throw Error(ErrorCode::InvalidFixture, "duplicate fixture " + f.name);
      r.order_.push_back(f.name);
      r.fixtures_.emplace(f.name, std::move(f));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidFixture, e.what());
  }
  return r;
}

FixtureRegistry FixtureRegistry::builtin() {
  static const FixtureRegistry reg = from_json(json::parse(detail::kBuiltinFixtures));
  return reg;
}

FixtureRegistry FixtureRegistry::from_file(const std::string& path) { return from_json(read_json_file(path)); }

const Fixture& FixtureRegistry::get(const std::string& name) const {
  auto it = fixtures_.find(name);
  if (it == fixtures_.end()) throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'");
  return it->second;
}

}  // namespace cda
