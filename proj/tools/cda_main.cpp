#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cda/codebook.hpp"
#include "cda/maxorder.hpp"
#include "cda/simulator.hpp"
#include "cda/verify.hpp"

using namespace cda;

namespace {

struct Global {
  std::string fixtures_file;
  bool human = false;
};

FixtureRegistry load_registry(const Global& g) {
  return g.fixtures_file.empty() ? FixtureRegistry::builtin() : FixtureRegistry::from_file(g.fixtures_file);
}

std::string plain(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Global& g, const json& j) {
  if (!g.human) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it)
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << it.key() << plain(it.value()) << '\n';
}

json compact(const QuadScalar& x) { return json::array({x.a().get_str(), x.b().get_str()}); }

json factorization_json(const QuadScalar& x) {
  ScalarFactorization f = factor_scalar(x);
  json factors = json::array();
  for (const auto& pp : f.factors) factors.push_back({{"prime", compact(pp.prime)}, {"exponent", pp.exponent}});
  return {{"unit", compact(f.unit)}, {"factors", factors}, {"text", f.to_string()}};
}

json measure_json(const MeasureValue& m) {
  json j{{"squared", m.squared.get_str()}, {"value", m.value}, {"text", m.to_string()}};
  if (m.is_rational) j["exact"] = m.exact.get_str();
  return j;
}

json discriminant_json(const DiscriminantValue& d) {
  return {{"canon", compact(d.canon)},
          {"text", d.canon.to_string()},
          {"factorization", factorization_json(d.canon)},
          {"norm", d.norm.get_str()},
          {"measure", measure_json(d.measure())}};
}

json lattice_json(const std::string& algebra, const OFLattice& l) {
  json rows = json::array();
  for (const auto& r : l.hnf().rows) {
    json row = json::array();
    for (const auto& x : r) row.push_back(compact(x));
    rows.push_back(row);
  }
  return {{"algebra", algebra}, {"denominator", l.denominator().get_str()}, {"coordinate_rows", rows}};
}

OFLattice lattice_from_file(const FixtureRegistry& reg, const std::string& path, std::string& algebra) {
  json j = read_json_file(path);
  algebra = j.at("algebra").get<std::string>();
  const Fixture& f = reg.get(algebra);
  if (f.data_only) throw Error(ErrorCode::InvalidArgument, algebra + " carries no algebra");
  BigRat den = rational_from_json(j.value("denominator", json(1)));
  std::vector<AlgebraElem> gens;
  for (const auto& row : j.at("coordinate_rows")) {
    std::vector<QuadScalar> v;
    for (const auto& x : row) v.push_back(scalar_from_json(x, f.center) * QuadScalar(f.center, 1 / den, BigRat(0)));
    gens.push_back(AlgebraElem::from_ambient(f.algebra, v));
  }
  return OFLattice::span(f.algebra, gens);
}

const Fixture& algebra_fixture(const FixtureRegistry& reg, const std::string& name) {
  const Fixture& f = reg.get(name);
  if (f.data_only) throw Error(ErrorCode::InvalidArgument, name + " is a data-only fixture");
  return f;
}

QuadScalar parse_pair(const std::string& s, CenterId c) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return scalar_from_json(json(s), c);
  return scalar_from_json(json::array({s.substr(0, comma), s.substr(comma + 1)}), c);
}

std::vector<QuadScalar> parse_scalar_list(const std::string& s, CenterId c) {
  std::vector<QuadScalar> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ';'))
    if (!item.empty()) out.push_back(parse_pair(item, c));
  return out;
}

// Order lattices for disc/measure.
struct OrderChoice {
  std::string fixture;
  std::string order = "natural";
  std::string lattice_file;
};

std::pair<std::string, OFLattice> chosen_order(const FixtureRegistry& reg, const OrderChoice& o) {
  if (!o.lattice_file.empty()) {
    std::string alg;
    OFLattice l = lattice_from_file(reg, o.lattice_file, alg);
    return {alg, l};
  }
  if (o.fixture.empty()) throw Error(ErrorCode::InvalidArgument, "--fixture or --lattice is required");
  const Fixture& f = algebra_fixture(reg, o.fixture);
  if (o.order == "natural") return {f.name, natural_order(f.algebra, f.oe_basis)};
  if (o.order == "maximal") return {f.name, find_maximal_order(f).order};
  throw Error(ErrorCode::InvalidArgument, "--order must be natural or maximal");
}

json trace_json(const SearchTrace& t, const Certification& cert) {
  json steps = json::array();
  for (const auto& st : t.iterations) {
    json gens = json::array();
    for (const auto& g : st.new_generators) gens.push_back(algebra_elem_to_json(g));
    json rad = json::array();
    for (const auto& r : st.radical.hnf().rows) {
      json row = json::array();
      for (const auto& x : r) row.push_back(compact(x));
      rad.push_back(row);
    }
    steps.push_back({{"radical_denominator", st.radical.rank() ? st.radical.denominator().get_str() : "1"},
                     {"radical_rows", rad},
                     {"new_generators", gens},
                     {"disc_canon", compact(st.disc_after.canon)},
                     {"disc_norm", st.disc_after.norm.get_str()}});
  }
  return {{"prime", compact(t.prime)},
          {"termination", termination_name(t.terminated)},
          {"steps", steps},
          {"certification", cert_status_name(cert.status)}};
}

NumericCodebook codebook_from_config(const FixtureRegistry& reg, const json& c) {
  if (c.contains("file")) return numeric_codebook_from_json(read_json_file(c.at("file").get<std::string>()));
  if (c.contains("bin")) return read_codebook_binary(c.at("bin").get<std::string>(), c.value("label", std::string()));
  std::string fx = c.at("fixture").get<std::string>();
  int bpcu = c.at("bpcu").get<int>();
  Codebook cb;
  if (fx == "golden_plus") {
    std::optional<std::vector<QuadScalar>> offset;
    if (c.contains("coset")) {
      offset.emplace();
      for (const auto& x : c.at("coset")) offset->push_back(scalar_from_json(x, CenterId::GaussQi));
    }
    cb = golden_plus_codebook(reg, bpcu, offset);
  } else if (fx == "golden") {
    cb = golden_reference(reg, bpcu, parse_golden_mode(c.value("mode", std::string("pam"))));
  } else {
    throw Error(ErrorCode::InvalidArgument, "no code construction for fixture " + fx);
  }
  NumericCodebook n = numeric_codebook(cb);
  if (c.contains("label")) n.label = c.at("label").get<std::string>();
  return n;
}

int threads_from_env() {
  const char* v = std::getenv("CDA_THREADS");
  if (!v || !*v) return 1;
  int t = std::atoi(v);
  return t > 0 ? t : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orders, discriminants and space-time codes from cyclic division algebras"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--fixtures", g.fixtures_file, "Fixture registry JSON (default: built-in)");
  app.add_flag("--human", g.human, "Human-readable tables instead of JSON");

  auto* fixtures = app.add_subcommand("fixtures", "List the fixture registry");

  OrderChoice disc_opts, measure_opts;
  auto add_order_opts = [](CLI::App* sc, OrderChoice& o) {
    sc->add_option("--fixture", o.fixture, "Algebra fixture");
    sc->add_option("--order", o.order, "natural or maximal")->check(CLI::IsMember({"natural", "maximal"}));
    sc->add_option("--lattice", o.lattice_file, "Lattice JSON {algebra, denominator, coordinate_rows}");
  };
  auto* disc = app.add_subcommand("disc", "Discriminant of an order");
  add_order_opts(disc, disc_opts);
  auto* measure = app.add_subcommand("measure", "Fundamental parallelotope measure of an order");
  add_order_opts(measure, measure_opts);

  std::string bound_center;
  int bound_n = 2;
  auto* bound = app.add_subcommand("bound", "Minimal discriminant and measure");
  bound->add_option("--center", bound_center, "qi or qomega")->required()->check(CLI::IsMember({"qi", "qomega"}));
  bound->add_option("--n", bound_n, "Index")->required()->check(CLI::PositiveNumber);

  std::string fm_algebra, fm_prime, fm_trace, fm_out;
  int fm_budget = kDefaultBudget;
  bool fm_plain = false;
  auto* fmo = app.add_subcommand("find-max-order", "Enlarge the natural order to a maximal order");
  fmo->add_option("--algebra,--fixture", fm_algebra, "Algebra fixture")->required();
  fmo->add_option("--prime", fm_prime, "Only saturate at this prime, as a,b");
  fmo->add_option("--budget", fm_budget, "Enlargement budget per prime")->check(CLI::PositiveNumber);
  fmo->add_option("--emit-trace", fm_trace, "Write the search trace JSON here");
  fmo->add_option("--out", fm_out, "Write the maximal order as lattice JSON here");
  fmo->add_flag("--no-compressed", fm_plain, "Search over O_F bases even for the cyclotomic family");

  std::string cb_fixture, cb_mode = "pam", cb_coset, cb_out, cb_bin;
  int cb_bpcu = 4;
  auto* cbk = app.add_subcommand("codebook", "Lowest-energy codebook of a code lattice");
  cbk->add_option("--fixture", cb_fixture, "golden_plus or golden")
      ->required()
      ->check(CLI::IsMember({"golden_plus", "golden"}));
  cbk->add_option("--bpcu", cb_bpcu, "Bits per channel use")->check(CLI::Range(1, 8));
  cbk->add_option("--mode", cb_mode, "Golden selection: pam or coset_optimized");
  cbk->add_option("--coset", cb_coset, "golden_plus offset: a,b for all coordinates or a,b;a,b;... per coordinate");
  cbk->add_option("--out", cb_out, "Write the codebook JSON here (default stdout)");
  cbk->add_option("--bin", cb_bin, "Also write the flat binary codebook here");

  std::string sim_config, sim_out;
  std::uint64_t sim_seed = 0;
  auto* sim = app.add_subcommand("simulate", "Block error rate curves");
  sim->add_option("--config", sim_config, "Simulation JSON")->required();
  sim->add_option("--out", sim_out, "CSV output (default stdout)");
  sim->add_option("--seed", sim_seed, "Random seed")->required();

  bool ver_extended = false;
  auto* ver = app.add_subcommand("verify", "Recompute the known values and compare");
  ver->add_flag("--extended", ver_extended, "Include the l = 5 search and the Eisenstein saturation");

  CLI11_PARSE(app, argc, argv);

  try {
    FixtureRegistry reg = load_registry(g);

    if (*fixtures) {
      json list = json::array();
      for (const auto& name : reg.names()) {
        const Fixture& f = reg.get(name);
        list.push_back({{"name", name},
                        {"kind", f.data_only ? "data" : "algebra"},
                        {"center", center_name(f.center)},
                        {"degree", f.degree},
                        {"gamma", compact(f.gamma)}});
      }
      if (g.human) {
        for (const auto& f : list)
          std::cout << std::left << std::setw(18) << plain(f["name"]) << std::setw(9) << plain(f["kind"])
                    << std::setw(8) << plain(f["center"]) << "n=" << f["degree"] << "  gamma=" << f["gamma"].dump()
                    << '\n';
      } else {
        std::cout << json{{"version", reg.version()}, {"fixtures", list}}.dump(2) << '\n';
      }
      return 0;
    }

    if (*disc || *measure) {
      const OrderChoice& o = *disc ? disc_opts : measure_opts;
      auto [alg, l] = chosen_order(reg, o);
      DiscriminantValue d = discriminant(l);
      json out{{"algebra", alg}, {"order", o.lattice_file.empty() ? o.order : o.lattice_file}};
      if (*disc) {
        out["discriminant"] = discriminant_json(d);
      } else {
        out["measure"] = measure_json(d.measure());
        out["gram_measure"] = gram_and_measure_numeric(l).measure;
      }
      if (g.human) {
        json flat{{"algebra", alg}, {"discriminant", d.canon.to_string()}, {"factorization", factor_scalar(d.canon).to_string()},
                  {"norm", d.norm.get_str()}, {"measure", d.measure().to_string()}};
        emit(g, flat);
      } else {
        emit(g, out);
      }
      return 0;
    }

    if (*bound) {
      CenterId c = center_from_name(bound_center);
      QuadScalar d = minimal_discriminant(c, bound_n);
      auto [p1, p2] = smallest_primes(c);
      json out{{"center", bound_center},
               {"n", bound_n},
               {"primes", json::array({compact(p1), compact(p2)})},
               {"discriminant", compact(d)},
               {"factorization", factorization_json(d)},
               {"norm", d.norm().get_str()},
               {"measure", measure_json(minimal_measure(c, bound_n))}};
      if (g.human)
        emit(g, json{{"center", bound_center},
                     {"n", bound_n},
                     {"discriminant", factor_scalar(d).to_string()},
                     {"norm", d.norm().get_str()},
                     {"measure", minimal_measure(c, bound_n).to_string()}});
      else
        emit(g, out);
      return 0;
    }

    if (*fmo) {
      const Fixture& f = algebra_fixture(reg, fm_algebra);
      MaxOrderOptions opts;
      opts.budget = fm_budget;
      opts.compressed = !fm_plain;
      if (!fm_prime.empty()) opts.only_prime = parse_pair(fm_prime, f.center);
      MaxOrderResult r = find_maximal_order(f, opts);
      DiscriminantValue d = discriminant(r.order);
      OFLattice nat = natural_order(f.algebra, f.oe_basis);
      json traces = json::array();
      for (const auto& t : r.traces) traces.push_back(trace_json(t, r.certification));
      json out{{"algebra", f.name},
               {"discriminant", discriminant_json(d)},
               {"index_over_natural", index_from_discriminants(discriminant(nat), d).get_str()},
               {"certification", cert_status_name(r.certification.status)},
               {"certification_reason", r.certification.reason}};
      json steps = json::array();
      for (const auto& t : r.traces) steps.push_back({{"prime", compact(t.prime)}, {"enlargements", t.iterations.size()}});
      out["enlargements"] = steps;
      if (r.compressed) out["profile"] = r.compressed->order.profile();
      if (!fm_trace.empty()) write_json_file(fm_trace, traces.size() == 1 ? traces[0] : traces);
      if (!fm_out.empty()) write_json_file(fm_out, lattice_json(f.name, r.order));
      if (g.human)
        emit(g, json{{"algebra", f.name},
                     {"discriminant", factor_scalar(d.canon).to_string()},
                     {"measure", d.measure().to_string()},
                     {"index_over_natural", out["index_over_natural"]},
                     {"certification", out["certification"]}});
      else
        emit(g, out);
      return 0;
    }

    if (*cbk) {
      Codebook cb;
      if (cb_fixture == "golden_plus") {
        std::optional<std::vector<QuadScalar>> offset;
        if (!cb_coset.empty()) {
          std::vector<QuadScalar> given = parse_scalar_list(cb_coset, CenterId::GaussQi);
          if (given.size() == 1)
            offset = uniform_offset(golden_plus_code_lattice(reg).ideal, given[0]);
          else
            offset = given;
        }
        cb = golden_plus_codebook(reg, cb_bpcu, offset);
      } else {
        cb = golden_reference(reg, cb_bpcu, parse_golden_mode(cb_mode));
      }
      json j = codebook_to_json(cb);
      if (!cb_bin.empty()) write_codebook_binary(cb, cb_bin);
      if (!cb_out.empty()) {
        write_json_file(cb_out, j);
        json summary{{"label", cb.label},
                     {"size", cb.size()},
                     {"bpcu", cb.bits_per_channel_use()},
                     {"mean_energy", cb.mean_energy_before_normalization},
                     {"min_det", j["min_det"]},
                     {"out", cb_out}};
        emit(g, summary);
      } else if (g.human) {
        emit(g, json{{"label", cb.label},
                     {"size", cb.size()},
                     {"bpcu", cb.bits_per_channel_use()},
                     {"mean_energy", cb.mean_energy_before_normalization},
                     {"min_det", j["min_det"]["value"]}});
      } else {
        std::cout << j.dump(2) << '\n';
      }
      return 0;
    }

    if (*sim) {
      json c = read_json_file(sim_config);
      SimConfig cfg;
      for (const auto& cb : c.at("codebooks")) cfg.codebooks.push_back(codebook_from_config(reg, cb));
      cfg.snr_grid_db = c.at("snr_db").get<std::vector<double>>();
      cfg.min_block_errors = c.value("min_block_errors", cfg.min_block_errors);
      cfg.max_trials = c.value("max_trials", cfg.max_trials);
      cfg.rx_antennas = c.value("rx_antennas", cfg.rx_antennas);
      cfg.seed = sim_seed;
      cfg.threads = threads_from_env();
      SimResult r = run_bler(cfg);
      if (sim_out.empty()) {
        write_csv(std::cout, r);
      } else {
        std::ofstream out(sim_out);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + sim_out);
        write_csv(out, r);
      }
      return 0;
    }

    if (*ver) {
      VerifyOptions opts;
      opts.extended = ver_extended;
      VerifyReport rep = run_verify(reg, opts);
      if (g.human)
        std::cout << verify_report_table(rep);
      else
        std::cout << verify_report_to_json(rep).dump(2) << '\n';
      return rep.all_passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
