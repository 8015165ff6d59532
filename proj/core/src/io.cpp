#include "lowmode/io.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json_detail.hpp"

namespace lowmode {

using detail::json;

namespace {

double jd(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int ji(const json& j, const char* key, int fallback) {
  return j.contains(key) ? j.at(key).get<int>() : fallback;
}

bool jb(const json& j, const char* key, bool fallback) {
  return j.contains(key) ? j.at(key).get<bool>() : fallback;
}

void parse_steering(const json& j, const FrequencyBasis& basis,
                    SteeringSpec& s) {
  s.basis = basis;
  if (j.contains("u0")) s.u0 = detail::parse_poly(j.at("u0"), basis);
  if (j.contains("uhat")) s.uhat = detail::parse_poly(j.at("uhat"), basis);
  s.horizon = jd(j, "horizon", s.horizon);
  s.epsilon = jd(j, "epsilon", s.epsilon);
  s.r = jd(j, "r", s.r);
  s.mu = jd(j, "mu", s.mu);
  if (j.contains("grid")) s.grid = detail::parse_grid(j.at("grid"), s.grid);
  s.dt = jd(j, "dt", s.dt);
  s.snapshot_stride = ji(j, "snapshot_stride", s.snapshot_stride);
  s.cutoff_radius = ji(j, "cutoff_radius", s.cutoff_radius);
  if (j.contains("omega") && !j.at("omega").is_null()) {
    s.omega = LatticeFrequency{j.at("omega").at("n1").get<int>(),
                               j.at("omega").at("n2").get<int>()};
  }
  s.modes = ji(j, "modes", s.modes);
  s.relax_depth = ji(j, "relax_depth", s.relax_depth);
  s.oscillation = ji(j, "oscillation", s.oscillation);
  s.theta = jd(j, "theta", s.theta);
  s.nu = jd(j, "nu", s.nu);
  s.quantize_pieces = ji(j, "quantize_pieces", s.quantize_pieces);
  s.time_samples = ji(j, "time_samples", s.time_samples);
  if (j.contains("h_poly")) {
    std::vector<TrigPoly> coeffs;
    for (const auto& term : j.at("h_poly"))
      coeffs.push_back(detail::parse_poly(term, basis));
    if (!coeffs.empty())
      s.h = ControlSchedule::polynomial(std::move(coeffs), s.horizon);
  }
}

json dump_steering(const SteeringSpec& s) {
  json j{{"u0", detail::jpoly(s.u0)},
         {"uhat", detail::jpoly(s.uhat)},
         {"horizon", s.horizon},
         {"epsilon", s.epsilon},
         {"r", s.r},
         {"mu", s.mu},
         {"grid", detail::jgrid(s.grid)},
         {"dt", s.dt},
         {"snapshot_stride", s.snapshot_stride},
         {"cutoff_radius", s.cutoff_radius},
         {"modes", s.modes},
         {"relax_depth", s.relax_depth},
         {"oscillation", s.oscillation},
         {"theta", s.theta},
         {"nu", s.nu},
         {"quantize_pieces", s.quantize_pieces},
         {"time_samples", s.time_samples}};
  if (s.omega)
    j["omega"] = json{{"n1", s.omega->n1}, {"n2", s.omega->n2}};
  else
    j["omega"] = nullptr;
  if (s.h) {
    json coeffs = json::array();
    for (const auto& seg : s.h->segments())
      for (const auto& p : seg.poly) coeffs.push_back(detail::jpoly(p));
    j["h_poly"] = coeffs;
  }
  return j;
}

}  // namespace

ExperimentSpec parse_experiment(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    ExperimentSpec spec;
    if (!j.contains("kind") || !j.at("kind").is_string())
      throw ConfigParseError("spec needs a string field 'kind'");
    spec.kind = j.at("kind").get<std::string>();
    static const char* kinds[] = {"simulate",       "steer",
                                  "relax_study",    "extension_study",
                                  "locality_study", "lattice_report",
                                  "sweep",          "verify"};
    bool known = false;
    for (const char* k : kinds) known = known || spec.kind == k;
    if (!known) throw ConfigParseError("unknown experiment kind " + spec.kind);

    if (j.contains("basis")) spec.basis = detail::parse_basis(j.at("basis"));
    spec.basis.validate();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances"))
      for (const auto& [k, v] : j.at("tolerances").items())
        spec.tolerances[k] = v.get<double>();

    if (j.contains("grid")) spec.grid = detail::parse_grid(j.at("grid"), spec.grid);
    const json solver = j.value("solver", json::object());
    spec.mu = jd(solver, "mu", spec.mu);
    spec.dt = jd(solver, "dt", spec.dt);
    spec.t_final = jd(solver, "t_final", spec.t_final);
    spec.snapshot_stride = ji(solver, "snapshot_stride", spec.snapshot_stride);
    spec.u0 = j.contains("u0") ? detail::parse_poly(j.at("u0"), spec.basis)
                               : TrigPoly(spec.basis);
    if (j.contains("forcing_poly"))
      for (const auto& term : j.at("forcing_poly"))
        spec.forcing_poly.push_back(detail::parse_poly(term, spec.basis));
    spec.compare_cole_hopf = jb(j, "compare_cole_hopf", false);

    spec.steering.u0 = TrigPoly(spec.basis);
    spec.steering.uhat = TrigPoly(spec.basis);
    spec.steering.basis = spec.basis;
    if (j.contains("steering"))
      parse_steering(j.at("steering"), spec.basis, spec.steering);

    spec.relax.basis = spec.basis;
    spec.relax.eta1 = TrigPoly(spec.basis);
    if (j.contains("relax")) {
      const json& r = j.at("relax");
      spec.relax.grid = detail::parse_grid(r.value("grid", json::object()),
                                           spec.grid);
      spec.relax.mu = jd(r, "mu", spec.relax.mu);
      spec.relax.dt = jd(r, "dt", spec.relax.dt);
      spec.relax.t_final = jd(r, "t_final", spec.relax.t_final);
      spec.relax.nu = jd(r, "nu", spec.relax.nu);
      if (r.contains("eta1"))
        spec.relax.eta1 = detail::parse_poly(r.at("eta1"), spec.basis);
      spec.relax.target_order = ji(r, "target_order", spec.relax.target_order);
      if (r.contains("m_values")) {
        spec.relax.m_values.clear();
        for (const auto& v : r.at("m_values"))
          spec.relax.m_values.push_back(v.get<int>());
      }
      spec.relax.halving_factor =
          jd(r, "halving_factor", spec.relax.halving_factor);
    }

    spec.extension.basis = spec.basis;
    spec.extension.eta1 = TrigPoly(spec.basis);
    if (j.contains("extension")) {
      const json& r = j.at("extension");
      spec.extension.grid = detail::parse_grid(r.value("grid", json::object()),
                                               spec.grid);
      spec.extension.mu = jd(r, "mu", spec.extension.mu);
      spec.extension.dt = jd(r, "dt", spec.extension.dt);
      spec.extension.t_final = jd(r, "t_final", spec.extension.t_final);
      spec.extension.nu = jd(r, "nu", spec.extension.nu);
      if (r.contains("eta1"))
        spec.extension.eta1 = detail::parse_poly(r.at("eta1"), spec.basis);
      spec.extension.target_order =
          ji(r, "target_order", spec.extension.target_order);
      spec.extension.oscillation =
          ji(r, "oscillation", spec.extension.oscillation);
      spec.extension.theta = jd(r, "theta", spec.extension.theta);
      spec.extension.levels = ji(r, "levels", spec.extension.levels);
      spec.extension.ratio_bound =
          jd(r, "ratio_bound", spec.extension.ratio_bound);
    }

    spec.locality.u0 = TrigPoly(spec.basis);
    if (j.contains("locality")) {
      const json& r = j.at("locality");
      spec.locality.grid = detail::parse_grid(r.value("grid", json::object()),
                                              spec.grid);
      spec.locality.mu = jd(r, "mu", spec.locality.mu);
      spec.locality.dt = jd(r, "dt", spec.locality.dt);
      spec.locality.t_final = jd(r, "t_final", spec.locality.t_final);
      if (r.contains("u0"))
        spec.locality.u0 = detail::parse_poly(r.at("u0"), spec.basis);
      if (r.contains("rho_list")) {
        spec.locality.rho_list.clear();
        for (const auto& v : r.at("rho_list"))
          spec.locality.rho_list.push_back(v.get<double>());
      }
      spec.locality.r = jd(r, "r", spec.locality.r);
      spec.locality.amplitude = jd(r, "amplitude", spec.locality.amplitude);
      spec.locality.delta = jd(r, "delta", spec.locality.delta);
      spec.locality.noise_modes = ji(r, "noise_modes",
                                     spec.locality.noise_modes);
    }
    spec.locality.seed = spec.seed;

    if (j.contains("lattice")) {
      const json& r = j.at("lattice");
      spec.lattice_k = ji(r, "k", spec.lattice_k);
      spec.gap_order = ji(r, "gap_order", spec.gap_order);
      spec.gap_upper = jd(r, "gap_upper", spec.gap_upper);
    }

    if (j.contains("axis")) {
      const json& r = j.at("axis");
      spec.axis.name = r.value("name", std::string{});
      if (r.contains("values"))
        for (const auto& v : r.at("values"))
          spec.axis.values.push_back(v.get<double>());
    }
    if (spec.kind == "sweep") {
      if (spec.axis.name.empty() || spec.axis.values.empty())
        throw ConfigParseError("sweep needs a non-empty axis");
    }
    return spec;
  } catch (const json::exception& e) {
    throw ConfigParseError(std::string("bad spec field: ") + e.what());
  }
}

std::string experiment_to_json(const ExperimentSpec& spec) {
  json tol = json::object();
  for (const auto& [k, v] : spec.tolerances) tol[k] = v;
  json j{
      {"kind", spec.kind},
      {"basis", detail::jbasis(spec.basis)},
      {"seed", spec.seed},
      {"tolerances", tol},
      {"grid", detail::jgrid(spec.grid)},
      {"solver",
       json{{"mu", spec.mu},
            {"dt", spec.dt},
            {"t_final", spec.t_final},
            {"snapshot_stride", spec.snapshot_stride}}},
      {"u0", detail::jpoly(spec.u0)},
      {"compare_cole_hopf", spec.compare_cole_hopf},
      {"steering", dump_steering(spec.steering)},
      {"lattice",
       json{{"k", spec.lattice_k},
            {"gap_order", spec.gap_order},
            {"gap_upper", spec.gap_upper}}},
  };
  json fp = json::array();
  for (const auto& p : spec.forcing_poly) fp.push_back(detail::jpoly(p));
  j["forcing_poly"] = fp;
  j["relax"] = json{{"grid", detail::jgrid(spec.relax.grid)},
                    {"mu", spec.relax.mu},
                    {"dt", spec.relax.dt},
                    {"t_final", spec.relax.t_final},
                    {"nu", spec.relax.nu},
                    {"eta1", detail::jpoly(spec.relax.eta1)},
                    {"target_order", spec.relax.target_order},
                    {"m_values", spec.relax.m_values},
                    {"halving_factor", spec.relax.halving_factor}};
  j["extension"] = json{{"grid", detail::jgrid(spec.extension.grid)},
                        {"mu", spec.extension.mu},
                        {"dt", spec.extension.dt},
                        {"t_final", spec.extension.t_final},
                        {"nu", spec.extension.nu},
                        {"eta1", detail::jpoly(spec.extension.eta1)},
                        {"target_order", spec.extension.target_order},
                        {"oscillation", spec.extension.oscillation},
                        {"theta", spec.extension.theta},
                        {"levels", spec.extension.levels},
                        {"ratio_bound", spec.extension.ratio_bound}};
  j["locality"] = json{{"grid", detail::jgrid(spec.locality.grid)},
                       {"mu", spec.locality.mu},
                       {"dt", spec.locality.dt},
                       {"t_final", spec.locality.t_final},
                       {"u0", detail::jpoly(spec.locality.u0)},
                       {"rho_list", spec.locality.rho_list},
                       {"r", spec.locality.r},
                       {"amplitude", spec.locality.amplitude},
                       {"delta", spec.locality.delta},
                       {"noise_modes", spec.locality.noise_modes}};
  j["axis"] = json{{"name", spec.axis.name}, {"values", spec.axis.values}};
  return j.dump(2);
}

std::string config_hash(const ExperimentSpec& spec) {
  const std::string text = experiment_to_json(spec);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void write_artifacts(const RunResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw IoError("cannot create output directory " + out_dir + ": " +
                  ec.message());
  for (const auto& art : result.artifacts) {
    const fs::path path = fs::path(out_dir) / art.filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    out.write(art.content.data(),
              static_cast<std::streamsize>(art.content.size()));
    if (!out) throw IoError("short write to " + path.string());
  }
}

}  // namespace lowmode
