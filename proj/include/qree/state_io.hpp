#pragma once
// JSON state files and report serialization for the command-line tool.
//
// Complex numbers are stored as two-element arrays [re, im].  Numbers are
// emitted with the library's shortest round-trip representation, so parsing
// a dumped file reproduces the exact same doubles and re-dumping reproduces
// the exact same bytes — traces can be archived and re-verified bit for bit.
//
// State files carry one of three kinds:
//   {"kind": "pure",    "amplitudes": [[re,im], x4]}
//   {"kind": "density", "matrix": [[[re,im] x4] x4]}
//   {"kind": "family",  "family": "bd|gvp|gh|vpt|ht", "params": [...]}
// Unknown keys are rejected by name rather than ignored, so typos in hand
// written files fail loudly.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qree/families.hpp"
#include "qree/measures.hpp"
#include "qree/oracle.hpp"
#include "qree/procedure.hpp"

namespace qree::io {

using json = nlohmann::json;

namespace detail {

inline json cx_to_json(const cx& z) { return json::array({z.real(), z.imag()}); }

inline cx cx_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw validation_error("state file: " + where + " must be a [re, im] pair");
  return cx(j[0].get<double>(), j[1].get<double>());
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw validation_error("state file: unknown key '" + item.key() + "' in " + where);
  }
}

}  // namespace detail

inline json mat4_to_json(const Mat4& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(detail::cx_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Mat4 mat4_from_json(const json& j, const std::string& where = "matrix") {
  if (!j.is_array() || j.size() != 4)
    throw validation_error("state file: " + where + " must be a 4x4 array");
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4)
      throw validation_error("state file: " + where + " must be a 4x4 array");
    for (int k = 0; k < 4; ++k)
      m(i, k) = detail::cx_from_json(j[i][k], where + " entry");
  }
  return m;
}

inline json amplitudes_to_json(const Vec4& v) {
  json out = json::array();
  for (const cx& z : v) out.push_back(detail::cx_to_json(z));
  return out;
}

inline Vec4 amplitudes_from_json(const json& j, const std::string& where = "amplitudes") {
  if (!j.is_array() || j.size() != 4)
    throw validation_error("state file: " + where + " must hold 4 [re, im] pairs");
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = detail::cx_from_json(j[i], where + " entry");
  return v;
}

// A parsed state file: always provides a density matrix; keeps the pure
// amplitudes and the family spec when the file carried them.
struct LoadedState {
  std::string kind;  // "pure", "density", or "family"
  DensityMatrix rho;
  std::optional<PureState> pure;
  std::string family;          // family files only
  std::vector<double> params;  // family files only
};

inline LoadedState parse_state(const json& j) {
  if (!j.is_object())
    throw validation_error("state file: top level must be an object");
  if (!j.contains("kind"))
    throw validation_error("state file: missing key 'kind'");
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "pure") {
    detail::reject_unknown_keys(j, {"kind", "amplitudes"}, "a pure state file");
    if (!j.contains("amplitudes"))
      throw validation_error("state file: missing key 'amplitudes'");
    const PureState psi(amplitudes_from_json(j.at("amplitudes")));
    return LoadedState{kind, DensityMatrix::from_pure(psi), psi, "", {}};
  }
  if (kind == "density") {
    detail::reject_unknown_keys(j, {"kind", "matrix"}, "a density state file");
    if (!j.contains("matrix"))
      throw validation_error("state file: missing key 'matrix'");
    return LoadedState{kind, DensityMatrix::from_matrix(mat4_from_json(j.at("matrix"))),
                       std::nullopt, "", {}};
  }
  if (kind == "family") {
    detail::reject_unknown_keys(j, {"kind", "family", "params"}, "a family state file");
    if (!j.contains("family"))
      throw validation_error("state file: missing key 'family'");
    if (!j.contains("params"))
      throw validation_error("state file: missing key 'params'");
    const std::string fam = j.at("family").get<std::string>();
    if (!j.at("params").is_array())
      throw validation_error("state file: 'params' must be an array of numbers");
    std::vector<double> ps;
    for (const json& p : j.at("params")) {
      if (!p.is_number())
        throw validation_error("state file: 'params' must be an array of numbers");
      ps.push_back(p.get<double>());
    }
    auto need = [&](std::size_t n) {
      if (ps.size() != n)
        throw validation_error("state file: family '" + fam + "' needs " +
                               std::to_string(n) + " params, got " +
                               std::to_string(ps.size()));
    };
    DensityMatrix rho = DensityMatrix::maximally_mixed();
    if (fam == "bd") {
      need(4);
      rho = families::bell_diagonal(ps[0], ps[1], ps[2], ps[3]).rho;
    } else if (fam == "gvp") {
      need(3);
      rho = families::vedral_plenio(ps[0], ps[1], ps[2]).rho;
    } else if (fam == "gh") {
      need(3);
      rho = families::gen_horodecki(ps[0], ps[1], ps[2]).rho;
    } else if (fam == "vpt") {
      need(3);
      rho = families::vedral_plenio_type(ps[0], ps[1], ps[2]).rho;
    } else if (fam == "ht") {
      need(4);
      rho = families::horodecki_type(ps[0], ps[1], ps[2], ps[3]).rho;
    } else {
      throw validation_error("state file: unknown family '" + fam + "'");
    }
    return LoadedState{kind, rho, std::nullopt, fam, ps};
  }
  throw validation_error("state file: unknown kind '" + kind +
                         "' (expected pure, density, or family)");
}

inline LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw validation_error("cannot open state file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("state file: invalid JSON: ") + e.what());
  }
  return parse_state(j);
}

// --- procedure trace --------------------------------------------------------

inline json trace_to_json(const ProcedureTrace& tr) {
  json j;
  j["source"] = mat4_to_json(tr.source.matrix());
  json members = json::array();
  for (const EnsembleMember& m : tr.ensemble.members) {
    json mj;
    mj["weight"] = m.p;
    mj["amplitudes"] = amplitudes_to_json(m.state.amplitudes());
    members.push_back(mj);
  }
  j["ensemble"] = members;
  json css = json::array();
  for (const DensityMatrix& s : tr.member_css) css.push_back(mat4_to_json(s.matrix()));
  j["member_css"] = css;
  j["sigma_tilde"] = mat4_to_json(tr.sigma_tilde.matrix());
  j["boundary_at_step3"] = {
      {"min_pt_eigenvalue", tr.boundary_at_step3.min_pt_eigenvalue},
      {"boundary", tr.boundary_at_step3.boundary},
      {"interior", tr.boundary_at_step3.interior},
      {"entangled", tr.boundary_at_step3.entangled},
  };
  j["q0"] = tr.q0.has_value() ? json(*tr.q0) : json(nullptr);
  j["x"] = tr.x.has_value() ? json(*tr.x) : json(nullptr);
  j["sigma_star"] = mat4_to_json(tr.sigma_star.matrix());
  j["ree"] = tr.ree_value;
  return j;
}

inline ProcedureTrace trace_from_json(const json& j) {
  if (!j.is_object())
    throw validation_error("trace file: top level must be an object");
  for (const char* key : {"source", "ensemble", "member_css", "sigma_tilde",
                          "boundary_at_step3", "q0", "x", "sigma_star", "ree"})
    if (!j.contains(key))
      throw validation_error(std::string("trace file: missing key '") + key + "'");
  detail::reject_unknown_keys(j,
                              {"source", "ensemble", "member_css", "sigma_tilde",
                               "boundary_at_step3", "q0", "x", "sigma_star", "ree"},
                              "a trace file");

  Ensemble ens;
  for (const json& mj : j.at("ensemble")) {
    detail::reject_unknown_keys(mj, {"weight", "amplitudes"}, "an ensemble member");
    ens.members.push_back(EnsembleMember{
        mj.at("weight").get<double>(), PureState(amplitudes_from_json(mj.at("amplitudes")))});
  }
  std::vector<DensityMatrix> css;
  for (const json& sj : j.at("member_css"))
    css.push_back(DensityMatrix::from_matrix(mat4_from_json(sj, "member_css")));

  const json& bj = j.at("boundary_at_step3");
  detail::reject_unknown_keys(bj, {"min_pt_eigenvalue", "boundary", "interior", "entangled"},
                              "boundary_at_step3");
  BoundaryVerdict verdict{bj.at("min_pt_eigenvalue").get<double>(),
                          bj.at("boundary").get<bool>(), bj.at("interior").get<bool>(),
                          bj.at("entangled").get<bool>()};

  std::optional<double> q0, x;
  if (!j.at("q0").is_null()) q0 = j.at("q0").get<double>();
  if (!j.at("x").is_null()) x = j.at("x").get<double>();

  return ProcedureTrace{
      DensityMatrix::from_matrix(mat4_from_json(j.at("source"), "source")),
      std::move(ens),
      std::move(css),
      DensityMatrix::from_matrix(mat4_from_json(j.at("sigma_tilde"), "sigma_tilde")),
      verdict,
      q0,
      x,
      DensityMatrix::from_matrix(mat4_from_json(j.at("sigma_star"), "sigma_star")),
      j.at("ree").get<double>(),
  };
}

// --- reports ----------------------------------------------------------------

inline json measure_report_to_json(const MeasureReport& r) {
  json j;
  j["concurrence"] = r.concurrence;
  j["eof"] = r.eof;
  j["ree"] = r.ree;
  j["method"] = method_name(r.method);
  return j;
}

inline json oracle_result_to_json(const oracle::OracleResult& r) {
  json j;
  j["ree"] = r.ree;
  j["sigma"] = mat4_to_json(r.sigma.matrix());
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["per_restart_values"] = r.per_restart_values;
  return j;
}

}  // namespace qree::io
