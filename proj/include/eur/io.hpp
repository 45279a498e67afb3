// io.hpp
// JSON documents for states, measurements, tomography records and pulse
// tables, plus the fixed numeric rendering used by all CSV output.
//
// Complex numbers are two-element arrays [re, im].
//   state:       {"ket": [[re,im], ...]}  or  {"rho": [[[re,im], ...], ...]}
//   measurement: [[vector, ...], ...]  (list of bases, each a list of vectors)
//                or {"measurements": [...], "labels": [...]}
//   record:      {"set1": [4 reals], "set2": [...], "set3": [...]}
//   table:       [{"label": str, "target": vector, "pulses": [{"channel": "MW0", "angle_pi": 1.5}, ...]}, ...]

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eur/bounds.hpp"
#include "eur/core.hpp"
#include "eur/family.hpp"
#include "eur/pulse.hpp"
#include "eur/tomography.hpp"

namespace eur::io {

using nlohmann::json;

/// 12 significant digits, lowercase exponent, -0 rendered as 0.
inline std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  if (s == "-0") return "0";
  return s;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
}

inline Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(where + ": expected [re, im]");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline StateVector parse_vector(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty list of amplitudes");
  std::vector<Complex> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  return StateVector(std::move(v));
}

inline ComplexMatrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a list of rows");
  const std::size_t rows = j.size();
  std::vector<Complex> entries;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array()) throw ValidationError(where + "[" + std::to_string(r) + "]: expected a row");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) throw ValidationError(where + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      entries.push_back(parse_complex(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

inline json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Raw operator from a state document (not yet validated as physical).
inline ComplexMatrix parse_state_matrix(const json& j) {
  if (j.is_object() && j.contains("ket")) {
    const StateVector ket = parse_vector(j.at("ket"), "state.ket");
    if (!ket.is_normalized()) throw ValidationError("state.ket: vector is not normalized");
    return ComplexMatrix::outer(ket, ket);
  }
  if (j.is_object() && j.contains("rho")) return parse_matrix(j.at("rho"), "state.rho");
  throw ValidationError("state: expected an object with \"ket\" or \"rho\"");
}

inline DensityOperator parse_state(const json& j) {
  try {
    return DensityOperator(parse_state_matrix(j));
  } catch (const NotPsdError& e) {
    throw NotPsdError(std::string("state.rho: ") + e.what());
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    if (msg.rfind("state", 0) == 0) throw;
    throw ValidationError("state.rho: " + msg);
  }
}

/// Built-in label ("zero", "minus1", "mixed") or path to a state document.
inline LabeledState resolve_state(const std::string& spec) {
  for (auto& s : reference_states())
    if (s.label == spec) return s;
  if (spec == "mixed") return {"mixed", DensityOperator::maximally_mixed(kQutritDim)};
  return {spec, parse_state(read_json_file(spec))};
}

inline std::vector<ProjectiveMeasurement> parse_measurements(const json& j) {
  const json* list = &j;
  const json* labels = nullptr;
  if (j.is_object()) {
    if (!j.contains("measurements")) throw ValidationError("measurements: expected \"measurements\" field");
    list = &j.at("measurements");
    if (j.contains("labels")) labels = &j.at("labels");
  }
  if (!list->is_array() || list->empty()) throw ValidationError("measurements: expected a non-empty list of bases");
  std::vector<ProjectiveMeasurement> out;
  for (std::size_t m = 0; m < list->size(); ++m) {
    const std::string where = "measurements[" + std::to_string(m) + "]";
    const json& basis = (*list)[m];
    if (!basis.is_array() || basis.empty()) throw ValidationError(where + ": expected a list of basis vectors");
    std::vector<StateVector> vecs;
    for (std::size_t k = 0; k < basis.size(); ++k) vecs.push_back(parse_vector(basis[k], where + "[" + std::to_string(k) + "]"));
    std::string label = "M" + std::to_string(m + 1);
    if (labels && m < labels->size() && (*labels)[m].is_string()) label = (*labels)[m].get<std::string>();
    try {
      out.emplace_back(std::move(vecs), label);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return out;
}

inline TomographyRecord parse_record(const json& j) {
  if (!j.is_object()) throw ValidationError("record: expected an object with set1, set2, set3");
  TomographyRecord rec;
  const auto fill = [&](const char* key, std::array<double, 4>& dst) {
    if (!j.contains(key)) throw ValidationError(std::string("record.") + key + ": missing");
    const json& a = j.at(key);
    if (!a.is_array() || a.size() != 4) throw ValidationError(std::string("record.") + key + ": expected exactly 4 values");
    for (std::size_t k = 0; k < 4; ++k) {
      if (!a[k].is_number()) throw ValidationError(std::string("record.") + key + ": non-numeric value");
      dst[k] = a[k].get<double>();
    }
  };
  fill("set1", rec.set1);
  fill("set2", rec.set2);
  fill("set3", rec.set3);
  return rec;
}

inline json record_json(const TomographyRecord& rec) {
  return json{{"set1", rec.set1}, {"set2", rec.set2}, {"set3", rec.set3}};
}

inline std::vector<ProjectionRow> parse_table(const json& j) {
  if (!j.is_array()) throw ValidationError("table: expected a list of rows");
  if (j.empty()) throw ValidationError("table: empty table");
  std::vector<ProjectionRow> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string where = "table[" + std::to_string(r) + "]";
    const json& row = j[r];
    if (!row.is_object() || !row.contains("target") || !row.contains("pulses"))
      throw ValidationError(where + ": expected {target, pulses}");
    ProjectionRow out;
    out.label = row.value("label", where);
    out.target = parse_vector(row.at("target"), where + ".target");
    if (out.target.dim() != kQutritDim) throw ValidationError(where + ".target: expected 3 amplitudes");
    if (!out.target.is_normalized()) throw ValidationError(where + ".target: vector is not normalized");
    if (!row.at("pulses").is_array()) throw ValidationError(where + ".pulses: expected a list");
    for (const auto& p : row.at("pulses")) {
      if (!p.is_object() || !p.contains("channel") || !p.contains("angle_pi") || !p.at("channel").is_string() ||
          !p.at("angle_pi").is_number())
        throw ValidationError(where + ".pulses: expected {channel, angle_pi}");
      const auto ch = parse_channel(p.at("channel").get<std::string>());
      if (!ch) throw ValidationError(where + ".pulses: unknown channel '" + p.at("channel").get<std::string>() + "'");
      out.pulses.push_back(Pulse::in_pi(*ch, p.at("angle_pi").get<double>()));
    }
    rows.push_back(std::move(out));
  }
  return rows;
}

inline json table_json(const std::vector<ProjectionRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json pulses = json::array();
    for (const auto& p : r.pulses)
      pulses.push_back({{"channel", std::string(channel_name(p.channel))}, {"angle_pi", p.angle / std::numbers::pi}});
    json target = json::array();
    for (const auto& z : r.target.amplitudes()) target.push_back(complex_json(z));
    out.push_back({{"label", r.label}, {"target", target}, {"pulses", pulses}});
  }
  return out;
}

inline json report_json(const BoundReport& rep) {
  json j;
  j["entropy_total"] = rep.entropy_total;
  json per = json::array();
  for (const auto& [label, h] : rep.entropy.per_measurement) per.push_back({{"label", label}, {"entropy", h}});
  j["entropy_per_measurement"] = per;
  json mu = json::array();
  for (const auto& p : rep.mu_pairwise)
    mu.push_back({{"pair", {p.first, p.second}}, {"bound", p.bound}, {"entropy_pair", p.entropy_pair}, {"satisfied", p.satisfied}});
  j["mu_pairwise"] = mu;
  json sat = json::object();
  const auto put = [&](const char* key, const std::optional<double>& v, const std::optional<bool>& f) {
    if (v) j[key] = *v;
    if (f) sat[key] = *f;
  };
  put("scb", rep.scb, rep.satisfied.scb);
  put("lmf", rep.lmf, rep.satisfied.lmf);
  put("lmf_max_order", rep.lmf_max_order, rep.satisfied.lmf_max_order);
  put("rpz", rep.rpz, rep.satisfied.rpz);
  j["satisfied"] = sat;
  j["all_satisfied"] = rep.all_satisfied();
  j["slack"] = rep.slack;
  return j;
}

inline constexpr std::string_view kSweepHeader = "a,state,entropy_total,scb,lmf,rpz";

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const auto& r : rows)
    os << format_number(r.a) << ',' << r.state_label << ',' << format_number(r.entropy_total) << ','
       << format_number(r.scb) << ',' << format_number(r.lmf) << ',' << format_number(r.rpz) << '\n';
  return os.str();
}

inline json sweep_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"a", r.a}, {"state", r.state_label}, {"entropy_total", r.entropy_total},
                   {"scb", r.scb}, {"lmf", r.lmf}, {"rpz", r.rpz}});
  return out;
}

/// Inverse of sweep_csv (values carry 12 significant digits).
inline std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) throw ValidationError("sweep csv: bad header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw ValidationError("sweep csv: expected 6 fields in '" + line + "'");
    SweepRow r;
    r.a = std::stod(f[0]);
    r.state_label = f[1];
    r.entropy_total = std::stod(f[2]);
    r.scb = std::stod(f[3]);
    r.lmf = std::stod(f[4]);
    r.rpz = std::stod(f[5]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace eur::io
