#include "ryd/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ryd/units.hpp"

namespace ryd::config {

using nlohmann::json;

namespace {

double length_to_bohr(double value, const std::string& unit) {
  if (unit == "a0") return value;
  if (unit == "um") return value * units::micron_to_bohr;
  throw ConfigError("config: length unit must be \"a0\" or \"um\"");
}

// Delta values may be numbers or the string "inf" (exact-blockade limit).
double parse_delta(const json& j, const std::string& key) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf")
      return std::numeric_limits<double>::infinity();
    throw ConfigError("config: " + key + " must be a number or \"inf\"");
  }
  if (!j.is_number())
    throw ConfigError("config: " + key + " must be a number or \"inf\"");
  return j.get<double>();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json delta_to_json(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  RunConfig c;
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    throw ConfigError("config: missing integer schema_version");
  c.schema_version = j["schema_version"].get<int>();
  if (c.schema_version != kSchemaVersion)
    throw ConfigError("config: unsupported schema_version " +
                      std::to_string(c.schema_version));

  if (j.contains("species")) {
    const auto& s = j["species"];
    c.Z = s.value("Z", 1.0);
    c.energy_model = s.value("energy_model", std::string("quantum_defect"));
    if (s.contains("defects"))
      for (const auto& [key, value] : s["defects"].items())
        c.defects[std::stoi(key)] = value.get<double>();
  }
  if (c.energy_model != "hydrogenic" && c.energy_model != "quantum_defect")
    throw ConfigError(
        "config: energy_model must be hydrogenic or quantum_defect");
  if (!(c.Z > 0)) throw ConfigError("config: Z must be positive");

  c.n = j.value("n", 42);
  if (c.n < 3) throw ConfigError("config: n must be >= 3");

  if (!j.contains("geometry"))
    throw ConfigError("config: missing geometry");
  const auto& g = j["geometry"];
  c.length_unit = g.value("unit", std::string("um"));
  if (c.length_unit != "a0" && c.length_unit != "um")
    throw ConfigError("config: geometry.unit must be \"a0\" or \"um\"");
  if (!g.contains("positions") || !g["positions"].is_array() ||
      g["positions"].size() != 3)
    throw ConfigError("config: geometry.positions must list exactly 3 atoms");
  for (int i = 0; i < 3; ++i) {
    const auto& p = g["positions"][i];
    if (!p.is_array() || p.size() != 3)
      throw ConfigError("config: each position must have 3 components");
    for (int k = 0; k < 3; ++k) c.positions[i](k) = p[k].get<double>();
  }

  if (j.contains("subspaces")) {
    c.subspaces.clear();
    for (const auto& s : j["subspaces"]) {
      parse_subspace(s.get<std::string>());  // validates
      c.subspaces.push_back(s.get<std::string>());
    }
  }

  if (j.contains("blockade")) {
    const auto& b = j["blockade"];
    c.blockade.n_window = b.value("n_window", c.blockade.n_window);
    c.blockade.margin_threshold =
        b.value("margin_threshold", c.blockade.margin_threshold);
    c.blockade.rabi_ratio = b.value("rabi_ratio", c.blockade.rabi_ratio);
    c.blockade.resonance_factor =
        b.value("resonance_factor", c.blockade.resonance_factor);
    if (c.blockade.n_window < 0 || !(c.blockade.margin_threshold > 0) ||
        !(c.blockade.rabi_ratio > 0) || !(c.blockade.resonance_factor > 0))
      throw ConfigError("config: invalid blockade options");
  }

  if (j.contains("gate")) {
    const auto& g2 = j["gate"];
    c.protocol = g2.value("protocol", c.protocol);
    if (c.protocol != "toffoli" && c.protocol != "ccphase")
      throw ConfigError("config: gate.protocol must be toffoli or ccphase");
    c.rabi_mhz = g2.value("rabi_mhz", c.rabi_mhz);
    if (!(c.rabi_mhz > 0))
      throw ConfigError("config: gate.rabi_mhz must be positive");
    c.interaction_mode = g2.value("interaction_mode", c.interaction_mode);
    if (c.interaction_mode != "effective-diagonal" &&
        c.interaction_mode != "full-exchange")
      throw ConfigError(
          "config: gate.interaction_mode must be effective-diagonal or "
          "full-exchange");
    c.shift_source = g2.value("shift_source", std::string());
    if (g2.contains("delta_sp_mhz"))
      c.delta_sp_mhz = parse_delta(g2["delta_sp_mhz"], "delta_sp_mhz");
    if (g2.contains("delta_pd_mhz"))
      c.delta_pd_mhz = parse_delta(g2["delta_pd_mhz"], "delta_pd_mhz");
    if (g2.contains("delta_spd_mhz"))
      c.delta_spd_mhz = parse_delta(g2["delta_spd_mhz"], "delta_spd_mhz");
  }

  if (j.contains("output")) {
    const auto& o = j["output"];
    c.format = o.value("format", c.format);
    if (c.format != "json" && c.format != "csv")
      throw ConfigError("config: output.format must be json or csv");
    c.output_path = o.value("path", std::string());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const RunConfig& c) {
  json defects = json::object();
  for (const auto& [l, d] : c.defects) defects[std::to_string(l)] = d;
  json j{
      {"schema_version", c.schema_version},
      {"species",
       {{"Z", c.Z}, {"energy_model", c.energy_model}, {"defects", defects}}},
      {"n", c.n},
      {"geometry",
       {{"unit", c.length_unit},
        {"positions",
         {{c.positions[0](0), c.positions[0](1), c.positions[0](2)},
          {c.positions[1](0), c.positions[1](1), c.positions[1](2)},
          {c.positions[2](0), c.positions[2](1), c.positions[2](2)}}}}},
      {"subspaces", c.subspaces},
      {"blockade",
       {{"n_window", c.blockade.n_window},
        {"margin_threshold", c.blockade.margin_threshold},
        {"rabi_ratio", c.blockade.rabi_ratio},
        {"resonance_factor", c.blockade.resonance_factor}}},
      {"gate",
       {{"protocol", c.protocol},
        {"rabi_mhz", c.rabi_mhz},
        {"interaction_mode", c.interaction_mode},
        {"shift_source", c.shift_source}}},
      {"output", {{"format", c.format}, {"path", c.output_path}}},
  };
  if (c.delta_sp_mhz) j["gate"]["delta_sp_mhz"] = delta_to_json(*c.delta_sp_mhz);
  if (c.delta_pd_mhz) j["gate"]["delta_pd_mhz"] = delta_to_json(*c.delta_pd_mhz);
  if (c.delta_spd_mhz)
    j["gate"]["delta_spd_mhz"] = delta_to_json(*c.delta_spd_mhz);
  return j.dump(2) + "\n";
}

Geometry geometry_bohr(const RunConfig& c) {
  std::array<Eigen::Vector3d, 3> pos;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      pos[i](k) = length_to_bohr(c.positions[i](k), c.length_unit);
  return Geometry(pos);
}

EnergyModel energy_model(const RunConfig& c) {
  if (c.energy_model == "hydrogenic") return EnergyModel::hydrogenic(c.Z);
  return EnergyModel::quantum_defect(c.defects, c.Z);
}

coupling::Subspace parse_subspace(const std::string& name) {
  if (name == "sp") return coupling::Subspace::sp;
  if (name == "pd") return coupling::Subspace::pd;
  if (name == "spd") return coupling::Subspace::spd;
  throw ConfigError("config: unknown subspace \"" + name + "\"");
}

gatesim::InteractionSpec interaction_from_config(const RunConfig& c) {
  gatesim::InteractionSpec spec;
  spec.mode = c.interaction_mode == "full-exchange"
                  ? gatesim::InteractionMode::full_exchange
                  : gatesim::InteractionMode::effective_diagonal;
  double sp, pd, spd;
  if (!c.shift_source.empty()) {
    std::ifstream in(c.shift_source);
    if (!in)
      throw ConfigError("config: cannot open shift source " + c.shift_source);
    std::ostringstream buf;
    buf << in.rdbuf();
    const ShiftSource src = read_shift_source(buf.str());
    sp = src.sp_mhz;
    pd = src.pd_mhz;
    spd = src.spd_mhz;
  } else {
    if (!c.delta_sp_mhz || !c.delta_pd_mhz || !c.delta_spd_mhz)
      throw ConfigError(
          "config: gate needs either shift_source or all three delta_*_mhz");
    sp = *c.delta_sp_mhz;
    pd = *c.delta_pd_mhz;
    spd = *c.delta_spd_mhz;
  }
  // Same angular-frequency convention as the Rabi frequency.
  spec.delta_sp = 2 * M_PI * sp;
  spec.delta_pd = 2 * M_PI * pd;
  spec.delta_spd = 2 * M_PI * spd;
  return spec;
}

ShiftSource read_shift_source(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("shift source: invalid JSON: ") + e.what());
  }
  if (j.value("report", std::string()) != "spectra")
    throw ConfigError("shift source: not a spectra report");
  ShiftSource src;
  bool have_sp = false, have_pd = false, have_spd = false;
  for (const auto& entry : j.at("subspaces")) {
    const std::string name = entry.at("subspace").get<std::string>();
    std::vector<double> mhz;
    for (const auto& row : entry.at("shifts"))
      mhz.push_back(row.at("mhz").get<double>());
    double top = 0;
    for (double v : mhz) top = std::max(top, std::abs(v));
    double smallest = std::numeric_limits<double>::infinity();
    for (double v : mhz)
      if (std::abs(v) > 1e-8 * top) smallest = std::min(smallest, std::abs(v));
    if (!std::isfinite(smallest))
      throw ConfigError("shift source: subspace " + name +
                        " has no nonzero shifts");
    if (name == "sp") src.sp_mhz = smallest, have_sp = true;
    if (name == "pd") src.pd_mhz = smallest, have_pd = true;
    if (name == "spd") src.spd_mhz = smallest, have_spd = true;
  }
  if (!have_sp || !have_pd || !have_spd)
    throw ConfigError("shift source: needs sp, pd and spd spectra");
  return src;
}

std::string spectra_json(const std::vector<coupling::ShiftSpectrum>& spectra) {
  json subspaces = json::array();
  for (const auto& s : spectra) {
    json rows = json::array();
    const auto cm = s.inv_cm();
    const auto mhz = s.mhz();
    for (size_t i = 0; i < s.hartree.size(); ++i) {
      json row{{"hartree", s.hartree[i]}, {"inv_cm", cm[i]}, {"mhz", mhz[i]}};
      if (!s.dimensionless.empty()) row["dimensionless"] = s.dimensionless[i];
      rows.push_back(row);
    }
    json entry{{"subspace",
                s.kind ? coupling::subspace_name(*s.kind) : "custom"},
               {"shifts", rows}};
    subspaces.push_back(entry);
  }
  json j{{"schema_version", kSchemaVersion},
         {"report", "spectra"},
         {"subspaces", subspaces}};
  return j.dump(2) + "\n";
}

std::string spectra_csv(const std::vector<coupling::ShiftSpectrum>& spectra) {
  std::ostringstream os;
  os << "subspace,index,hartree,inv_cm,mhz,dimensionless\n";
  for (const auto& s : spectra) {
    const auto cm = s.inv_cm();
    const auto mhz = s.mhz();
    const char* name = s.kind ? coupling::subspace_name(*s.kind) : "custom";
    for (size_t i = 0; i < s.hartree.size(); ++i) {
      os << name << "," << i << "," << format_double(s.hartree[i]) << ","
         << format_double(cm[i]) << "," << format_double(mhz[i]) << ",";
      if (!s.dimensionless.empty()) os << format_double(s.dimensionless[i]);
      os << "\n";
    }
  }
  return os.str();
}

std::string blockade_json(const blockade::BlockadeReport& r) {
  json channels = json::array();
  for (const auto& row : r.channels)
    channels.push_back({{"channel", row.channel.label()},
                        {"subspace",
                         coupling::subspace_name(row.channel.subspace)},
                        {"detuning_mhz", row.detuning_mhz},
                        {"estimate_mhz", row.estimate_mhz},
                        {"margin", row.margin},
                        {"resonant", row.resonant}});
  json j{{"schema_version", kSchemaVersion},
         {"report", "blockade"},
         {"pass", r.pass},
         {"alarms", r.alarms},
         {"min_shift_sp_mhz", r.min_shift_sp_mhz},
         {"min_shift_pd_mhz", r.min_shift_pd_mhz},
         {"min_shift_spd_mhz", r.min_shift_spd_mhz},
         {"max_shift_mhz", r.max_shift_mhz},
         {"margin_sum", r.margin_sum},
         {"margin_max", r.margin_max},
         {"omega_max_mhz", r.omega_max_mhz},
         {"min_step_duration_us", r.min_step_duration_us},
         {"channels", channels}};
  return j.dump(2) + "\n";
}

std::string blockade_csv(const blockade::BlockadeReport& r) {
  std::ostringstream os;
  os << "channel,subspace,detuning_mhz,estimate_mhz,margin,resonant\n";
  for (const auto& row : r.channels)
    os << row.channel.label() << ","
       << coupling::subspace_name(row.channel.subspace) << ","
       << format_double(row.detuning_mhz) << ","
       << format_double(row.estimate_mhz) << "," << format_double(row.margin)
       << "," << (row.resonant ? 1 : 0) << "\n";
  os << "# pass=" << (r.pass ? 1 : 0)
     << " margin_sum=" << format_double(r.margin_sum)
     << " omega_max_mhz=" << format_double(r.omega_max_mhz)
     << " min_step_duration_us=" << format_double(r.min_step_duration_us)
     << "\n";
  return os.str();
}

namespace {

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string gate_json(const gatesim::GateResult& r,
                      const std::string& protocol) {
  json j{{"schema_version", kSchemaVersion},
         {"report", "gate"},
         {"protocol", protocol},
         {"fidelity_raw", r.fidelity_raw},
         {"fidelity_adjusted", r.fidelity_adjusted},
         {"worst_overlap_adjusted", r.worst_overlap_adjusted},
         {"leakage", r.leakage},
         {"unitarity_defect", r.unitarity_defect},
         {"raw_gate", matrix_to_json(r.raw_gate)},
         {"adjusted_gate", matrix_to_json(r.adjusted_gate)}};
  return j.dump(2) + "\n";
}

std::string gate_csv(const gatesim::GateResult& r,
                     const std::string& protocol) {
  std::ostringstream os;
  os << "protocol,fidelity_raw,fidelity_adjusted,worst_overlap_adjusted,"
        "leakage,unitarity_defect\n";
  os << protocol << "," << format_double(r.fidelity_raw) << ","
     << format_double(r.fidelity_adjusted) << ","
     << format_double(r.worst_overlap_adjusted) << ","
     << format_double(r.leakage) << "," << format_double(r.unitarity_defect)
     << "\n";
  os << "row,col,adjusted_re,adjusted_im\n";
  for (Eigen::Index i = 0; i < r.adjusted_gate.rows(); ++i)
    for (Eigen::Index j = 0; j < r.adjusted_gate.cols(); ++j)
      os << i << "," << j << "," << format_double(r.adjusted_gate(i, j).real())
         << "," << format_double(r.adjusted_gate(i, j).imag()) << "\n";
  return os.str();
}

}  // namespace ryd::config
