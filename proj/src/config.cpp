#include "ttdbeam/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ttdbeam/channel.hpp"

namespace ttdbeam {

const char* err_name(Err e) {
  switch (e) {
    case Err::Ok: return "ok";
    case Err::InvalidArgument: return "invalid argument";
    case Err::InvalidDelaySpacing: return "invalid delay spacing";
    case Err::InvalidPilotSet: return "invalid pilot set";
    case Err::OddSubcarrierCount: return "odd subcarrier count";
    case Err::EmptyPilotSet: return "empty pilot set";
    case Err::EmptyBlock: return "empty block";
    case Err::NonDivisible: return "non-divisible";
    case Err::IndexOutOfRange: return "index out of range";
    case Err::CpViolation: return "cp violation";
    case Err::DelayTooSmall: return "delay too small";
    case Err::InvalidSpec: return "invalid spec";
    case Err::EmptyChannel: return "empty channel";
    case Err::ParseError: return "parse error";
    case Err::IoError: return "io error";
  }
  return "unknown";
}

ValidatedConfig validate(const SystemConfig& raw) {
  if (!(raw.fc_hz > 0) || !(raw.bw_hz > 0))
    fail(Err::InvalidArgument, "fc_hz and bw_hz must be positive");
  if (raw.mtot < 2) fail(Err::InvalidArgument, "mtot must be at least 2");
  if (raw.mtot % 2 != 0)
    fail(Err::OddSubcarrierCount, "mtot must be even, got " + std::to_string(raw.mtot));
  if (raw.ntx < 1 || raw.nrx < 1) fail(Err::InvalidArgument, "antenna counts must be >= 1");
  if (!(raw.n0 >= 0)) fail(Err::InvalidArgument, "n0 must be non-negative");
  if (!(raw.delta_tau_s > 1.0 / (2.0 * raw.fc_hz)))
    fail(Err::InvalidDelaySpacing,
         "delta_tau must exceed 1/(2 fc) = " + std::to_string(1.0 / (2.0 * raw.fc_hz)) + " s");

  int ncp = raw.ncp >= 0 ? raw.ncp : raw.mtot / 8;
  if (ncp < 0 || ncp > raw.mtot)
    fail(Err::InvalidArgument, "ncp must lie in [0, mtot]");

  std::vector<int> pilots = raw.pilot_set;
  if (pilots.empty()) {
    pilots.resize(raw.mtot);
    for (int m = 0; m < raw.mtot; ++m) pilots[m] = m;
  } else {
    for (size_t i = 0; i < pilots.size(); ++i) {
      if (pilots[i] < 0 || pilots[i] >= raw.mtot)
        fail(Err::InvalidPilotSet, "pilot index " + std::to_string(pilots[i]) +
                                       " outside [0, " + std::to_string(raw.mtot) + ")");
      if (i > 0 && pilots[i] <= pilots[i - 1])
        fail(Err::InvalidPilotSet, "pilot indices must be strictly increasing");
    }
  }

  ValidatedConfig cfg;
  cfg.fc_ = raw.fc_hz;
  cfg.bw_ = raw.bw_hz;
  cfg.mtot_ = raw.mtot;
  cfg.ncp_ = ncp;
  cfg.ntx_ = raw.ntx;
  cfg.nrx_ = raw.nrx;
  cfg.delta_tau_ = raw.delta_tau_s;
  cfg.n0_ = raw.n0;
  cfg.pilots_ = std::move(pilots);
  return cfg;
}

double ValidatedConfig::subcarrier_frequency(int m) const {
  if (m < 0 || m >= mtot_)
    fail(Err::IndexOutOfRange, "subcarrier index " + std::to_string(m) + " outside [0, " +
                                   std::to_string(mtot_) + ")");
  if (m < mtot_ / 2) return fc_ + (static_cast<double>(m) / mtot_) * bw_;
  return fc_ - bw_ / 2 + (static_cast<double>(m - mtot_ / 2) / mtot_) * bw_;
}

ValidatedConfig ValidatedConfig::with_pilots(const std::vector<int>& pilots) const {
  SystemConfig raw{fc_, bw_, mtot_, ncp_, ntx_, nrx_, delta_tau_, n0_, pilots};
  return validate(raw);
}

ValidatedConfig ValidatedConfig::with_n0(double n0) const {
  SystemConfig raw{fc_, bw_, mtot_, ncp_, ntx_, nrx_, delta_tau_, n0, pilots_};
  return validate(raw);
}

bool check_cp_condition(const ValidatedConfig& cfg, const MultipathChannel& ch) {
  // max over (l,q,n) of Gamma, evaluated exactly from the per-path extremes
  double max_gamma = 0.0;
  for (const PathComponent& p : ch.paths) {
    double tx_term = (cfg.ntx() - 1) * std::max(0.0, -std::sin(p.aod_rad)) / (2.0 * cfg.fc());
    double rx_term = (cfg.nrx() - 1) * std::max(0.0, std::sin(p.aoa_rad)) / (2.0 * cfg.fc());
    max_gamma = std::max(max_gamma, p.delay_s + tx_term + rx_term);
  }
  double max_ttd = (cfg.nrx() - 1) * cfg.delta_tau();
  return cfg.ncp() * cfg.ts() > max_gamma + max_ttd;
}

SystemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Err::ParseError, "config " + path + ": " + e.what());
  }

  SystemConfig cfg;
  try {
    cfg.fc_hz = j.at("fc_hz").get<double>();
    cfg.bw_hz = j.at("bw_hz").get<double>();
    cfg.mtot = j.at("mtot").get<int>();
    cfg.ncp = j.value("ncp", -1);
    cfg.ntx = j.at("ntx").get<int>();
    cfg.nrx = j.at("nrx").get<int>();
    cfg.delta_tau_s = j.at("delta_tau_s").get<double>();
    cfg.n0 = j.value("n0", 1.0);
    if (j.contains("pilot_set")) {
      const auto& ps = j.at("pilot_set");
      if (ps.is_array()) {
        cfg.pilot_set = ps.get<std::vector<int>>();
      } else if (ps.is_object()) {
        int start = ps.at("start").get<int>();
        int stride = ps.at("stride").get<int>();
        int count = ps.at("count").get<int>();
        if (stride <= 0 || count <= 0)
          fail(Err::ParseError, "config " + path + ": pilot_set stride and count must be positive");
        for (int k = 0; k < count; ++k) cfg.pilot_set.push_back(start + k * stride);
      } else {
        fail(Err::ParseError, "config " + path + ": pilot_set must be a list or {start,stride,count}");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Err::ParseError, "config " + path + ": " + e.what());
  }
  return cfg;
}

void save_config_file(const SystemConfig& cfg, const std::string& path) {
  nlohmann::json j;
  j["fc_hz"] = cfg.fc_hz;
  j["bw_hz"] = cfg.bw_hz;
  j["mtot"] = cfg.mtot;
  if (cfg.ncp >= 0) j["ncp"] = cfg.ncp;
  j["ntx"] = cfg.ntx;
  j["nrx"] = cfg.nrx;
  j["delta_tau_s"] = cfg.delta_tau_s;
  j["n0"] = cfg.n0;
  if (!cfg.pilot_set.empty()) j["pilot_set"] = cfg.pilot_set;
  std::ofstream out(path);
  if (!out) fail(Err::IoError, "cannot write config file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ttdbeam
