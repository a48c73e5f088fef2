#include "swipt/config_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace swipt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw, const std::string& key) {
  const std::string v = trim(raw);
  if (v.empty()) throw ConfigError("empty value for key '" + key + "'");
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size())
    throw ConfigError("malformed number '" + v + "' for key '" + key + "'");
  return x;
}

int parse_int(const std::string& raw, const std::string& key) {
  const std::string v = trim(raw);
  if (v.empty()) throw ConfigError("empty value for key '" + key + "'");
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size())
    throw ConfigError("malformed integer '" + v + "' for key '" + key + "'");
  return int(x);
}

std::vector<double> parse_list(const std::string& raw, const std::string& key) {
  std::vector<double> out;
  std::string item;
  std::istringstream ss(raw);
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, key));
  return out;
}

void apply_system(SystemConfig& cfg, const std::string& key,
                  const std::string& val) {
  if (key == "M")
    cfg.M = parse_int(val, key);
  else if (key == "K_I")
    cfg.K_I = parse_int(val, key);
  else if (key == "K_E")
    cfg.K_E = parse_int(val, key);
  else if (key == "P_max")
    cfg.P_max = parse_double(val, key);
  else if (key == "C_thre")
    cfg.C_thre = parse_double(val, key);
  else if (key == "sigma0_sq")
    cfg.sigma0_sq = parse_double(val, key);
  else if (key == "sigma0_dbm")
    cfg.sigma0_sq = dbm_to_watts(parse_double(val, key));
  else if (key == "d_I")
    cfg.d_I = parse_double(val, key);
  else if (key == "d_E")
    cfg.d_E = parse_double(val, key);
  else if (key == "alpha_I")
    cfg.alpha_I = parse_double(val, key);
  else if (key == "alpha_E")
    cfg.alpha_E = parse_double(val, key);
  else if (key == "L_ref_dB")
    cfg.L_ref_dB = parse_double(val, key);
  else if (key == "kappa_default")
    cfg.kappa_default = parse_double(val, key);
  else if (key == "kappa_I")
    cfg.kappa_I = parse_list(val, key);
  else if (key == "kappa_E")
    cfg.kappa_E = parse_list(val, key);
  else if (key == "aod_I")
    cfg.aod_I = parse_list(val, key);
  else if (key == "aod_E")
    cfg.aod_E = parse_list(val, key);
  else
    throw ConfigError("unknown key '" + key + "' in section [system]");
}

void apply_eh(SystemConfig& cfg, const std::string& key,
              const std::string& val) {
  if (key == "a")
    cfg.eh.a = parse_double(val, key);
  else if (key == "b")
    cfg.eh.b = parse_double(val, key);
  else if (key == "Ms")
    cfg.eh.Ms = parse_double(val, key);
  else
    throw ConfigError("unknown key '" + key + "' in section [eh]");
}

}  // namespace

SystemConfig parse_config_text(const std::string& text) {
  SystemConfig cfg;
  std::string section = "system";
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "eh")
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section == "system")
      apply_system(cfg, key, val);
    else
      apply_eh(cfg, key, val);
  }
  cfg.validate();
  return cfg;
}

SystemConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace swipt
