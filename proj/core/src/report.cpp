#include "ybe/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ybe {

void RunConfig::validate() const {
  if (!(tau.imag() > 0.0)) throw DomainError("config: Im(tau) must be positive");
  if (!(eta.imag() > 0.0)) throw DomainError("config: Im(eta) must be positive");
  if (!(eps >= 1e-16 && eps <= 1e-6)) throw DomainError("config: eps out of range [1e-16, 1e-6]");
  if (quad_points < 16) throw DomainError("config: quad_points must be >= 16");
}

cd parse_complex(const std::string& text) {
  // re[+|-]im i, with an optional pure-real form.
  const auto ipos = text.find('i');
  if (ipos == std::string::npos) return cd(std::stod(text), 0.0);
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < text.size(); ++k) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E')
      split = k;
  }
  if (split == std::string::npos) throw DomainError("cannot parse complex value: " + text);
  const double re = std::stod(text.substr(0, split));
  const double im = std::stod(text.substr(split, ipos - split));
  return {re, im};
}

void RunConfig::apply_key(const std::string& key, const std::string& value) {
  if (key == "tau") tau = parse_complex(value);
  else if (key == "eta") eta = parse_complex(value);
  else if (key == "eps") eps = std::stod(value);
  else if (key == "quad_points") quad_points = std::stoi(value);
  else if (key == "seed") seed = std::stoull(value);
  else if (key == "timings") timings = (value == "1" || value == "true");
  else if (key.rfind("tol.", 0) == 0) tolerance_overrides[key.substr(4)] = std::stod(value);
  else throw DomainError("config: unknown key '" + key + "'");
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) throw DomainError("config: malformed line '" + line + "'");
    cfg.apply_key(trimmed.substr(0, eq), trimmed.substr(eq + 1));
  }
  return cfg;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["params"] = {{"tau", {{"re", config.tau.real()}, {"im", config.tau.imag()}}},
                 {"eta", {{"re", config.eta.real()}, {"im", config.eta.imag()}}},
                 {"eps", config.eps},
                 {"quad_points", config.quad_points},
                 {"seed", config.seed}};
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["residual"] = c.residual;
    jc["tol"] = c.tol;
    jc["pass"] = c.pass;
    jc["seconds"] = config.timings ? c.seconds : 0.0;
    if (!c.error.empty()) jc["error"] = c.error;
    j["checks"].push_back(jc);
  }
  j["pass"] = pass();
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %-38s residual %.3e  tol %.1e%s\n",
                  c.pass ? "PASS" : "FAIL", c.id.c_str(), c.residual, c.tol,
                  c.error.empty() ? "" : ("  (" + c.error + ")").c_str());
    out << line;
  }
  out << (pass() ? "aggregate: PASS" : "aggregate: FAIL") << " (" << suite << ")\n";
  return out.str();
}

}  // namespace ybe
