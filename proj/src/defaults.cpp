#include <string>

#include "onebit/error.hpp"
#include "onebit/harness.hpp"

namespace onebit {

const char* const kDefaultsVersion = "defaults-v1";

Constants Constants::defaults() {
  Constants c{};
  c.delta_cov = 4.0;
  c.c1 = 0.8;
  c.c2 = 0.5;
  c.c3 = 0.8;
  c.c4 = 1.1;
  c.c5 = 0.6;

  c.delta_reg = 4.0;
  c.c1_x = 0.8;
  c.c2_x = 0.4;
  c.c3_x = 0.48;
  c.c4_x = 0.53;
  c.c5_x = 0.26;
  c.c1_y = 0.8;
  c.c3_y = 1.2;
  c.c4_y = 1.4;
  c.c6 = 0.2;
  c.c7 = 0.25;
  c.c8 = 0.5;
  c.c8prime = 1.0;
  c.c9 = 1.0;
  c.c10 = 1.0;
  c.c11 = 2.0;
  c.c12 = 1.0;

  c.delta_mc = 2.0;
  c.c13 = 0.45;
  c.c14 = 0.13;
  c.c15 = 0.25;
  c.c16 = 0.3;
  c.c17 = 0.2;
  c.mc_rho_scale = 1.0;
  c.solver_tol = 1e-7;
  c.solver_max_iter = 5000;
  return c;
}

namespace {

using Field = double Constants::*;

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      {"delta_cov", &Constants::delta_cov}, {"c1", &Constants::c1},
      {"c2", &Constants::c2},               {"c3", &Constants::c3},
      {"c4", &Constants::c4},               {"c5", &Constants::c5},
      {"delta_reg", &Constants::delta_reg}, {"c1_x", &Constants::c1_x},
      {"c2_x", &Constants::c2_x},           {"c3_x", &Constants::c3_x},
      {"c4_x", &Constants::c4_x},           {"c5_x", &Constants::c5_x},
      {"c1_y", &Constants::c1_y},           {"c3_y", &Constants::c3_y},
      {"c4_y", &Constants::c4_y},           {"c6", &Constants::c6},
      {"c7", &Constants::c7},               {"c8", &Constants::c8},
      {"c8prime", &Constants::c8prime},     {"c9", &Constants::c9},
      {"c10", &Constants::c10},             {"c11", &Constants::c11},
      {"c12", &Constants::c12},             {"delta_mc", &Constants::delta_mc},
      {"c13", &Constants::c13},             {"c14", &Constants::c14},
      {"c15", &Constants::c15},             {"c16", &Constants::c16},
      {"c17", &Constants::c17},             {"mc_rho_scale", &Constants::mc_rho_scale},
      {"solver_tol", &Constants::solver_tol}, {"solver_max_iter", &Constants::solver_max_iter},
  };
  return table;
}

}  // namespace

void Constants::set(const std::string& name, double value) {
  const auto it = fields().find(name);
  if (it == fields().end()) throw InvalidParameter("unknown constant '" + name + "'");
  this->*(it->second) = value;
}

std::map<std::string, double> Constants::to_map() const {
  std::map<std::string, double> out;
  for (const auto& [name, field] : fields()) out[name] = this->*field;
  return out;
}

}  // namespace onebit
