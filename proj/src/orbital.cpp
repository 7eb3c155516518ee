#include "ryd/orbital.hpp"

#include <cmath>

namespace ryd {

namespace {
constexpr const char* kLetters = "spdfghiklmnoq";
}

char orbital_letter(int l) {
  if (l >= 0 && l < 13) return kLetters[l];
  return '?';
}

int orbital_letter_to_l(char c) {
  for (int l = 0; l < 13; ++l)
    if (kLetters[l] == c) return l;
  return -1;
}

std::string OrbitalState::label() const {
  std::string s = std::to_string(n);
  s += orbital_letter(l);
  if (l > 0) {
    s += ",m=";
    s += std::to_string(m);
  }
  return s;
}

double energy_level(int n, int l, const EnergyModel& model) {
  OrbitalState{n, l, 0};
  if (model.kind == EnergyModelKind::hydrogenic)
    return -model.Z * model.Z / (2.0 * n * n);

  auto it = model.defects.find(l);
  if (it == model.defects.end())
    throw ConfigError("energy_level: no quantum defect configured for l=" +
                      std::to_string(l));
  const double delta = it->second;
  if (delta < 0 || delta >= n)
    throw ConfigError("energy_level: need 0 <= delta_l < n for l=" +
                      std::to_string(l));
  const double n_eff = n - delta;
  return -model.Z * model.Z / (2.0 * n_eff * n_eff);
}

}  // namespace ryd
