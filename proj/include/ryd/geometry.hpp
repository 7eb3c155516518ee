#pragma once

#include <array>
#include <cmath>

#include <Eigen/Core>

#include "ryd/errors.hpp"

namespace ryd {

/// Separation vector of one atom pair: distance, unit vector and its
/// polar/azimuthal angles.
struct PairGeometry {
  double distance = 0;      // bohr
  Eigen::Vector3d unit{0, 0, 1};
  double alpha = 0;         // polar angle of unit
  double beta = 0;          // azimuthal angle of unit

  static PairGeometry from_vector(const Eigen::Vector3d& d) {
    const double r = d.norm();
    if (!(r > 0))
      throw StructureError("PairGeometry: coincident nuclei (R_ij = 0)");
    PairGeometry g;
    g.distance = r;
    g.unit = d / r;
    g.alpha = std::acos(std::clamp(g.unit.z(), -1.0, 1.0));
    g.beta = std::atan2(g.unit.y(), g.unit.x());
    return g;
  }
};

/// Positions of the three nuclei, in bohr.
struct Geometry {
  std::array<Eigen::Vector3d, 3> positions;

  explicit Geometry(std::array<Eigen::Vector3d, 3> pos)
      : positions(std::move(pos)) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) pair(i, j);  // validates R_ij > 0
  }

  /// Pair (i, j), i != j; unit vector points from nucleus i to nucleus j.
  PairGeometry pair(int i, int j) const {
    return PairGeometry::from_vector(positions[j] - positions[i]);
  }

  /// Collinear chain along e_z with equal spacing, the paper scenario.
  static Geometry collinear_z(double spacing) {
    return Geometry({Eigen::Vector3d{0, 0, 0}, Eigen::Vector3d{0, 0, spacing},
                     Eigen::Vector3d{0, 0, 2 * spacing}});
  }
};

}  // namespace ryd
