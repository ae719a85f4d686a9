#pragma once

#include "bitempo/continuity/field.hpp"
#include "bitempo/core/grid.hpp"

namespace bitempo::continuity {

/// Coefficients of a manufactured current on a grid with space axis.
///
/// With z the coordinate rescaled to [0, 1] on its axis and
/// V(z) = z (1 - z) e^z, the potentials
///   A = a (1 + sin x / 2) V(z2) V(z1),   B = b V(zx) cos t2 V(z1)
/// give the conserved current
///   j1 = d2 A + dx B,   j2 = -d1 A,   jx = d1 B,
/// whose flux vanishes on every boundary face. On top of it
///   j1 += (charge + source (t1 - t1_min)) f(x) g(t2)
/// with f = 1 + x / 4 + cos x / 2 and g = e^{t2 / 2}: `charge` adds a
/// constant Q1 (flux through the t1 faces), `source` breaks conservation by
/// s = source f g.
struct ManufacturedCurrent {
  double a = 1.0;
  double b = 1.0;
  double charge = 0.0;
  double source = 0.0;
};

CurrentField manufactured_current(const core::Grid2T& grid, const ManufacturedCurrent& spec);

}  // namespace bitempo::continuity
