#pragma once

// Built-in structures and curves used by the verification suite, the tests
// and the CLI.

#include <memory>

#include "slantgeom/curve.hpp"

namespace slantgeom::fixtures {

/// φ∂x = ∂y − 2x∂z, φ∂y = ∂x, φ∂z = 0, ξ = ∂z, η = 2x dy + dz and
/// g = [[-2z, 0, 0], [0, 4x² + 2z, 2x], [0, 2x, 1]]. Domain z² > 0, sampled
/// over [-2,2]² × [0.25, 2].
std::shared_ptr<const ParacontactStructure> example1();

/// Same structure with φ multiplied by `factor` (not normal unless factor = ±1).
std::shared_ptr<const ParacontactStructure> example1_scaled_phi(double factor);

/// φ∂x = ∂y, φ∂y = ∂x, φ∂z = 0, ξ = ∂z, η = dz, g = diag(-2z, 2z, 1), z > 0.
std::shared_ptr<const ParacontactStructure> example2();

/// Example 2's (φ, ξ, η) with the flat metric diag(-1, 1, 1); α = β = 0.
std::shared_ptr<const ParacontactStructure> flat();

/// Real root of a³ = a + 2, written as ∛(1−b) + ∛(1+b) with b = √(26/27).
double curve_c_constant();

/// (0, −2√(−t), t), t < 0, on example1.
Curve curve_a();
/// (1/4, t, 3/8) on example1.
Curve curve_b();
/// (√t, −a√t, at), t > 0, on example1.
Curve curve_c();
/// (cosh t, sinh t, 1/2) on example2.
Curve example2_legendre();

}  // namespace slantgeom::fixtures
