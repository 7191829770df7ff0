#pragma once

#include <vector>

#include "halfplane/function.hpp"
#include "halfplane/operators.hpp"

namespace halfplane {

/// Six members of 𝔇(ℂ⁺) covering every representation kind, with labels:
/// const_1, cayley_inverse, inv_z_plus_i, exp_pullback, log_pullback,
/// diskpoly.
std::vector<HalfPlaneFn> dirichlet_catalog();

/// Catalog maps that are univalent (all named maps but square_conjugate).
std::vector<SelfMap> univalent_catalog();

/// Catalog maps with φ(ℂ⁺) = ℂ⁺ up to a null set.
std::vector<SelfMap> full_image_catalog();

}  // namespace halfplane
