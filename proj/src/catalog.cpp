#include "halfplane/catalog.hpp"

namespace halfplane {

std::vector<HalfPlaneFn> dirichlet_catalog() {
  return {
      HalfPlaneFn::constant(1.0).labeled("const_1"),
      HalfPlaneFn(RationalFn({kI, -1.0}, {kI, 1.0})).labeled("cayley_inverse"),
      HalfPlaneFn(RationalFn({1.0}, {kI, 1.0})).labeled("inv_z_plus_i"),
      HalfPlaneFn::builtin("exp_pullback", {1.0}).labeled("exp_pullback"),
      HalfPlaneFn::builtin("log_pullback", {0.5}).labeled("log_pullback"),
      HalfPlaneFn::from_disk(DiskSeries({0.5, 1.0, 0.0, cplx{0.0, 0.3}})).labeled("diskpoly"),
  };
}

std::vector<SelfMap> univalent_catalog() {
  std::vector<SelfMap> out;
  for (const std::string& name : SelfMap::catalog_names())
    if (name != "square_conjugate") out.push_back(SelfMap::named(name));
  return out;
}

std::vector<SelfMap> full_image_catalog() {
  std::vector<SelfMap> out;
  for (const char* name : {"identity", "affine_auto", "neg_inverse", "dilation_2", "slit_sqrt"})
    out.push_back(SelfMap::named(name));
  return out;
}

}  // namespace halfplane
