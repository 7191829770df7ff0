#include "halfplane/json_io.hpp"

#include <cmath>

namespace halfplane {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(std::string(what) + " must be finite");
  return v;
}

Coeffs parse_coeffs(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(std::string(what) + " must be a nonempty array of [re,im] pairs");
  Coeffs out;
  for (const Json& c : j) out.push_back(parse_complex(c));
  return out;
}

Json coeffs_to_json(std::span<const cplx> c) {
  Json out = Json::array();
  for (const cplx z : c) out.push_back(complex_to_json(z));
  return out;
}

}  // namespace

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx parse_complex(const Json& j) {
  if (j.is_number()) return {number(j, "complex value"), 0.0};
  if (!j.is_array() || j.size() != 2) fail("complex values are [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json moebius_to_json(const MoebiusMap& m) {
  return Json{{"a", complex_to_json(m.a())},
              {"b", complex_to_json(m.b())},
              {"c", complex_to_json(m.c())},
              {"d", complex_to_json(m.d())}};
}

MoebiusMap parse_moebius(const Json& j) {
  const MoebiusMap m(parse_complex(member(j, "a")), parse_complex(member(j, "b")), parse_complex(member(j, "c")),
                     parse_complex(member(j, "d")));
  if (m.is_degenerate()) fail("Moebius map has zero determinant");
  return m;
}

HalfPlaneFn parse_function(const Json& j) {
  const Json& kind = member(j, "kind");
  if (!kind.is_string()) fail("function kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "rational") return HalfPlaneFn(RationalFn(parse_coeffs(member(j, "num"), "num"), parse_coeffs(member(j, "den"), "den")));
  if (k == "diskpoly") return HalfPlaneFn::from_disk(DiskSeries(parse_coeffs(member(j, "coeffs"), "coeffs")));
  if (k == "builtin") {
    const Json& name = member(j, "name");
    if (!name.is_string()) fail("builtin name must be a string");
    std::vector<double> params;
    if (j.contains("params")) {
      if (!j["params"].is_array()) fail("builtin params must be an array");
      for (const Json& p : j["params"]) params.push_back(number(p, "builtin parameter"));
    }
    return HalfPlaneFn::builtin(name.get<std::string>(), std::move(params));
  }
  fail("unknown function kind '" + k + "'");
}

Json function_to_json(const HalfPlaneFn& f) {
  if (const auto* r = std::get_if<RationalFn>(&f.representation()))
    return Json{{"kind", "rational"}, {"num", coeffs_to_json(r->numerator())}, {"den", coeffs_to_json(r->denominator())}};
  if (const auto* s = std::get_if<DiskSeries>(&f.representation()))
    return Json{{"kind", "diskpoly"}, {"coeffs", coeffs_to_json(s->coefficients())}};
  const auto& b = std::get<BuiltinFn>(f.representation());
  if (!b.is_catalog_entry()) throw std::invalid_argument("function '" + b.name() + "' has no spec form");
  return Json{{"kind", "builtin"}, {"name", b.name()}, {"params", b.params()}};
}

SelfMap parse_selfmap(const Json& j) {
  const Json& kind = member(j, "kind");
  if (!kind.is_string()) fail("self-map kind must be a string");
  const std::string k = kind.get<std::string>();
  SelfMap out = [&] {
    if (k == "moebius") return SelfMap::moebius(parse_moebius(member(j, "map")));
    if (k == "disk_conjugate") {
      const Json& psi = member(j, "psi");
      if (psi.is_object() && psi.contains("a")) return SelfMap::disk_conjugate(parse_moebius(psi));
      if (psi.is_object()) return SelfMap::disk_conjugate(DiskSeries(parse_coeffs(member(psi, "coeffs"), "psi.coeffs")));
      return SelfMap::disk_conjugate(DiskSeries(parse_coeffs(psi, "psi")));
    }
    if (k == "named") {
      const Json& name = member(j, "name");
      if (!name.is_string()) fail("self-map name must be a string");
      return SelfMap::named(name.get<std::string>());
    }
    fail("unknown self-map kind '" + k + "'");
  }();
  if (j.contains("claimed_univalent")) {
    if (!j["claimed_univalent"].is_boolean()) fail("claimed_univalent must be a boolean");
    out.claimed_univalent = j["claimed_univalent"].get<bool>();
  }
  return out;
}

Json selfmap_to_json(const SelfMap& phi) {
  Json out;
  switch (phi.form()) {
    case SelfMap::Form::kNamed:
      out = Json{{"kind", "named"}, {"name", phi.name()}};
      break;
    case SelfMap::Form::kMoebius:
      out = Json{{"kind", "moebius"}, {"map", moebius_to_json(*phi.as_moebius())}};
      break;
    case SelfMap::Form::kDiskConjugate:
      out = Json{{"kind", "disk_conjugate"},
                 {"psi", phi.psi_series() ? Json{{"coeffs", coeffs_to_json(phi.psi_series()->coefficients())}}
                                          : moebius_to_json(*phi.psi_moebius())}};
      break;
  }
  if (phi.claimed_univalent) out["claimed_univalent"] = *phi.claimed_univalent;
  return out;
}

RegionMask parse_region(const Json& j) {
  const Json& type = member(j, "type");
  if (!type.is_string()) fail("region type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "halfplane") return RegionMask::full();
  if (t == "empty") return RegionMask(EmptyRegion{});
  if (t == "im_above") return RegionMask(ImAbove{number(member(j, "y0"), "y0")});
  if (t == "im_between") return RegionMask(ImBetween{number(member(j, "y0"), "y0"), number(member(j, "y1"), "y1")});
  if (t == "slit_vertical") return RegionMask(SlitVertical{number(member(j, "x"), "x"), number(member(j, "y_max"), "y_max")});
  if (t == "moebius_image_of_disk")
    return RegionMask(MoebiusImageOfDisk{parse_moebius(member(j, "map")), number(member(j, "radius"), "radius")});
  if (t == "complement_sample_box")
    return RegionMask(BoxRegion{number(member(j, "x_min"), "x_min"), number(member(j, "x_max"), "x_max"),
                                number(member(j, "y_min"), "y_min"), number(member(j, "y_max"), "y_max")});
  fail("unknown region type '" + t + "'");
}

Json region_to_json(const RegionMask& r) {
  Json out{{"type", r.type()}};
  std::visit(
      [&out](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ImAbove>) {
          out["y0"] = s.y0;
        } else if constexpr (std::is_same_v<S, ImBetween>) {
          out["y0"] = s.y0;
          out["y1"] = s.y1;
        } else if constexpr (std::is_same_v<S, SlitVertical>) {
          out["x"] = s.x;
          out["y_max"] = s.y_max;
        } else if constexpr (std::is_same_v<S, MoebiusImageOfDisk>) {
          out["map"] = moebius_to_json(s.map);
          out["radius"] = s.radius;
        } else if constexpr (std::is_same_v<S, BoxRegion>) {
          out["x_min"] = s.x_min;
          out["x_max"] = s.x_max;
          out["y_min"] = s.y_min;
          out["y_max"] = s.y_max;
        }
      },
      r.shape());
  return out;
}

Json to_json(const NormReport& r) {
  Json out{{"squared_norm", r.squared_norm},
           {"basepoint_term", r.basepoint_term},
           {"energy_term", r.energy_term},
           {"method", to_string(r.method)},
           {"finite", r.finite}};
  if (r.method == NormMethod::kQuadrature) {
    out["error_estimate"] = r.error_estimate;
    out["nodes_used"] = r.nodes_used;
  }
  return out;
}

Json to_json(const QuadratureResult& q) {
  return Json{{"value", q.value}, {"error_estimate", q.error_estimate}, {"nodes_used", q.nodes_used}, {"diverged", q.diverged}};
}

Json to_json(const UnivalenceVerdict& v) {
  Json out{{"verdict", to_string(v.kind)}, {"detail", v.detail}, {"windings", v.windings}};
  if (v.kind == UnivalenceVerdict::Kind::kNotUnivalent)
    out["witness"] = Json::array({complex_to_json(v.z1), complex_to_json(v.z2)});
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace halfplane
