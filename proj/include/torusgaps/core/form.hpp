#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include <json.hpp>

#include "torusgaps/error.hpp"

namespace torusgaps {

enum class SymmetryClass { Generic, Rectangular };

inline const char* class_name(SymmetryClass c) {
  return c == SymmetryClass::Generic ? "generic" : "rectangular";
}

inline SymmetryClass parse_class(const std::string& s) {
  if (s == "generic") return SymmetryClass::Generic;
  if (s == "rectangular") return SymmetryClass::Rectangular;
  throw Error(Errc::InvalidArgument, "unknown symmetry class '" + s + "'");
}

/// Positive definite binary quadratic form q(m, n) = a1 m^2 + a2 m n + a3 n^2.
///
/// Only `validate_form` / `rectangular_form` construct one, so every instance
/// is positive definite. Non-reduced coefficients are accepted and flagged:
/// the gap statistics do not depend on the representative.
class ReducedForm {
 public:
  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  double a3() const noexcept { return a3_; }
  SymmetryClass symmetry_class() const noexcept { return class_; }
  bool is_reduced() const noexcept { return reduced_; }

  /// 4 a1 a3 - a2^2, strictly positive.
  double discriminant() const noexcept { return 4.0 * a1_ * a3_ - a2_ * a2_; }

  double q(double m, double n) const noexcept { return a1_ * m * m + a2_ * m * n + a3_ * n * n; }

  ReducedForm scaled(double lambda) const;

  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;

 private:
  friend ReducedForm validate_form(double, double, double, SymmetryClass);
  ReducedForm(double a1, double a2, double a3, SymmetryClass c, bool reduced)
      : a1_(a1), a2_(a2), a3_(a3), class_(c), reduced_(reduced) {}

  double a1_;
  double a2_;
  double a3_;
  SymmetryClass class_;
  bool reduced_;
};

inline ReducedForm validate_form(double a1, double a2, double a3,
                                 SymmetryClass cls = SymmetryClass::Generic) {
  if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3)) {
    throw Error(Errc::InvalidArgument, "form coefficients must be finite");
  }
  if (a1 <= 0.0 || a3 <= 0.0) {
    throw Error(Errc::NonPositive, "a1 and a3 must be positive");
  }
  if (4.0 * a1 * a3 - a2 * a2 <= 0.0) {
    throw Error(Errc::NonPositiveDefinite, "4*a1*a3 - a2^2 must be positive");
  }
  if (cls == SymmetryClass::Rectangular && a2 != 0.0) {
    throw Error(Errc::WrongSymmetryClass, "rectangular forms have a2 = 0");
  }
  const bool reduced = 0.0 <= a2 && a2 <= a1 && a1 <= a3;
  return ReducedForm(a1, a2, a3, cls, reduced);
}

inline ReducedForm rectangular_form(double a1, double a3) {
  return validate_form(a1, 0.0, a3, SymmetryClass::Rectangular);
}

inline ReducedForm ReducedForm::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw Error(Errc::InvalidArgument, "scale must be positive");
  return validate_form(lambda * a1_, lambda * a2_, lambda * a3_, class_);
}

/// D(alpha) = sqrt(4 a1 a3 - a2^2) / pi.
inline double discriminant_scale(const ReducedForm& form) {
  return std::sqrt(form.discriminant()) / std::numbers::pi;
}

/// Density of the GL2(R)-invariant measure with respect to da1 da2 da3.
inline double hyperbolic_density(const ReducedForm& form) {
  if (form.symmetry_class() != SymmetryClass::Generic) {
    throw Error(Errc::WrongSymmetryClass, "hyperbolic density is defined for generic forms");
  }
  const double d = form.discriminant();
  return 1.0 / (d * std::sqrt(d));
}

/// Density of da1 da3 / (a1 a3) on rectangular forms.
inline double rectangular_density(const ReducedForm& form) {
  if (form.symmetry_class() != SymmetryClass::Rectangular) {
    throw Error(Errc::WrongSymmetryClass, "log-measure density is defined for rectangular forms");
  }
  return 1.0 / (form.a1() * form.a3());
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// {"a1":...,"a2":...,"a3":...,"class":"generic"|"rectangular"}, 17 significant digits.
inline std::string to_json_string(const ReducedForm& form) {
  return std::string("{\"a1\":") + format_double(form.a1()) + ",\"a2\":" + format_double(form.a2()) +
         ",\"a3\":" + format_double(form.a3()) + ",\"class\":\"" + class_name(form.symmetry_class()) +
         "\"}";
}

inline ReducedForm form_from_json(const nlohmann::json& j) {
  try {
    return validate_form(j.at("a1").get<double>(), j.at("a2").get<double>(),
                         j.at("a3").get<double>(), parse_class(j.at("class").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("malformed form JSON: ") + e.what());
  }
}

inline ReducedForm form_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("malformed form JSON: ") + e.what());
  }
  return form_from_json(j);
}

}  // namespace torusgaps
