#pragma once

// The round nearly G2 structure on the unit sphere S^7 in R^8 = O.
//
//   B_p(u, v)          = kCrossSign * cross3(p, u, v)
//   phi_p(u, v, w)     = <B_p(u, v), w>
//   psi_p(u, v, w, x)  = kPsiSign * <cross3(u, v, w), x>      (= *phi_p)
//
// The orientation of T_p S^7 is the one induced by phi_p through S_phi; it is
// opposite to the orientation in which (p, f_1, ..., f_7) is positive in R^8.
// With these conventions the full torsion is T = g, i.e. tau0 = +4.

#include <array>
#include <functional>

#include "nearlyg2/forms.hpp"
#include "nearlyg2/octonion.hpp"

namespace nearlyg2::s7 {

/// Sign fixed so that B_1(u, v) = Im(u v) on Im O.
inline constexpr int kCrossSign = -1;
/// psi_p = *phi_p restricted to tangent vectors, as a multiple of the Cayley form.
inline constexpr int kPsiSign = -1;
/// Torsion constant of the round structure; enters every downstream formula as a constant.
inline constexpr double kTau0 = 4.0;

class SpherePoint {
 public:
  /// Throws unless | |p| - 1 | <= tol.
  explicit SpherePoint(const Vec8& p, double tol = 1e-12);
  static SpherePoint normalized(const Vec8& v);

  const Vec8& vec() const { return p_; }

 private:
  Vec8 p_;
};

class TangentVector {
 public:
  /// Throws unless |<v, p>| <= tol * max(1, |v|).
  TangentVector(const SpherePoint& base, const Vec8& v, double tol = 1e-12);

  const SpherePoint& base() const { return base_; }
  const Vec8& vec() const { return v_; }

 private:
  SpherePoint base_;
  Vec8 v_;
};

using Frame = std::array<Vec8, 7>;

TangentVector tangent_project(const SpherePoint& p, const Vec8& v);

/// Ambient forms of the structure; arguments are assumed tangent at p.
Vec8 cross_at(const Vec8& p, const Vec8& u, const Vec8& v);
double phi_at(const Vec8& p, const Vec8& u, const Vec8& v, const Vec8& w);
double psi_at(const Vec8& u, const Vec8& v, const Vec8& w, const Vec8& x);
/// psi(X, Y, Z, .)^sharp at p.
Vec8 psi_raise(const Vec8& p, const Vec8& x, const Vec8& y, const Vec8& z);

TangentVector cross_s7(const TangentVector& u, const TangentVector& v);

/// Deterministic orthonormal frame of T_p S^7 with (p, f_1..f_7) positive in R^8.
Frame tangent_frame(const SpherePoint& p);
/// Throws if the frame is not orthonormal and orthogonal to p (tolerance 1e-10).
void validate_frame(const SpherePoint& p, const Frame& frame);

/// phi_p, psi_p = *phi_p and g_p in the frame basis.
G2Structure phi_psi_at(const SpherePoint& p, const Frame& frame);

enum class Stencil { Central2, Central4 };

/// An ambient representation of a tangent vector field on (a neighbourhood in) S^7.
using AmbientField = std::function<Vec8(const Vec8& q)>;

/// Point at parameter t on the great circle through p with initial velocity X.
Vec8 great_circle(const Vec8& p, const Vec8& x, double t);

/// Levi-Civita derivative nabla_X field at p, by central differences along the
/// great circle through p in direction X, projected to T_p S^7.
Vec8 sphere_nabla(const AmbientField& field, const SpherePoint& p, const Vec8& x, double step,
                  Stencil stencil = Stencil::Central2);

struct TorsionTensor {
  Mat7 t = Mat7::Zero();
  Frame frame{};
};

/// (nabla_{f_l} phi) in the frame, l = 0..6, from finite differences of phi on
/// the projected frame (which is parallel to first order at p).
std::array<AltForm, 7> nabla_phi(const SpherePoint& p, const Frame& frame, double step,
                                 Stencil stencil = Stencil::Central2);
/// Same for psi, with psi recomputed as *phi at every stencil point.
std::array<AltForm, 7> nabla_psi(const SpherePoint& p, const Frame& frame, double step,
                                 Stencil stencil = Stencil::Central2);

/// T_lm = (1/24) (nabla_l phi_abc) psi_mijk g^ia g^jb g^kc.
TorsionTensor torsion_at(const SpherePoint& p, double step, Stencil stencil = Stencil::Central2);
TorsionTensor torsion_at(const SpherePoint& p, const Frame& frame, double step, Stencil stencil = Stencil::Central2);
Mat7 torsion_from_derivatives(const std::array<AltForm, 7>& dphi, const G2Structure& s);

struct TorsionForms {
  double tau0 = 0.0;
  AltForm tau1{2};  // in Omega^2_7
  AltForm tau2{2};  // in Omega^2_14
  AltForm tau3{3};  // in Omega^3_27

  double norm1(const MetricTensor& g) const;
  double norm2(const MetricTensor& g) const;
  double norm3(const MetricTensor& g) const;
};

/// Splits T_lm = tau0/4 g_lm - (tau3)_lm + (tau1)_lm - (tau2)_lm / 2.
TorsionForms torsion_forms(const Mat7& t, const G2Structure& s);
/// Reassembles T from its torsion forms.
Mat7 recompose_torsion(const TorsionForms& forms, const G2Structure& s);

/// Residual max-norms of nabla phi = T psi and nabla psi = -T phi (index forms).
double torsion1_residual(const std::array<AltForm, 7>& dphi, const Mat7& t, const G2Structure& s);
double torsion3_residual(const std::array<AltForm, 7>& dpsi, const Mat7& t, const G2Structure& s);

struct Curvature {
  Mat7 ricci = Mat7::Zero();
  double scalar = 0.0;
};

/// Ric = (3/8) tau0^2 g, S = (21/8) tau0^2.
Curvature nearly_curvature(double tau0, const MetricTensor& g);

/// Ricci tensor from the torsion formula with nabla T = 0 (orthonormal frame).
Mat7 ricci_from_constant_torsion(const Mat7& t, const G2Structure& s);

}  // namespace nearlyg2::s7
