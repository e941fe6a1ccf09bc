#pragma once

// Pointwise exterior algebra on a 7-dimensional inner-product space and the
// G2 representation theory built on it.
//
// Components are stored densely against canonical increasing multi-indices
// (0-based), so a = sum_{I increasing} a_I e^I and a(e_{i1}, ..., e_{ik}) = a_I.

#include <array>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "nearlyg2/octonion.hpp"

namespace nearlyg2 {

inline constexpr int kDim = 7;

using Mat7 = Eigen::Matrix<double, 7, 7>;

/// Number of increasing multi-indices of length k in {0..6}.
int form_size(int degree);

/// Multi-index at canonical position `pos` of degree k, as a 7-bit mask.
unsigned form_mask(int degree, int pos);

/// Canonical position of a 7-bit mask within its degree.
int form_position(unsigned mask);

class AltForm {
 public:
  static constexpr int kMaxComponents = 35;

  AltForm() = default;
  explicit AltForm(int degree);

  static AltForm scalar(double value);
  /// e^{i1} ^ ... ^ e^{ik} for 0-based indices in any order (with permutation sign).
  static AltForm basis(std::initializer_list<int> indices, double coefficient = 1.0);
  /// The flat G2 3-form phi0.
  static AltForm phi0();
  /// The printed companion 4-form psi0 (= star phi0 under the e_1..e_7 orientation).
  static AltForm psi0_printed();

  int degree() const { return degree_; }
  int size() const { return form_size(degree_); }

  double operator[](int pos) const { return c_[static_cast<std::size_t>(pos)]; }
  double& operator[](int pos) { return c_[static_cast<std::size_t>(pos)]; }

  /// Component for 0-based indices in any order; zero if an index repeats.
  double component(std::span<const int> indices) const;
  void add_component(std::span<const int> indices, double value);

  std::span<const double> components() const { return {c_.data(), static_cast<std::size_t>(size())}; }
  double max_abs() const;

  AltForm& operator+=(const AltForm& o);
  AltForm& operator-=(const AltForm& o);
  AltForm& operator*=(double s);
  friend AltForm operator+(AltForm a, const AltForm& b) { return a += b; }
  friend AltForm operator-(AltForm a, const AltForm& b) { return a -= b; }
  friend AltForm operator-(AltForm a) { return a *= -1.0; }
  friend AltForm operator*(double s, AltForm a) { return a *= s; }
  friend AltForm operator*(AltForm a, double s) { return a *= s; }

 private:
  int degree_ = 0;
  std::array<double, kMaxComponents> c_{};
};

/// Symmetric positive-definite bilinear form with its volume element.
///
/// `vol` is sqrt(det g) > 0. `orientation` is +1 when the oriented volume form
/// is +vol e^{1..7} with respect to the reference basis, -1 otherwise.
struct MetricTensor {
  Mat7 g = Mat7::Identity();
  double vol = 1.0;
  int orientation = 1;

  /// Validates symmetry and positive-definiteness.
  static MetricTensor make(const Mat7& g, int orientation = 1);
  static MetricTensor identity(int orientation = 1) { return make(Mat7::Identity(), orientation); }

  Mat7 inverse() const { return g.inverse(); }
};

struct Sym2 {
  Mat7 h = Mat7::Zero();
};

/// A G2 structure with its induced metric, orientation and 4-form psi = *phi.
struct G2Structure {
  AltForm phi;
  AltForm psi;
  MetricTensor metric;

  static G2Structure from_phi(const AltForm& phi);
};

AltForm wedge(const AltForm& a, const AltForm& b);
AltForm interior(const Vec7& x, const AltForm& a);
/// a(v_1, ..., v_k)
double evaluate(const AltForm& a, std::span<const Vec7> vectors);
double inner(const AltForm& a, const AltForm& b, const MetricTensor& metric);
AltForm hodge_star(const AltForm& a, const MetricTensor& metric);

/// Unique (g, vol, orientation) with g(u,v) vol_g = -(1/6) (u_|phi)^(v_|phi)^phi.
MetricTensor metric_from_3form(const AltForm& phi);

/// Coefficient matrix of S_phi against the reference volume e^{1..7}.
Mat7 s_phi_coefficients(const AltForm& phi);

struct Split2 {
  AltForm part7;
  AltForm part14;
};
struct Split3 {
  AltForm part1;
  AltForm part7;
  AltForm part27;
};

/// Omega^2_7 + Omega^2_14 via the eigenspaces of beta -> *(phi ^ beta).
Split2 project2(const AltForm& beta, const G2Structure& s);
Split2 project2(const AltForm& beta, const AltForm& phi);
/// Cross-check route: orthogonal projection onto span{e_i _| phi}.
Split2 project2_span(const AltForm& beta, const G2Structure& s);

/// Omega^3_1 + Omega^3_7 + Omega^3_27 via orthogonal projection onto
/// span{phi} and span{e_i _| psi}.
Split3 project3(const AltForm& gamma, const G2Structure& s);
Split3 project3(const AltForm& gamma, const AltForm& phi);

/// h_ij g^{jl} e^i ^ (e_l _| phi).
AltForm sym2_to_3form(const Sym2& h, const AltForm& phi, const MetricTensor& metric);
/// Inverse of sym2_to_3form on Omega^3_27 (traceless h):
/// h_ij = (1/4) gamma_{ibc} phi_{jde} g^{bd} g^{ce}, symmetrized.
Sym2 sym2_from_3form(const AltForm& gamma, const AltForm& phi, const MetricTensor& metric);

/// Vector X with beta = X _| phi, for beta in Omega^2_7.
Vec7 vector_from_2form7(const AltForm& beta7, const G2Structure& s);

/// Type decomposition of a 4-form (1/7/27) or 5-form (7/14) through the Hodge star.
struct HighSplit {
  int degree = 0;
  std::vector<int> labels;
  std::vector<AltForm> parts;
};
HighSplit decompose_high(const AltForm& a, const G2Structure& s);

}  // namespace nearlyg2
