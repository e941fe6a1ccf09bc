#pragma once

// Octonion arithmetic and the 2-fold / 3-fold vector cross products.
//
// The multiplication table is not hard-coded: it is derived from the flat
// G2 3-form phi0 via  e_i e_j = -delta_ij + sum_k phi0(e_i, e_j, e_k) e_k,
// so that cross2 and phi0 agree by construction. All structure constants are
// integers; the templates below work over int as well as double, which is
// what the exact identity sweeps rely on.

#include <array>
#include <cstdlib>

#include <Eigen/Core>

namespace nearlyg2 {

template <class T>
using Vec7T = Eigen::Matrix<T, 7, 1>;
template <class T>
using Vec8T = Eigen::Matrix<T, 8, 1>;

using Vec7 = Vec7T<double>;
using Vec8 = Vec8T<double>;

namespace oct {

/// One printed monomial s * dx^{ijk} of phi0 (1-based indices, any order).
struct SignedTriple {
  int i, j, k, sign;
};

inline constexpr std::array<SignedTriple, 7> kPhi0Terms{{
    {1, 2, 3, +1},
    {1, 6, 7, -1},
    {5, 2, 7, -1},
    {5, 6, 3, -1},
    {4, 1, 5, +1},
    {4, 2, 6, +1},
    {4, 3, 7, +1},
}};

/// Dense phi0_{ijk}, 0-based, values in {-1, 0, +1}.
using StructureTable = std::array<std::array<std::array<int, 7>, 7>, 7>;

constexpr StructureTable make_phi0_table() {
  StructureTable t{};
  for (const auto& term : kPhi0Terms) {
    const int a = term.i - 1, b = term.j - 1, c = term.k - 1;
    // all six orderings with the permutation sign
    t[a][b][c] = term.sign;
    t[b][c][a] = term.sign;
    t[c][a][b] = term.sign;
    t[b][a][c] = -term.sign;
    t[a][c][b] = -term.sign;
    t[c][b][a] = -term.sign;
  }
  return t;
}

inline constexpr StructureTable kPhi0 = make_phi0_table();

/// Element of O = R^8; component 0 is the real part, 1..7 are e_1..e_7.
template <class T>
struct BasicOctonion {
  Vec8T<T> c = Vec8T<T>::Zero();

  BasicOctonion() = default;
  explicit BasicOctonion(const Vec8T<T>& v) : c(v) {}

  static BasicOctonion unit(int k) {
    BasicOctonion o;
    o.c[k] = T(1);
    return o;
  }
  static BasicOctonion from_imaginary(const Vec7T<T>& v) {
    BasicOctonion o;
    o.c.template tail<7>() = v;
    return o;
  }

  T real() const { return c[0]; }
  Vec7T<T> imag() const { return c.template tail<7>(); }

  BasicOctonion conj() const {
    BasicOctonion o(-c);
    o.c[0] = c[0];
    return o;
  }
  T norm2() const { return c.squaredNorm(); }

  friend BasicOctonion operator+(const BasicOctonion& a, const BasicOctonion& b) {
    return BasicOctonion(Vec8T<T>(a.c + b.c));
  }
  friend BasicOctonion operator-(const BasicOctonion& a, const BasicOctonion& b) {
    return BasicOctonion(Vec8T<T>(a.c - b.c));
  }
  friend BasicOctonion operator*(T s, const BasicOctonion& a) { return BasicOctonion(Vec8T<T>(s * a.c)); }
  friend bool operator==(const BasicOctonion& a, const BasicOctonion& b) { return a.c == b.c; }
};

using Octonion = BasicOctonion<double>;

/// Imaginary cross term (u x v)_k = sum_ij table_ijk u_i v_j.
template <class T>
Vec7T<T> imaginary_product(const Vec7T<T>& u, const Vec7T<T>& v, const StructureTable& table = kPhi0) {
  Vec7T<T> r = Vec7T<T>::Zero();
  for (int i = 0; i < 7; ++i) {
    if (u[i] == T(0)) continue;
    for (int j = 0; j < 7; ++j) {
      if (v[j] == T(0)) continue;
      const T uv = u[i] * v[j];
      for (int k = 0; k < 7; ++k) {
        const int s = table[i][j][k];
        if (s != 0) r[k] += T(s) * uv;
      }
    }
  }
  return r;
}

template <class T>
BasicOctonion<T> oct_mul(const BasicOctonion<T>& a, const BasicOctonion<T>& b,
                         const StructureTable& table = kPhi0) {
  const Vec7T<T> ai = a.imag(), bi = b.imag();
  BasicOctonion<T> r;
  r.c[0] = a.real() * b.real() - ai.dot(bi);
  r.c.template tail<7>() = a.real() * bi + b.real() * ai + imaginary_product(ai, bi, table);
  return r;
}

template <class T>
BasicOctonion<T> operator*(const BasicOctonion<T>& a, const BasicOctonion<T>& b) {
  return oct_mul(a, b);
}

/// 2-fold cross product on R^7 = Im O: B(u, v) = Im(u v).
template <class T>
Vec7T<T> cross2(const Vec7T<T>& u, const Vec7T<T>& v, const StructureTable& table = kPhi0) {
  return imaginary_product(u, v, table);
}

/// 3-fold cross product on R^8 = O: B(u, v, w) = (u (v* w) - w (v* u)) / 2.
inline Vec8 cross3(const Vec8& u, const Vec8& v, const Vec8& w) {
  const Octonion U(u), Vc = Octonion(v).conj(), W(w);
  return 0.5 * ((U * (Vc * W)).c - (W * (Vc * U)).c);
}

/// Cayley 4-form Omega(u, v, w, x) = <cross3(u, v, w), x>.
inline double cayley_form(const Vec8& u, const Vec8& v, const Vec8& w, const Vec8& x) {
  return cross3(u, v, w).dot(x);
}

}  // namespace oct
}  // namespace nearlyg2
