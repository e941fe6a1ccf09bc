#include "nearlyg2/forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "nearlyg2/error.hpp"

namespace nearlyg2 {
namespace {

struct IndexTables {
  std::array<std::vector<unsigned>, 8> masks;
  std::array<int, 128> position{};

  IndexTables() {
    // Lexicographic order of increasing index tuples.
    for (int k = 0; k <= kDim; ++k) {
      std::vector<unsigned> list;
      for (unsigned m = 0; m < 128; ++m)
        if (std::popcount(m) == k) list.push_back(m);
      std::sort(list.begin(), list.end(), [](unsigned a, unsigned b) {
        // compare as sorted index tuples
        while (a && b) {
          const int ia = std::countr_zero(a), ib = std::countr_zero(b);
          if (ia != ib) return ia < ib;
          a &= a - 1;
          b &= b - 1;
        }
        return false;
      });
      for (std::size_t p = 0; p < list.size(); ++p) position[list[p]] = static_cast<int>(p);
      masks[static_cast<std::size_t>(k)] = std::move(list);
    }
  }
};

const IndexTables& tables() {
  static const IndexTables t;
  return t;
}

// (-1)^{#{(i in a, j in b) : i > j}}: sign of sorting the concatenation a|b.
int merge_sign(unsigned a, unsigned b) {
  int inversions = 0;
  for (unsigned m = b; m; m &= m - 1) {
    const int j = std::countr_zero(m);
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

// Sorts indices in place and returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

unsigned mask_of(const std::vector<int>& sorted) {
  unsigned m = 0;
  for (int i : sorted) m |= 1u << i;
  return m;
}

void check_index(int i) {
  if (i < 0 || i >= kDim) throw Error(ErrorKind::InvalidArgument, "form index out of range: " + std::to_string(i));
}

using MinorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, AltForm::kMaxComponents,
                                  AltForm::kMaxComponents>;

// Matrix of k x k minors of m, i.e. the induced bilinear form on Lambda^k.
MinorMatrix exterior_power(const Mat7& m, int k) {
  const int n = form_size(k);
  MinorMatrix out(n, n);
  if (k == 0) {
    out(0, 0) = 1.0;
    return out;
  }
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 7, 7> sub(k, k);
  for (int r = 0; r < n; ++r) {
    const unsigned rm = form_mask(k, r);
    for (int c = 0; c < n; ++c) {
      const unsigned cm = form_mask(k, c);
      int a = 0;
      for (unsigned x = rm; x; x &= x - 1, ++a) {
        int b = 0;
        for (unsigned y = cm; y; y &= y - 1, ++b) sub(a, b) = m(std::countr_zero(x), std::countr_zero(y));
      }
      out(r, c) = sub.determinant();
    }
  }
  return out;
}

bool is_identity(const Mat7& m) { return m == Mat7::Identity(); }

using Mat7L = Eigen::Matrix<long double, 7, 7>;

// Partitions of {0..6} into index sets of sizes 2, 2, 3 with the sign of their concatenation.
struct TopSplit {
  unsigned a, b, c;
  int sign;
};

const std::vector<TopSplit>& top_splits() {
  static const std::vector<TopSplit> splits = [] {
    std::vector<TopSplit> out;
    for (unsigned a = 0; a < 128; ++a) {
      if (std::popcount(a) != 2) continue;
      for (unsigned b = 0; b < 128; ++b) {
        if (std::popcount(b) != 2 || (a & b)) continue;
        const unsigned c = 127u & ~(a | b);
        out.push_back({a, b, c, merge_sign(a, b) * merge_sign(a | b, c)});
      }
    }
    return out;
  }();
  return splits;
}

// S_phi in extended precision; det S_phi is badly conditioned for skewed phi.
Mat7L s_phi_extended(const AltForm& phi) {
  if (phi.degree() != 3) throw Error(ErrorKind::InvalidArgument, "S_phi needs a 3-form");
  std::array<long double, 128> top{};
  for (int p = 0; p < form_size(3); ++p) top[form_mask(3, p)] = phi[p];
  // (e_i _| phi)_{ab} for a < b
  std::array<std::array<long double, 128>, kDim> contracted{};
  for (int p = 0; p < form_size(3); ++p) {
    const unsigned m = form_mask(3, p);
    int slot = 0;
    for (unsigned rest = m; rest; rest &= rest - 1, ++slot) {
      const int i = std::countr_zero(rest);
      contracted[static_cast<std::size_t>(i)][m & ~(1u << i)] = ((slot & 1) ? -1.0L : 1.0L) * phi[p];
    }
  }
  Mat7L b;
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) {
      const auto& ci = contracted[static_cast<std::size_t>(i)];
      const auto& cj = contracted[static_cast<std::size_t>(j)];
      long double sum = 0.0L;
      for (const TopSplit& s : top_splits()) sum += s.sign * ci[s.a] * cj[s.b] * top[s.c];
      b(i, j) = b(j, i) = -sum / 6.0L;
    }
  return b;
}

}  // namespace

int form_size(int degree) {
  static constexpr std::array<int, 8> kSizes{1, 7, 21, 35, 35, 21, 7, 1};
  if (degree < 0 || degree > kDim) throw Error(ErrorKind::InvalidArgument, "form degree out of range");
  return kSizes[static_cast<std::size_t>(degree)];
}

unsigned form_mask(int degree, int pos) {
  return tables().masks[static_cast<std::size_t>(degree)][static_cast<std::size_t>(pos)];
}

int form_position(unsigned mask) { return tables().position[mask & 127u]; }

// ---------------------------------------------------------------------------

AltForm::AltForm(int degree) : degree_(degree) {
  if (degree < 0 || degree > kDim) throw Error(ErrorKind::InvalidArgument, "form degree must lie in 0..7");
}

AltForm AltForm::scalar(double value) {
  AltForm f(0);
  f.c_[0] = value;
  return f;
}

AltForm AltForm::basis(std::initializer_list<int> indices, double coefficient) {
  AltForm f(static_cast<int>(indices.size()));
  std::vector<int> idx(indices);
  f.add_component(idx, coefficient);
  return f;
}

AltForm AltForm::phi0() {
  AltForm f(3);
  for (const auto& t : oct::kPhi0Terms) {
    const std::array<int, 3> idx{t.i - 1, t.j - 1, t.k - 1};
    f.add_component(idx, t.sign);
  }
  return f;
}

AltForm AltForm::psi0_printed() {
  struct Term {
    int i, j, k, l, sign;
  };
  static constexpr std::array<Term, 7> kTerms{{
      {4, 5, 6, 7, +1},
      {4, 5, 2, 3, -1},
      {4, 1, 6, 3, -1},
      {4, 1, 2, 7, -1},
      {2, 6, 3, 7, +1},
      {1, 5, 3, 7, +1},
      {1, 5, 2, 6, +1},
  }};
  AltForm f(4);
  for (const auto& t : kTerms) {
    const std::array<int, 4> idx{t.i - 1, t.j - 1, t.k - 1, t.l - 1};
    f.add_component(idx, t.sign);
  }
  return f;
}

double AltForm::component(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw Error(ErrorKind::InvalidArgument, "index count != degree");
  std::vector<int> idx(indices.begin(), indices.end());
  for (int i : idx) check_index(i);
  const int s = sort_with_sign(idx);
  if (s == 0) return 0.0;
  return s * c_[static_cast<std::size_t>(form_position(mask_of(idx)))];
}

void AltForm::add_component(std::span<const int> indices, double value) {
  if (static_cast<int>(indices.size()) != degree_) throw Error(ErrorKind::InvalidArgument, "index count != degree");
  std::vector<int> idx(indices.begin(), indices.end());
  for (int i : idx) check_index(i);
  const int s = sort_with_sign(idx);
  if (s == 0) throw Error(ErrorKind::InvalidArgument, "repeated index in alternating form component");
  c_[static_cast<std::size_t>(form_position(mask_of(idx)))] += s * value;
}

double AltForm::max_abs() const {
  double m = 0.0;
  for (double v : components()) m = std::max(m, std::abs(v));
  return m;
}

AltForm& AltForm::operator+=(const AltForm& o) {
  if (o.degree_ != degree_) throw Error(ErrorKind::InvalidArgument, "adding forms of different degree");
  for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] += o[i];
  return *this;
}

AltForm& AltForm::operator-=(const AltForm& o) {
  if (o.degree_ != degree_) throw Error(ErrorKind::InvalidArgument, "subtracting forms of different degree");
  for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] -= o[i];
  return *this;
}

AltForm& AltForm::operator*=(double s) {
  for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] *= s;
  return *this;
}

// ---------------------------------------------------------------------------

MetricTensor MetricTensor::make(const Mat7& g, int orientation) {
  if (orientation != 1 && orientation != -1) throw Error(ErrorKind::InvalidArgument, "orientation must be +1 or -1");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::InvalidArgument, "metric is not symmetric");
  Eigen::LLT<Mat7> llt(g);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::InvalidArgument, "metric is not positive definite");
  MetricTensor m;
  m.g = g;
  m.vol = std::sqrt(g.determinant());
  m.orientation = orientation;
  return m;
}

G2Structure G2Structure::from_phi(const AltForm& phi) {
  G2Structure s;
  s.phi = phi;
  s.metric = metric_from_3form(phi);
  s.psi = hodge_star(phi, s.metric);
  return s;
}

AltForm wedge(const AltForm& a, const AltForm& b) {
  const int k = a.degree() + b.degree();
  if (k > kDim) throw Error(ErrorKind::InvalidArgument, "wedge degree overflow");
  AltForm r(k);
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    const unsigned ma = form_mask(a.degree(), i);
    for (int j = 0; j < b.size(); ++j) {
      if (b[j] == 0.0) continue;
      const unsigned mb = form_mask(b.degree(), j);
      if (ma & mb) continue;
      r[form_position(ma | mb)] += merge_sign(ma, mb) * a[i] * b[j];
    }
  }
  return r;
}

AltForm interior(const Vec7& x, const AltForm& a) {
  if (a.degree() == 0) throw Error(ErrorKind::InvalidArgument, "interior product of a 0-form");
  AltForm r(a.degree() - 1);
  for (int p = 0; p < a.size(); ++p) {
    if (a[p] == 0.0) continue;
    const unsigned m = form_mask(a.degree(), p);
    int slot = 0;
    for (unsigned rest = m; rest; rest &= rest - 1, ++slot) {
      const int i = std::countr_zero(rest);
      const double sign = (slot & 1) ? -1.0 : 1.0;
      r[form_position(m & ~(1u << i))] += sign * x[i] * a[p];
    }
  }
  return r;
}

double evaluate(const AltForm& a, std::span<const Vec7> vectors) {
  if (static_cast<int>(vectors.size()) != a.degree())
    throw Error(ErrorKind::InvalidArgument, "evaluate: vector count != degree");
  AltForm cur = a;
  for (const Vec7& v : vectors) cur = interior(v, cur);
  return cur[0];
}

double inner(const AltForm& a, const AltForm& b, const MetricTensor& metric) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::InvalidArgument, "inner product of forms of different degree");
  const int n = a.size();
  if (is_identity(metric.g)) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  const MinorMatrix G = exterior_power(metric.inverse(), a.degree());
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += a[i] * G(i, j) * b[j];
  return s;
}

AltForm hodge_star(const AltForm& a, const MetricTensor& metric) {
  const int k = a.degree();
  const int n = a.size();
  std::array<double, AltForm::kMaxComponents> raised{};
  if (is_identity(metric.g)) {
    for (int i = 0; i < n; ++i) raised[static_cast<std::size_t>(i)] = a[i];
  } else {
    const MinorMatrix G = exterior_power(metric.inverse(), k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) raised[static_cast<std::size_t>(i)] += G(i, j) * a[j];
  }
  AltForm r(kDim - k);
  const double scale = metric.orientation * metric.vol;
  for (int i = 0; i < n; ++i) {
    const unsigned m = form_mask(k, i);
    const unsigned comp = 127u & ~m;
    r[form_position(comp)] += scale * merge_sign(m, comp) * raised[static_cast<std::size_t>(i)];
  }
  return r;
}

Mat7 s_phi_coefficients(const AltForm& phi) { return s_phi_extended(phi).cast<double>(); }

MetricTensor metric_from_3form(const AltForm& phi) {
  const Mat7L b = s_phi_extended(phi);
  const long double det = b.determinant();
  if (!(std::fabs(det) > 0.0L) || !std::isfinite(det))
    throw Error(ErrorKind::NotG2Structure, "not a G2 structure: S_phi is degenerate");
  // det B = c^9 where S_phi = g (x) c e^{1..7}
  const long double c = std::copysign(std::pow(std::fabs(det), 1.0L / 9.0L), det);
  const Mat7 g = (b / c).cast<double>();
  Eigen::LLT<Mat7> llt(g);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotG2Structure, "not a G2 structure: S_phi is not definite");
  MetricTensor m;
  m.g = 0.5 * (g + g.transpose());
  m.vol = static_cast<double>(std::fabs(c));
  m.orientation = c > 0 ? 1 : -1;
  return m;
}

// ---------------------------------------------------------------------------

Split2 project2(const AltForm& beta, const G2Structure& s) {
  if (beta.degree() != 2) throw Error(ErrorKind::InvalidArgument, "project2 needs a 2-form");
  // L = *(phi ^ .) satisfies (L + 2)(L - 1) = 0 with L = -2 on Omega^2_7, +1 on Omega^2_14.
  const AltForm l = hodge_star(wedge(s.phi, beta), s.metric);
  return {(beta - l) * (1.0 / 3.0), (2.0 * beta + l) * (1.0 / 3.0)};
}

Split2 project2(const AltForm& beta, const AltForm& phi) { return project2(beta, G2Structure::from_phi(phi)); }

Split2 project2_span(const AltForm& beta, const G2Structure& s) {
  if (beta.degree() != 2) throw Error(ErrorKind::InvalidArgument, "project2 needs a 2-form");
  std::array<AltForm, kDim> span;
  Mat7 gram;
  Vec7 rhs;
  for (int i = 0; i < kDim; ++i) span[static_cast<std::size_t>(i)] = interior(Vec7::Unit(i), s.phi);
  for (int i = 0; i < kDim; ++i) {
    rhs[i] = inner(beta, span[static_cast<std::size_t>(i)], s.metric);
    for (int j = 0; j < kDim; ++j)
      gram(i, j) = inner(span[static_cast<std::size_t>(i)], span[static_cast<std::size_t>(j)], s.metric);
  }
  const Vec7 x = gram.ldlt().solve(rhs);
  AltForm p7 = interior(x, s.phi);
  return {p7, beta - p7};
}

Split3 project3(const AltForm& gamma, const G2Structure& s) {
  if (gamma.degree() != 3) throw Error(ErrorKind::InvalidArgument, "project3 needs a 3-form");
  const AltForm p1 = (inner(gamma, s.phi, s.metric) / inner(s.phi, s.phi, s.metric)) * s.phi;
  std::array<AltForm, kDim> span;
  for (int i = 0; i < kDim; ++i) span[static_cast<std::size_t>(i)] = interior(Vec7::Unit(i), s.psi);
  Mat7 gram;
  Vec7 rhs;
  for (int i = 0; i < kDim; ++i) {
    rhs[i] = inner(gamma, span[static_cast<std::size_t>(i)], s.metric);
    for (int j = 0; j < kDim; ++j)
      gram(i, j) = inner(span[static_cast<std::size_t>(i)], span[static_cast<std::size_t>(j)], s.metric);
  }
  const Vec7 x = gram.ldlt().solve(rhs);
  const AltForm p7 = interior(x, s.psi);
  return {p1, p7, gamma - p1 - p7};
}

Split3 project3(const AltForm& gamma, const AltForm& phi) { return project3(gamma, G2Structure::from_phi(phi)); }

AltForm sym2_to_3form(const Sym2& h, const AltForm& phi, const MetricTensor& metric) {
  if (phi.degree() != 3) throw Error(ErrorKind::InvalidArgument, "sym2_to_3form needs a 3-form");
  const Mat7 mixed = h.h * metric.inverse();  // h_ij g^{jl}
  AltForm r(3);
  for (int l = 0; l < kDim; ++l) {
    const AltForm contracted = interior(Vec7::Unit(l), phi);
    for (int i = 0; i < kDim; ++i) {
      if (mixed(i, l) == 0.0) continue;
      r += mixed(i, l) * wedge(AltForm::basis({i}), contracted);
    }
  }
  return r;
}

namespace {
using Dense3 = std::array<double, 343>;

Dense3 dense3(const AltForm& a) {
  Dense3 t{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        const std::array<int, 3> idx{i, j, k};
        t[static_cast<std::size_t>((i * 7 + j) * 7 + k)] = a.component(idx);
      }
  return t;
}
}  // namespace

Sym2 sym2_from_3form(const AltForm& gamma, const AltForm& phi, const MetricTensor& metric) {
  if (gamma.degree() != 3 || phi.degree() != 3) throw Error(ErrorKind::InvalidArgument, "sym2_from_3form needs 3-forms");
  const Dense3 g3 = dense3(gamma), p3 = dense3(phi);
  const Mat7 ginv = metric.inverse();
  // phi_j^{bc} = phi_{jde} g^{bd} g^{ce}
  Dense3 raised{};
  for (int j = 0; j < kDim; ++j)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c) {
        double s = 0.0;
        for (int d = 0; d < kDim; ++d)
          for (int e = 0; e < kDim; ++e) s += p3[static_cast<std::size_t>((j * 7 + d) * 7 + e)] * ginv(b, d) * ginv(c, e);
        raised[static_cast<std::size_t>((j * 7 + b) * 7 + c)] = s;
      }
  Mat7 h = Mat7::Zero();
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      double s = 0.0;
      for (int b = 0; b < kDim; ++b)
        for (int c = 0; c < kDim; ++c)
          s += g3[static_cast<std::size_t>((i * 7 + b) * 7 + c)] * raised[static_cast<std::size_t>((j * 7 + b) * 7 + c)];
      h(i, j) = 0.25 * s;
    }
  return {0.5 * (h + h.transpose())};
}

Vec7 vector_from_2form7(const AltForm& beta7, const G2Structure& s) {
  Mat7 gram;
  Vec7 rhs;
  std::array<AltForm, kDim> span;
  for (int i = 0; i < kDim; ++i) span[static_cast<std::size_t>(i)] = interior(Vec7::Unit(i), s.phi);
  for (int i = 0; i < kDim; ++i) {
    rhs[i] = inner(beta7, span[static_cast<std::size_t>(i)], s.metric);
    for (int j = 0; j < kDim; ++j)
      gram(i, j) = inner(span[static_cast<std::size_t>(i)], span[static_cast<std::size_t>(j)], s.metric);
  }
  return gram.ldlt().solve(rhs);
}

HighSplit decompose_high(const AltForm& a, const G2Structure& s) {
  HighSplit out;
  out.degree = a.degree();
  const AltForm dual = hodge_star(a, s.metric);
  if (a.degree() == 4) {
    const Split3 p = project3(dual, s);
    out.labels = {1, 7, 27};
    out.parts = {hodge_star(p.part1, s.metric), hodge_star(p.part7, s.metric), hodge_star(p.part27, s.metric)};
  } else if (a.degree() == 5) {
    const Split2 p = project2(dual, s);
    out.labels = {7, 14};
    out.parts = {hodge_star(p.part7, s.metric), hodge_star(p.part14, s.metric)};
  } else {
    throw Error(ErrorKind::InvalidArgument, "decompose_high expects a 4-form or a 5-form");
  }
  return out;
}

}  // namespace nearlyg2
