#include "nearlyg2/identities.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

namespace nearlyg2 {
namespace {

using IVec7 = Vec7T<int>;

int delta(int a, int b) { return a == b ? 1 : 0; }

IVec7 unit(int i) { return IVec7::Unit(i); }

std::string tuple_string(std::initializer_list<int> idx) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (int i : idx) {
    os << (first ? "" : ",") << i + 1;
    first = false;
  }
  os << ')';
  return os.str();
}

void record(IdentityCheck& check, bool ok, const std::function<std::string()>& where) {
  ++check.tuples;
  if (ok) return;
  if (check.failures++ == 0) check.first_failure = where();
}

// sign of sorting the 7-tuple (sorted I) followed by (sorted complement)
int complement_sign(const std::array<int, 4>& comp) {
  std::array<bool, 7> in{};
  for (int c : comp) in[static_cast<std::size_t>(c)] = true;
  std::array<int, 7> seq{};
  int n = 0;
  for (int i = 0; i < 7; ++i)
    if (!in[static_cast<std::size_t>(i)]) seq[static_cast<std::size_t>(n++)] = i;
  for (int c : comp) seq[static_cast<std::size_t>(n++)] = c;
  int inv = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      if (seq[static_cast<std::size_t>(a)] > seq[static_cast<std::size_t>(b)]) ++inv;
  return (inv & 1) ? -1 : 1;
}

}  // namespace

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.failures == 0; });
}

int induced_orientation(const oct::StructureTable& table) {
  // sign of ((e_1 _| phi)^2 ^ phi)(e_1..e_7); g(e_1, e_1) > 0 forces the orientation to be the opposite sign
  std::array<int, 7> p{0, 1, 2, 3, 4, 5, 6};
  long sum = 0;
  do {
    int inv = 0;
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b)
        if (p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)]) ++inv;
    const long term = static_cast<long>(table[0][p[0]][p[1]]) * table[0][p[2]][p[3]] * table[p[4]][p[5]][p[6]];
    sum += (inv & 1) ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum < 0 ? 1 : -1;
}

std::vector<int> psi_table(const oct::StructureTable& table) {
  // (*phi)_{J} = orientation * sign(I, J) * phi_I with J the complement of I.
  const int kOrientation = induced_orientation(table);
  std::vector<int> psi(2401, 0);
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = b + 1; c < 7; ++c)
        for (int d = c + 1; d < 7; ++d) {
          const std::array<int, 4> comp{a, b, c, d};
          std::array<int, 3> rest{};
          int n = 0;
          for (int i = 0; i < 7; ++i)
            if (i != a && i != b && i != c && i != d) rest[static_cast<std::size_t>(n++)] = i;
          const int value = kOrientation * complement_sign(comp) * table[rest[0]][rest[1]][rest[2]];
          // scatter over all orderings of (a,b,c,d)
          std::array<int, 4> p = comp;
          std::sort(p.begin(), p.end());
          do {
            int inv = 0;
            for (int x = 0; x < 4; ++x)
              for (int y = x + 1; y < 4; ++y)
                if (p[static_cast<std::size_t>(x)] > p[static_cast<std::size_t>(y)]) ++inv;
            psi[static_cast<std::size_t>(((p[0] * 7 + p[1]) * 7 + p[2]) * 7 + p[3])] = (inv & 1) ? -value : value;
          } while (std::next_permutation(p.begin(), p.end()));
        }
  return psi;
}

IdentityReport verify_identities(const oct::StructureTable& t) {
  IdentityReport report;
  const std::vector<int> psi = psi_table(t);
  auto P = [&](int i, int j, int k, int l) { return psi[static_cast<std::size_t>(((i * 7 + j) * 7 + k) * 7 + l)]; };
  auto F = [&](int i, int j, int k) { return t[i][j][k]; };
  auto B = [&](const IVec7& u, const IVec7& v) { return oct::cross2<int>(u, v, t); };

  {
    IdentityCheck c{"cp1", 0, 0, {}};
    for (int u = 0; u < 7; ++u)
      for (int v = 0; v < 7; ++v)
        for (int w = 0; w < 7; ++w)
          record(c, unit(u).dot(B(unit(v), unit(w))) == B(unit(u), unit(v)).dot(unit(w)),
                 [&] { return tuple_string({u, v, w}); });
    report.checks.push_back(c);
  }
  {
    // u over basis vectors and sums of two basis vectors, v over the basis
    IdentityCheck c{"malcev", 0, 0, {}};
    std::vector<std::pair<IVec7, std::string>> us;
    for (int a = 0; a < 7; ++a) us.emplace_back(unit(a), tuple_string({a}));
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b) us.emplace_back(IVec7(unit(a) + unit(b)), tuple_string({a, b}));
    for (const auto& [u, name] : us)
      for (int v = 0; v < 7; ++v) {
        const IVec7 vv = unit(v);
        const IVec7 lhs = B(u, B(u, vv));
        const IVec7 rhs = -u.dot(u) * vv + u.dot(vv) * u;
        record(c, lhs == rhs, [&, v = v] { return "u=e" + name + " v=e" + tuple_string({v}); });
      }
    report.checks.push_back(c);
  }
  {
    IdentityCheck c{"cp2", 0, 0, {}};
    for (int u = 0; u < 7; ++u)
      for (int v = 0; v < 7; ++v)
        for (int w = 0; w < 7; ++w) {
          const IVec7 lhs = B(unit(u), B(unit(v), unit(w))) + B(unit(v), B(unit(u), unit(w)));
          const IVec7 rhs = delta(u, w) * unit(v) + delta(v, w) * unit(u) - 2 * delta(u, v) * unit(w);
          record(c, lhs == rhs, [&] { return tuple_string({u, v, w}); });
        }
    report.checks.push_back(c);
  }
  {
    IdentityCheck c{"contractions1", 0, 0, {}};
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int a = 0; a < 7; ++a)
          for (int b = 0; b < 7; ++b) {
            int lhs = 0;
            for (int k = 0; k < 7; ++k) lhs += F(i, j, k) * F(a, b, k);
            const int rhs = delta(i, a) * delta(j, b) - delta(i, b) * delta(j, a) - P(i, j, a, b);
            record(c, lhs == rhs, [&] { return tuple_string({i, j, a, b}); });
          }
    report.checks.push_back(c);
  }
  {
    IdentityCheck c{"contractions2", 0, 0, {}};
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int a = 0; a < 7; ++a)
          for (int b = 0; b < 7; ++b)
            for (int cc = 0; cc < 7; ++cc) {
              int lhs = 0;
              for (int k = 0; k < 7; ++k) lhs += F(i, j, k) * P(a, b, cc, k);
              const int rhs = delta(i, a) * F(j, b, cc) + delta(i, b) * F(a, j, cc) + delta(i, cc) * F(a, b, j) -
                              delta(j, a) * F(i, b, cc) - delta(j, b) * F(a, i, cc) - delta(j, cc) * F(a, b, i);
              record(c, lhs == rhs, [&] { return tuple_string({i, j, a, b, cc}); });
            }
    report.checks.push_back(c);
  }
  {
    IdentityCheck c{"psi_psi", 0, 0, {}};
    for (int i = 0; i < 7; ++i)
      for (int a = 0; a < 7; ++a) {
        int lhs = 0;
        for (int j = 0; j < 7; ++j)
          for (int k = 0; k < 7; ++k)
            for (int l = 0; l < 7; ++l) lhs += P(i, j, k, l) * P(a, j, k, l);
        record(c, lhs == 24 * delta(i, a), [&] { return tuple_string({i, a}); });
      }
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace nearlyg2
