#include <doctest.h>

#include "nearlyg2/forms.hpp"
#include "nearlyg2/identities.hpp"

using namespace nearlyg2;

TEST_CASE("all exact identities hold for phi0") {
  const IdentityReport r = verify_identities();
  CHECK(r.all_pass());
  REQUIRE(r.checks.size() == 6);
  const char* names[] = {"cp1", "malcev", "cp2", "contractions1", "contractions2", "psi_psi"};
  const std::size_t tuples[] = {343, 196, 343, 2401, 16807, 49};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(r.checks[i].name == names[i]);
    CHECK(r.checks[i].tuples == tuples[i]);
    CHECK(r.checks[i].failures == 0);
    CHECK(r.checks[i].first_failure.empty());
  }
}

TEST_CASE("a corrupted table is caught and the first failing tuple named") {
  oct::StructureTable t = oct::kPhi0;
  t[0][1][2] = -t[0][1][2];
  const IdentityReport r = verify_identities(t);
  CHECK_FALSE(r.all_pass());
  CHECK(r.checks[0].failures > 0);
  CHECK(r.checks[0].first_failure == "(1,2,3)");
}

TEST_CASE("a consistently relabelled table still passes") {
  // swapping e_1 and e_2 everywhere flips the orientation but keeps a cross product
  oct::StructureTable t{};
  const int perm[7] = {1, 0, 2, 3, 4, 5, 6};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) t[perm[i]][perm[j]][perm[k]] = oct::kPhi0[i][j][k];
  CHECK(induced_orientation(t) == -induced_orientation(oct::kPhi0));
  CHECK(verify_identities(t).all_pass());
}

TEST_CASE("orientation induced by phi0 matches the metric extraction") {
  CHECK(induced_orientation(oct::kPhi0) == metric_from_3form(AltForm::phi0()).orientation);
}

TEST_CASE("dense psi table is the Hodge dual of phi0") {
  const std::vector<int> psi = psi_table(oct::kPhi0);
  REQUIRE(psi.size() == 2401);
  const G2Structure s = G2Structure::from_phi(AltForm::phi0());
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k)
        for (int l = 0; l < 7; ++l) {
          const std::array<int, 4> idx{i, j, k, l};
          CHECK(psi[static_cast<std::size_t>(((i * 7 + j) * 7 + k) * 7 + l)] == s.psi.component(idx));
        }
}
