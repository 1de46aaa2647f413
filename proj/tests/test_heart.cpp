#include "doctest.h"
#include "torstab/error.hpp"
#include "torstab/heart.hpp"

using namespace torstab;

TEST_CASE("iterated tilts agree with the heart description") {
  for (int d = 3; d <= 5; ++d) {
    auto corpus = enumerate_objects(d, 4, 2);
    for (int p = 0; p < d; ++p) {
      auto h = iterated_heart(p, d);
      int mismatches = 0;
      for (const auto& e : corpus)
        if (h.contains(e) != heart_membership(e, p, d)) ++mismatches;
      CHECK_MESSAGE(mismatches == 0, "d=" << d << " p=" << p);
    }
  }
}

TEST_CASE("hrs_tilt examples") {
  int d = 4;
  auto corpus = enumerate_objects(d, 4, 2);
  auto coh1 = hrs_tilt(standard_heart(d), torsion_torsionfree_pair(), d);
  auto coh2 = hrs_tilt(coh1, torsion_shifted_locally_free_pair(1), d);
  auto same = hrs_tilt(coh1, trivial_pair(), d);
  for (const auto& e : corpus) {
    CHECK(coh1.contains(e) == heart_membership(e, 1, d));
    CHECK(coh2.contains(e) == heart_membership(e, 2, d));
    CHECK(same.contains(e) == heart_membership(e, 1, d));
  }
}

TEST_CASE("invalid torsion pair is rejected with a witness") {
  // (torsion-free, torsion) has maps from the first class to the second
  TorsionPairSpec flipped;
  flipped.name = "flipped";
  flipped.in_torsion = [](const FormalObject& e) {
    auto s = e.cohomology(0);
    return e.graded().size() == 1 && s && s->is_torsion_free();
  };
  flipped.in_free = [](const FormalObject& e) {
    auto s = e.cohomology(0);
    return e.graded().size() == 1 && s && s->is_torsion();
  };
  flipped.decompose = [](const FormalObject& e) -> std::pair<FormalObject, FormalObject> {
    auto s = *e.cohomology(0);
    FormalObject t, f;
    if (auto x = s.free_part()) t = FormalObject::of(*x);
    if (auto x = s.torsion_part()) f = FormalObject::of(*x);
    return {t, f};
  };
  try {
    hrs_tilt(standard_heart(4), flipped, 4);
    FAIL("expected InvalidTorsionPair");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidTorsionPair);
    CHECK(std::string(e.what()).find("->") != std::string::npos);
  }
}

TEST_CASE("hom_witness basics") {
  auto sky = FormalObject::of(FormalSheaf::skyscraper(0));
  auto line = FormalObject::of(FormalSheaf::locally_free(1));
  CHECK(hom_witness(line, sky, 4).has_value());
  CHECK_FALSE(hom_witness(sky, line, 4).has_value());
  CHECK(hom_witness(sky, sky, 4).has_value());
  CHECK_FALSE(hom_witness(sky, FormalObject::of(FormalSheaf::skyscraper(1)), 4).has_value());
}
