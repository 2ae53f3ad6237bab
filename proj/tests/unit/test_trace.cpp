#include <stdexcept>

#include "doctest.h"
#include "shortfair/demand.hpp"
#include "shortfair/trace.hpp"
#include "shortfair/virtual_users.hpp"

using namespace shortfair;

TEST_SUITE_BEGIN("trace");

TEST_CASE("recording fills the window and flags completion") {
  ScheduleTrace tr(3);
  CHECK(tr.t() == 0);
  CHECK_FALSE(tr.complete());
  tr.record(1, 2.0);
  tr.record(0, 0.0);
  tr.record(2, 1.5);
  CHECK(tr.t() == 3);
  CHECK(tr.complete());
  CHECK_THROWS_AS(tr.record(1, 1.0), std::out_of_range);
  CHECK_THROWS_AS(ScheduleTrace(0), std::invalid_argument);
}

TEST_CASE("counts and shares follow the chosen subsets") {
  auto cat = VirtualUserCatalog::enumerate(2, 2);
  // catalog: -, {1}, {2}, {1,2}
  ScheduleTrace tr(4);
  tr.record(cat.index_of(0b01), 1.0);   // user 1
  tr.record(cat.index_of(0b11), 3.0);   // both
  tr.record(cat.index_of(0b10), 2.0);   // user 2
  tr.record(cat.index_of(0b00), 0.0);   // idle

  auto sv = accumulate_counts(tr, cat, 4);
  CHECK(sv.counts[0] == 2);
  CHECK(sv.counts[1] == 2);
  CHECK(sv.share(0) == Rational(1, 2));
  CHECK(sv.share(1) == Rational(1, 2));

  auto partial = accumulate_counts(tr, cat, 2);
  CHECK(partial.counts[0] == 2);
  CHECK(partial.counts[1] == 1);
  CHECK(temporal_share(tr, cat, 1, 2) == Rational(1, 2));
  CHECK(temporal_share(tr, cat, 0, 3) == Rational(2, 3));

  ShareVector empty{{0, 0}, 0};
  CHECK_THROWS_AS(empty.share(0), std::domain_error);
}

TEST_CASE("fairness check reports every out-of-band user") {
  auto cat = VirtualUserCatalog::enumerate(2, 1);
  TemporalDemand demand({Rational(1, 4), Rational(1, 4)},
                        {Rational(3, 4), Rational(3, 4)});
  ScheduleTrace tr(4);
  int u1 = cat.index_of(0b01);
  int u2 = cat.index_of(0b10);
  tr.record(u2, 2.0);
  tr.record(u2, 2.0);
  tr.record(u2, 2.0);
  tr.record(u1, 1.0);
  auto rep = check_fairness(tr, cat, demand);
  CHECK(rep.ok);
  CHECK(rep.violations.empty());

  ScheduleTrace bad(4);
  bad.record(u2, 2.0);
  bad.record(u2, 2.0);
  bad.record(u2, 2.0);
  bad.record(u2, 2.0);
  auto rep2 = check_fairness(bad, cat, demand);
  CHECK_FALSE(rep2.ok);
  REQUIRE(rep2.violations.size() == 2);
  CHECK(rep2.violations[0].user == 0);  // share 0 < 1/4
  CHECK(rep2.violations[0].share == Rational(0));
  CHECK(rep2.violations[1].user == 1);  // share 1 > 3/4
  CHECK(rep2.violations[1].share == Rational(1));
}

TEST_CASE("fairness check rejects incomplete traces") {
  auto cat = VirtualUserCatalog::enumerate(2, 1);
  TemporalDemand demand = TemporalDemand::uniform(2, Rational(0), Rational(1));
  ScheduleTrace tr(3);
  tr.record(1, 1.0);
  CHECK_THROWS_AS(check_fairness(tr, cat, demand), std::invalid_argument);
}

TEST_CASE("average utility is the mean of realized values") {
  ScheduleTrace tr(4);
  tr.record(0, 0.0);
  tr.record(1, 2.0);
  tr.record(1, 4.0);
  tr.record(1, 6.0);
  CHECK(average_utility(tr, 4) == doctest::Approx(3.0));
  CHECK(average_utility(tr, 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(average_utility(tr, 0), std::domain_error);
  CHECK_THROWS_AS(average_utility(tr, 5), std::out_of_range);
}

TEST_SUITE_END();
