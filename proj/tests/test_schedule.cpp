#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nfvq/error.hpp"
#include "nfvq/schedule.hpp"
#include "nfvq/schedule_io.hpp"
#include "support.hpp"

using namespace nfvq;

namespace {

constexpr std::size_t SC1 = 0, SC2 = 1, SC3 = 2;
constexpr std::size_t VM1 = 0, VM2 = 1, VM3 = 2;

bool has(const FeasibilityReport& r, Constraint c, int vm = -1, int slot = -1) {
   for (const auto& v : r.violations) {
      if (v.constraint == c && (vm < 0 || v.vm == vm) && (slot < 0 || v.slot == slot)) {
         return true;
      }
   }
   return false;
}

// One chain, one step, one VM.
Instance single(double workload, double rate = 1.0) {
   return Instance({{1, {1}, rate}}, {{1, {{1, workload}}}}, 1.0);
}

}  // namespace

TEST_CASE("narrated three-chain schedule") {
   const Instance in = fig1_fixture();
   const Schedule s = fig1_narrated_schedule(in);
   CHECK(s.horizon() == 11);
   CHECK(check_feasibility(in, s).feasible());
   CHECK(chain_delay(in, s, SC1) == 10.0);
   CHECK(chain_delay(in, s, SC2) == 4.0);
   CHECK(chain_delay(in, s, SC3) == 6.0);
   CHECK(total_delay(in, s) == 20.0);
   CHECK(longest_delay(in, s) == 10.0);
   // Busy slots by hand: VM1 1-6, VM2 1 and 3-6, VM3 1-4 and 7-10.
   CHECK(avg_vm_busy_time(in, s) == doctest::Approx((6.0 + 5.0 + 8.0) / 3.0).epsilon(1e-12));

   const Schedule loaded =
        load_schedule(in, save_schedule(s));
   CHECK(loaded == s);
}

TEST_CASE("shipped narrated schedule file") {
   const Instance in = fig1_fixture();
   std::ifstream f(NFVQ_DATA_DIR "/fig1_narrated_schedule.json");
   std::stringstream ss;
   ss << f.rdbuf();
   CHECK(load_schedule(in, ss.str()) == fig1_narrated_schedule(in));
}

TEST_CASE("empty schedule breaks the one-VM rule everywhere") {
   const Instance in = fig1_fixture();
   const Schedule s(in, 11);
   const auto r = check_feasibility(in, s);
   CHECK_FALSE(r.feasible());
   CHECK(r.count(Constraint::Eq3) == 9);
   CHECK_THROWS_AS((void)chain_delay(in, s, SC1), MalformedScheduleError);
}

TEST_CASE("overlap on a VM is reported at the shared slot") {
   const Instance in = fig1_fixture();
   Schedule s(in, 11);
   // Narrated plan with SC2 f4 moved from slot 3 to slot 2.
   place_step(in, s, SC1, 0, VM1, 1);
   place_step(in, s, SC1, 1, VM1, 4);
   place_step(in, s, SC1, 2, VM3, 7);
   place_step(in, s, SC2, 0, VM2, 1);
   place_step(in, s, SC2, 1, VM3, 2);
   place_step(in, s, SC2, 2, VM3, 4);
   place_step(in, s, SC3, 0, VM3, 1);
   place_step(in, s, SC3, 1, VM2, 3);
   place_step(in, s, SC3, 2, VM2, 5);
   const auto r = check_feasibility(in, s);
   CHECK_FALSE(r.feasible());
   CHECK(has(r, Constraint::Eq5, 3, 2));
   CHECK(r.violations.size() == 1);
}

TEST_CASE("each constraint family is detected") {
   const Instance in(
        {{1, {1}, 1.0}, {2, {1}, 1.0}},
        {{1, {{1, 2.0}, {1, 1.0}}}}, 1.0);
   auto base = [&] {
      Schedule s(in, 6);
      place_step(in, s, 0, 0, 0, 1);  // slots 1-2 on VM1, finish at 3
      place_step(in, s, 0, 1, 1, 3);  // slot 3 on VM2, finish at 4
      return s;
   };
   REQUIRE(check_feasibility(in, base()).feasible());
   const std::size_t a00 = base().at(0, 0, 0);
   const std::size_t a01 = base().at(0, 0, 1);
   const std::size_t a11 = base().at(0, 1, 1);

   SUBCASE("Eq3 two VMs chosen") {
      Schedule s = base();
      s.set_x(a01, true);
      CHECK(has(check_feasibility(in, s), Constraint::Eq3));
   }
   SUBCASE("Eq6 busy on an unchosen VM") {
      Schedule s = base();
      s.set_y(a01, 5, true);
      CHECK(has(check_feasibility(in, s), Constraint::Eq6, 2, 5));
   }
   SUBCASE("Eq7 wrong busy count") {
      Schedule s = base();
      s.set_y(a00, 3, false);
      s.set_y(a00, 2, false);
      CHECK(has(check_feasibility(in, s), Constraint::Eq7));
   }
   SUBCASE("Eq8 start and finish in one slot") {
      Schedule s = base();
      s.set_p(a11, 4, false);
      s.set_p(a11, 3, true);  // z and p both at 3
      CHECK(has(check_feasibility(in, s), Constraint::Eq8, 2, 3));
   }
   SUBCASE("Eq9 finish marker misplaced") {
      Schedule s = base();
      s.set_p(a00, 3, false);
      s.set_p(a00, 4, true);
      const auto r = check_feasibility(in, s);
      CHECK(has(r, Constraint::Eq9, 1, 3));
      CHECK(has(r, Constraint::Eq9, 1, 4));
   }
   SUBCASE("Eq10 busy run split") {
      Schedule s(in, 6);
      place_step(in, s, 0, 1, 1, 4);
      const std::size_t a = s.at(0, 0, 0);
      // Two busy slots with a gap and a restart: transitions balance but
      // the run is not contiguous from the single start.
      s.set_x(a, true);
      s.set_z(a, 1, true);
      s.set_y(a, 1, true);
      s.set_p(a, 2, true);
      s.set_y(a, 3, true);
      const auto r = check_feasibility(in, s);
      CHECK(has(r, Constraint::Eq10, 1, 2));
   }
   SUBCASE("Eq11 next step starts too early") {
      Schedule s(in, 6);
      place_step(in, s, 0, 0, 0, 2);  // finish at 4
      place_step(in, s, 0, 1, 1, 3);
      CHECK(has(check_feasibility(in, s), Constraint::Eq11, 2, 3));
   }
   SUBCASE("Eq13 missing finish") {
      Schedule s = base();
      s.set_p(a11, 4, false);
      CHECK(has(check_feasibility(in, s), Constraint::Eq13));
      CHECK_THROWS_AS((void)chain_delay(in, s, 0), MalformedScheduleError);
   }
   SUBCASE("Eq4 start count differs from x") {
      Schedule s = base();
      s.set_z(a01, 2, true);
      CHECK(has(check_feasibility(in, s), Constraint::Eq4, 2));
   }
}

TEST_CASE("indexing errors") {
   const Instance in = fig1_fixture();
   Schedule s(in, 11);
   CHECK_THROWS_AS((void)s.y(0, 0), IndexError);
   CHECK_THROWS_AS((void)s.y(0, 12), IndexError);
   CHECK_THROWS_AS((void)s.at(SC1, 2, VM1), CapabilityError);
   CHECK_THROWS_AS(place_step(in, s, SC1, 2, VM3, 8), IndexError);  // 8 + 4 > 11
   CHECK_NOTHROW(place_step(in, s, SC1, 2, VM3, 7));
   CHECK_THROWS_AS((void)check_feasibility(fig1_fixture(), Schedule(single(1.0), 3)),
                   ShapeError);
}

TEST_CASE("delay and busy-time edge cases") {
   const Instance one = single(1.0);
   Schedule s(one, 3);
   place_step(one, s, 0, 0, 0, 1);
   CHECK(chain_delay(one, s, 0) == 1.0);
   CHECK(total_delay(one, s) == chain_delay(one, s, 0));
   CHECK(longest_delay(one, s) == chain_delay(one, s, 0));
   CHECK(avg_vm_busy_time(one, Schedule(one, 3)) == 0.0);

   // Two identical chains on dedicated VMs.
   const Instance twin({{1, {1}, 1.0}, {2, {2}, 1.0}},
                       {{1, {{1, 2.0}}}, {2, {{2, 2.0}}}}, 1.0);
   Schedule t(twin, 4);
   place_step(twin, t, 0, 0, 0, 1);
   place_step(twin, t, 1, 0, 1, 1);
   CHECK(total_delay(twin, t) == 2 * chain_delay(twin, t, 0));
   CHECK(avg_vm_busy_time(twin, t) == 2.0);

   // Delays 4 and 6, eight busy slots over two VMs.
   const Instance pair({{1, {1}, 1.0}, {2, {2}, 1.0}},
                       {{1, {{1, 4.0}}}, {2, {{2, 4.0}}}}, 1.0);
   Schedule q(pair, 8);
   place_step(pair, q, 0, 0, 0, 1);  // finish 5 -> 4 s
   place_step(pair, q, 1, 0, 1, 3);  // finish 7 -> 6 s
   CHECK(chain_delay(pair, q, 0) == 4.0);
   CHECK(chain_delay(pair, q, 1) == 6.0);
   CHECK(longest_delay(pair, q) == 6.0);
   CHECK(avg_vm_busy_time(pair, q) == 4.0);

   const Instance half({{1, {1}, 1.0}}, {{1, {{1, 1.0}}}}, 0.5);
   Schedule h(half, 4);
   place_step(half, h, 0, 0, 0, 1);  // two half-second slots
   CHECK(chain_delay(half, h, 0) == 1.0);
   CHECK(avg_vm_busy_time(half, h) == 1.0);
}

TEST_CASE("canonical slacks") {
   const Instance in = fig1_fixture();
   const Schedule s = fig1_narrated_schedule(in);
   const SlackAssignment sl = canonical_slacks(in, s);
   const int H = s.horizon();
   const std::size_t a = s.at(SC1, 0, VM1);
   // x = 1: r1 = 0 on busy slots, 1 on idle ones.
   CHECK(sl.r1[a * H + 0] == 0);
   CHECK(sl.r1[a * H + 5] == 1);
   // Unchosen VM: x = y = 0.
   const std::size_t b = s.at(SC1, 0, VM2);
   CHECK(sl.r1[b * H + 0] == 0);
   for (auto v : sl.r1) CHECK(v <= 1);
   for (auto v : sl.r2) CHECK(v <= 1);
   for (auto v : sl.rseq) CHECK(v <= 1);

   Schedule broken = s;
   broken.set_y(b, 1, true);  // y = 1 with x = 0 makes r1 = -1
   CHECK_THROWS_AS((void)canonical_slacks(in, broken), InfeasibleScheduleError);
}

TEST_CASE("gantt rows") {
   const Instance in = fig1_fixture();
   const Gantt g = gantt(in, fig1_narrated_schedule(in));
   const auto& vm3 = g.rows[VM3];
   const std::vector<std::optional<StepRef>> expect = {
        StepRef{SC3, 0}, StepRef{SC3, 0}, StepRef{SC2, 1}, StepRef{SC2, 2},
        std::nullopt,    std::nullopt,    StepRef{SC1, 2}, StepRef{SC1, 2},
        StepRef{SC1, 2}, StepRef{SC1, 2}, std::nullopt};
   CHECK(vm3 == expect);
   const std::string text = render_gantt(in, g);
   CHECK(text.find("VM3") != std::string::npos);
   CHECK(text.find("SC2-f4") != std::string::npos);

   const Instance none({{1, {1}, 1.0}, {2, {1}, 1.0}}, {}, 1.0);
   const Gantt idle = gantt(none, Schedule(none, 3));
   for (const auto& row : idle.rows) {
      CHECK(row == std::vector<std::optional<StepRef>>(3));
   }

   const Instance one = single(2.0);
   Schedule s(one, 3);
   place_step(one, s, 0, 0, 0, 1);
   const Gantt g1 = gantt(one, s);
   CHECK(g1.rows[0] == std::vector<std::optional<StepRef>>{StepRef{0, 0}, StepRef{0, 0},
                                                            std::nullopt});

   CHECK_THROWS_AS((void)gantt(in, Schedule(in, 11)), InfeasibleScheduleError);
}

TEST_CASE("schedule file errors") {
   const Instance in = fig1_fixture();
   CHECK_THROWS_AS((void)load_schedule(in, "nope"), ParseError);
   CHECK_THROWS_AS((void)load_schedule(in, R"({"variables": []})"), ParseError);
   CHECK_THROWS_AS(
        (void)load_schedule(in, R"({"t_max": 5, "variables": [{"var": "q", "i": 1, "j": 1, "m": 1}]})"),
        ParseError);
   CHECK_THROWS_AS(
        (void)load_schedule(in, R"({"t_max": 5, "variables": [{"var": "x", "i": 1, "j": 3, "m": 1}]})"),
        CapabilityError);
   CHECK_THROWS_AS(
        (void)load_schedule(in, R"({"t_max": 5, "variables": [{"var": "y", "i": 1, "j": 1, "m": 1, "t": 6}]})"),
        IndexError);
   CHECK_THROWS_AS(
        (void)load_schedule(in, R"({"t_max": 5, "variables": [{"var": "x", "i": 4, "j": 1, "m": 1}]})"),
        IndexError);
}

TEST_CASE("random feasible schedules: structure and single-bit fragility") {
   std::mt19937_64 rng(20240611);
   int checked = 0;
   while (checked < 200) {
      const Instance in = testing::random_instance(rng);
      const int H = 4 + static_cast<int>(rng() % 9);
      const auto placed = testing::random_placements(in, H, rng);
      if (!placed) continue;
      const Schedule s = testing::to_schedule(in, H, *placed);
      const auto report = check_feasibility(in, s);
      REQUIRE(report.feasible());
      CHECK(total_delay(in, s) == testing::placed_total_delay(in, *placed));

      for (const auto& p : *placed) {
         const std::size_t a = s.at(p.chain, p.step, p.vm);
         CHECK(s.x(a));
         CHECK(s.z(a, p.start));
         CHECK(s.p(a, p.start + p.slots));
         for (int t = 1; t <= H; ++t) {
            CHECK(s.y(a, t) == (t >= p.start && t < p.start + p.slots));
         }
      }
      // Nothing runs in the last slot: its finish marker would fall outside.
      for (std::size_t a = 0; a < s.table().size(); ++a) CHECK_FALSE(s.y(a, H));

      const SlackAssignment sl = canonical_slacks(in, s);
      for (auto v : sl.r2) CHECK(v <= 1);

      // Any single flip of a placement-built schedule is infeasible.
      const std::size_t a = rng() % s.table().size();
      const int t = 1 + static_cast<int>(rng() % static_cast<unsigned>(H));
      Schedule f = s;
      switch (rng() % 4) {
         case 0: f.set_x(a, !f.x(a)); break;
         case 1: f.set_y(a, t, !f.y(a, t)); break;
         case 2: f.set_z(a, t, !f.z(a, t)); break;
         default: f.set_p(a, t, !f.p(a, t)); break;
      }
      CHECK_FALSE(check_feasibility(in, f).feasible());
      ++checked;
   }
}
