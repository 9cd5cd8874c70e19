#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dtunnel/amplitudes.hpp"
#include "dtunnel/errors.hpp"
#include "dtunnel/oracle.hpp"
#include "dtunnel/times.hpp"
#include "test_helpers.hpp"

using namespace dtunnel;
using dtunnel::testing::rel_diff;

namespace {

BarrierSystem sys(double V0, double a, double l, double m = 1.0) { return {m, V0, a, l}; }

// Opaque constants at E = 1.8, V0 = 1.5 from 2 alpha/(1 + alpha^2) m/q^2 etc.
constexpr double kOpaqueTauP = 1.4708710135363802;
constexpr double kOpaqueTauD = 1.0459527207369815;
constexpr double kOpaqueTauI = 0.42491829279939874;

double qa_width(double qa) { return qa / decay_q(1.8, sys(1.5, 1.0, 1.0)); }

}  // namespace

TEST_CASE("phase time against high-precision values") {
  CHECK(rel_diff(phase_time_closed(1.8, sys(1.5, 0.7, 0.7)), 2.8732738923905551) < 1e-13);
  CHECK(rel_diff(self_interference_delay(1.8, sys(1.5, 0.7, 0.7)), 0.32971750258415146) < 1e-13);
  CHECK(rel_diff(dwell_time(1.8, sys(1.5, 0.7, 0.7)), 2.5435563898064037) < 1e-13);
  CHECK(rel_diff(phase_time_closed(1.46, sys(2.19, 0.7, 0.7)), 1.1976569800286065) < 1e-13);
  CHECK(rel_diff(phase_time_closed(1.01, sys(0.018, 0.7, 0.7)), 23.707122655521806) < 1e-12);
  CHECK(rel_diff(self_interference_delay(1.01, sys(0.018, 0.7, 0.7)), 8.6420319123632538) < 1e-12);
  CHECK(rel_diff(phase_time_closed(2.5, sys(2.0, 1.3, 0.4, 1.7)), 1.0487207529752119) < 1e-13);
  CHECK(rel_diff(self_interference_delay(2.5, sys(2.0, 1.3, 0.4, 1.7)), 0.4473672108194013) < 1e-13);
}

TEST_CASE("closed phase time matches the numeric derivative") {
  struct Case {
    double E, V0;
  };
  for (Case c : {Case{1.8, 1.5}, Case{1.46, 2.19}, Case{1.01, 0.018}}) {
    for (double a : {0.05, 0.7, 2.0, 6.0}) {
      const BarrierSystem s = sys(c.V0, a, 0.7);
      CHECK(rel_diff(phase_time_closed(c.E, s), oracle::numeric_phase_time(c.E, s)) < 1e-6);
    }
  }
}

TEST_CASE("single-barrier limit of the phase time") {
  for (double a : {0.2, 0.7, 3.0}) {
    const double closed = phase_time_closed(1.8, sys(1.5, a, 0.0));
    const double width = 2.0 * a;
    const auto phase = [&](double e) {
      const double k = std::sqrt(e * e - 1.0);
      return std::arg(oracle::single_barrier_transmission(e, 1.0, 1.5, width)) + k * width;
    };
    const double centre = phase(1.8);
    const double numeric =
        richardson_derivative([&](double e) { return continue_phase(phase(e), centre); }, 1.8);
    CHECK(rel_diff(closed, numeric) < 1e-8);
  }
}

TEST_CASE("opaque limits") {
  const TimeReport op = opaque_limit_times(1.8, sys(1.5, 0.7, 0.7));
  CHECK(op.tau_p == doctest::Approx(1.47087).epsilon(1e-5));
  CHECK(op.tau_d == doctest::Approx(1.04596).epsilon(1e-5));
  CHECK(op.tau_i == doctest::Approx(0.42492).epsilon(1e-5));
  CHECK(rel_diff(op.tau_p, kOpaqueTauP) < 1e-14);
  CHECK(rel_diff(op.tau_d + op.tau_i, op.tau_p) < 1e-15);

  // Independent of geometry.
  const TimeReport other = opaque_limit_times(1.8, sys(1.5, 9.0, 0.1));
  CHECK(other.tau_p == op.tau_p);
  CHECK(other.tau_d == op.tau_d);

  const BarrierSystem opaque25 = sys(1.5, qa_width(25.0), 0.7);
  CHECK(rel_diff(phase_time_closed(1.8, opaque25), kOpaqueTauP) < 1e-6);
  CHECK(rel_diff(self_interference_delay(1.8, opaque25), kOpaqueTauI) < 1e-6);
  CHECK(rel_diff(dwell_time(1.8, opaque25), kOpaqueTauD) < 1e-6);

  const BarrierSystem opaque1000 = sys(1.5, qa_width(1000.0), 0.7);
  const double tp = phase_time_closed(1.8, opaque1000);
  CHECK(std::isfinite(tp));
  CHECK(rel_diff(tp, kOpaqueTauP) < 1e-10);
  CHECK(rel_diff(dwell_time(1.8, opaque1000), kOpaqueTauD) < 1e-10);
}

TEST_CASE("self-interference delay") {
  SUBCASE("empty barriers") {
    CHECK(self_interference_delay(1.8, sys(1.5, 0.0, 0.7)) == 0.0);
    const double k = wavenumber_k(1.8, sys(1.5, 0.0, 0.7));
    CHECK(rel_diff(phase_time_closed(1.8, sys(1.5, 0.0, 0.7)), 0.7 * 1.8 / k) < 1e-14);
  }

  SUBCASE("vanishes at a resonance") {
    const auto f = [](double l) { return std::norm(reflection(1.8, sys(1.5, 0.7, l))); };
    const MinimizeResult m = golden_section_minimize(f, 1.1, 1.25, 1e-11);
    const BarrierSystem s = sys(1.5, 0.7, m.x);
    const TimeReport t = time_report(1.8, s);
    CHECK(std::abs(t.tau_i) < 1e-6 * t.tau_p);
    CHECK(rel_diff(t.tau_p, t.tau_d) < 1e-6);
  }

  SUBCASE("two forms agree") {
    dtunnel::testing::EvanescentSampler sample(11, 30.0, 10.0);
    for (int n = 0; n < 5000; ++n) {
      const auto pt = sample();
      const DelayForms f = self_interference_delay_forms(pt.E, pt.system);
      REQUIRE(std::abs(f.from_reflection - f.from_terms) <= f.tolerance);
      REQUIRE(f.from_terms == self_interference_delay_from_terms(pt.E, pt.system));
    }
  }

  SUBCASE("ill-conditioned terms form near an h3 minimum") {
    // h2, h3 ~ 1e-9 while their terms are O(0.1); reference value from 60-digit arithmetic.
    const BarrierSystem s{1.0, 2.6727156921132025, 19.090705952298702, 6.704603950836983};
    const double E = 2.4211200507945216;
    const DelayForms f = self_interference_delay_forms(E, s);
    CHECK(rel_diff(f.from_terms, f.from_reflection) > 1e-9);
    CHECK(std::abs(f.from_reflection - f.from_terms) <= f.tolerance);
    CHECK(rel_diff(self_interference_delay(E, s), 0.16422825220140951501) < 1e-11);
  }
}

TEST_CASE("phase-time terms are well formed") {
  dtunnel::testing::EvanescentSampler sample(12, 1000.0, 10.0);
  for (int n = 0; n < 2000; ++n) {
    const auto pt = sample();
    const PhaseTimeTerms t = phase_time_terms(pt.E, pt.system);
    CHECK(t.Gamma * t.Gamma + t.Delta * t.Delta > 0.0);
    CHECK(t.h3 > 0.0);
    CHECK(std::isfinite(t.h1));
    CHECK(std::isfinite(t.h2));
    CHECK(dwell_time(pt.E, pt.system) > 0.0);
  }
}

TEST_CASE("dwell time equals the integrated density") {
  const BarrierSystem s = sys(1.5, 0.7, 0.7);
  const oracle::DwellResult d = oracle::dwell_integral(1.8, s);
  CHECK(rel_diff(d.value, dwell_time(1.8, s)) < 1e-6);

  const BarrierSystem opaque = sys(1.5, qa_width(25.0), 0.7);
  CHECK(oracle::dwell_integral(1.8, opaque).value == doctest::Approx(1.04596).epsilon(1e-5));

  // No barriers: only the gap remains, crossed at the free group velocity.
  const BarrierSystem gap = sys(1.5, 0.0, 0.7);
  const double k = wavenumber_k(1.8, gap);
  CHECK(rel_diff(oracle::dwell_integral(1.8, gap).value, 0.7 * 1.8 / k) < 1e-9);
  CHECK(dwell_time(1.8, gap) == doctest::Approx(0.7 * 1.8 / k).epsilon(1e-14));
}

TEST_CASE("reference transit times") {
  const BarrierSystem s = sys(1.5, 0.7, 0.7);
  const TimeReport r = time_report(1.8, s);
  CHECK(r.t_light == doctest::Approx(2.1));
  CHECK(r.t_free == doctest::Approx(2.1 * 1.8 / std::sqrt(1.8 * 1.8 - 1.0)));
  CHECK(r.tau_d == r.tau_p - r.tau_i);
}

TEST_CASE("saturation with barrier width") {
  const TimeReport op = opaque_limit_times(1.8, sys(1.5, 1.0, 1.0));
  for (double l : {0.1, 0.7, 5.0, 10.0}) {
    double previous = INFINITY;
    for (int i = 0; i <= 400; ++i) {
      const double qa = 5.0 + 20.0 * i / 400.0;
      const double dev = std::abs(phase_time_closed(1.8, sys(1.5, qa_width(qa), l)) - op.tau_p);
      // Monotone until the deviation reaches double-precision roundoff.
      if (previous > 1e-13) CHECK(dev < previous);
      previous = dev;
    }
    CHECK(previous < 1e-8);
  }
}

TEST_CASE("generalized Hartman effect versus separation") {
  const auto spread = [](double a) {
    std::vector<double> tp;
    for (int i = 0; i < 400; ++i) {
      tp.push_back(phase_time_closed(1.8, sys(1.5, a, 0.1 + 9.9 * i / 399.0)));
    }
    const auto [lo, hi] = std::minmax_element(tp.begin(), tp.end());
    double mean = 0.0;
    for (double t : tp) mean += t;
    return std::pair{*hi - *lo, mean / tp.size()};
  };
  CHECK(spread(qa_width(25.0)).first < 1e-8);
  const auto [pre, mean] = spread(0.7);
  CHECK(pre > 0.1 * mean);
}

TEST_CASE("superluminal phase time before saturation") {
  const TimeReport op = opaque_limit_times(1.8, sys(1.5, 1.0, 0.7));
  bool found = false;
  for (int i = 0; i < 600 && !found; ++i) {
    const BarrierSystem s = sys(1.5, 0.01 + 5.99 * i / 599.0, 0.7);
    const TimeReport r = time_report(1.8, s);
    found = r.tau_p < r.t_light && std::abs(r.tau_p - op.tau_p) > 0.01 * op.tau_p;
  }
  CHECK(found);
}

TEST_CASE("nonrelativistic times") {
  SUBCASE("low-energy agreement (Fig. 2C parameters)") {
    for (int i = 0; i <= 100; ++i) {
      const BarrierSystem s = sys(0.018, 0.1 + 4.9 * i / 100.0, 0.7);
      const double rel = phase_time_closed(1.01, s);
      const double nr = nonrelativistic_times(0.01, s).tau_p;
      CHECK(rel_diff(rel, nr) < 0.01);
    }
  }
  SUBCASE("heavy-mass limit") {
    for (double a : {0.1, 1.0, 5.0}) {
      const BarrierSystem s = sys(0.018, a, 0.7, 1000.0);
      const double rel = phase_time_closed(1000.0 + 0.01, s);
      const double nr = nonrelativistic_times(0.01, s).tau_p;
      CHECK(rel_diff(rel, nr) < 1e-3);
    }
  }
  SUBCASE("empty barriers") {
    const BarrierSystem s = sys(0.018, 0.0, 0.7);
    const TimeReport r = nonrelativistic_times(0.01, s);
    CHECK(rel_diff(r.tau_p, 0.7 / std::sqrt(2.0 * 0.01)) < 1e-8);
    CHECK(r.tau_i == 0.0);
  }
  CHECK_THROWS_AS(nonrelativistic_times(0.02, sys(0.018, 1.0, 0.7)), RegimeError);
  CHECK_THROWS_AS(nonrelativistic_times(0.0, sys(0.018, 1.0, 0.7)), RegimeError);
}

TEST_CASE("mass scaling") {
  // Doubling every energy and halving every length rescales times by 1/2.
  const double base = phase_time_closed(1.8, sys(1.5, 0.7, 0.7));
  const double scaled = phase_time_closed(3.6, sys(3.0, 0.35, 0.35, 2.0));
  CHECK(rel_diff(scaled, 0.5 * base) < 1e-13);
}
