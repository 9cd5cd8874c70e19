#include <algorithm>
#include <cmath>

#include "dataset_analysis.hpp"
#include "doctest.h"
#include "dtunnel/errors.hpp"
#include "dtunnel/oracle.hpp"
#include "dtunnel/scenarios.hpp"
#include "dtunnel/times.hpp"
#include "test_helpers.hpp"

using namespace dtunnel;
using dtunnel::testing::rel_diff;

TEST_CASE("grid and validation") {
  SweepSpec spec = figure_spec(FigureId::Fig2A);
  const auto grid = sweep_grid(spec);
  CHECK(grid.size() == 600);
  CHECK(grid.front() == 0.01);
  CHECK(grid.back() == 6.0);

  spec.points = 1;
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.points = 10;
  spec.hi = spec.lo;
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);

  SweepSpec energy;
  energy.swept = SweptParameter::Energy;
  energy.fixed = BarrierSystem{1.0, 1.5, 0.7, 0.7};
  energy.lo = 1.2;
  energy.hi = 2.8;  // reaches V0 = E - m
  energy.points = 50;
  try {
    validate(energy);
    FAIL("expected a regime error");
  } catch (const RegimeError& e) {
    CHECK(e.regime() == Regime::AboveBarrier);
    CHECK(std::string(e.what()).find("grid point") != std::string::npos);
  }
}

TEST_CASE("two-point sweep") {
  SweepSpec spec;
  spec.swept = SweptParameter::Width;
  spec.lo = 0.5;
  spec.hi = 1.0;
  spec.points = 2;
  spec.energy = 1.8;
  spec.fixed = BarrierSystem{1.0, 1.5, 0.5, 0.7};
  const SweepDataset d = run_sweep(spec);
  REQUIRE(d.rows.size() == 2);
  CHECK(d.rows[0].phi_t == transmission_phase(1.8, system_at(spec, 0.5)));
  CHECK(d.rows[1].tau_p == phase_time_closed(1.8, system_at(spec, 1.0)));
  CHECK(d.rows[0].tau_p_opaque.has_value());
  CHECK_FALSE(d.rows[0].tau_p_nr.has_value());
}

TEST_CASE("energy sweep keeps the phase continuous") {
  SweepSpec spec;
  spec.swept = SweptParameter::Energy;
  spec.fixed = BarrierSystem{1.0, 1.5, 0.7, 5.0};
  spec.lo = 1.001;
  spec.hi = 2.49;
  spec.points = 4000;
  const SweepDataset d = run_sweep(spec);
  for (std::size_t i = 1; i < d.rows.size(); ++i) {
    CHECK(std::abs(d.rows[i].phi_t - d.rows[i - 1].phi_t) < kPi / 2.0);
  }
}

TEST_CASE("sweeps are deterministic") {
  const SweepDataset a = figure_dataset(FigureId::Fig3A);
  const SweepDataset b = figure_dataset(FigureId::Fig3A);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].tau_p == b.rows[i].tau_p);
    CHECK(a.rows[i].phi_t == b.rows[i].phi_t);
    CHECK(a.rows[i].T2 == b.rows[i].T2);
  }
}

TEST_CASE("figure 2A approaches the opaque constants") {
  const SweepDataset d = figure_dataset(FigureId::Fig2A);
  const SweepRow& last = d.rows.back();
  REQUIRE(last.tau_p_opaque.has_value());
  CHECK(*last.tau_p_opaque == doctest::Approx(1.47087).epsilon(1e-5));
  // At a = 6 (qa = 5.7) the phase time still differs from saturation by
  // 1.103e-4 relative and the dwell time by 1.520e-4 (40-digit evaluation).
  CHECK(rel_diff(last.tau_p, 1.47103323962641312) < 1e-12);
  CHECK(std::abs(last.tau_p - *last.tau_p_opaque) / *last.tau_p_opaque < 2e-4);
  CHECK(std::abs(last.tau_d - *last.tau_d_opaque) / *last.tau_d_opaque < 2e-4);
  for (const SweepRow& r : d.rows) CHECK(r.tau_d == r.tau_p - r.tau_i);
}

TEST_CASE("figure datasets") {
  SUBCASE("2C relativistic and NR coincide") {
    const SweepDataset d = figure_dataset(FigureId::Fig2C);
    for (const SweepRow& r : d.rows) {
      REQUIRE(r.tau_p_nr.has_value());
      CHECK(rel_diff(r.tau_p, *r.tau_p_nr) < 0.01);
    }
  }
  SUBCASE("2B superluminal before opacity") {
    const SweepDataset d = figure_dataset(FigureId::Fig2B);
    const bool found = std::any_of(d.rows.begin(), d.rows.end(), [](const SweepRow& r) {
      return r.tau_p < r.t_light && r.T2 > 1e-12;
    });
    CHECK(found);
  }
  SUBCASE("3A resonance peaks and linear trend") {
    const SweepDataset d = figure_dataset(FigureId::Fig3A);
    CHECK(dtunnel::testing::count_local_maxima(d) >= 2);
    CHECK(dtunnel::testing::off_resonance_slope(d, 2.0, 10.0) > 0.0);
  }
  SUBCASE("3B baseline near saturation with peaks") {
    const SweepDataset d = figure_dataset(FigureId::Fig3B);
    const double opaque = *d.rows.front().tau_p_opaque;
    const double baseline = dtunnel::testing::off_resonance_baseline(d);
    CHECK(std::abs(baseline - opaque) < 0.05 * opaque);
    CHECK(dtunnel::testing::count_local_maxima(d) >= 2);
    const double peak = std::max_element(d.rows.begin(), d.rows.end(), [](auto& x, auto& y) {
                          return x.tau_p < y.tau_p;
                        })->tau_p;
    CHECK(peak > 2.0 * baseline);
  }
  SUBCASE("spot rows satisfy the dwell integral") {
    for (FigureId id : {FigureId::Fig2A, FigureId::Fig3B}) {
      const SweepDataset d = figure_dataset(id);
      for (std::size_t i = 0; i < d.rows.size(); i += 50) {
        const BarrierSystem s = system_at(d.spec, d.rows[i].swept);
        const double E = energy_at(d.spec, d.rows[i].swept);
        CHECK(rel_diff(oracle::dwell_integral(E, s).value, d.rows[i].tau_d) < 1e-6);
      }
    }
  }
}

TEST_CASE("find_resonances") {
  const BarrierSystem s{1.0, 1.5, 0.7, 0.0};
  const auto found = find_resonances(s, 1.8, 0.01, 10.0);
  REQUIRE(found.size() >= 4);
  for (const Resonance& r : found) {
    CHECK(r.abs_R < 1e-6);
    CHECK(std::abs(r.tau_p - r.tau_d) < 1e-6 * r.tau_p);
  }
  // Consecutive resonances are one period pi/k apart.
  const double k = wavenumber_k(1.8, s);
  for (std::size_t i = 1; i < found.size(); ++i) {
    CHECK(found[i].l - found[i - 1].l == doctest::Approx(kPi / k).epsilon(1e-9));
  }

  SUBCASE("peaks collapse in the opaque limit") {
    const double q = decay_q(1.8, s);
    BarrierSystem opaque = s;
    opaque.a = 25.0 / q;
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < 600; ++i) {
      opaque.l = 0.01 + 9.99 * i / 599.0;
      const double t = phase_time_closed(1.8, opaque);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    CHECK(hi - lo < 0.01 * lo);
  }

  SUBCASE("no barriers, no resonances") {
    CHECK(find_resonances(BarrierSystem{1.0, 1.5, 0.0, 0.0}, 1.8, 0.01, 10.0).empty());
  }
}

TEST_CASE("figure names") {
  CHECK(parse_figure("2A") == FigureId::Fig2A);
  CHECK(parse_figure("3b") == FigureId::Fig3B);
  CHECK_FALSE(parse_figure("4A").has_value());
  CHECK(parse_swept("l") == SweptParameter::Separation);
  CHECK_FALSE(parse_swept("x").has_value());
}
