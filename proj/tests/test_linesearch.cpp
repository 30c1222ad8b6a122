#include <doctest.h>

#include <cmath>

#include "specgrad/linesearch.hpp"

using namespace specgrad;

namespace {

Problem square_1d() {
  Problem p{"square", 1, {}, {}, DenseVector{1.0}, {}};
  p.objective = [](const DenseVector& x) { return x[0] * x[0]; };
  p.gradient = [](const DenseVector& x) { return DenseVector{2 * x[0]}; };
  return p;
}

Problem cubic_1d() {
  Problem p{"cubic", 1, {}, {}, DenseVector{1.0}, {}};
  p.objective = [](const DenseVector& x) { return x[0] * x[0] * x[0]; };
  p.gradient = [](const DenseVector& x) { return DenseVector{3 * x[0] * x[0]}; };
  return p;
}

using Search = LineSearchOutcome (*)(InstrumentedOracle&, const DenseVector&, double,
                                     const DenseVector&, const DenseVector&,
                                     const WolfeParams&, const SecantParams&, double);

}  // namespace

TEST_CASE("1D quadratic accepts a step inside the closed-form interval") {
  const Problem p = square_1d();
  for (Search search : {&standard_wolfe, &modified_wolfe}) {
    InstrumentedOracle oracle(p);
    const LineSearchOutcome out =
        search(oracle, {1.0}, 1.0, {2.0}, {-2.0}, WolfeParams{}, SecantParams{}, 1.0);
    REQUIRE(out.accepted());
    CHECK(out.alpha >= 0.4);
    CHECK(out.alpha <= 0.82);
    CHECK(out.trials <= 10);
    CHECK(out.nf_used == oracle.counters().nf);
    CHECK(out.ng_used == oracle.counters().ng);
    CHECK(out.f_new == p.objective(out.x_new));
  }
}

TEST_CASE("exact minimizer is accepted on the first trial") {
  const Problem p = square_1d();
  InstrumentedOracle oracle(p);
  const LineSearchOutcome out =
      modified_wolfe(oracle, {1.0}, 1.0, {2.0}, {-2.0}, WolfeParams{}, SecantParams{}, 0.5);
  REQUIRE(out.accepted());
  CHECK(out.alpha == 0.5);
  CHECK(out.trials == 1);
  CHECK(oracle.counters() == EvalCounter{1, 1});
  CHECK(out.secant.mu == 0.0);
  CHECK(out.secant.t == 0.0);
}

TEST_CASE("cubic: short trial with negative mu is rejected") {
  // Hand values for the alpha = 0.5 trial.
  const double m = mu(1.0, 0.125, {3.0}, {0.75}, {-0.5});
  CHECK(m == -0.125);
  const double t = t_coefficient(m, 0.25, SecantParams{});
  CHECK(t == doctest::Approx(-1.0 / 84.0));
  CHECK_FALSE((0.75 + t * -0.5) * -1.0 >= 0.2 * -3.0);

  const Problem p = cubic_1d();
  InstrumentedOracle oracle(p);
  const LineSearchOutcome out =
      modified_wolfe(oracle, {1.0}, 1.0, {3.0}, {-1.0}, WolfeParams{}, SecantParams{}, 0.5);
  REQUIRE(out.accepted());
  CHECK(out.alpha != 0.5);
  CHECK(out.trials >= 2);
  // modified curvature holds at the accepted point
  const double sd = out.secant.s[0] * -1.0;
  CHECK(out.g_new[0] * -1.0 + std::min(out.secant.t, 0.0) * sd >= 0.2 * -3.0);
}

TEST_CASE("ascent or orthogonal directions are degenerate") {
  const Problem p = square_1d();
  InstrumentedOracle oracle(p);
  CHECK(standard_wolfe(oracle, {1.0}, 1.0, {2.0}, {1.0}, {}, {}, 1.0).status ==
        LineSearchStatus::degenerate_direction);
  CHECK(modified_wolfe(oracle, {1.0}, 1.0, {2.0}, {0.0}, {}, {}, 1.0).status ==
        LineSearchStatus::degenerate_direction);
  CHECK(oracle.counters() == EvalCounter{0, 0});
}

TEST_CASE("bracket engine on synthetic predicates") {
  const auto window = [](double a) {
    TrialVerdict v;
    v.phi = (a - 0.6) * (a - 0.6);
    v.dphi = 2 * (a - 0.6);
    v.armijo = a <= 0.82;
    v.curvature = a >= 0.4;
    return v;
  };
  const BracketResult r = bracket_zoom(window, 0.36, -1.2, 1.0, WolfeParams{});
  REQUIRE(r.found);
  CHECK(r.alpha >= 0.4);
  CHECK(r.alpha <= 0.82);
  CHECK(r.trials <= 10);

  const BracketResult first = bracket_zoom(window, 0.36, -1.2, 0.5, WolfeParams{});
  CHECK(first.found);
  CHECK(first.alpha == 0.5);
  CHECK(first.trials == 1);

  const auto never = [](double a) {
    TrialVerdict v;
    v.phi = -a;
    v.dphi = -1.0;
    v.armijo = true;
    v.curvature = false;
    return v;
  };
  WolfeParams small;
  small.max_trials = 5;
  const BracketResult none = bracket_zoom(never, 0.0, -1.0, 1.0, small);
  CHECK_FALSE(none.found);
  CHECK(none.trials == 5);

  CHECK_THROWS_AS(bracket_zoom(window, 0.0, 1.0, 1.0, {}), ArgumentError);
}

TEST_CASE("exhausted budget reports max_trials_exceeded") {
  const Problem p = square_1d();
  InstrumentedOracle oracle(p);
  WolfeParams tight;
  tight.max_trials = 1;
  const LineSearchOutcome out =
      standard_wolfe(oracle, {1.0}, 1.0, {2.0}, {-2.0}, tight, {}, 10.0);
  CHECK(out.status == LineSearchStatus::max_trials_exceeded);
  CHECK(out.nf_used == 1);
}

TEST_CASE("non-finite trial values shrink the bracket") {
  Problem p{"log_barrier", 1, {}, {}, DenseVector{1.0}, {}};
  p.objective = [](const DenseVector& x) { return x[0] - 2 * std::log(x[0]); };
  p.gradient = [](const DenseVector& x) { return DenseVector{1 - 2 / x[0]}; };
  InstrumentedOracle oracle(p);
  // Minimizer at x = 2; a first trial of alpha = 5 lands at x = -4.
  const LineSearchOutcome out = standard_wolfe(oracle, {1.0}, 1.0, {-1.0}, {1.0},
                                               WolfeParams{0.1, 0.9}, {}, 5.0);
  REQUIRE(out.accepted());
  CHECK(out.x_new[0] > 0.0);
}

TEST_CASE("modified and standard searches agree on quadratics") {
  const Problem q = random_quadratic(15, 8);
  const DenseVector g = q.gradient(q.start);
  const double f = q.objective(q.start);
  const DenseVector d = scale(-1.0, g);
  for (double alpha0 : {1e-3, 0.1, 1.0, 30.0}) {
    InstrumentedOracle a(q), b(q);
    const auto std_out = standard_wolfe(a, q.start, f, g, d, WolfeParams{}, {}, alpha0);
    const auto mod_out = modified_wolfe(b, q.start, f, g, d, WolfeParams{}, {}, alpha0);
    REQUIRE(std_out.accepted());
    REQUIRE(mod_out.accepted());
    CHECK(std_out.alpha == mod_out.alpha);
    CHECK(std_out.trials == mod_out.trials);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((WolfeParams{0.3, 0.2}.validate()), ArgumentError);
  CHECK_THROWS_AS((WolfeParams{0.1, 1.0}.validate()), ArgumentError);
  CHECK_NOTHROW(WolfeParams{}.validate());
}
