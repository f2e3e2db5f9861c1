// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bilintang/structures.hpp"
#include "oracles.hpp"

using namespace bilintang;

TEST_CASE("scalar basis evaluation") {
  const ScalarBasis one = ScalarBasis::monomial(0);
  const ScalarBasis lin = ScalarBasis::monomial(1);
  const ScalarBasis quad = ScalarBasis::monomial(2);
  const ScalarBasis exp1 = ScalarBasis::delayExponential(1.0);

  CHECK(one.eval({7.0, 3.0}) == Complex(1.0, 0.0));
  CHECK(lin.eval({7.0, 3.0}) == Complex(7.0, 3.0));
  CHECK(quad.eval({2.0, 0.0}) == Complex(4.0, 0.0));
  CHECK(std::abs(exp1.eval({0.0, 0.0}) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(exp1.eval({1.0, 0.0}) - std::exp(Complex(-1.0, 0.0))) <
        1e-15);

  // Closed-form derivatives.
  CHECK(quad.evalDerivative({3.0, 0.0}, 1) == Complex(6.0, 0.0));
  CHECK(quad.evalDerivative({5.0, 2.0}, 3) == Complex(0.0, 0.0));
  CHECK(lin.evalDerivative({5.0, 2.0}, 1) == Complex(1.0, 0.0));
  CHECK(lin.evalDerivative({5.0, 2.0}, 2) == Complex(0.0, 0.0));
  CHECK(std::abs(exp1.evalDerivative({0.0, 0.0}, 2) - Complex(1.0, 0.0)) <
        1e-15);
  const ScalarBasis exp2 = ScalarBasis::delayExponential(2.0);
  CHECK(std::abs(exp2.evalDerivative({0.0, 0.0}, 3) - Complex(-8.0, 0.0)) <
        1e-15);
}

TEST_CASE("matrix function evaluation") {
  MatrixFunction f(2, 2);
  f.addTerm(ScalarBasis::monomial(0), Eigen::MatrixXcd::Identity(2, 2));
  CHECK((f.eval({7.0, 3.0}) - Eigen::MatrixXcd::Identity(2, 2)).norm() == 0.0);

  // s*E - A with E = I, A = [-1]: value 1 at s = 0.
  MatrixFunction g(1, 1);
  g.addTerm(ScalarBasis::monomial(1), Eigen::MatrixXcd::Identity(1, 1));
  g.addTerm(ScalarBasis::monomial(0),
            Eigen::MatrixXcd::Constant(1, 1, Complex(1.0, 0.0)));
  CHECK(g.eval({0.0, 0.0})(0, 0) == Complex(1.0, 0.0));

  // s^2 M + s D + K with M = D = K = I_1 at s = 2: 4 + 2 + 1.
  MatrixFunction h(1, 1);
  for (int deg = 0; deg <= 2; ++deg) {
    h.addTerm(ScalarBasis::monomial(deg), Eigen::MatrixXcd::Identity(1, 1));
  }
  CHECK(h.eval({2.0, 0.0})(0, 0) == Complex(7.0, 0.0));

  // Derivatives distribute over terms.
  MatrixFunction q(1, 1);
  q.addTerm(ScalarBasis::monomial(2), Eigen::MatrixXcd::Identity(1, 1));
  CHECK(q.evalDerivative({3.0, 0.0}, 1)(0, 0) == Complex(6.0, 0.0));
  CHECK(q.evalDerivative({3.0, 0.0}, 3)(0, 0) == Complex(0.0, 0.0));
  MatrixFunction e(1, 1);
  e.addTerm(ScalarBasis::delayExponential(1.0),
            Eigen::MatrixXcd::Identity(1, 1));
  CHECK(std::abs(e.evalDerivative({0.0, 0.0}, 2)(0, 0) - Complex(1.0, 0.0)) <
        1e-15);

  CHECK(f.isReal());
  MatrixFunction c(1, 1);
  c.addTerm(ScalarBasis::monomial(0),
            Eigen::MatrixXcd::Constant(1, 1, Complex(0.0, 1.0)));
  CHECK_FALSE(c.isReal());
}

TEST_CASE("template constructors") {
  oracles::Rng rng(11);
  const Eigen::Index n = 4;
  const Eigen::MatrixXd A = rng.matrix(n, n);
  const Eigen::MatrixXd B = rng.matrix(n, 2);
  const Eigen::MatrixXd C = rng.matrix(1, n);
  const std::vector<Eigen::MatrixXd> N{rng.matrix(n, n), rng.matrix(n, n)};

  SUBCASE("first order: K(0) = -A") {
    const StructuredBilinearSystem sys =
        makeFirstOrder(Eigen::MatrixXd::Identity(n, n), A, N, B, C);
    CHECK(sys.tag() == TemplateTag::FirstOrder);
    CHECK((sys.K().eval({0.0, 0.0}) + A.cast<Complex>()).norm() < 1e-15);
    CHECK(sys.n() == n);
    CHECK(sys.m() == 2);
    CHECK(sys.p() == 1);
  }

  SUBCASE("second order: K(s) = s^2 M + s D + K0") {
    const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd D = rng.matrix(n, n);
    const Eigen::MatrixXd K0 = rng.matrix(n, n);
    const std::vector<Eigen::MatrixXd> Nv{rng.matrix(n, n), rng.matrix(n, n)};
    const Eigen::MatrixXd Cv = rng.matrix(1, n);
    const StructuredBilinearSystem sys =
        makeSecondOrder(M, D, K0, N, Nv, B, C, Cv);
    const Complex s{1.5, -0.5};
    const Eigen::MatrixXcd expected =
        (s * s * M + s * D + K0).cast<Complex>();
    CHECK((sys.K().eval(s) - expected).norm() < 1e-14 * expected.norm());
    CHECK((sys.C().eval(s) - (C + s.real() * Cv).cast<Complex>()).norm() ==
          doctest::Approx(std::abs(s.imag()) * Cv.norm()).epsilon(1e-12));
    CHECK((sys.N(1).eval(s) - (N[1].cast<Complex>() + s * Nv[1].cast<Complex>()))
              .norm() < 1e-14);
  }

  SUBCASE("time delay: scalar K(1) with A = Ad = 0") {
    const Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(1, 1);
    const StructuredBilinearSystem sys = makeTimeDelay(
        Z, Z, {Eigen::MatrixXd::Identity(1, 1)},
        Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Identity(1, 1), 1.0);
    CHECK(sys.K().eval({1.0, 0.0})(0, 0) == Complex(1.0, 0.0));
    CHECK(sys.delay() == 1.0);
  }

  SUBCASE("shape mismatches are rejected") {
    CHECK_THROWS_AS(makeFirstOrder(Eigen::MatrixXd::Identity(3, 3), A, N, B, C),
                    std::invalid_argument);
    CHECK_THROWS_AS(makeFirstOrder(Eigen::MatrixXd::Identity(n, n), A, N,
                                   rng.matrix(n + 1, 2), C),
                    std::invalid_argument);
  }
}

TEST_CASE("coefficient extraction round trip") {
  const StructuredBilinearSystem fo =
      oracles::randomSystem(3, oracles::Kind::FirstOrder, 5, 2, 2);
  const FirstOrderParts fp = extractFirstOrder(fo);
  const StructuredBilinearSystem fo2 =
      makeFirstOrder(fp.E.real(), fp.A.real(),
                     {fp.N[0].real(), fp.N[1].real()}, fp.B.real(),
                     fp.C.real());
  const Complex s{0.3, 1.1};
  CHECK((fo.K().eval(s) - fo2.K().eval(s)).norm() < 1e-14);

  const StructuredBilinearSystem so =
      oracles::randomSystem(4, oracles::Kind::SecondOrder, 5, 2, 2);
  const SecondOrderParts sp = extractSecondOrder(so);
  CHECK((so.K().eval(s) -
         (s * s * sp.M + s * sp.D + sp.K))
            .norm() < 1e-13);

  const StructuredBilinearSystem td =
      oracles::randomSystem(5, oracles::Kind::TimeDelay, 5, 2, 2);
  const TimeDelayParts tp = extractTimeDelay(td);
  CHECK(tp.tau == 1.0);
  CHECK((td.K().eval({0.0, 0.0}) - (-tp.A - tp.Ad)).norm() < 1e-13);

  CHECK_THROWS_AS(extractSecondOrder(fo), std::invalid_argument);
}
