#include <doctest.h>

#include <cmath>
#include <vector>

#include "portopt/errors.hpp"
#include "portopt/instance.hpp"
#include "portopt/qp.hpp"

using portopt::Instance;
using portopt::QpResult;

namespace {

Instance two_assets_equal_means() {
    Eigen::MatrixXd cov(2, 2);
    cov << 0.0004, 0.0003, 0.0003, 0.0009;
    return Instance::from_covariance({0.005, 0.005}, cov);
}

Instance three_assets() {
    Eigen::MatrixXd cov(3, 3);
    cov << 0.0004, 0.0001, 0.0000,
           0.0001, 0.0009, 0.0002,
           0.0000, 0.0002, 0.0016;
    return Instance::from_covariance({0.002, 0.005, 0.009}, cov);
}

void check_feasible(const QpResult& res, double mu_p) {
    double sum = 0;
    for (int i = 0; i < res.x.size(); ++i) {
        sum += res.x[i];
        CHECK(res.x[i] >= -1e-9);
        CHECK(res.x[i] <= 1.0 + 1e-9);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.ret >= mu_p - 1e-9);
    CHECK(res.kkt_residual <= 1e-8);
}

}  // namespace

TEST_SUITE("qp") {

TEST_CASE("equal means reduce to the closed-form two-asset minimum variance") {
    const Instance inst = two_assets_equal_means();
    // w* = (s22 - s12) / (s11 - 2 s12 + s22) = 6/7
    const QpResult res = portopt::solve_qp_min_variance(inst, 0.005);
    check_feasible(res, 0.005);
    CHECK(res.x[0] == doctest::Approx(6.0 / 7.0).epsilon(1e-8));
    CHECK(res.variance == doctest::Approx(27.0 / 7.0 * 1e-4).epsilon(1e-8));
}

TEST_CASE("the top-return corner puts all weight on the max-mean asset") {
    const Instance inst = three_assets();
    const QpResult res = portopt::solve_qp_min_variance(inst, 0.009);
    check_feasible(res, 0.009);
    CHECK(res.x[2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.variance == doctest::Approx(0.0016).epsilon(1e-9));
}

TEST_CASE("gmv solve ignores the return constraint") {
    const Instance inst = three_assets();
    const QpResult gmv = portopt::solve_gmv(inst);
    check_feasible(gmv, inst.means().minCoeff());
    // at an interior GMV, perturbing toward any single asset cannot reduce
    // variance: compare against each corner
    for (int i = 0; i < 3; ++i) {
        CHECK(gmv.variance <= inst.covariance_of(i, i) + 1e-12);
    }
}

TEST_CASE("binding return targets trace increasing variance") {
    const Instance inst = three_assets();
    const QpResult gmv = portopt::solve_gmv(inst);
    double prev_var = gmv.variance;
    const double hi = inst.means().maxCoeff();
    for (int s = 1; s <= 4; ++s) {
        const double mu_p = gmv.ret + (hi - gmv.ret) * s / 4.0;
        const QpResult res = portopt::solve_qp_min_variance(inst, mu_p);
        check_feasible(res, mu_p);
        CHECK(res.ret == doctest::Approx(mu_p).epsilon(1e-8));
        CHECK(res.variance >= prev_var - 1e-12);
        prev_var = res.variance;
    }
}

TEST_CASE("warm starts reproduce the cold-start answer") {
    const Instance inst = three_assets();
    const QpResult gmv = portopt::solve_gmv(inst);
    const double mu_p = 0.5 * (gmv.ret + inst.means().maxCoeff());
    const QpResult cold = portopt::solve_qp_min_variance(inst, mu_p);
    const QpResult warm = portopt::solve_qp_min_variance(inst, mu_p, 1e-9, &gmv.x);
    CHECK(warm.variance == doctest::Approx(cold.variance).epsilon(1e-10));
    CHECK((warm.x - cold.x).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("targets outside the achievable mean range are infeasible") {
    const Instance inst = three_assets();
    CHECK_THROWS_AS(portopt::solve_qp_min_variance(inst, 0.5), portopt::Infeasible);
    CHECK_THROWS_AS(portopt::solve_qp_min_variance(inst, -0.5), portopt::Infeasible);
}

}  // TEST_SUITE
