#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_helpers.hpp"
#include "wavecraft/metrics.hpp"
#include "wavecraft/operators.hpp"
#include "wavecraft/states.hpp"

using namespace wavecraft;
using testutil::rel_l2_diff;

namespace {
const QuadratureGrid kGrid(513, 10.0);  // odd count keeps x = 0 on the grid

double wigner_mass(const WignerMap& map) {
    const double dx = map.x[1] - map.x[0];
    const double dp = map.p[1] - map.p[0];
    double s = 0.0;
    for (double v : map.w) s += v;
    return s * dx * dp;
}

double wigner_purity(const WignerMap& map) {
    const double dx = map.x[1] - map.x[0];
    const double dp = map.p[1] - map.p[0];
    double s = 0.0;
    for (double v : map.w) s += v * v;
    return s * dx * dp;
}
}  // namespace

TEST_CASE("wigner of gaussian and fock states") {
    const WaveFunction vac = fock_state(kGrid, 0);
    const WignerMap wv = wigner(vac);
    const int ix0 = kGrid.size() / 2;
    int ip0 = 0;
    for (size_t m = 0; m < wv.p.size(); ++m)
        if (std::abs(wv.p[m]) < std::abs(wv.p[ip0])) ip0 = static_cast<int>(m);
    CHECK(wv.at(ix0, ip0) == doctest::Approx(1.0 / kPi).epsilon(1e-8));
    // sampled agreement with (1/pi) exp(-x^2 - p^2)
    for (int di : {-40, 15, 60})
        for (int dm : {-30, 25}) {
            const double x = wv.x[ix0 + di];
            const double p = wv.p[ip0 + dm];
            CHECK(wv.at(ix0 + di, ip0 + dm) ==
                  doctest::Approx(std::exp(-x * x - p * p) / kPi).epsilon(1e-6).scale(1.0));
        }

    const WignerMap w1 = wigner(fock_state(kGrid, 1));
    CHECK(w1.at(ix0, ip0) == doctest::Approx(-1.0 / kPi).epsilon(1e-8));

    CHECK(wigner_mass(wv) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(wigner_mass(w1) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("wigner invariants across states") {
    const std::vector<WaveFunction> states = {
        fock_state(kGrid, 0),
        fock_state(kGrid, 3),
        cat_state(kGrid, {2.0, CatParity::minus, 0.0}),
        cat_state(kGrid, {1.5, CatParity::plus, 0.4}),
        testutil::random_fock_mix(kGrid, 5, 17u),
    };
    for (const WaveFunction& psi : states) {
        const WignerMap map = wigner(psi);
        const double dp = map.p[1] - map.p[0];

        // marginal over p reproduces |psi(x)|^2
        double sup = 0.0;
        for (int i = 0; i < kGrid.size(); ++i) {
            double marg = 0.0;
            for (size_t m = 0; m < map.p.size(); ++m) marg += map.at(i, m);
            sup = std::max(sup, std::abs(marg * dp - std::norm(psi.amp[i])));
        }
        CHECK(sup < 1e-4);

        CHECK(wigner_purity(map) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-3));

        double peak = 0.0;
        for (double v : map.w) peak = std::max(peak, std::abs(v));
        CHECK(peak <= 1.0 / kPi + 1e-6);
    }
}

TEST_CASE("minus cat shows alternating fringes along x = 0") {
    const WignerMap map = wigner(cat_state(kGrid, {2.0, CatParity::minus, 0.0}));
    const int ix0 = kGrid.size() / 2;
    int sign_changes = 0;
    double prev = map.at(ix0, map.p.size() / 2);
    for (size_t m = map.p.size() / 2 + 1; m < map.p.size(); ++m) {
        const double cur = map.at(ix0, m);
        if (prev * cur < 0.0 && std::abs(cur) > 1e-4) ++sign_changes;
        prev = cur;
    }
    CHECK(sign_changes >= 2);
    CHECK(map.at(ix0, map.p.size() / 2) < 0.0);  // odd state: negative at origin
}

TEST_CASE("parallel wigner matches the serial reference") {
    const QuadratureGrid small(129, 8.0);
    const WaveFunction psi = testutil::random_fock_mix(small, 4, 23u);
    const WignerMap fast = wigner(psi, 6.0, 65);
    const WignerMap slow = ref::wigner(psi, 6.0, 65);
    double worst = 0.0;
    for (size_t i = 0; i < fast.w.size(); ++i)
        worst = std::max(worst, std::abs(fast.w[i] - slow.w[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("squeezed-cat fit recovers its own family") {
    const WaveFunction target = cat_state(kGrid, {1.2, CatParity::minus, 0.3});
    const CatFit fit = fit_squeezed_cat(target);
    CHECK(fit.parity == CatParity::minus);
    CHECK(fit.fidelity > 1.0 - 1e-8);
    CHECK(fit.alpha == doctest::Approx(1.2).epsilon(0.01));
    CHECK(fit.xi == doctest::Approx(0.3).epsilon(0.04));
    CHECK(fit.alpha >= 0.0);
    CHECK(fit.converged);

    const WaveFunction plus = cat_state(kGrid, {0.8, CatParity::plus, -0.2});
    const CatFit pfit = fit_squeezed_cat(plus);
    CHECK(pfit.parity == CatParity::plus);
    CHECK(pfit.fidelity > 1.0 - 1e-8);
}

TEST_CASE("four-cat fit recovers amplitude and type") {
    const FourCatFit fit = fit_four_cat(four_cat_state(kGrid, 1.5, 0));
    CHECK(fit.m == 0);
    CHECK(fit.beta == doctest::Approx(1.5).epsilon(0.01));
    CHECK(fit.fidelity > 1.0 - 1e-8);

    const FourCatFit fit2 = fit_four_cat(four_cat_state(kGrid, 1.1, 2));
    CHECK(fit2.m == 2);
    CHECK(fit2.fidelity > 1.0 - 1e-8);

    // an even state never best-fits the odd families
    const FourCatFit even_fit = fit_four_cat(testutil::random_fock_mix(kGrid, 0, 3u));
    CHECK(even_fit.m % 2 == 0);
}

TEST_CASE("displacement fit") {
    const WaveFunction psi = cat_state(kGrid, {1.0, CatParity::plus, 0.2});
    const WaveFunction target = displace(psi, 0.4, 0.0);
    const DisplacementFit fit = fit_displacement(psi, target);
    CHECK(fit.dx == doctest::Approx(0.4).epsilon(0.0125));
    CHECK(std::abs(fit.dp) < 0.005);
    CHECK(fit.fidelity > 1.0 - 1e-6);

    // identity optimum
    const DisplacementFit self = fit_displacement(psi, psi);
    CHECK(std::abs(self.dx) < 0.005);
    CHECK(std::abs(self.dp) < 0.005);

    // inverse consistency
    const WaveFunction moved = displace(psi, 0.7, -0.5);
    const DisplacementFit inv = fit_displacement(moved, psi);
    CHECK(inv.dx == doctest::Approx(-0.7).epsilon(0.01));
    CHECK(inv.dp == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("extrema report") {
    const auto vac = extrema_report(fock_state(kGrid, 0));
    REQUIRE(vac.size() == 1);
    CHECK(std::abs(vac[0].x) < 1e-6);

    // ideal x^n exp(-x^2/(2 e^{2r})) peaks at +-sqrt(n) e^r
    const double r = 0.8;
    for (int n : {1, 2, 3}) {
        std::vector<cdouble> amp(kGrid.size());
        for (int i = 0; i < kGrid.size(); ++i) {
            const double x = kGrid.x(i);
            amp[i] = std::pow(x, n) * std::exp(-x * x / (2.0 * std::exp(2.0 * r)));
        }
        const auto ext = extrema_report(WaveFunction(kGrid, std::move(amp)));
        REQUIRE(ext.size() == 2);
        const double expected = std::sqrt(double(n)) * std::exp(r);
        CHECK(std::abs(ext[0].x) == doctest::Approx(expected).epsilon(0.01));
        CHECK(std::abs(ext[1].x) == doctest::Approx(expected).epsilon(0.01));
    }

    // minus cat peaks: dense scan of the closed form as the oracle
    const double alpha = 2.0;
    const WaveFunction cat = cat_state(kGrid, {alpha, CatParity::minus, 0.0});
    auto closed = [alpha](double x) {
        return std::abs(std::exp(-0.5 * (x - std::sqrt(2.0) * alpha) *
                                 (x - std::sqrt(2.0) * alpha)) -
                        std::exp(-0.5 * (x + std::sqrt(2.0) * alpha) *
                                 (x + std::sqrt(2.0) * alpha)));
    };
    double best_x = 0.0, best = 0.0;
    for (double x = 0.0; x < 8.0; x += 1e-4)
        if (closed(x) > best) {
            best = closed(x);
            best_x = x;
        }
    const auto ext = extrema_report(cat);
    REQUIRE(ext.size() == 2);
    CHECK(std::abs(ext[0].x) == doctest::Approx(best_x).epsilon(0.005));
}

TEST_CASE("fitters never lose to their own grid scan") {
    const WaveFunction psi = testutil::random_fock_mix(kGrid, 3, 41u);
    const int parity = dominant_parity(psi);
    if (parity != 0) {
        const CatFit fit = fit_squeezed_cat(psi);
        const CatParity sign = parity > 0 ? CatParity::plus : CatParity::minus;
        for (double xi : {-1.0, -0.5, 0.0, 0.5, 1.0})
            for (double alpha : {0.5, 1.0, 1.5, 2.0})
                CHECK(fit.fidelity >= fidelity(psi, cat_state(kGrid, {alpha, sign, xi})) - 1e-12);
    }

    const WaveFunction moved = displace(fock_state(kGrid, 1), 0.3, -0.2);
    const DisplacementFit dfit = fit_displacement(fock_state(kGrid, 1), moved);
    for (double dx : {-0.5, 0.0, 0.3, 0.5})
        for (double dp : {-0.2, 0.0, 0.2})
            CHECK(dfit.fidelity >=
                  fidelity(displace(fock_state(kGrid, 1), dx, dp), moved) - 1e-12);
}
