#include "support.hpp"

#include "tsncalc/bounds.hpp"
#include "tsncalc/models.hpp"

#include <doctest.h>

using namespace tsncalc;
using testsupport::q;
using testsupport::random_curve;
using testsupport::sample_points;

TEST_CASE("FlowSpec validation") {
    CHECK_NOTHROW((FlowSpec{300, 10, 50, 100}.validate()));
    CHECK_THROWS_AS((FlowSpec{300, 10, 0, 100}.validate()), ParameterError);
    CHECK_THROWS_AS((FlowSpec{300, 10, 120, 100}.validate()), ParameterError);
    CHECK_THROWS_AS((FlowSpec{80, 10, 50, 100}.validate()), ParameterError);
    CHECK_THROWS_AS((FlowSpec{300, -1, 50, 100}.validate()), ParameterError);
}

TEST_CASE("arrival curve to g-regular") {
    const Curve g1 = arrival_to_g_regular(Curve::token_bucket(5, 1), 2);
    CHECK(g1 == Curve::latency_rate(1, 3));
    for (const Rational& v : {q(0), q(3), q(4), q(19, 2)}) CHECK(g1.at(v) == positive_part(v - 3));

    const Rational lm = 40, rho = 8;
    CHECK(arrival_to_g_regular(Curve::token_bucket(lm, rho), lm) == Curve::affine(Rational(1) / rho, 0));

    const Curve cont({{0, 0, 0, 0}, {2, 4, 4, 4}}, 1);
    CHECK(arrival_to_g_regular(cont, 0) == lower_pseudo_inverse(cont));
}

TEST_CASE("g-regular to arrival curve") {
    const Rational r = 25, lM = 200;
    CHECK(g_regular_to_arrival(Curve::affine(Rational(1) / r, 0), lM) == Curve::token_bucket(lM, r));

    const Curve alpha0 = g_regular_to_arrival(Curve::zero(), 100);
    CHECK(alpha0.at(0) == 0);
    CHECK(alpha0.eval(q(1, 10)).is_infinite());

    const Rational sigma = 900, rho = 30, l = 100;
    const Curve back = g_regular_to_arrival(arrival_to_g_regular(Curve::token_bucket(sigma, rho), l), l);
    CHECK(back == Curve::token_bucket(sigma, rho));
}

TEST_CASE("round trips relax the models") {
    Rng rng(21);
    for (int k = 0; k < 50; ++k) {
        const Rational lm = rng.uniform_rational(1, 4, 2);
        const Rational lM = lm + rng.uniform_rational(0, 4, 2);
        const Rational sigma = lM + rng.uniform_rational(0, 20, 2);
        const Rational rho = rng.uniform_rational(1, 10, 4);
        const Curve alpha = Curve::token_bucket(sigma, rho);
        const Curve back = g_regular_to_arrival(arrival_to_g_regular(alpha, lm), lM);
        for (const auto& t : sample_points(back.critical_points(), 20)) CHECK(back.at(t) >= alpha.at(t));
    }
}

TEST_CASE("service curve and g-server mappings") {
    const Rational c = 1000, lM = 1500;
    CHECK(service_to_g_server(Curve::latency_rate(c, lM / c)) == Curve::affine(Rational(1) / c, lM / c));
    CHECK(service_to_g_server(Curve::latency_rate(7, 3)) == Curve::affine(q(1, 7), 3));
    CHECK(service_to_g_server(Curve::identity()) == Curve::identity());

    const Rational idle = 300;
    CHECK(g_server_to_service(Curve::affine(Rational(1) / idle, lM / c)) == Curve::latency_rate(idle, lM / c));
    const Rational rho_u = 200, e = q(3, 4), lMi = 500;
    const Rational r = c - rho_u;
    CHECK(g_server_to_service(Curve::affine(Rational(1) / r, lMi / r + e)) == Curve::latency_rate(r, e + lMi / r));
    CHECK(g_server_to_service(Curve::identity()) == Curve::identity());
}

TEST_CASE("g^x relaxation") {
    const Rational R = 80, E = q(5, 2), lM = 160;
    const GxServer gr = gr_server(R, E);
    const auto g = std::get<GServer>(gx_relax(gr, 10, lM, RelaxDirection::toG));
    CHECK(g.g == Curve::affine(Rational(1) / R, lM / R + E));

    // x = 0 leaves the model unchanged in both directions
    const GxServer plain{Curve::affine(q(1, 3), 2), Curve::zero(), false, 0};
    CHECK(std::get<GServer>(gx_relax(plain, 1, 5, RelaxDirection::toG)).g == plain.g);
    CHECK(std::get<GxServer>(gx_relax(plain, 1, 5, RelaxDirection::fromG)) == plain);

    // toG never tightens
    Rng rng(22);
    for (int k = 0; k < 50; ++k) {
        const Curve base = random_curve(rng);
        const GxServer m{base, Curve::affine(rng.uniform_rational(0, 3, 4), 0), false, 0};
        const Curve g1 = relax_to_g_server(m, rng.uniform_rational(1, 5, 2)).g;
        for (const auto& v : sample_points(base.critical_points(), 10)) CHECK(g1.at(v) >= base.at(v));
    }

    // fromG keeps the g-function as g - x(l_min)
    const GxServer back = g_server_to_gx(GServer{Curve::affine(q(1, 4), 3)}, Curve::affine(q(1, 4), 0), 8);
    CHECK(back.offset == -2);
    CHECK(back.g_clipped() == Curve::affine(q(1, 4), 1));
}

TEST_CASE("negative intercepts are carried as an offset") {
    const GxServer m = make_gx_server(q(1, 50), q(-1, 10), Curve::affine(q(1, 50), 0));
    CHECK(m.offset == q(-1, 10));
    CHECK(m.g == Curve::affine(q(1, 50), 0));
    CHECK(m.g_clipped().at(0) == 0);
    CHECK(m.g_clipped().at(10) == q(1, 10));
    const GxServer p = make_gx_server(q(1, 50), 2, Curve::zero());
    CHECK(p.offset == 0);
    CHECK(p.g == Curve::affine(q(1, 50), 2));
}

TEST_CASE("GR server") {
    const GxServer link = gr_server(100, 0);
    CHECK(link.g.at(200) == 2);
    CHECK(link.x.at(50) == q(1, 2));
    CHECK_FALSE(link.exact);
    CHECK(check_gx_precondition(link.g, link.x, 1000, 1000).holds);
    CHECK_THROWS_AS(gr_server(0, 1), ParameterError);
    CHECK_THROWS_AS(gr_server(5, -1), ParameterError);
}

TEST_CASE("GR clock recursion") {
    CHECK(grc_clock(PacketTrace({{0, 100}}), 100) == std::vector<Rational>{1});
    CHECK(grc_clock(PacketTrace({{0, 100}, {0, 100}}), 100) == std::vector<Rational>{1, 2});
    CHECK(grc_clock(PacketTrace(), 100).empty());
    Rng rng(23);
    for (int k = 0; k < 50; ++k) {
        std::vector<Packet> pk;
        Rational t = 0;
        for (int i = 0; i < 20; ++i) {
            t += rng.uniform_rational(0, 3, 4);
            pk.push_back({t, rng.uniform_rational(1, 8, 1)});
        }
        const PacketTrace tr(pk);
        const Rational R = rng.uniform_rational(1, 10, 1);
        const auto grc = grc_clock(tr, R);
        for (std::size_t n = 1; n <= tr.size(); ++n) {
            CHECK(grc[n - 1] >= tr.time(n) + tr.length(n) / R);
            if (n > 1) CHECK(grc[n - 1] >= grc[n - 2]);
            // closed form max_m {a(m) + L(m, n+1)/R}
            Rational best = 0;
            for (std::size_t m = 0; m <= n; ++m) best = max(best, tr.time(m) + tr.cumulative_length(m, n + 1) / R);
            CHECK(grc[n - 1] == best);
        }
    }
}

TEST_CASE("g^x precondition") {
    CHECK(check_gx_precondition(Curve::affine(q(1, 40), 3), Curve::affine(q(1, 40), 0), 500, 500).holds);
    const GxServer cbs2 = make_gx_server(q(1, 50), q(-1, 10), Curve::affine(q(1, 50), 0));
    CHECK(check_gx_precondition(cbs2.g, cbs2.x, 1000, 1000).holds);

    // concave g (slope 2 then 1) with x of slope 3/2
    const Curve g({{0, 0, 0, 0}, {4, 8, 8, 8}}, 1);
    const Curve x = Curve::affine(q(3, 2), 0);
    const PreconditionResult r = check_gx_precondition(g, x, 10, 10);
    REQUIRE_FALSE(r.holds);
    const auto& w = *r.witness;
    CHECK(w.lhs > w.rhs);
    CHECK(x.at(w.w) == w.lhs);
    CHECK(g.at(w.v + w.w) - g.at(w.v) == w.rhs);

    // grid search agrees that a violation exists and the witness is a true one
    bool grid_violation = false;
    for (std::int64_t a = 0; a <= 40; ++a)
        for (std::int64_t b = 0; b <= 40; ++b) {
            const Rational v(a, 4), ww(b, 4);
            if (x.at(ww) > g.at(v + ww) - g.at(v)) grid_violation = true;
        }
    CHECK(grid_violation);
}

TEST_CASE("g^x precondition agrees with a grid search on random curves") {
    Rng rng(24);
    for (int k = 0; k < 60; ++k) {
        const Curve g = random_curve(rng);
        const Curve x = Curve::affine(rng.uniform_rational(0, 2, 4), 0);
        const Rational h = 6;
        const PreconditionResult r = check_gx_precondition(g, x, h, h);
        bool grid = false;
        for (std::int64_t a = 0; a <= 48 && !grid; ++a)
            for (std::int64_t b = 0; b <= 48 && !grid; ++b) {
                const Rational v(a, 8), w(b, 8);
                if (x.at(w) > g.at(v + w) - g.at(v)) grid = true;
            }
        if (grid) CHECK_FALSE(r.holds);
        if (!r.holds) {
            const auto& w = *r.witness;
            CHECK(w.lhs > w.rhs);
        }
    }
}

TEST_CASE("global precondition uses the tail slopes") {
    const Curve g = Curve::affine(1, 5);
    CHECK(check_gx_precondition_global(g, Curve::affine(1, 0)).holds);
    const auto r = check_gx_precondition_global(g, Curve::affine(2, 0));
    CHECK_FALSE(r.holds);
}
