#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hjq/builtin_models.hpp"
#include "hjq/canonical_system.hpp"
#include "hjq/errors.hpp"
#include "hjq/integrability.hpp"
#include "hjq/model.hpp"
#include "hjq/numflow.hpp"

#include "json.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace hjq;

namespace {

struct Sys {
    CanonicalSystem cs;
    ClosureReport closure;
    SymbolTable& tb() { return cs.model.table; }

    SymbolId id(const std::string& n) { return *cs.model.table.find(n); }
};

Sys sys(const std::string& name) {
    Sys s{build_hjpde_set(bind_model(builtin(name).definition)), {}};
    s.closure = constraint_closure(s.cs);
    return s;
}

double endpoint_gap(const FlowResult& r) {
    double e = 0;
    for (std::size_t i = 0; i < r.final_state.size(); ++i)
        e = std::max(e, std::abs(r.final_state[i] - r.samples.front().state[i]));
    return e;
}

} // namespace

TEST_CASE("oscillator closes its orbit and accumulates the action") {
    Sys s = sys("oscillator2d");
    const double pi = 3.14159265358979323846;
    ParameterPath path{{{{s.id("tau"), 0.0}}, {{s.id("tau"), 2 * pi}}}};
    std::map<SymbolId, double> init{
        {s.id("x"), 1.0}, {s.id("p_x"), 0.0}, {s.id("y"), 0.0}, {s.id("p_y"), 0.0}};

    FlowOptions o;
    o.step = 1e-4;
    FlowResult r = integrate_flow(s.cs, s.closure, path, init, o);

    std::vector<std::string> names;
    for (SymbolId sid : r.state_symbols) names.push_back(s.tb().name(sid));
    CHECK(names == std::vector<std::string>{"x", "y", "p_x", "p_y"});
    CHECK(r.constraint_labels.empty());

    CHECK(endpoint_gap(r) < 1e-9);
    CHECK(constraint_drift(r) == 0.0);
    CHECK(std::abs(action_along_flow(r)) < 1e-9);

    // independent trapezoid quadrature of L along the recorded samples
    auto lagrangian = [](const FlowSample& fs) {
        double x = fs.state[0], y = fs.state[1], px = fs.state[2], py = fs.state[3];
        return 0.5 * (px * px + py * py) - 0.5 * (x * x + y * y);
    };
    double quad = 0;
    for (std::size_t i = 1; i < r.samples.size(); ++i)
        quad += 0.5 * (lagrangian(r.samples[i - 1]) + lagrangian(r.samples[i])) *
                (r.samples[i].s - r.samples[i - 1].s);
    CHECK(std::abs(action_along_flow(r) - quad) < 1e-6);
}

TEST_CASE("halving the step divides the endpoint error by about sixteen") {
    Sys s = sys("oscillator2d");
    const double pi = 3.14159265358979323846;
    ParameterPath path{{{{s.id("tau"), 0.0}}, {{s.id("tau"), 2 * pi}}}};
    std::map<SymbolId, double> init{
        {s.id("x"), 1.0}, {s.id("p_x"), 0.0}, {s.id("y"), 0.0}, {s.id("p_y"), 0.0}};

    auto err = [&](double step) {
        FlowOptions o;
        o.step = step;
        return endpoint_gap(integrate_flow(s.cs, s.closure, path, init, o));
    };
    double ratio = err(1e-2) / err(5e-3);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("frw rest solution stays put along any lapse contour") {
    Sys s = sys("frw");
    ParameterPath path{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}},
                       {{s.id("tau"), 0.5}, {s.id("N"), 1.0}},
                       {{s.id("tau"), 0.5}, {s.id("N"), 2.0}},
                       {{s.id("tau"), 1.0}, {s.id("N"), 2.0}}}};
    // p_N is intentionally absent: it must default to its on-surface value
    std::map<SymbolId, double> init{{s.id("a"), 1.0}, {s.id("p_a"), 0.0}};
    FlowResult r = integrate_flow(s.cs, s.closure, path, init, FlowOptions{});

    std::vector<std::string> names;
    for (SymbolId sid : r.state_symbols) names.push_back(s.tb().name(sid));
    CHECK(names == std::vector<std::string>{"a", "p_a", "p_N"});
    CHECK(r.constraint_labels == std::vector<std::string>{"H'_N", "H_1"});

    CHECK(r.final_state[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.samples.front().state[2] == 0.0);  // defaulted p_N
    CHECK(constraint_drift(r) == 0.0);
    CHECK(action_along_flow(r) == 0.0);
}

TEST_CASE("off-surface data is refused, or reported when asked to proceed") {
    Sys s = sys("frw");
    ParameterPath path{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}},
                       {{s.id("tau"), 1.0}, {s.id("N"), 1.0}}}};
    std::map<SymbolId, double> bad{{s.id("a"), 1.0}, {s.id("p_a"), 0.1}};

    bool threw = false;
    try {
        integrate_flow(s.cs, s.closure, path, bad, FlowOptions{});
    } catch (const InitialDataError& e) {
        threw = true;
        CHECK(std::string(e.what()) ==
              "initial data is off the constraint surface: residual 0.000833333");
    }
    CHECK(threw);

    FlowOptions loose;
    loose.enforce_initial = false;
    FlowResult r = integrate_flow(s.cs, s.closure, path, bad, loose);
    // the violation is the constraint value p_a^2/(12a), not masked by projection
    CHECK(constraint_drift(r) == doctest::Approx(1.0 / 1200.0).epsilon(1e-9));
}

TEST_CASE("shifted velocity transports x by the integral of y") {
    Sys s = sys("shifted_velocity");
    ParameterPath straight{{{{s.id("tau"), 0.0}, {s.id("y"), 0.5}},
                           {{s.id("tau"), 1.0}, {s.id("y"), 0.5}}}};
    // same endpoints and the same integral of y dtau, different shape
    ParameterPath wiggly{{{{s.id("tau"), 0.0}, {s.id("y"), 0.5}},
                         {{s.id("tau"), 0.25}, {s.id("y"), 0.3}},
                         {{s.id("tau"), 0.75}, {s.id("y"), 0.7}},
                         {{s.id("tau"), 1.0}, {s.id("y"), 0.5}}}};
    std::map<SymbolId, double> init{{s.id("x"), 0.2}, {s.id("p_x"), 0.0}};

    FlowResult r = integrate_flow(s.cs, s.closure, straight, init, FlowOptions{});
    CHECK(r.final_state[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(r.final_state[1] == 0.0);
    CHECK(constraint_drift(r) == 0.0);

    CHECK(path_independence_check(s.cs, s.closure, straight, wiggly, init, 1e-3) < 1e-12);

    ParameterPath longer{{{{s.id("tau"), 0.0}, {s.id("y"), 0.5}},
                         {{s.id("tau"), 2.0}, {s.id("y"), 0.5}}}};
    CHECK_THROWS_AS(path_independence_check(s.cs, s.closure, straight, longer, init, 1e-3),
                    EndpointMismatchError);
}

TEST_CASE("frw_lambda flows along the analytic contraction") {
    Sys s = sys("frw_lambda");
    ParameterPath straight{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}},
                           {{s.id("tau"), 1.0}, {s.id("N"), 1.0}}}};
    ParameterPath wiggly{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}},
                         {{s.id("tau"), 0.25}, {s.id("N"), 1.5}},
                         {{s.id("tau"), 0.75}, {s.id("N"), 0.5}},
                         {{s.id("tau"), 1.0}, {s.id("N"), 1.0}}}};
    // 12*lambda*a^4 = p_a^2 at a = 1, p_a = 1, lambda = 1/12
    std::map<SymbolId, double> init{
        {s.id("a"), 1.0}, {s.id("p_a"), 1.0}, {s.id("lambda"), 1.0 / 12.0}};

    FlowResult r = integrate_flow(s.cs, s.closure, straight, init, FlowOptions{});
    CHECK(r.final_state[0] == doctest::Approx(std::exp(-1.0 / 6.0)).epsilon(1e-9));
    CHECK(constraint_drift(r) < 1e-12);
    CHECK(path_independence_check(s.cs, s.closure, straight, wiggly, init, 1e-3) < 1e-12);
}

TEST_CASE("path independence checking requires an integrable closure") {
    Sys s = sys("coupled_parameter");
    ParameterPath path{{{{s.id("tau"), 0.0}, {s.id("y"), 0.0}},
                       {{s.id("tau"), 1.0}, {s.id("y"), 0.0}}}};
    std::map<SymbolId, double> init{{s.id("x"), 0.0}, {s.id("p_x"), 0.0}};
    CHECK_THROWS_AS(path_independence_check(s.cs, s.closure, path, path, init, 1e-3),
                    PreconditionError);
}

TEST_CASE("malformed flow requests are rejected up front") {
    Sys s = sys("frw");
    ParameterPath path{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}},
                       {{s.id("tau"), 1.0}, {s.id("N"), 1.0}}}};
    std::map<SymbolId, double> init{{s.id("a"), 1.0}, {s.id("p_a"), 0.0}};

    FlowOptions bad_step;
    bad_step.step = 0.0;
    CHECK_THROWS_AS(integrate_flow(s.cs, s.closure, path, init, bad_step),
                    InitialDataError);

    ParameterPath one{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}}}};
    CHECK_THROWS_AS(integrate_flow(s.cs, s.closure, one, init, FlowOptions{}),
                    InitialDataError);

    ParameterPath gap{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}}, {{s.id("tau"), 1.0}}}};
    CHECK_THROWS_AS(integrate_flow(s.cs, s.closure, gap, init, FlowOptions{}),
                    InitialDataError);

    ParameterPath nan_path{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}},
                           {{s.id("tau"), std::nan("")}, {s.id("N"), 1.0}}}};
    CHECK_THROWS_AS(integrate_flow(s.cs, s.closure, nan_path, init, FlowOptions{}),
                    InitialDataError);
}

TEST_CASE("finite differences agree with the symbolic derivatives") {
    BoundModel bm = bind_model(builtin("frw").definition);
    std::map<SymbolId, double> pt{{*bm.table.find("a"), 1.3},
                                  {*bm.table.find("da"), 0.7},
                                  {*bm.table.find("N"), 1.9}};
    CHECK(finite_difference_check(bm.lagrangian, *bm.table.find("da"), pt, bm.table) < 1e-8);
    CHECK(finite_difference_check(bm.lagrangian, *bm.table.find("N"), pt, bm.table) < 1e-8);
    CHECK(finite_difference_check(bm.lagrangian, *bm.table.find("a"), pt, bm.table) < 1e-8);
}

TEST_CASE("flow serialization round trips") {
    Sys s = sys("frw");
    ParameterPath path{{{{s.id("tau"), 0.0}, {s.id("N"), 1.0}},
                       {{s.id("tau"), 1.0}, {s.id("N"), 1.0}}}};
    std::map<SymbolId, double> init{{s.id("a"), 1.0}, {s.id("p_a"), 0.0}};
    FlowOptions o;
    o.step = 0.25;
    FlowResult r = integrate_flow(s.cs, s.closure, path, init, o);
    REQUIRE(r.samples.size() == 5);

    std::ostringstream csv;
    write_flow_csv(r, s.tb(), csv);
    std::istringstream lines(csv.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "s,a,p_a,p_N,Z,H'_N,H_1");
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == r.samples.size());

    nlohmann::json j = nlohmann::json::parse(flow_summary_json(r, s.tb()));
    CHECK(j.at("samples").get<std::size_t>() == 5);
    CHECK(j.at("max_constraint_residual").get<double>() == 0.0);
    CHECK(j.at("final_state").at("a").get<double>() == 1.0);
    CHECK(j.at("final_state").at("p_N").get<double>() == 0.0);
    CHECK(j.at("z").get<double>() == 0.0);
    CHECK(j.at("constraints") == nlohmann::json::array({"H'_N", "H_1"}));
}
