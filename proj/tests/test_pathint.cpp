#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hjq/builtin_models.hpp"
#include "hjq/canonical_form.hpp"
#include "hjq/canonical_system.hpp"
#include "hjq/errors.hpp"
#include "hjq/integrability.hpp"
#include "hjq/model.hpp"
#include "hjq/parser.hpp"
#include "hjq/pathint.hpp"

#include <map>
#include <string>
#include <vector>

using namespace hjq;

namespace {

struct Emitted {
    CanonicalSystem cs;
    ClosureReport closure;
    PathIntegralSpec spec;
};

Emitted emit(const std::string& name) {
    Emitted out{build_hjpde_set(bind_model(builtin(name).definition)), {}, {}};
    out.closure = constraint_closure(out.cs);
    out.spec = emit_path_integral(out.cs, out.closure);
    return out;
}

} // namespace

TEST_CASE("regular system integrates over every pair with no conditions") {
    Emitted e = emit("oscillator2d");
    const SymbolTable& tb = e.cs.model.table;
    REQUIRE(e.spec.integration_variables.size() == 2);
    CHECK(tb.name(e.spec.integration_variables[0].first) == "x");
    CHECK(tb.name(e.spec.integration_variables[0].second) == "p_x");
    CHECK(tb.name(e.spec.integration_variables[1].first) == "y");
    CHECK(tb.name(e.spec.integration_variables[1].second) == "p_y");
    REQUIRE(e.spec.parameter_variables.size() == 1);
    CHECK(tb.name(e.spec.parameter_variables[0]) == "tau");
    CHECK(e.spec.side_conditions.empty());
    CHECK(e.spec.measure == "flat over listed canonical pairs");
}

TEST_CASE("constrained system lists surface conditions instead of deltas") {
    Emitted e = emit("frw_lambda");
    const SymbolTable& tb = e.cs.model.table;
    REQUIRE(e.spec.integration_variables.size() == 1);
    CHECK(tb.name(e.spec.integration_variables[0].first) == "a");
    CHECK(tb.name(e.spec.integration_variables[0].second) == "p_a");
    REQUIRE(e.spec.parameter_variables.size() == 2);
    CHECK(tb.name(e.spec.parameter_variables[0]) == "tau");
    CHECK(tb.name(e.spec.parameter_variables[1]) == "N");
    REQUIRE(e.spec.side_conditions.size() == 2);
    CHECK(print_expr(e.spec.side_conditions[0], tb) == "p_N");
    CHECK(print_expr(e.spec.side_conditions[1], tb) == "(12*a^4*lambda - p_a^2)/(12*a)");
    // nothing in the emitted structure carries a delta function or gauge
    // condition; the only extras are the listed vanishing conditions
    std::string rendered = render_path_integral(e.spec, tb);
    CHECK(rendered.find("delta") == std::string::npos);
    CHECK(rendered.find("gauge") == std::string::npos);
}

TEST_CASE("rendering is deterministic and complete") {
    Emitted e = emit("frw_lambda");
    std::string r = render_path_integral(e.spec, e.cs.model.table);
    CHECK(r ==
          "integrate over: (a, p_a)\n"
          "parameters: tau N\n"
          "dZ = [(-12*N*a^4*lambda - N*p_a^2)/(12*a)] dtau + [0] dN\n"
          "measure: flat over listed canonical pairs\n"
          "side conditions:\n"
          "  p_N = 0\n"
          "  (12*a^4*lambda - p_a^2)/(12*a) = 0\n");
    Emitted again = emit("frw_lambda");
    CHECK(render_path_integral(again.spec, again.cs.model.table) == r);

    Emitted osc = emit("oscillator2d");
    CHECK(render_path_integral(osc.spec, osc.cs.model.table) ==
          "integrate over: (x, p_x) (y, p_y)\n"
          "parameters: tau\n"
          "dZ = [(-1*x^2 + p_x^2 - y^2 + p_y^2)/2] dtau\n"
          "measure: flat over listed canonical pairs\n"
          "side conditions: (none)\n");

    Emitted sh = emit("shifted_velocity");
    CHECK(render_path_integral(sh.spec, sh.cs.model.table) ==
          "integrate over: (x, p_x)\n"
          "parameters: tau y\n"
          "dZ = [p_x^2/2] dtau + [0] dy\n"
          "measure: flat over listed canonical pairs\n"
          "side conditions:\n"
          "  p_y = 0\n"
          "  p_x = 0\n");
}

TEST_CASE("emission refuses non-integrable closures") {
    CanonicalSystem cs = build_hjpde_set(bind_model(builtin("coupled_parameter").definition));
    ClosureReport rep = constraint_closure(cs);
    CHECK(rep.status == ClosureStatus::ParameterFixing);
    CHECK_THROWS_AS(emit_path_integral(cs, rep), NotIntegrableError);
}

TEST_CASE("the dtau coefficient is the Lagrangian after inverting momenta") {
    for (const std::string& name :
         {"oscillator2d", "shifted_velocity", "frw", "frw_lambda"}) {
        CAPTURE(name);
        CanonicalSystem cs = build_hjpde_set(bind_model(builtin(name).definition));
        const SymbolTable& tb = cs.model.table;
        ActionForm z = action_one_form(cs);
        SymbolId tau = *tb.find("tau");
        std::map<SymbolId, ExprPtr> legendre;
        for (std::size_t a : cs.hessian.expressible)
            legendre[cs.model.momenta[a]] = cs.momentum_exprs[a];
        ExprPtr pulled = substitute(z.dz.coefficients.at(tau), legendre, tb);
        CHECK(canonically_equal(pulled, cs.model.lagrangian, tb));
    }
}

TEST_CASE("measure comparison quotes the local factors verbatim") {
    MeasureComparison mc = measure_report("frw_lambda");
    CHECK(mc.model_name == "frw_lambda");
    CHECK(mc.canonical_entry ==
          "flat measure over the canonical pairs (q_a, p_a): the product of dq_a dp_a along "
          "the path; no delta functions, no gauge fixing, no determinant or local measure "
          "factors");
    CHECK(mc.faddeev_popov_entry.find("(-g)^(5/2)") != std::string::npos);
    CHECK(mc.fradkin_vilkovisky_entry.find("(-g)^(7/2)·g^00") != std::string::npos);
    CHECK(mc.faddeev_popov_entry.find("requires gauge-fixing conditions") != std::string::npos);
    CHECK(mc.fradkin_vilkovisky_entry.find("requires gauge-fixing conditions") !=
          std::string::npos);
    CHECK(mc.canonical_entry.find("no delta functions, no gauge fixing") != std::string::npos);
}
