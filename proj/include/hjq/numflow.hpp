#pragma once

#include "hjq/canonical_system.hpp"
#include "hjq/integrability.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hjq {

// Piecewise-linear contour through parameter space. Every waypoint must
// assign a finite value to every parameter time of the system.
struct ParameterPath {
    std::vector<std::map<SymbolId, double>> waypoints;
};

struct FlowSample {
    double s = 0.0;
    std::vector<double> state;      // ordered as FlowResult::state_symbols
    double z = 0.0;
    std::vector<double> residuals;  // ordered as FlowResult::constraint_labels
};

struct FlowResult {
    std::vector<SymbolId> state_symbols;  // q_a..., p_a..., then parameter momenta
    std::vector<std::string> constraint_labels;
    std::vector<FlowSample> samples;      // ordered by arc length s
    double max_constraint_residual = 0.0;
    std::vector<double> final_state;
};

struct FlowOptions {
    double step = 1e-3;
    // When set, initial data off the constraint surface raises
    // InitialDataError instead of flowing with the violation reported.
    bool enforce_initial = true;
    double surface_tolerance = 1e-10;
};

// Fixed-step classical fourth-order Runge-Kutta in the contour arc length.
// The state carries the expressible pairs and the parameter momenta; the
// parameter times are driven by the contour. Momenta absent from `initial`
// for parameter coordinates default to their on-surface values. All bracket
// coefficients are compiled to stack programs once before stepping.
FlowResult integrate_flow(const CanonicalSystem& cs, const ClosureReport& report,
                          const ParameterPath& path, const std::map<SymbolId, double>& initial,
                          const FlowOptions& opts);

double constraint_drift(const FlowResult& result);
double action_along_flow(const FlowResult& result);

// Runs both contours from the same data and returns the largest final-state
// component difference. The contours must share first and last waypoints and
// the system must be integrable.
double path_independence_check(const CanonicalSystem& cs, const ClosureReport& report,
                               const ParameterPath& path_a, const ParameterPath& path_b,
                               const std::map<SymbolId, double>& initial, double step);

// Relative error between the symbolic derivative of e with respect to s and
// a central difference at the given point.
double finite_difference_check(const ExprPtr& e, SymbolId s,
                               const std::map<SymbolId, double>& point,
                               const SymbolTable& table);

void write_flow_csv(const FlowResult& result, const SymbolTable& table, std::ostream& os);
std::string flow_summary_json(const FlowResult& result, const SymbolTable& table);

} // namespace hjq
