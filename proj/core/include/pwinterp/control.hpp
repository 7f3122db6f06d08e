#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pwinterp/hardy_interpolation.hpp"
#include "pwinterp/interpolation.hpp"

namespace pwinterp {

// Diagonal stable system x' = -diag(rates) x + couplings * u with a scalar
// input. Every rate must have strictly positive real part; rates must be
// distinct. Couplings may be zero: such a mode cannot be moved and is only
// legal to keep when its target equals its free decay.
struct DiagonalSystem {
  std::vector<Complex> rates;
  std::vector<Complex> couplings;
};

DiagonalSystem make_diagonal_system(std::vector<Complex> rates, std::vector<Complex> couplings);

// Smallest real part among the rates.
double stability_margin(const DiagonalSystem&);

// Node/weight pair of the moment problem with no horizon limit: nodes
// i * rate_n (upper half-plane), weights |coupling_n|. Zero couplings drop
// out; their indices are not represented.
WeightedNodeSet moment_nodes_unlimited(const DiagonalSystem&);

// Finite-horizon variant: each weight picks up the factor
// e^{-(tau/2) Re rate}, the price of concentrating the control on [0, tau].
WeightedNodeSet moment_nodes(const DiagonalSystem&, double tau);

// The steering conditions as a weighted interpolation problem. Centering the
// control on the horizon turns each moment into a point evaluation at
// i * rate_n of an entire function of exponential type tau/2; with the
// finite-horizon weights the weighted data are exactly the moments, so
// bounded moments mean bounded data. Modes with zero coupling are excluded
// (their targets must match free decay to tolerance 1e-12).
InterpolationProblem moment_interpolation_problem(const DiagonalSystem&, double tau,
                                                  std::span<const Complex> x0,
                                                  std::span<const Complex> x1);

// A control on [0, horizon]: uniform samples plus, when the signal came from
// the moment solver, an opaque exact modal form u(t) = sum c_m
// e^{-conj(rate_m)(horizon - t)}. The form keeps the solver's full-precision
// coefficients (they cancel across fourteen orders of magnitude on stiff
// ladders, so double copies would corrupt resampling); simulate and
// closed_form_endpoint use it when present. Signals restored from samples
// have no form.
struct ControlSignal {
  class ExponentialForm;

  double horizon = 0.0;
  std::vector<double> times;
  std::vector<Complex> values;
  double norm = 0.0;  // L2 norm on [0, horizon]
  std::shared_ptr<const ExponentialForm> form;
};

struct ControlSolveReport {
  ControlSignal signal;
  std::vector<Complex> coefficients;   // per active mode, aligned with active_indices
  std::vector<std::size_t> active_indices;
  std::vector<std::size_t> excluded;   // zero-coupling modes (free decay verified)
  double gram_condition = 0.0;
  bool regularized = false;            // ridge was needed to factor the Gram
  double moment_residual = 0.0;        // max |G c - M| relative to the moment scale
  double norm = 0.0;                   // = signal.norm
};

struct ControlOptions {
  double free_decay_tol = 1e-12;   // slack for targets of zero-coupling modes
  std::size_t sample_points = 513; // uniform samples stored on the signal
};

// Minimal-L2-norm control steering x0 to x1 over [0, tau]. The optimal signal
// is a combination of the mode exponentials e^{-conj(rate_m)(tau - t)}; its
// coefficients solve the Gram system G c = M. Conditioning of G reaches 1e22
// on geometric rate ladders, so assembly, factorization, conditioning, and
// the norm are all carried in binary128 and only reported in double.
ControlSolveReport min_norm_control(const DiagonalSystem&, double tau,
                                    std::span<const Complex> x0, std::span<const Complex> x1,
                                    const ControlOptions& = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<Complex>> states;  // states[j][n]: mode n at times[j]
  std::vector<Complex> endpoint;
  double endpoint_error = 0.0;  // panel-doubling certificate at the endpoint
};

struct SimulateOptions {
  std::size_t output_points = 257;
  int panels = 128;        // quadrature panels across the horizon (then doubled)
  int points_per_panel = 12;
};

// Integrates the system under a control signal with composite Gauss-Legendre
// panels in binary128: the variation-of-constants integral accumulates one
// output step at a time. Signals carrying their exponential form are
// resampled exactly; sampled-only signals are read through local cubic
// interpolation. The whole sweep runs twice, the second time with doubled
// panels; the endpoint difference is reported as a certificate and the
// refined states are returned.
Trajectory simulate(const DiagonalSystem&, double tau, std::span<const Complex> x0,
                    const ControlSignal&, const SimulateOptions& = {});

// Endpoint by termwise exact integration of the exponential form (no
// quadrature). Requires the signal to carry its form.
std::vector<Complex> closed_form_endpoint(const DiagonalSystem&, double tau,
                                          std::span<const Complex> x0, const ControlSignal&);

// Damped oscillation bank rates = damping + i k frequency, |k| <= modes, unit
// couplings, steered from rest to each coordinate direction in turn. All
// targets share one Gram factorization.
struct OscillationStudy {
  DiagonalSystem system;
  double tau;
  std::vector<ControlSolveReport> per_target;
};

OscillationStudy simple_oscillation_controls(double damping, double frequency, int modes,
                                             double tau, const ControlOptions& = {});

// How controllable the system is, quantified three ways: the box constant of
// the moment measure with no horizon (and over deeper half-planes up to half
// the stability margin), and the Gram conditioning across a horizon grid.
struct ControllabilityReport {
  double margin = 0.0;                       // min Re rate
  std::vector<std::size_t> uncontrollable;   // zero-coupling indices
  double unlimited_constant = 0.0;           // box constant at offset 0
  std::vector<double> offsets;               // {0, margin/4, margin/2}
  std::vector<double> offset_constants;
  std::vector<double> tau_grid;              // {tau/2, tau, 2 tau, 4 tau}
  std::vector<double> gram_conditions;
  std::vector<std::string> notes;
};

ControllabilityReport controllability_report(const DiagonalSystem&, double tau);

}  // namespace pwinterp
