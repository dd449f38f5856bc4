#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "esgd/estimators.hpp"
#include "esgd/rng.hpp"

namespace esgd {

enum class Method { Sgd, Esgd, JacobiSgd, RmsProp, AdaGrad };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct OptimizerConfig {
    Method method = Method::Sgd;
    double learning_rate = 0.01;        // epsilon
    double damping = 1e-4;              // lambda, added outside the square root
    int curvature_update_interval = 20; // esgd / jacobi-sgd probe schedule
    double ema_decay = 0.9;             // rho (rmsprop)
    std::uint64_t seed = 0;             // probe stream seed

    void validate() const;
};

// Per-method accumulator meaning:
//   esgd       accum = D (running sum of (Hv)^2), curvature_samples = k
//   jacobi-sgd accum = running sum of v (.) Hv,   curvature_samples = k
//   rmsprop    accum = M (EMA of grad^2)
//   adagrad    accum = S (sum of grad^2)
//   sgd        accum unused
struct OptimizerState {
    OptimizerConfig config;
    std::vector<double> theta;
    std::vector<double> accum;
    long long curvature_samples = 0;
    long long iteration = 0;
    Rng probe_rng;

    OptimizerState(const OptimizerConfig& cfg, std::vector<double> theta0);
};

OptimizerState make_optimizer(const OptimizerConfig& cfg, std::vector<double> theta0);

// theta -= eps * grad.
void sgd_step(OptimizerState& s, std::span<const double> grad);

// Algorithm: on scheduled iterations draw a Gaussian probe v, accumulate
// D += (Hv)^2, k += 1; then theta -= eps * grad / (sqrt(D/k) + lambda).
// With no accumulated samples (or no oracle) the denominator is lambda alone.
void esgd_step(OptimizerState& s, std::span<const double> grad, const HvpFn& hvp_oracle);

// Same schedule with Rademacher probes, sum += v (.) Hv, and denominator
// |sum/k| + lambda.
void jacobi_sgd_step(OptimizerState& s, std::span<const double> grad, const HvpFn& hvp_oracle);

// M = rho M + (1 - rho) grad^2; theta -= eps * grad / (sqrt(M) + lambda).
void rmsprop_step(OptimizerState& s, std::span<const double> grad);

// S += grad^2; theta -= eps * grad / (sqrt(S) + lambda).
void adagrad_step(OptimizerState& s, std::span<const double> grad);

// Dispatch on s.config.method. The oracle is only consulted by esgd and
// jacobi-sgd; it may be empty, which skips curvature accumulation.
void step(OptimizerState& s, std::span<const double> grad, const HvpFn& hvp_oracle = {});

// Current undamped denominator vector: sqrt(D/k), |sum/k|, sqrt(M) or
// sqrt(S). Throws std::runtime_error before any accumulation (cold start)
// and for plain sgd, which keeps no accumulator.
std::vector<double> preconditioner_direction(const OptimizerState& s);

}  // namespace esgd
