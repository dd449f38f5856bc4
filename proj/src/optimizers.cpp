#include "esgd/optimizers.hpp"

#include <cmath>
#include <stdexcept>

namespace esgd {

namespace {

void check_grad(const OptimizerState& s, std::span<const double> grad) {
    if (grad.size() != s.theta.size())
        throw std::invalid_argument("step: gradient length " + std::to_string(grad.size()) +
                                    " does not match parameter count " +
                                    std::to_string(s.theta.size()));
}

bool on_schedule(const OptimizerState& s) {
    return s.iteration % s.config.curvature_update_interval == 0;
}

void preconditioned_update(OptimizerState& s, std::span<const double> grad,
                           bool take_abs_of_mean) {
    const double eps = s.config.learning_rate;
    const double lambda = s.config.damping;
    if (s.curvature_samples == 0) {
        for (std::size_t i = 0; i < s.theta.size(); ++i) s.theta[i] -= eps * grad[i] / lambda;
        return;
    }
    const double inv_k = 1.0 / static_cast<double>(s.curvature_samples);
    for (std::size_t i = 0; i < s.theta.size(); ++i) {
        const double mean = s.accum[i] * inv_k;
        const double denom = (take_abs_of_mean ? std::fabs(mean) : std::sqrt(mean)) + lambda;
        s.theta[i] -= eps * grad[i] / denom;
    }
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::Sgd: return "sgd";
        case Method::Esgd: return "esgd";
        case Method::JacobiSgd: return "jacobi-sgd";
        case Method::RmsProp: return "rmsprop";
        case Method::AdaGrad: return "adagrad";
    }
    return "unknown";
}

Method method_from_string(const std::string& name) {
    if (name == "sgd") return Method::Sgd;
    if (name == "esgd") return Method::Esgd;
    if (name == "jacobi-sgd" || name == "jacobi") return Method::JacobiSgd;
    if (name == "rmsprop") return Method::RmsProp;
    if (name == "adagrad") return Method::AdaGrad;
    throw std::invalid_argument("unknown method '" + name + "'");
}

void OptimizerConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("OptimizerConfig: learning_rate must be > 0");
    if (!(damping > 0.0)) throw std::invalid_argument("OptimizerConfig: damping must be > 0");
    if (curvature_update_interval < 1)
        throw std::invalid_argument("OptimizerConfig: curvature_update_interval must be >= 1");
    if (method == Method::RmsProp && !(ema_decay > 0.0 && ema_decay < 1.0))
        throw std::invalid_argument("OptimizerConfig: ema_decay must lie in (0,1)");
}

OptimizerState::OptimizerState(const OptimizerConfig& cfg, std::vector<double> theta0)
    : config(cfg),
      theta(std::move(theta0)),
      accum(theta.size(), 0.0),
      probe_rng(Rng::substream(cfg.seed, 0x70726f6265ull)) {
    cfg.validate();
}

OptimizerState make_optimizer(const OptimizerConfig& cfg, std::vector<double> theta0) {
    return OptimizerState(cfg, std::move(theta0));
}

void sgd_step(OptimizerState& s, std::span<const double> grad) {
    check_grad(s, grad);
    const double eps = s.config.learning_rate;
    for (std::size_t i = 0; i < s.theta.size(); ++i) s.theta[i] -= eps * grad[i];
    ++s.iteration;
}

void esgd_step(OptimizerState& s, std::span<const double> grad, const HvpFn& hvp_oracle) {
    check_grad(s, grad);
    if (hvp_oracle && on_schedule(s)) {
        std::vector<double> v(s.theta.size());
        for (double& x : v) x = s.probe_rng.gaussian();
        const std::vector<double> hv = hvp_oracle(v);
        if (hv.size() != s.theta.size())
            throw std::invalid_argument("esgd_step: oracle dimension mismatch");
        for (std::size_t i = 0; i < hv.size(); ++i) s.accum[i] += hv[i] * hv[i];
        ++s.curvature_samples;
    }
    preconditioned_update(s, grad, /*take_abs_of_mean=*/false);
    ++s.iteration;
}

void jacobi_sgd_step(OptimizerState& s, std::span<const double> grad, const HvpFn& hvp_oracle) {
    check_grad(s, grad);
    if (hvp_oracle && on_schedule(s)) {
        std::vector<double> v(s.theta.size());
        for (double& x : v) x = s.probe_rng.rademacher();
        const std::vector<double> hv = hvp_oracle(v);
        if (hv.size() != s.theta.size())
            throw std::invalid_argument("jacobi_sgd_step: oracle dimension mismatch");
        for (std::size_t i = 0; i < hv.size(); ++i) s.accum[i] += v[i] * hv[i];
        ++s.curvature_samples;
    }
    preconditioned_update(s, grad, /*take_abs_of_mean=*/true);
    ++s.iteration;
}

void rmsprop_step(OptimizerState& s, std::span<const double> grad) {
    check_grad(s, grad);
    const double rho = s.config.ema_decay;
    const double eps = s.config.learning_rate;
    const double lambda = s.config.damping;
    for (std::size_t i = 0; i < s.theta.size(); ++i) {
        s.accum[i] = rho * s.accum[i] + (1.0 - rho) * grad[i] * grad[i];
        s.theta[i] -= eps * grad[i] / (std::sqrt(s.accum[i]) + lambda);
    }
    ++s.iteration;
}

void adagrad_step(OptimizerState& s, std::span<const double> grad) {
    check_grad(s, grad);
    const double eps = s.config.learning_rate;
    const double lambda = s.config.damping;
    for (std::size_t i = 0; i < s.theta.size(); ++i) {
        s.accum[i] += grad[i] * grad[i];
        s.theta[i] -= eps * grad[i] / (std::sqrt(s.accum[i]) + lambda);
    }
    ++s.iteration;
}

void step(OptimizerState& s, std::span<const double> grad, const HvpFn& hvp_oracle) {
    switch (s.config.method) {
        case Method::Sgd: sgd_step(s, grad); break;
        case Method::Esgd: esgd_step(s, grad, hvp_oracle); break;
        case Method::JacobiSgd: jacobi_sgd_step(s, grad, hvp_oracle); break;
        case Method::RmsProp: rmsprop_step(s, grad); break;
        case Method::AdaGrad: adagrad_step(s, grad); break;
    }
}

std::vector<double> preconditioner_direction(const OptimizerState& s) {
    switch (s.config.method) {
        case Method::Sgd:
            throw std::runtime_error("preconditioner_direction: sgd keeps no accumulator");
        case Method::Esgd:
        case Method::JacobiSgd: {
            if (s.curvature_samples == 0)
                throw std::runtime_error("preconditioner_direction: no curvature samples yet");
            std::vector<double> out(s.theta.size());
            const double inv_k = 1.0 / static_cast<double>(s.curvature_samples);
            for (std::size_t i = 0; i < out.size(); ++i) {
                const double mean = s.accum[i] * inv_k;
                out[i] = (s.config.method == Method::Esgd) ? std::sqrt(mean) : std::fabs(mean);
            }
            return out;
        }
        case Method::RmsProp:
        case Method::AdaGrad: {
            if (s.iteration == 0)
                throw std::runtime_error("preconditioner_direction: no steps taken yet");
            std::vector<double> out(s.theta.size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(s.accum[i]);
            return out;
        }
    }
    throw std::runtime_error("preconditioner_direction: unknown method");
}

}  // namespace esgd
