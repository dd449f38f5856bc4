#include "esgd/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "esgd/dual.hpp"
#include "esgd/rng.hpp"

namespace esgd {

namespace {

void check_shapes(const MlpSpec& spec, std::size_t theta_len, const Batch& batch) {
    spec.validate();
    if (theta_len != spec.param_count())
        throw std::invalid_argument("mlp: parameter vector has length " +
                                    std::to_string(theta_len) + ", expected " +
                                    std::to_string(spec.param_count()));
    if (batch.inputs.cols != spec.input_dim())
        throw std::invalid_argument("mlp: batch input dim " + std::to_string(batch.inputs.cols) +
                                    " does not match network input " +
                                    std::to_string(spec.input_dim()));
    if (batch.targets.cols != spec.output_dim())
        throw std::invalid_argument("mlp: batch target dim " + std::to_string(batch.targets.cols) +
                                    " does not match network output " +
                                    std::to_string(spec.output_dim()));
    if (batch.inputs.rows != batch.targets.rows)
        throw std::invalid_argument("mlp: input/target row counts differ");
    if (batch.size() == 0) throw std::invalid_argument("mlp: empty batch");
}

template <class T>
T stable_sigmoid(T x) {
    using std::exp;
    if (value(x) >= 0.0) {
        const T e = exp(-x);
        return 1.0 / (1.0 + e);
    }
    const T e = exp(x);
    return e / (1.0 + e);
}

// log(1 + e^x) without overflow.
template <class T>
T softplus(T x) {
    using std::exp;
    using std::log1p;
    if (value(x) > 0.0) return x + log1p(exp(-x));
    return log1p(exp(x));
}

template <class T>
struct Workspace {
    std::vector<std::vector<T>> acts;  // acts[l]: activations feeding weight layer l
    std::vector<T> out;                // output pre-activations
    std::vector<T> probs;              // softmax/sigmoid outputs where applicable
    std::vector<T> delta, delta_prev;

    explicit Workspace(const MlpSpec& spec) {
        const std::size_t nl = spec.weight_layers();
        acts.resize(nl);
        for (std::size_t l = 0; l < nl; ++l) acts[l].resize(spec.layer_sizes[l]);
        out.resize(spec.output_dim());
        probs.resize(spec.output_dim());
        std::size_t widest = 0;
        for (std::size_t s : spec.layer_sizes) widest = std::max(widest, s);
        delta.resize(widest);
        delta_prev.resize(widest);
    }
};

// Forward pass for one example; fills ws.acts and ws.out.
template <class T>
void forward_example(const MlpSpec& spec, std::span<const T> theta, const Batch& batch,
                     std::size_t e, Workspace<T>& ws) {
    const std::size_t nl = spec.weight_layers();
    for (std::size_t j = 0; j < spec.input_dim(); ++j) ws.acts[0][j] = batch.inputs(e, j);
    std::size_t off = 0;
    for (std::size_t l = 0; l < nl; ++l) {
        const std::size_t in = spec.layer_sizes[l];
        const std::size_t out_n = spec.layer_sizes[l + 1];
        const T* w = theta.data() + off;
        const T* b = w + in * out_n;
        std::vector<T>& next = (l + 1 < nl) ? ws.acts[l + 1] : ws.out;
        for (std::size_t j = 0; j < out_n; ++j) {
            T z = b[j];
            const T* wrow = w + j * in;
            for (std::size_t k = 0; k < in; ++k) z += wrow[k] * ws.acts[l][k];
            next[j] = (l + 1 < nl) ? stable_sigmoid(z) : z;
        }
        off += (in + 1) * out_n;
    }
}

// Per-example loss and the loss derivative w.r.t. output pre-activations.
template <class T>
T output_loss_and_delta(const MlpSpec& spec, const Batch& batch, std::size_t e,
                        const std::vector<T>& z, std::vector<T>& dz) {
    using std::exp;
    const std::size_t k_out = spec.output_dim();
    T ex_loss = 0.0;
    switch (spec.loss) {
        case LossKind::LinearMse:
            for (std::size_t k = 0; k < k_out; ++k) {
                const T r = z[k] - batch.targets(e, k);
                ex_loss += r * r;
                dz[k] = 2.0 * r;
            }
            break;
        case LossKind::SigmoidBinaryCrossEntropy:
            for (std::size_t k = 0; k < k_out; ++k) {
                const double t = batch.targets(e, k);
                ex_loss += softplus(z[k]) - t * z[k];
                dz[k] = stable_sigmoid(z[k]) - t;
            }
            break;
        case LossKind::SoftmaxCrossEntropy: {
            double zmax = value(z[0]);
            for (std::size_t k = 1; k < k_out; ++k) zmax = std::max(zmax, value(z[k]));
            T sum_e = 0.0;
            for (std::size_t k = 0; k < k_out; ++k) sum_e += exp(z[k] - zmax);
            using std::log;
            const T lse = zmax + log(sum_e);
            double t_sum = 0.0;
            for (std::size_t k = 0; k < k_out; ++k) {
                const double t = batch.targets(e, k);
                t_sum += t;
                ex_loss += t * (lse - z[k]);
            }
            for (std::size_t k = 0; k < k_out; ++k) {
                const T p = exp(z[k] - lse);
                dz[k] = t_sum * p - batch.targets(e, k);
            }
            break;
        }
    }
    return ex_loss;
}

// Mean batch loss; when grad_out is non-null also accumulates the exact
// reverse-mode gradient. Summation is sequential in example order.
template <class T>
T batch_objective(const MlpSpec& spec, std::span<const T> theta, const Batch& batch,
                  std::vector<T>* grad_out) {
    const std::size_t nl = spec.weight_layers();
    const std::size_t m = batch.size();
    Workspace<T> ws(spec);
    if (grad_out) grad_out->assign(theta.size(), T(0.0));

    T total = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
        forward_example(spec, theta, batch, e, ws);
        total += output_loss_and_delta(spec, batch, e, ws.out, ws.delta);
        if (!grad_out) continue;

        std::size_t off = theta.size();
        for (std::size_t l = nl; l-- > 0;) {
            const std::size_t in = spec.layer_sizes[l];
            const std::size_t out_n = spec.layer_sizes[l + 1];
            off -= (in + 1) * out_n;
            const T* w = theta.data() + off;
            T* gw = grad_out->data() + off;
            T* gb = gw + in * out_n;
            for (std::size_t j = 0; j < out_n; ++j) {
                const T d = ws.delta[j];
                T* gwrow = gw + j * in;
                for (std::size_t k = 0; k < in; ++k) gwrow[k] += d * ws.acts[l][k];
                gb[j] += d;
            }
            if (l == 0) break;
            for (std::size_t k = 0; k < in; ++k) {
                T s = 0.0;
                for (std::size_t j = 0; j < out_n; ++j) s += w[j * in + k] * ws.delta[j];
                const T h = ws.acts[l][k];
                ws.delta_prev[k] = s * h * (1.0 - h);
            }
            std::swap(ws.delta, ws.delta_prev);
        }
    }

    const double inv_m = 1.0 / static_cast<double>(m);
    if (grad_out)
        for (T& g : *grad_out) g *= inv_m;
    return total * inv_m;
}

}  // namespace

void MlpSpec::validate() const {
    if (layer_sizes.size() < 2)
        throw std::invalid_argument("MlpSpec: need at least input and output layers");
    for (std::size_t s : layer_sizes)
        if (s < 1) throw std::invalid_argument("MlpSpec: all layer sizes must be >= 1");
}

double loss(const MlpSpec& spec, std::span<const double> theta, const Batch& batch) {
    check_shapes(spec, theta.size(), batch);
    return batch_objective<double>(spec, theta, batch, nullptr);
}

std::vector<double> gradient(const MlpSpec& spec, std::span<const double> theta,
                             const Batch& batch) {
    check_shapes(spec, theta.size(), batch);
    std::vector<double> grad;
    batch_objective<double>(spec, theta, batch, &grad);
    return grad;
}

std::vector<double> hvp(const MlpSpec& spec, std::span<const double> theta, const Batch& batch,
                        std::span<const double> v) {
    check_shapes(spec, theta.size(), batch);
    if (v.size() != theta.size())
        throw std::invalid_argument("hvp: direction has length " + std::to_string(v.size()) +
                                    ", expected " + std::to_string(theta.size()));
    std::vector<Dual> theta_d(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) theta_d[i] = Dual(theta[i], v[i]);
    std::vector<Dual> grad_d;
    batch_objective<Dual>(spec, std::span<const Dual>(theta_d), batch, &grad_d);
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) out[i] = grad_d[i].du;
    return out;
}

DenseMatrix exact_hessian(const MlpSpec& spec, std::span<const double> theta, const Batch& batch,
                          std::size_t cap) {
    check_shapes(spec, theta.size(), batch);
    const std::size_t n = theta.size();
    if (n > cap)
        throw std::invalid_argument("exact_hessian: " + std::to_string(n) +
                                    " parameters exceed the cap of " + std::to_string(cap));
    DenseMatrix h(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        e[i] = 1.0;
        const std::vector<double> col = hvp(spec, theta, batch, e);
        e[i] = 0.0;
        for (std::size_t r = 0; r < n; ++r) h(r, i) = col[r];
    }
    return symmetrized(h);
}

std::vector<double> gauss_newton_diag(const MlpSpec& spec, std::span<const double> theta,
                                      const Batch& batch, std::size_t cap) {
    check_shapes(spec, theta.size(), batch);
    const std::size_t n = theta.size();
    if (n > cap)
        throw std::invalid_argument("gauss_newton_diag: " + std::to_string(n) +
                                    " parameters exceed the cap of " + std::to_string(cap));
    const std::size_t nl = spec.weight_layers();
    const std::size_t m = batch.size();
    const std::size_t k_out = spec.output_dim();
    Workspace<double> ws(spec);

    std::vector<double> diag(n, 0.0);
    std::vector<double> jac_row(n);
    // Streaming accumulators for the softmax curvature diag(p) - p p^T.
    std::vector<double> sm_a(spec.loss == LossKind::SoftmaxCrossEntropy ? n : 0);
    std::vector<double> sm_b(sm_a.size());

    for (std::size_t e = 0; e < m; ++e) {
        forward_example(spec, theta, batch, e, ws);
        double t_sum = 0.0;
        if (spec.loss == LossKind::SoftmaxCrossEntropy) {
            double zmax = ws.out[0];
            for (std::size_t k = 1; k < k_out; ++k) zmax = std::max(zmax, ws.out[k]);
            double sum_e = 0.0;
            for (std::size_t k = 0; k < k_out; ++k) sum_e += std::exp(ws.out[k] - zmax);
            for (std::size_t k = 0; k < k_out; ++k)
                ws.probs[k] = std::exp(ws.out[k] - zmax) / sum_e;
            for (std::size_t k = 0; k < k_out; ++k) t_sum += batch.targets(e, k);
            std::fill(sm_a.begin(), sm_a.end(), 0.0);
            std::fill(sm_b.begin(), sm_b.end(), 0.0);
        }

        for (std::size_t k = 0; k < k_out; ++k) {
            // One backward pass from output unit k gives the Jacobian row
            // d z_k / d theta.
            std::fill(jac_row.begin(), jac_row.end(), 0.0);
            std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
            ws.delta[k] = 1.0;
            std::size_t off = n;
            for (std::size_t l = nl; l-- > 0;) {
                const std::size_t in = spec.layer_sizes[l];
                const std::size_t out_n = spec.layer_sizes[l + 1];
                off -= (in + 1) * out_n;
                const double* w = theta.data() + off;
                double* gw = jac_row.data() + off;
                double* gb = gw + in * out_n;
                for (std::size_t j = 0; j < out_n; ++j) {
                    const double d = ws.delta[j];
                    if (d == 0.0) continue;
                    double* gwrow = gw + j * in;
                    for (std::size_t kk = 0; kk < in; ++kk) gwrow[kk] += d * ws.acts[l][kk];
                    gb[j] += d;
                }
                if (l == 0) break;
                for (std::size_t kk = 0; kk < in; ++kk) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < out_n; ++j) s += w[j * in + kk] * ws.delta[j];
                    const double h = ws.acts[l][kk];
                    ws.delta_prev[kk] = s * h * (1.0 - h);
                }
                std::swap(ws.delta, ws.delta_prev);
            }

            switch (spec.loss) {
                case LossKind::LinearMse:
                    for (std::size_t p = 0; p < n; ++p) diag[p] += 2.0 * jac_row[p] * jac_row[p];
                    break;
                case LossKind::SigmoidBinaryCrossEntropy: {
                    const double pk = stable_sigmoid(ws.out[k]);
                    const double c = pk * (1.0 - pk);
                    for (std::size_t p = 0; p < n; ++p) diag[p] += c * jac_row[p] * jac_row[p];
                    break;
                }
                case LossKind::SoftmaxCrossEntropy: {
                    const double pk = ws.probs[k];
                    for (std::size_t p = 0; p < n; ++p) {
                        sm_a[p] += pk * jac_row[p] * jac_row[p];
                        sm_b[p] += pk * jac_row[p];
                    }
                    break;
                }
            }
        }
        if (spec.loss == LossKind::SoftmaxCrossEntropy)
            for (std::size_t p = 0; p < n; ++p) diag[p] += t_sum * (sm_a[p] - sm_b[p] * sm_b[p]);
    }

    const double inv_m = 1.0 / static_cast<double>(m);
    for (double& d : diag) d = std::max(d * inv_m, 0.0);
    return diag;
}

std::vector<double> sparse_init(const MlpSpec& spec, std::uint64_t seed,
                                std::size_t connections_per_neuron) {
    spec.validate();
    Rng rng(seed);
    std::vector<double> theta(spec.param_count(), 0.0);
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < spec.layer_sizes.size(); ++l) {
        const std::size_t in = spec.layer_sizes[l];
        const std::size_t out_n = spec.layer_sizes[l + 1];
        std::vector<std::size_t> idx(in);
        for (std::size_t j = 0; j < out_n; ++j) {
            const std::size_t k = std::min(connections_per_neuron, in);
            for (std::size_t i = 0; i < in; ++i) idx[i] = i;
            for (std::size_t i = 0; i < k; ++i)
                std::swap(idx[i], idx[i + rng.integer(in - i)]);
            for (std::size_t i = 0; i < k; ++i)
                theta[off + j * in + idx[i]] = rng.gaussian();
        }
        off += (in + 1) * out_n;
    }
    return theta;
}

}  // namespace esgd
