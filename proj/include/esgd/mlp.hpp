#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "esgd/dense_matrix.hpp"

namespace esgd {

enum class LossKind {
    SoftmaxCrossEntropy,        // softmax output, one-hot-style targets
    SigmoidBinaryCrossEntropy,  // elementwise sigmoid output, targets in [0,1]
    LinearMse                   // identity output, squared error summed over dims
};

// Fully-connected network with sigmoid hidden units. The output
// nonlinearity is fused into the loss.
struct MlpSpec {
    std::vector<std::size_t> layer_sizes;  // input size first; at least 2 entries
    LossKind loss = LossKind::LinearMse;

    std::size_t input_dim() const { return layer_sizes.front(); }
    std::size_t output_dim() const { return layer_sizes.back(); }
    std::size_t weight_layers() const { return layer_sizes.size() - 1; }

    // Flat parameter layout, frozen: for each weight layer l the row-major
    // weight block [layer_sizes[l+1] x layer_sizes[l]] is followed by the
    // bias block [layer_sizes[l+1]]; layers are laid out consecutively.
    std::size_t param_count() const {
        std::size_t n = 0;
        for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l)
            n += (layer_sizes[l] + 1) * layer_sizes[l + 1];
        return n;
    }

    void validate() const;
};

struct Batch {
    DenseMatrix inputs;   // [examples x input_dim]
    DenseMatrix targets;  // [examples x output_dim]

    std::size_t size() const { return inputs.rows; }
};

// Mean loss over the batch; per-example loss is summed over output units.
double loss(const MlpSpec& spec, std::span<const double> theta, const Batch& batch);

// Exact reverse-mode gradient of `loss`.
std::vector<double> gradient(const MlpSpec& spec, std::span<const double> theta,
                             const Batch& batch);

// Exact Hessian-vector product, computed forward-over-reverse: the gradient
// computation is replayed in dual arithmetic with theta perturbed along v.
std::vector<double> hvp(const MlpSpec& spec, std::span<const double> theta, const Batch& batch,
                        std::span<const double> v);

// Dense Hessian assembled column by column from hvp(e_i), then symmetrized
// as (H + H^T)/2. Throws when param_count() exceeds `cap`.
DenseMatrix exact_hessian(const MlpSpec& spec, std::span<const double> theta, const Batch& batch,
                          std::size_t cap = 5000);

// Diagonal of the Gauss-Newton matrix J^T H_L J, J the Jacobian of output
// pre-activations w.r.t. theta and H_L the positive semi-definite Hessian of
// the loss w.r.t. those pre-activations. Entries are >= 0.
std::vector<double> gauss_newton_diag(const MlpSpec& spec, std::span<const double> theta,
                                      const Batch& batch, std::size_t cap = 5000);

// Sparse initialization: each output neuron receives exactly
// min(connections_per_neuron, fan_in) incoming weights drawn from N(0,1),
// the rest zero; all biases zero. Deterministic per seed.
std::vector<double> sparse_init(const MlpSpec& spec, std::uint64_t seed,
                                std::size_t connections_per_neuron = 15);

}  // namespace esgd
