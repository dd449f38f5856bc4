#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "esgd/rng.hpp"

namespace esgd {

// Hessian-vector product oracle: v -> Hv. May be backed by a network
// (model::hvp over a batch) or by an explicit matrix.
using HvpFn = std::function<std::vector<double>(const std::vector<double>&)>;

enum class ProbeKind { Gaussian, Rademacher };

struct ProbeVector {
    std::vector<double> v;
    ProbeKind kind = ProbeKind::Gaussian;
};

// Sequence of probe vectors from a dedicated seeded stream.
class ProbeSource {
public:
    explicit ProbeSource(std::uint64_t seed) : rng_(seed) {}

    ProbeVector next(std::size_t n, ProbeKind kind) {
        ProbeVector p;
        p.kind = kind;
        p.v.resize(n);
        for (double& x : p.v) x = (kind == ProbeKind::Gaussian) ? rng_.gaussian() : rng_.rademacher();
        return p;
    }

private:
    Rng rng_;
};

// Single deterministic draw; the first probe of the stream seeded by `seed`.
inline ProbeVector sample_probe(std::size_t n, std::uint64_t seed, ProbeKind kind) {
    return ProbeSource(seed).next(n, kind);
}

enum class CurvatureKind { Equilibration, Jacobi };

// Running curvature sums. Equilibration accumulates (Hv)^2 and estimates
// sqrt(diag(H^2)); Jacobi accumulates v (.) Hv and estimates diag(H), signed.
struct CurvatureAccumulator {
    CurvatureKind kind;
    std::vector<double> sum;
    long long k = 0;

    CurvatureAccumulator(CurvatureKind kind_, std::size_t n) : kind(kind_), sum(n, 0.0) {}

    std::size_t dim() const { return sum.size(); }
};

void accumulate_equilibration(CurvatureAccumulator& acc, const HvpFn& hvp_oracle,
                              const ProbeVector& probe);

void accumulate_jacobi(CurvatureAccumulator& acc, const HvpFn& hvp_oracle,
                       const ProbeVector& probe);

// sqrt(sum/k) for equilibration, sum/k for jacobi. Throws when k = 0.
std::vector<double> estimate(const CurvatureAccumulator& acc);

// Combine two accumulators over the same matrix: sums add, counts add.
CurvatureAccumulator merge(const CurvatureAccumulator& a, const CurvatureAccumulator& b);

}  // namespace esgd
