#include "esgd/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace esgd {

namespace {

std::vector<double> apply_oracle(const CurvatureAccumulator& acc, const HvpFn& hvp_oracle,
                                 const ProbeVector& probe) {
    if (probe.v.size() != acc.dim())
        throw std::invalid_argument("accumulate: probe length " + std::to_string(probe.v.size()) +
                                    " does not match accumulator dimension " +
                                    std::to_string(acc.dim()));
    std::vector<double> hv = hvp_oracle(probe.v);
    if (hv.size() != acc.dim())
        throw std::invalid_argument("accumulate: oracle returned length " +
                                    std::to_string(hv.size()) + ", expected " +
                                    std::to_string(acc.dim()));
    return hv;
}

}  // namespace

void accumulate_equilibration(CurvatureAccumulator& acc, const HvpFn& hvp_oracle,
                              const ProbeVector& probe) {
    if (acc.kind != CurvatureKind::Equilibration)
        throw std::invalid_argument("accumulate_equilibration: accumulator kind mismatch");
    const std::vector<double> hv = apply_oracle(acc, hvp_oracle, probe);
    for (std::size_t i = 0; i < hv.size(); ++i) acc.sum[i] += hv[i] * hv[i];
    ++acc.k;
}

void accumulate_jacobi(CurvatureAccumulator& acc, const HvpFn& hvp_oracle,
                       const ProbeVector& probe) {
    if (acc.kind != CurvatureKind::Jacobi)
        throw std::invalid_argument("accumulate_jacobi: accumulator kind mismatch");
    const std::vector<double> hv = apply_oracle(acc, hvp_oracle, probe);
    for (std::size_t i = 0; i < hv.size(); ++i) acc.sum[i] += probe.v[i] * hv[i];
    ++acc.k;
}

std::vector<double> estimate(const CurvatureAccumulator& acc) {
    if (acc.k == 0) throw std::runtime_error("estimate: accumulator holds no samples");
    std::vector<double> out(acc.dim());
    const double inv_k = 1.0 / static_cast<double>(acc.k);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double mean = acc.sum[i] * inv_k;
        out[i] = (acc.kind == CurvatureKind::Equilibration) ? std::sqrt(mean) : mean;
    }
    return out;
}

CurvatureAccumulator merge(const CurvatureAccumulator& a, const CurvatureAccumulator& b) {
    if (a.kind != b.kind) throw std::invalid_argument("merge: accumulator kinds differ");
    if (a.dim() != b.dim()) throw std::invalid_argument("merge: accumulator dimensions differ");
    CurvatureAccumulator out(a.kind, a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out.sum[i] = a.sum[i] + b.sum[i];
    out.k = a.k + b.k;
    return out;
}

}  // namespace esgd
