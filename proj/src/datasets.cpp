#include "esgd/datasets.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "esgd/rng.hpp"

namespace esgd {

namespace {

std::uint32_t read_be32(const unsigned char* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void write_be32(std::ofstream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                                static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::size_t isqrt_exact(std::size_t dim) {
    const std::size_t s = static_cast<std::size_t>(std::lround(std::sqrt(double(dim))));
    return (s * s == dim) ? s : 0;
}

}  // namespace

Dataset load_idx(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_idx: cannot open '" + path + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 4)
        throw std::runtime_error("load_idx: '" + path + "' has only " +
                                 std::to_string(bytes.size()) + " bytes, magic needs 4");
    if (bytes[0] != 0 || bytes[1] != 0)
        throw std::runtime_error("load_idx: bad magic at byte offset 0 in '" + path + "'");
    if (bytes[2] != 0x08)
        throw std::runtime_error("load_idx: unsupported data type code " +
                                 std::to_string(bytes[2]) + " at byte offset 2 (only ubyte 0x08)");
    const std::size_t ndims = bytes[3];
    if (ndims < 1 || ndims > 3)
        throw std::runtime_error("load_idx: unsupported dimension count " +
                                 std::to_string(ndims) + " at byte offset 3");
    const std::size_t header = 4 + 4 * ndims;
    if (bytes.size() < header)
        throw std::runtime_error("load_idx: truncated header, expected " +
                                 std::to_string(header) + " bytes, got " +
                                 std::to_string(bytes.size()));
    std::size_t dims[3] = {1, 1, 1};
    std::size_t total = 1;
    for (std::size_t d = 0; d < ndims; ++d) {
        dims[d] = read_be32(bytes.data() + 4 + 4 * d);
        total *= dims[d];
    }
    if (bytes.size() != header + total)
        throw std::runtime_error("load_idx: expected " + std::to_string(header + total) +
                                 " bytes, got " + std::to_string(bytes.size()));

    const std::size_t rows = dims[0];
    const std::size_t cols = (ndims == 1) ? 1 : dims[1] * dims[2];
    Dataset ds;
    ds.name = path;
    ds.source = DataSource::IdxFile;
    ds.inputs = DenseMatrix(rows, cols);
    for (std::size_t i = 0; i < total; ++i)
        ds.inputs.data[i] = static_cast<double>(bytes[header + i]) / 255.0;
    ds.targets = ds.inputs;
    return ds;
}

void write_idx(const std::string& path, const DenseMatrix& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_idx: cannot open '" + path + "' for writing");
    const unsigned char magic[4] = {0, 0, 0x08, 2};
    out.write(reinterpret_cast<const char*>(magic), 4);
    write_be32(out, static_cast<std::uint32_t>(values.rows));
    write_be32(out, static_cast<std::uint32_t>(values.cols));
    std::vector<unsigned char> bytes(values.data.size());
    for (std::size_t i = 0; i < values.data.size(); ++i) {
        const double v = std::min(std::max(values.data[i], 0.0), 1.0);
        bytes[i] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write_idx: write to '" + path + "' failed");
}

SyntheticKind synthetic_kind_from_string(const std::string& name) {
    if (name == "curves-like") return SyntheticKind::CurvesLike;
    if (name == "pixel-blobs") return SyntheticKind::PixelBlobs;
    throw std::invalid_argument("unknown synthetic dataset kind '" + name + "'");
}

std::string to_string(SyntheticKind kind) {
    return kind == SyntheticKind::CurvesLike ? "curves-like" : "pixel-blobs";
}

Dataset gen_synthetic(SyntheticKind kind, std::size_t n, std::size_t dim, std::uint64_t seed) {
    if (n < 1 || dim < 1) throw std::invalid_argument("gen_synthetic: n and dim must be >= 1");
    Rng rng(seed);
    Dataset ds;
    ds.name = to_string(kind);
    ds.source = DataSource::Synthetic;
    ds.inputs = DenseMatrix(n, dim);

    if (kind == SyntheticKind::CurvesLike) {
        // Sum of 4 random-amplitude low-frequency harmonics: intrinsic
        // dimension 8, which a narrow bottleneck can capture.
        constexpr int kHarmonics = 4;
        for (std::size_t e = 0; e < n; ++e) {
            double a[kHarmonics], b[kHarmonics];
            for (int k = 0; k < kHarmonics; ++k) {
                const double sigma = 0.18 / (k + 1);
                a[k] = sigma * rng.gaussian();
                b[k] = sigma * rng.gaussian();
            }
            for (std::size_t j = 0; j < dim; ++j) {
                const double t = (dim == 1) ? 0.0 : double(j) / double(dim - 1);
                double v = 0.5;
                for (int k = 0; k < kHarmonics; ++k) {
                    const double w = 2.0 * 3.141592653589793 * (k + 1) * t;
                    v += a[k] * std::sin(w) + b[k] * std::cos(w);
                }
                ds.inputs(e, j) = std::min(std::max(v, 0.0), 1.0);
            }
        }
    } else {
        const std::size_t side = isqrt_exact(dim);
        for (std::size_t e = 0; e < n; ++e) {
            const std::size_t blobs = 2 + rng.integer(2);
            std::vector<double> cx(blobs), cy(blobs), sg(blobs), amp(blobs);
            for (std::size_t bl = 0; bl < blobs; ++bl) {
                const double extent = side ? double(side) : double(dim);
                cx[bl] = rng.uniform(0.0, extent);
                cy[bl] = side ? rng.uniform(0.0, extent) : 0.0;
                sg[bl] = rng.uniform(0.06, 0.18) * extent;
                amp[bl] = rng.uniform(0.5, 1.0);
            }
            for (std::size_t j = 0; j < dim; ++j) {
                const double px = side ? double(j % side) : double(j);
                const double py = side ? double(j / side) : 0.0;
                double v = 0.0;
                for (std::size_t bl = 0; bl < blobs; ++bl) {
                    const double dx = px - cx[bl];
                    const double dy = py - cy[bl];
                    v += amp[bl] * std::exp(-(dx * dx + dy * dy) / (2.0 * sg[bl] * sg[bl]));
                }
                ds.inputs(e, j) = std::min(v, 1.0);
            }
        }
    }
    ds.targets = ds.inputs;
    return ds;
}

}  // namespace esgd
