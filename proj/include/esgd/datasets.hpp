#pragma once

#include <cstdint>
#include <string>

#include "esgd/dense_matrix.hpp"

namespace esgd {

enum class DataSource { IdxFile, Synthetic };

// Inputs in [0,1]; for reconstruction tasks targets equal inputs.
struct Dataset {
    std::string name;
    DenseMatrix inputs;   // [examples x dim]
    DenseMatrix targets;  // [examples x dim]
    DataSource source = DataSource::Synthetic;

    std::size_t size() const { return inputs.rows; }
    std::size_t dim() const { return inputs.cols; }
};

// Load an IDX file of unsigned bytes (magic 0x0000 08 <ndims>, big-endian
// dimensions; ndims 1..3). Values are scaled to [0,1] and targets are set to
// the inputs. Throws std::runtime_error naming the byte offset on bad magic
// and expected-vs-actual lengths on truncation.
Dataset load_idx(const std::string& path);

// Write a [0,1]-valued matrix as a 2-D ubyte IDX file (values quantized to
// 1/255 steps).
void write_idx(const std::string& path, const DenseMatrix& values);

enum class SyntheticKind { CurvesLike, PixelBlobs };

SyntheticKind synthetic_kind_from_string(const std::string& name);
std::string to_string(SyntheticKind kind);

// Deterministic synthetic reconstruction datasets in [0,1].
//   curves-like: random smooth low-frequency 1-D curves sampled on dim pixels
//   pixel-blobs: a few Gaussian bumps rendered on a square grid when dim is a
//                perfect square, on a 1-D strip otherwise
Dataset gen_synthetic(SyntheticKind kind, std::size_t n, std::size_t dim, std::uint64_t seed);

}  // namespace esgd
