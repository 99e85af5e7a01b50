#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specrings/matrix.hpp"

namespace specrings {

enum class NoiseKind { real, complex };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& s);

// One Jordan block: `center` on the diagonal, ones on the superdiagonal.
struct BlockSpec {
  cplx center{0.0, 0.0};
  int dim = 1;

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

// The block-Jordan ensemble. N is the sum of block dimensions.
struct ModelSpec {
  std::vector<BlockSpec> blocks;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  NoiseKind noise_kind = NoiseKind::real;

  int n() const;
  int ell() const { return static_cast<int>(blocks.size()); }
  double nu() const { return gamma - 0.5; }
  // a_i = dim_i / ln N. Only meaningful for N >= 2.
  double block_scale(const BlockSpec& b) const;

  // Throws std::invalid_argument on a broken invariant.
  void validate() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Block-diagonal matrix of Jordan blocks.
ComplexMatrix build_jordan(const ModelSpec& spec);

// n x n Gaussian matrix. Real kind: iid N(0,1). Complex kind: real and
// imaginary parts iid N(0,1/2). Row i is drawn from sub-stream i of `seed`.
ComplexMatrix sample_noise(int n, std::uint64_t seed, NoiseKind kind);

// M + N^(-gamma) noise, N = M.rows().
ComplexMatrix perturb(const ComplexMatrix& m, double gamma, const ComplexMatrix& noise);

// build_jordan + sample_noise + perturb for a spec.
ComplexMatrix perturbed_matrix(const ModelSpec& spec);

int ceil_log(int n);

// Five centers {-1, 0, 1, -0.5-0.8i, 0.5-0.8i}, blocks of dimension
// ceil(ln N) handed out round-robin, last block truncated to fill N.
ModelSpec make_fig1_spec(int n, double gamma, std::uint64_t seed = 0);

// All centers 0, block sizes cycling 1, 2, ..., ceil(ln N), last block
// truncated to fill N.
ModelSpec make_fig2_spec(int n, double gamma, std::uint64_t seed = 0);

}  // namespace specrings
