#pragma once

#include <cstdint>
#include <vector>

#include "normeq/problem.hpp"

namespace normeq {

// Banded random family. The raw blocks hold the first column (a1, powers
// z^0, z^-1, ...) and first row (a2, powers z^0, z^1, ...) of a Toeplitz
// symbol; a1[0] is overwritten with a2[0] and both blocks are scaled by
// 1/(sum(a1)+sum(a2)), which counts the shared constant twice and so leaves
// |a|_W = 1 - a0/s < 1. The instance is then built from the square-root
// symbol g (a = 2g - g^2) with b spread over b_raw's support, scaled to half
// the square margin (1-|g|_W)^2 and zero-padded to dimension m. An all-zero
// draw skips the normalizations, so zero blocks yield a = 0, g = 0, A = 2I.
ProblemInstance example1_from(std::vector<double> a1, std::vector<double> a2,
                              Vector b_raw, std::size_t m, bool strict = true);

ProblemInstance gen_example1(std::size_t p = 3, std::size_t q = 10, std::size_t n = 400,
                             std::size_t m = 2000, std::uint64_t seed = 1);

// Dense random family. m_raw is scaled to |M|_1 = 1/(1+delta), so small delta
// drives A = (2-|M|_1)I - M toward singularity; b_raw is scaled in the
// 1-norm to (1 - |M|_1 - sigma)^2, which keeps strict admission by the margin
// sigma. Zero draws skip the scaling, so m_raw = 0 yields the A = 2I baseline.
ProblemInstance example2_from(Matrix m_raw, Vector b_raw, double delta, double sigma,
                              bool strict = true);

ProblemInstance gen_example2(std::size_t n, double delta, double sigma,
                             std::uint64_t seed);

}  // namespace normeq
