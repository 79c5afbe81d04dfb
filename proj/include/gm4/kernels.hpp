#pragma once

#include "gm4/gl2z.hpp"

#include <vector>

namespace gm4 {

// Batch sweeps. The *_serial versions are the reference; the others split the input across
// OpenMP threads and return identical results. Any exception thrown for one element is
// rethrown (lowest index first) after the loop.

std::vector<ConjClass> classify_batch(const std::vector<Mat2>& ms);
std::vector<ConjClass> classify_batch_serial(const std::vector<Mat2>& ms);

std::vector<Rational> psi_batch(const std::vector<Mat2>& ms);
std::vector<Rational> psi_batch_serial(const std::vector<Mat2>& ms);

// class id per matrix; ids numbered by first appearance
std::vector<int> conjugacy_partition(const std::vector<Mat2>& ms, Ambient ambient);
std::vector<int> conjugacy_partition_serial(const std::vector<Mat2>& ms, Ambient ambient);

// all det-1 matrices with entries in [-bound, bound], lexicographic in (a,b,c,d)
std::vector<Mat2> sl2z_box(long bound);

} // namespace gm4
