/**
 * Smith normal form over the integers.
 */
#ifndef HOMOFORGE_SNF_HPP
#define HOMOFORGE_SNF_HPP

#include <vector>

#include "homoforge/sparse_matrix.hpp"

namespace homoforge {

struct SnfResult
{
    /// Nonzero invariant factors d_1 | d_2 | ... | d_r, all positive.
    std::vector<Integer> invariant_factors;
    /// True when 64-bit arithmetic overflowed and the GMP path produced the result.
    bool used_big_integers = false;

    std::size_t rank() const { return invariant_factors.size(); }
    /// The factors greater than one (the torsion coefficients of the cokernel).
    std::vector<Integer> torsion() const;
};

struct SnfOptions
{
    /// Skip the checked 64-bit pass and work with GMP integers from the start.
    bool force_big_integers = false;
};

/**
 * Invariant factors of m by unimodular row and column operations.
 *
 * The pivot is always a nonzero entry of least absolute value (ties: lowest
 * column, then lowest row). Its row and column are cleared by division with
 * remainder; a nonzero remainder becomes the next, strictly smaller, pivot.
 * Once isolated, a non-unit pivot that fails to divide some remaining entry
 * gets that entry's row added to its own and is reduced again. Arithmetic is
 * exact: a checked 64-bit pass runs first and the computation restarts on
 * GMP integers if any operation would overflow.
 */
SnfResult smith_normal_form(const SparseIntMatrix& m, SnfOptions options = {});

} // namespace homoforge

#endif
