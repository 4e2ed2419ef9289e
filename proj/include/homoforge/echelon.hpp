/**
 * Incremental column echelon bases over F_p.
 */
#ifndef HOMOFORGE_ECHELON_HPP
#define HOMOFORGE_ECHELON_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "homoforge/sparse_matrix.hpp"

namespace homoforge {

using Residue = std::uint32_t;
using ModVector = std::vector<Residue>;
/// (row, residue) pairs; residues need not be reduced.
using SparseModVector = std::vector<std::pair<Index, Residue>>;

/**
 * A fully reduced basis of a subspace of F_p^dim.
 *
 * Every stored column owns one pivot row where it holds 1 and all other
 * columns hold 0. Testing membership of a vector with k nonzeros therefore
 * costs at most k column subtractions, which keeps shadow scans over all
 * C(n,3) triangles cheap.
 */
class EchelonBasis
{
  public:
    /// p must be a prime below 2^32.
    EchelonBasis(std::size_t dim, std::uint64_t p);

    std::size_t dim() const { return dim_; }
    Residue modulus() const { return p_; }
    std::size_t rank() const { return columns_.size(); }

    /// Inserts v if it is independent of the basis; returns whether it was.
    bool insert(const ModVector& v);
    bool insert(const SparseModVector& v);

    /// True iff v lies in the span. The basis is not modified.
    bool in_span(const ModVector& v) const;
    bool in_span(const SparseModVector& v) const;

    /// Pivot row of each stored column, in insertion order.
    std::vector<Index> pivot_rows() const;
    const ModVector& column(std::size_t i) const { return columns_.at(i); }

  private:
    ModVector densify(const SparseModVector& v) const;
    /// Subtracts the pivot columns from v in place; v must be reduced mod p.
    void reduce(ModVector& v) const;

    std::size_t dim_;
    Residue p_;
    std::vector<ModVector> columns_;
    std::vector<std::int64_t> pivot_owner_;   ///< column owning each row, or -1
    std::vector<Index> pivot_of_column_;
};

/// Rank of m with entries reduced mod p. Throws if p is not prime.
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint64_t p);

/// Column c of m reduced mod p.
SparseModVector column_mod_p(const SparseIntMatrix& m, Index c, std::uint64_t p);

/// The boundary of a sorted simplex reduced mod p, rows in colex order.
SparseModVector simplex_boundary_mod_p(std::span<const Vertex> simplex, std::uint64_t p);

} // namespace homoforge

#endif
