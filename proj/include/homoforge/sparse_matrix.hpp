/**
 * Exact sparse integer matrices and simplicial boundary operators.
 */
#ifndef HOMOFORGE_SPARSE_MATRIX_HPP
#define HOMOFORGE_SPARSE_MATRIX_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "homoforge/complex.hpp"

namespace homoforge {

using Integer = mpz_class;
using Index = std::uint32_t;

/// One stored entry of a sparse column.
template <class Scalar>
struct Entry
{
    Index row;
    Scalar value;
};

template <class Scalar>
using SparseColumn = std::vector<Entry<Scalar>>;

/**
 * Column-compressed integer matrix with arbitrary-precision entries.
 * Each column keeps its nonzero entries sorted by row; zeros are never
 * stored.
 */
class SparseIntMatrix
{
  public:
    SparseIntMatrix() = default;
    SparseIntMatrix(Index rows, Index cols);

    Index rows() const { return rows_; }
    Index cols() const { return static_cast<Index>(cols_.size()); }
    std::size_t nonzeros() const;

    /// Sets (r, c); a zero value erases the entry.
    void set(Index r, Index c, const Integer& value);
    Integer get(Index r, Index c) const;

    const SparseColumn<Integer>& column(Index c) const { return cols_.at(c); }
    /// Appends a column; entries are sorted and zeros dropped.
    void push_column(SparseColumn<Integer> column);

    static SparseIntMatrix identity(Index k);
    static SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& rows);
    std::vector<std::vector<Integer>> to_dense() const;

    friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&);

  private:
    Index rows_ = 0;
    std::vector<SparseColumn<Integer>> cols_;
};

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b);

/// Boundary of a sorted simplex as (row rank, sign) pairs: the face with
/// vertex i removed carries (-1)^i.
std::vector<std::pair<Rank, int>> simplex_boundary(std::span<const Vertex> simplex);

/**
 * The top boundary operator of y: rows are the C(n, d) faces of dimension
 * d - 1 in colex order, columns are the faces of y in insertion order.
 */
SparseIntMatrix boundary_matrix(const Complex& y);

/// The boundary from k-faces to (k-1)-faces of the full simplex on n
/// vertices; k >= 1. Used for the boundary-of-boundary identity.
SparseIntMatrix full_boundary_matrix(Vertex n, unsigned k);

/**
 * Text format: header "rows cols", then one "row col value" line per
 * entry, 0-based. Blank lines and lines starting with '#' are ignored.
 * Throws ParseError carrying the offending line number.
 */
SparseIntMatrix read_matrix(std::istream& is);
void write_matrix(std::ostream& os, const SparseIntMatrix& m);

} // namespace homoforge

#endif
