#include "homoforge/echelon.hpp"

#include <stdexcept>
#include <string>

namespace homoforge {

namespace {

Residue inverse_mod(Residue a, Residue p)
{
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a;
    while (new_r != 0)
    {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return static_cast<Residue>(t < 0 ? t + p : t);
}

// v -= c * col over F_p
void axpy_mod(ModVector& v, Residue c, const ModVector& col, Residue p)
{
    const std::uint64_t neg = p - c;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (col[i] != 0)
            v[i] = static_cast<Residue>((v[i] + neg * col[i]) % p);
}

Residue reduce_integer(const Integer& x, std::uint64_t p)
{
    return static_cast<Residue>(mpz_fdiv_ui(x.get_mpz_t(), p));
}

} // namespace

EchelonBasis::EchelonBasis(std::size_t dim, std::uint64_t p) : dim_(dim), pivot_owner_(dim, -1)
{
    if (p > UINT32_MAX || !is_prime(p))
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not a word-size prime");
    p_ = static_cast<Residue>(p);
}

ModVector EchelonBasis::densify(const SparseModVector& v) const
{
    ModVector dense(dim_, 0);
    for (auto [row, value] : v)
    {
        if (row >= dim_)
            throw std::invalid_argument("vector entry beyond basis dimension");
        dense[row] = static_cast<Residue>((dense[row] + value % p_) % p_);
    }
    return dense;
}

void EchelonBasis::reduce(ModVector& v) const
{
    for (std::size_t r = 0; r < dim_; ++r)
        if (v[r] != 0 && pivot_owner_[r] >= 0)
            axpy_mod(v, v[r], columns_[static_cast<std::size_t>(pivot_owner_[r])], p_);
}

bool EchelonBasis::insert(const ModVector& v)
{
    if (v.size() != dim_)
        throw std::invalid_argument("vector length does not match basis dimension");
    ModVector w(v);
    for (auto& x : w)
        x %= p_;
    reduce(w);
    std::size_t pivot = 0;
    while (pivot < dim_ && w[pivot] == 0)
        ++pivot;
    if (pivot == dim_)
        return false;

    const Residue inv = inverse_mod(w[pivot], p_);
    for (auto& x : w)
        x = static_cast<Residue>(static_cast<std::uint64_t>(x) * inv % p_);
    for (auto& col : columns_)
        if (col[pivot] != 0)
            axpy_mod(col, col[pivot], w, p_);

    pivot_owner_[pivot] = static_cast<std::int64_t>(columns_.size());
    pivot_of_column_.push_back(static_cast<Index>(pivot));
    columns_.push_back(std::move(w));
    return true;
}

bool EchelonBasis::insert(const SparseModVector& v)
{
    return insert(densify(v));
}

bool EchelonBasis::in_span(const ModVector& v) const
{
    if (v.size() != dim_)
        throw std::invalid_argument("vector length does not match basis dimension");
    ModVector w(v);
    for (auto& x : w)
        x %= p_;
    reduce(w);
    for (Residue x : w)
        if (x != 0)
            return false;
    return true;
}

bool EchelonBasis::in_span(const SparseModVector& v) const
{
    return in_span(densify(v));
}

std::vector<Index> EchelonBasis::pivot_rows() const
{
    return pivot_of_column_;
}

SparseModVector column_mod_p(const SparseIntMatrix& m, Index c, std::uint64_t p)
{
    SparseModVector out;
    for (const auto& e : m.column(c))
        if (Residue r = reduce_integer(e.value, p); r != 0)
            out.emplace_back(e.row, r);
    return out;
}

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint64_t p)
{
    EchelonBasis basis(m.rows(), p);
    for (Index c = 0; c < m.cols() && basis.rank() < m.rows(); ++c)
        basis.insert(column_mod_p(m, c, p));
    return basis.rank();
}

SparseModVector simplex_boundary_mod_p(std::span<const Vertex> simplex, std::uint64_t p)
{
    SparseModVector out;
    for (auto [row, sign] : simplex_boundary(simplex))
        out.emplace_back(static_cast<Index>(row), static_cast<Residue>(sign > 0 ? 1 % p : p - 1));
    return out;
}

} // namespace homoforge
