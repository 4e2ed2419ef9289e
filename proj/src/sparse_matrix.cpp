#include "homoforge/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "homoforge/errors.hpp"

namespace homoforge {

SparseIntMatrix::SparseIntMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {}

std::size_t SparseIntMatrix::nonzeros() const
{
    std::size_t total = 0;
    for (const auto& c : cols_)
        total += c.size();
    return total;
}

void SparseIntMatrix::set(Index r, Index c, const Integer& value)
{
    if (r >= rows_ || c >= cols())
        throw std::out_of_range("matrix index out of range");
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, Index row) { return e.row < row; });
    const bool present = it != col.end() && it->row == r;
    if (value == 0)
    {
        if (present)
            col.erase(it);
    }
    else if (present)
        it->value = value;
    else
        col.insert(it, {r, value});
}

Integer SparseIntMatrix::get(Index r, Index c) const
{
    if (r >= rows_ || c >= cols())
        throw std::out_of_range("matrix index out of range");
    const auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, Index row) { return e.row < row; });
    return it != col.end() && it->row == r ? it->value : Integer(0);
}

void SparseIntMatrix::push_column(SparseColumn<Integer> column)
{
    std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
    std::erase_if(column, [](const auto& e) { return e.value == 0; });
    for (std::size_t i = 0; i < column.size(); ++i)
    {
        if (column[i].row >= rows_)
            throw std::out_of_range("column entry beyond row count");
        if (i > 0 && column[i].row == column[i - 1].row)
            throw std::invalid_argument("duplicate row in column");
    }
    cols_.push_back(std::move(column));
}

SparseIntMatrix SparseIntMatrix::identity(Index k)
{
    SparseIntMatrix m(k, k);
    for (Index i = 0; i < k; ++i)
        m.cols_[i].push_back({i, Integer(1)});
    return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long long>>& rows)
{
    const Index r = static_cast<Index>(rows.size());
    const Index c = r ? static_cast<Index>(rows.front().size()) : 0;
    SparseIntMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
    {
        if (rows[i].size() != c)
            throw std::invalid_argument("ragged dense matrix");
        for (Index j = 0; j < c; ++j)
            if (rows[i][j] != 0)
                m.cols_[j].push_back({i, Integer(static_cast<long>(rows[i][j]))});
    }
    return m;
}

std::vector<std::vector<Integer>> SparseIntMatrix::to_dense() const
{
    std::vector<std::vector<Integer>> out(rows_, std::vector<Integer>(cols(), 0));
    for (Index c = 0; c < cols(); ++c)
        for (const auto& e : cols_[c])
            out[e.row][c] = e.value;
    return out;
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols() != b.cols())
        return false;
    for (Index c = 0; c < a.cols(); ++c)
    {
        const auto& x = a.cols_[c];
        const auto& y = b.cols_[c];
        if (x.size() != y.size())
            return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].row != y[i].row || x[i].value != y[i].value)
                return false;
    }
    return true;
}

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product dimension mismatch");
    SparseIntMatrix out(a.rows(), 0);
    std::vector<Integer> acc(a.rows());
    for (Index j = 0; j < b.cols(); ++j)
    {
        std::fill(acc.begin(), acc.end(), 0);
        for (const auto& eb : b.column(j))
            for (const auto& ea : a.column(eb.row))
                acc[ea.row] += ea.value * eb.value;
        SparseColumn<Integer> col;
        for (Index i = 0; i < a.rows(); ++i)
            if (acc[i] != 0)
                col.push_back({i, acc[i]});
        out.push_column(std::move(col));
    }
    return out;
}

std::vector<std::pair<Rank, int>> simplex_boundary(std::span<const Vertex> simplex)
{
    std::vector<std::pair<Rank, int>> out;
    out.reserve(simplex.size());
    std::vector<Vertex> facet(simplex.size() - 1);
    for (std::size_t i = 0; i < simplex.size(); ++i)
    {
        std::copy(simplex.begin(), simplex.begin() + static_cast<std::ptrdiff_t>(i), facet.begin());
        std::copy(simplex.begin() + static_cast<std::ptrdiff_t>(i) + 1, simplex.end(),
                  facet.begin() + static_cast<std::ptrdiff_t>(i));
        out.emplace_back(rank_subset(facet), i % 2 == 0 ? 1 : -1);
    }
    return out;
}

SparseIntMatrix boundary_matrix(const Complex& y)
{
    SparseIntMatrix m(static_cast<Index>(binomial(y.n(), y.dim())), 0);
    for (Rank r : y.face_ranks())
    {
        SparseColumn<Integer> col;
        for (auto [row, sign] : simplex_boundary(unrank_subset(r, y.dim() + 1)))
            col.push_back({static_cast<Index>(row), Integer(sign)});
        m.push_column(std::move(col));
    }
    return m;
}

SparseIntMatrix full_boundary_matrix(Vertex n, unsigned k)
{
    if (k == 0)
        throw std::invalid_argument("boundary degree must be at least 1");
    SparseIntMatrix m(static_cast<Index>(binomial(n, k)), 0);
    const Rank faces = binomial(n, k + 1);
    for (Rank r = 0; r < faces; ++r)
    {
        SparseColumn<Integer> col;
        for (auto [row, sign] : simplex_boundary(unrank_subset(r, k + 1)))
            col.push_back({static_cast<Index>(row), Integer(sign)});
        m.push_column(std::move(col));
    }
    return m;
}

SparseIntMatrix read_matrix(std::istream& is)
{
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    long long rows = 0, cols = 0;
    std::vector<SparseColumn<Integer>> columns;
    auto is_blank = [](const std::string& s) {
        const auto p = s.find_first_not_of(" \t\r");
        return p == std::string::npos || s[p] == '#';
    };
    while (std::getline(is, line))
    {
        ++lineno;
        if (is_blank(line))
            continue;
        std::istringstream ls(line);
        if (!have_header)
        {
            std::string extra;
            if (!(ls >> rows >> cols) || rows < 0 || cols < 0 || (ls >> extra))
                throw ParseError("expected header \"rows cols\"", lineno);
            if (rows > UINT32_MAX || cols > UINT32_MAX)
                throw ParseError("matrix dimensions too large", lineno);
            columns.resize(static_cast<std::size_t>(cols));
            have_header = true;
            continue;
        }
        long long r, c;
        std::string value, extra;
        if (!(ls >> r >> c >> value) || (ls >> extra))
            throw ParseError("expected \"row col value\"", lineno);
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw ParseError("entry index out of range", lineno);
        Integer v;
        if (v.set_str(value[0] == '+' ? value.substr(1) : value, 10) != 0)
            throw ParseError("invalid integer \"" + value + "\"", lineno);
        auto& col = columns[static_cast<std::size_t>(c)];
        for (const auto& e : col)
            if (e.row == static_cast<Index>(r))
                throw ParseError("duplicate entry", lineno);
        if (v != 0)
            col.push_back({static_cast<Index>(r), v});
    }
    if (!have_header)
        throw ParseError("missing header line", lineno);
    SparseIntMatrix m(static_cast<Index>(rows), 0);
    for (auto& col : columns)
        m.push_column(std::move(col));
    return m;
}

void write_matrix(std::ostream& os, const SparseIntMatrix& m)
{
    os << m.rows() << ' ' << m.cols() << '\n';
    for (Index c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c))
            os << e.row << ' ' << c << ' ' << e.value << '\n';
}

} // namespace homoforge
