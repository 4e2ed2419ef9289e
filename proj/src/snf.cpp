#include "homoforge/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace homoforge {

namespace {

struct Overflow
{
};

// Scalar primitives. The int64_t overloads throw Overflow instead of wrapping.

bool is_zero(std::int64_t a) { return a == 0; }
bool is_zero(const Integer& a) { return sgn(a) == 0; }

std::uint64_t magnitude(std::int64_t a)
{
    return a < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
}

int cmp_abs(std::int64_t a, std::int64_t b)
{
    const auto x = magnitude(a), y = magnitude(b);
    return x < y ? -1 : (x > y ? 1 : 0);
}
int cmp_abs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
bool is_unit(const Integer& a) { return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0; }

std::int64_t quotient(std::int64_t a, std::int64_t d)
{
    if (a == INT64_MIN && d == -1)
        throw Overflow{};
    return a / d;
}
Integer quotient(const Integer& a, const Integer& d)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}

bool divides(std::int64_t d, std::int64_t a) { return d == -1 || a % d == 0; }
bool divides(const Integer& d, const Integer& a) { return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0; }

// a -= s * b
void sub_mul(std::int64_t& a, std::int64_t s, std::int64_t b)
{
    std::int64_t t;
    if (__builtin_mul_overflow(s, b, &t) || __builtin_sub_overflow(a, t, &a))
        throw Overflow{};
}
void sub_mul(Integer& a, const Integer& s, const Integer& b) { mpz_submul(a.get_mpz_t(), s.get_mpz_t(), b.get_mpz_t()); }

void add_to(std::int64_t& a, std::int64_t b)
{
    if (__builtin_add_overflow(a, b, &a))
        throw Overflow{};
}
void add_to(Integer& a, const Integer& b) { a += b; }

Integer to_integer(std::int64_t a) { return Integer(static_cast<long>(a)); }
Integer to_integer(const Integer& a) { return a; }

Integer abs_integer(const Integer& a)
{
    Integer out;
    mpz_abs(out.get_mpz_t(), a.get_mpz_t());
    return out;
}

template <class S>
using Column = SparseColumn<S>;

template <class S>
const S* find_entry(const Column<S>& col, Index row)
{
    auto it = std::lower_bound(col.begin(), col.end(), row, [](const auto& e, Index r) { return e.row < r; });
    return it != col.end() && it->row == row ? &it->value : nullptr;
}

// x -= s * y, both sorted by row; zeros are dropped.
template <class S>
void axpy(Column<S>& x, const S& s, const Column<S>& y, Column<S>& scratch)
{
    scratch.clear();
    scratch.reserve(x.size() + y.size());
    auto xi = x.begin();
    auto yi = y.begin();
    while (xi != x.end() || yi != y.end())
    {
        if (yi == y.end() || (xi != x.end() && xi->row < yi->row))
            scratch.push_back(std::move(*xi++));
        else
        {
            Entry<S> e{yi->row, S(0)};
            if (xi != x.end() && xi->row == yi->row)
                e.value = std::move((xi++)->value);
            sub_mul(e.value, s, yi->value);
            if (!is_zero(e.value))
                scratch.push_back(std::move(e));
            ++yi;
        }
    }
    x.swap(scratch);
}

template <class S>
class SmithReducer
{
  public:
    explicit SmithReducer(std::vector<Column<S>> columns) : cols_(std::move(columns))
    {
        for (Index c = 0; c < cols_.size(); ++c)
            if (!cols_[c].empty())
                active_.push_back(c);
    }

    std::vector<Integer> run()
    {
        while (auto pivot = select_pivot())
        {
            const auto [r, c] = *pivot;
            while (reduce_at(r, c))
            {
                if (auto bad = find_indivisible(r, c))
                {
                    add_row(r, *bad);
                    continue;
                }
                factors_.push_back(abs_integer(to_integer(*find_entry(cols_[c], r))));
                cols_[c].clear();
                active_.erase(std::find(active_.begin(), active_.end(), c));
                break;
            }
        }
        return std::move(factors_);
    }

  private:
    struct Position
    {
        Index row;
        Index col;
    };

    std::optional<Position> select_pivot()
    {
        std::optional<Position> best;
        const S* best_value = nullptr;
        std::erase_if(active_, [&](Index c) { return cols_[c].empty(); });
        for (Index c : active_)
            for (const auto& e : cols_[c])
            {
                if (!best_value || cmp_abs(e.value, *best_value) < 0)
                {
                    best = Position{e.row, c};
                    best_value = &e.value;
                    if (is_unit(e.value))
                        return best;
                }
            }
        return best;
    }

    // Clears row r and column c around the pivot. Returns true when both
    // are clear apart from the pivot itself.
    bool reduce_at(Index r, Index c)
    {
        const S d = *find_entry(cols_[c], r);

        // columns j != c holding an entry in row r
        row_support_.clear();
        for (Index j : active_)
            if (j != c)
                if (const S* v = find_entry(cols_[j], r))
                    row_support_.push_back({j, *v});

        // row ops: row_i -= q_i * row_r for every other row i of column c
        Column<S> q;
        for (const auto& e : cols_[c])
            if (e.row != r)
                if (S qi = quotient(e.value, d); !is_zero(qi))
                    q.push_back({e.row, qi});
        if (!q.empty())
        {
            for (const auto& [j, a_rj] : row_support_)
                axpy(cols_[j], a_rj, q, scratch_);
            axpy(cols_[c], d, q, scratch_);
        }

        // column ops: col_j -= q_j * col_c
        bool isolated = cols_[c].size() == 1;
        for (const auto& [j, a_rj] : row_support_)
        {
            const S qj = quotient(a_rj, d);
            if (!is_zero(qj))
                axpy(cols_[j], qj, cols_[c], scratch_);
            if (find_entry(cols_[j], r))
                isolated = false;
        }
        return isolated;
    }

    // A row holding an entry that the isolated pivot (r, c) does not divide.
    std::optional<Index> find_indivisible(Index r, Index c) const
    {
        const S& d = *find_entry(cols_[c], r);
        if (is_unit(d))
            return std::nullopt;
        for (Index j : active_)
            if (j != c)
                for (const auto& e : cols_[j])
                    if (!divides(d, e.value))
                        return e.row;
        return std::nullopt;
    }

    // row_r += row_i
    void add_row(Index r, Index i)
    {
        for (Index j : active_)
        {
            auto& col = cols_[j];
            const S* src = find_entry(col, i);
            if (!src)
                continue;
            const S value = *src;
            auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, Index row) { return e.row < row; });
            if (it != col.end() && it->row == r)
            {
                add_to(it->value, value);
                if (is_zero(it->value))
                    col.erase(it);
            }
            else
                col.insert(it, {r, value});
        }
    }

    std::vector<Column<S>> cols_;
    std::vector<Index> active_;
    std::vector<std::pair<Index, S>> row_support_;
    Column<S> scratch_;
    std::vector<Integer> factors_;
};

std::optional<std::vector<Column<std::int64_t>>> narrow(const SparseIntMatrix& m)
{
    std::vector<Column<std::int64_t>> cols(m.cols());
    for (Index c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c))
        {
            if (!mpz_fits_slong_p(e.value.get_mpz_t()))
                return std::nullopt;
            cols[c].push_back({e.row, e.value.get_si()});
        }
    return cols;
}

} // namespace

std::vector<Integer> SnfResult::torsion() const
{
    std::vector<Integer> out;
    for (const auto& d : invariant_factors)
        if (d > 1)
            out.push_back(d);
    return out;
}

SnfResult smith_normal_form(const SparseIntMatrix& m, SnfOptions options)
{
    SnfResult result;
    if (!options.force_big_integers)
    {
        if (auto cols = narrow(m))
        {
            try
            {
                result.invariant_factors = SmithReducer<std::int64_t>(std::move(*cols)).run();
                return result;
            }
            catch (const Overflow&)
            {
            }
        }
    }
    std::vector<Column<Integer>> cols(m.cols());
    for (Index c = 0; c < m.cols(); ++c)
        cols[c] = m.column(c);
    result.invariant_factors = SmithReducer<Integer>(std::move(cols)).run();
    result.used_big_integers = true;
    return result;
}

} // namespace homoforge
