#include "homoforge/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace homoforge {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (std::uint64_t i = 0; i < k; ++i)
    {
        // c * (n - i) is divisible by (i + 1) at every step
        c = c * (n - i) / (i + 1);
        if (c > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

Rank rank_subset(std::span<const Vertex> vertices)
{
    Rank r = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
    {
        if (i > 0 && vertices[i] <= vertices[i - 1])
            throw std::invalid_argument("subset must be strictly increasing");
        r += binomial(vertices[i], i + 1);
    }
    return r;
}

std::vector<Vertex> unrank_subset(Rank rank, std::size_t size)
{
    std::vector<Vertex> out(size);
    for (std::size_t i = size; i > 0; --i)
    {
        // largest v with C(v, i) <= rank
        Vertex v = static_cast<Vertex>(i - 1);
        while (binomial(v + 1, i) <= rank)
            ++v;
        out[i - 1] = v;
        rank -= binomial(v, i);
    }
    return out;
}

Triple::Triple(Vertex a, Vertex b, Vertex c) : v_{a, b, c}
{
    std::sort(v_.begin(), v_.end());
    if (v_[0] == v_[1] || v_[1] == v_[2])
        throw std::invalid_argument("triple has repeated vertices");
}

Rank rank_triple(const Triple& t, Vertex n)
{
    if (t[2] >= n)
        throw std::invalid_argument("triple vertex " + std::to_string(t[2]) + " out of range for n = " +
                                    std::to_string(n));
    return binomial(t[2], 3) + binomial(t[1], 2) + t[0];
}

Triple unrank_triple(Rank rank)
{
    auto v = unrank_subset(rank, 3);
    return {v[0], v[1], v[2]};
}

Rank rank_edge(Vertex a, Vertex b)
{
    if (a == b)
        throw std::invalid_argument("edge endpoints coincide");
    if (a > b)
        std::swap(a, b);
    return binomial(b, 2) + a;
}

std::array<Vertex, 2> unrank_edge(Rank rank)
{
    auto v = unrank_subset(rank, 2);
    return {v[0], v[1]};
}

std::array<Rank, 3> triple_edges(const Triple& t)
{
    return {rank_edge(t[0], t[1]), rank_edge(t[0], t[2]), rank_edge(t[1], t[2])};
}

double iterated_log(double x, unsigned times)
{
    for (unsigned i = 0; i < times; ++i)
    {
        if (!(x > 0.0))
            throw std::domain_error("iterated_log: argument not positive after " + std::to_string(i) +
                                    " applications");
        x = std::log(x);
    }
    return x;
}

bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL})
        if (p % q == 0)
            return p == q;
    for (std::uint64_t q = 17; q * q <= p; q += 2)
        if (p % q == 0)
            return false;
    return true;
}

std::string format_face(std::span<const Vertex> vertices)
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < vertices.size(); ++i)
        os << (i ? "," : "") << vertices[i] + 1;
    os << '}';
    return os.str();
}

} // namespace homoforge
