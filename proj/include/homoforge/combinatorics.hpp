/**
 * Combinatorial numbering of vertex subsets.
 *
 * Faces of every dimension are indexed by their colexicographic rank:
 * the sorted subset {v_0 < ... < v_k} has rank sum_i C(v_i, i + 1). The
 * rank does not depend on n, so a bitset over ranks keeps its layout when
 * the vertex count grows.
 */
#ifndef HOMOFORGE_COMBINATORICS_HPP
#define HOMOFORGE_COMBINATORICS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace homoforge {

using Vertex = std::uint32_t;
using Rank = std::uint64_t;

/// Largest vertex count supported by the binomial table.
inline constexpr Vertex kMaxVertices = 512;

/// C(n, k), exact; throws std::overflow_error when it does not fit 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Colex rank of a strictly increasing vertex list.
Rank rank_subset(std::span<const Vertex> vertices);

/// Inverse of rank_subset for subsets of the given size.
std::vector<Vertex> unrank_subset(Rank rank, std::size_t size);

/**
 * A 2-face: three vertex ids in strictly increasing order.
 */
class Triple
{
  public:
    /// Sorts the three ids; throws std::invalid_argument on repeats.
    Triple(Vertex a, Vertex b, Vertex c);

    Vertex operator[](std::size_t i) const { return v_[i]; }
    const std::array<Vertex, 3>& vertices() const { return v_; }
    bool contains(Vertex x) const { return v_[0] == x || v_[1] == x || v_[2] == x; }

    friend bool operator==(const Triple&, const Triple&) = default;

  private:
    std::array<Vertex, 3> v_;
};

/// Colex rank of t; throws std::invalid_argument if some vertex is >= n.
Rank rank_triple(const Triple& t, Vertex n);
Triple unrank_triple(Rank rank);

/// Colex rank of the edge {a, b}; a != b, order irrelevant.
Rank rank_edge(Vertex a, Vertex b);
std::array<Vertex, 2> unrank_edge(Rank rank);

/// The three edges of t, as ranks, in the order (v0v1, v0v2, v1v2).
std::array<Rank, 3> triple_edges(const Triple& t);

/**
 * Natural log applied `times` times. Throws std::domain_error when an
 * intermediate value is not positive.
 */
double iterated_log(double x, unsigned times);

/// Deterministic primality test for word-size integers.
bool is_prime(std::uint64_t p);

/// Renders a vertex list using 1-based labels, e.g. "{1,2,4}".
std::string format_face(std::span<const Vertex> vertices);

} // namespace homoforge

#endif
