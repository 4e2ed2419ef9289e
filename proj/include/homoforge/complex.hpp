/**
 * Simplicial complexes with a full (d-1)-skeleton and the random models
 * that generate them.
 *
 * Only the top-dimensional faces are stored; every lower face is present
 * implicitly. Vertices are 0-based here and 1-based in every file format.
 */
#ifndef HOMOFORGE_COMPLEX_HPP
#define HOMOFORGE_COMPLEX_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "homoforge/combinatorics.hpp"
#include "homoforge/rng.hpp"

namespace homoforge {

using Simplex = std::vector<Vertex>;

/**
 * An n-vertex complex whose d-faces are given explicitly.
 *
 * Faces are kept in insertion order (the boundary matrix uses that column
 * order) alongside a membership bitset over colex ranks. For dim == 2 the
 * per-edge coverage counts are maintained on every insertion.
 */
class Complex
{
  public:
    explicit Complex(Vertex n, unsigned dim = 2);

    Vertex n() const { return n_; }
    unsigned dim() const { return dim_; }

    /// Number of possible d-faces, C(n, d + 1).
    Rank face_capacity() const { return capacity_; }
    std::size_t size() const { return ranks_.size(); }
    bool empty() const { return ranks_.empty(); }

    /// Adds a face given by its rank; returns false if it was already present.
    bool add_rank(Rank r);
    /// Adds a face given by d + 1 distinct vertices in any order.
    bool add_face(std::span<const Vertex> vertices);
    bool add_face(const Triple& t) { return add_face(std::span<const Vertex>(t.vertices())); }

    bool contains_rank(Rank r) const { return r < capacity_ && member_.test(r); }
    bool contains(const Triple& t) const;

    const std::vector<Rank>& face_ranks() const { return ranks_; }
    std::vector<Simplex> faces() const;
    const boost::dynamic_bitset<>& membership() const { return member_; }

    /// Number of 2-faces containing the edge; dim 2 only.
    std::uint32_t edge_cover_count(Rank edge) const;
    const std::vector<std::uint32_t>& edge_cover_counts() const;
    /// Count of edges with zero coverage; dim 2 only.
    std::size_t uncovered_count() const;

    /// The complete complex: every d-face present, added in rank order.
    static Complex full(Vertex n, unsigned dim = 2);

  private:
    void require_dim2(const char* what) const;

    Vertex n_;
    unsigned dim_;
    Rank capacity_;
    std::vector<Rank> ranks_;
    boost::dynamic_bitset<> member_;
    std::vector<std::uint32_t> edge_cover_;
    std::size_t uncovered_ = 0;
};

/**
 * Uniformly random ordering of all d-faces, produced by a seeded
 * Fisher-Yates shuffle over ranks. Shuffling is done lazily in blocks so
 * a short prefix costs only its own length.
 */
class ProcessStream
{
  public:
    ProcessStream(Vertex n, std::uint64_t seed, unsigned dim = 2);

    Vertex n() const { return n_; }
    unsigned dim() const { return dim_; }
    std::uint64_t seed() const { return seed_; }
    Rank total() const { return static_cast<Rank>(order_.size()); }
    Rank emitted() const { return cursor_; }
    bool done() const { return cursor_ == order_.size(); }

    /// Next face rank; std::nullopt once every face has been emitted.
    std::optional<Rank> next();

  private:
    void shuffle_block();

    Vertex n_;
    unsigned dim_;
    std::uint64_t seed_;
    SeededRng rng_;
    std::vector<Rank> order_;
    std::size_t cursor_ = 0;
    std::size_t shuffled_ = 0;
};

/// The random 2-complex process (or its d-dimensional analogue). n > dim.
ProcessStream sample_process(Vertex n, std::uint64_t seed, unsigned dim = 2);

/// The first m faces of the process, i.e. Y_d(n, M = m).
Complex sample_process_prefix(Vertex n, Rank m, std::uint64_t seed, unsigned dim = 2);

/// Y_d(n, p): each d-face independently with probability p.
Complex sample_binomial(Vertex n, double p, std::uint64_t seed, unsigned dim = 2);

/// Minimal edge degree delta; dim 2 only.
std::uint32_t min_edge_degree(const Complex& y);

/// Edges contained in no face, in rank order; dim 2 only.
std::vector<std::array<Vertex, 2>> uncovered_edges(const Complex& y);

/**
 * The link of v restricted to a vertex set W: the graph on W with an edge
 * xy whenever {x, y, v} is a face.
 */
struct LinkGraph
{
    Vertex apex = 0;
    std::vector<Vertex> vertices;                ///< W, sorted
    std::vector<std::array<Vertex, 2>> edges;    ///< x < y
    std::vector<std::uint32_t> component;        ///< component id per entry of `vertices`
    std::vector<std::size_t> component_sizes;    ///< indexed by component id

    std::size_t largest_component() const;
    /// Adjacency lists aligned with `vertices`.
    std::vector<std::vector<Vertex>> adjacency() const;
};

/// Throws std::invalid_argument if v is in W or out of range.
LinkGraph link_subgraph(const Complex& y, Vertex v, std::span<const Vertex> w);

// Serialization. JSON: {"n":..,"dim":..,"faces":[[1,2,3],...]}; text: one
// face per line, 1-based, with an optional "# n <n>" (and "# dim <d>")
// header. Without a header n is the largest label seen.
void write_complex_json(std::ostream& os, const Complex& y);
void write_complex_text(std::ostream& os, const Complex& y);
Complex read_complex(std::istream& is);
Complex read_complex_file(const std::string& path);

} // namespace homoforge

#endif
