/**
 * Good/bad labelings of triangles and the deterministic predicates used to
 * reason about them: the badness cascade onto edges and vertices,
 * elementarity, completeness, the shady conditions and the explicit
 * triangulation moves (cone, five-triangle disk, fan around a link path).
 *
 * Asymptotic thresholds such as n / ln_(5) n are not defined at any
 * feasible n, so every threshold is an explicit parameter.
 */
#ifndef HOMOFORGE_SHADY_HPP
#define HOMOFORGE_SHADY_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "homoforge/complex.hpp"
#include "homoforge/homology.hpp"

namespace homoforge {

using Edge = std::array<Vertex, 2>;

/// Bad triangles as a bitset over colex ranks; the complement is good.
struct PartitionLabels
{
    Vertex n = 0;
    boost::dynamic_bitset<> bad;

    static PartitionLabels all_good(Vertex n);
    static PartitionLabels all_bad(Vertex n);
    /// Good = shadow members.
    static PartitionLabels from_shadow(const ShadowSet& s);

    bool is_bad(const Triple& t) const { return bad.test(rank_triple(t, n)); }
    std::size_t count_bad() const { return bad.count(); }
    void mark_bad(const Triple& t) { bad.set(rank_triple(t, n)); }
};

struct Thresholds
{
    std::uint64_t theta_edge = 1;        ///< an edge in more bad triples than this is bad
    std::uint64_t theta_vertex = 1;      ///< a vertex in more bad edges than this is bad
    std::uint64_t max_bad_triples = 1;   ///< budget for condition (III)

    /// ceil(n/4), ceil(n/4), and ceil(C(n,3) / ln ln n) clamped to [1, C(n,3)].
    static Thresholds defaults(Vertex n);
    /// Throws std::invalid_argument unless all three are positive.
    void validate() const;
};

struct CascadeResult
{
    std::vector<Edge> bad_edges;               ///< rank order
    std::vector<Vertex> bad_vertices;          ///< increasing
    std::vector<std::uint32_t> edge_bad_triples;   ///< per edge rank
    std::vector<std::uint32_t> vertex_bad_edges;   ///< per vertex
    boost::dynamic_bitset<> bad_edge_mask;         ///< per edge rank

    bool edge_is_bad(Vertex a, Vertex b) const { return bad_edge_mask.test(rank_edge(a, b)); }
};

CascadeResult cascade(const PartitionLabels& labels, const Thresholds& t);

/// No two bad edges share a vertex.
bool is_elementary(const CascadeResult& c);

/// No bad triangles.
bool is_complete(const PartitionLabels& labels);

/**
 * Outcome of checking the shady conditions. Condition (I) is decided only
 * for cone triangulations: a bad triangle xyz violates it when some apex v
 * makes xyv, xzv and yzv all good.
 */
struct ShadyReport
{
    bool cond_ii = true;        ///< every face of Y is good
    bool cond_iii = true;       ///< bad triangles within budget
    bool cond_i_cone = true;
    std::size_t bad_triples = 0;
    std::size_t bad_edges = 0;
    std::size_t bad_vertices = 0;
    Thresholds thresholds;
    std::optional<Triple> face_violation;   ///< a face of Y labeled bad
    std::optional<Triple> cone_violation;   ///< a bad triangle with a good cone

    bool pass() const { return cond_ii && cond_iii && cond_i_cone; }
};

/// Throws std::invalid_argument if labels and complex disagree on n.
ShadyReport verify_shady(const Complex& y, const PartitionLabels& labels, const Thresholds& t);
nlohmann::json to_json(const ShadyReport& r);

/**
 * Bad triangles whose three edges are good and which have an apex with all
 * three cone triangles good. Empty whenever the labels satisfy the cone
 * case of (I); a diagnostic at desk scale.
 */
std::vector<Triple> claim_three_good_edges(const PartitionLabels& labels, const CascadeResult& c);

/**
 * Triangulation moves that certify a triangle good because it is
 * triangulated by good triangles. A triangle counts as good if it is good
 * in the labels or was certified by an earlier move; certifications are
 * cached.
 */
class Certifier
{
  public:
    Certifier(const PartitionLabels& labels, const Complex& y);

    bool good(const Triple& t) const;
    bool certified(const Triple& t) const { return certified_.test(rank_triple(t, labels_.n)); }
    const boost::dynamic_bitset<>& certified_set() const { return certified_; }

    /// Some apex v gives xyv, xzv, yzv good. Certifies xyz.
    bool cone_move(const Triple& xyz);

    /**
     * xyv, vxw, xzw, zyw and yvw all good: together they triangulate xyz.
     * Throws std::invalid_argument unless the five vertices are distinct.
     */
    bool five_triangle_move(Vertex x, Vertex y, Vertex z, Vertex v, Vertex w);

    /**
     * `path` walks x = x_0, ..., x_s = y in the link of v. True iff every
     * {y, x_i, x_{i+1}} with i <= s - 2 is good; the triangles
     * {v, x_i, x_{i+1}} are faces of Y. Certifies vxy. Throws
     * std::invalid_argument when the path is not a walk in the link.
     */
    bool fan_triangulation_good(Vertex v, Vertex x, Vertex y, const std::vector<Vertex>& path);

    /// Certifies every vxy reachable by some fan around v ending at y;
    /// returns the number of newly certified bad triangles.
    std::size_t fan_closure(Vertex v, Vertex y);

  private:
    // only labeled-bad triangles are recorded
    void certify(const Triple& t)
    {
        const Rank r = rank_triple(t, labels_.n);
        if (labels_.bad.test(r))
            certified_.set(r);
    }

    const PartitionLabels& labels_;
    const Complex& y_;
    boost::dynamic_bitset<> certified_;
};

// Labels file: header line "n count_bad", then one line of C(n,3)
// characters, '1' at position i iff colex rank i is bad.
void write_labels(std::ostream& os, const PartitionLabels& labels);
PartitionLabels read_labels(std::istream& is);

} // namespace homoforge

#endif
