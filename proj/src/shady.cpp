#include "homoforge/shady.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "homoforge/errors.hpp"

namespace homoforge {

PartitionLabels PartitionLabels::all_good(Vertex n)
{
    return {n, boost::dynamic_bitset<>(binomial(n, 3))};
}

PartitionLabels PartitionLabels::all_bad(Vertex n)
{
    PartitionLabels l = all_good(n);
    l.bad.set();
    return l;
}

PartitionLabels PartitionLabels::from_shadow(const ShadowSet& s)
{
    return {s.n(), ~s.bits()};
}

Thresholds Thresholds::defaults(Vertex n)
{
    Thresholds t;
    t.theta_edge = t.theta_vertex = std::max<std::uint64_t>(1, (n + 3) / 4);
    const std::uint64_t triples = binomial(n, 3);
    const double loglog = n >= 3 ? std::log(std::log(static_cast<double>(n))) : 0.0;
    std::uint64_t budget = triples;
    if (loglog > 0.0)
        budget = static_cast<std::uint64_t>(std::ceil(static_cast<double>(triples) / loglog));
    t.max_bad_triples = std::clamp<std::uint64_t>(budget, 1, std::max<std::uint64_t>(triples, 1));
    return t;
}

void Thresholds::validate() const
{
    if (theta_edge == 0 || theta_vertex == 0 || max_bad_triples == 0)
        throw std::invalid_argument("thresholds must be positive");
}

CascadeResult cascade(const PartitionLabels& labels, const Thresholds& t)
{
    const Vertex n = labels.n;
    CascadeResult c;
    c.edge_bad_triples.assign(binomial(n, 2), 0);
    c.vertex_bad_edges.assign(n, 0);
    c.bad_edge_mask.resize(c.edge_bad_triples.size());

    for (auto r = labels.bad.find_first(); r != boost::dynamic_bitset<>::npos; r = labels.bad.find_next(r))
        for (Rank e : triple_edges(unrank_triple(r)))
            ++c.edge_bad_triples[e];

    for (Rank e = 0; e < c.edge_bad_triples.size(); ++e)
        if (c.edge_bad_triples[e] > t.theta_edge)
        {
            const Edge edge = unrank_edge(e);
            c.bad_edges.push_back(edge);
            c.bad_edge_mask.set(e);
            ++c.vertex_bad_edges[edge[0]];
            ++c.vertex_bad_edges[edge[1]];
        }

    for (Vertex v = 0; v < n; ++v)
        if (c.vertex_bad_edges[v] > t.theta_vertex)
            c.bad_vertices.push_back(v);
    return c;
}

bool is_elementary(const CascadeResult& c)
{
    std::vector<Vertex> ends;
    for (const auto& e : c.bad_edges)
        ends.insert(ends.end(), e.begin(), e.end());
    std::sort(ends.begin(), ends.end());
    return std::adjacent_find(ends.begin(), ends.end()) == ends.end();
}

bool is_complete(const PartitionLabels& labels)
{
    return labels.bad.none();
}

namespace {

// An apex making all three cone triangles over t good, if any.
template <class Good>
std::optional<Vertex> good_cone_apex(const Triple& t, Vertex n, Good&& good)
{
    for (Vertex v = 0; v < n; ++v)
    {
        if (t.contains(v))
            continue;
        if (good(Triple(t[0], t[1], v)) && good(Triple(t[0], t[2], v)) && good(Triple(t[1], t[2], v)))
            return v;
    }
    return std::nullopt;
}

} // namespace

ShadyReport verify_shady(const Complex& y, const PartitionLabels& labels, const Thresholds& t)
{
    if (y.n() != labels.n || labels.bad.size() != binomial(labels.n, 3))
        throw std::invalid_argument("labels and complex have different vertex counts");
    if (y.dim() != 2)
        throw std::logic_error("verify_shady requires a 2-dimensional complex");

    ShadyReport report;
    report.thresholds = t;
    for (Rank r : y.face_ranks())
        if (labels.bad.test(r))
        {
            report.cond_ii = false;
            report.face_violation = unrank_triple(r);
            break;
        }

    report.bad_triples = labels.count_bad();
    report.cond_iii = report.bad_triples <= t.max_bad_triples;

    auto good = [&](const Triple& x) { return !labels.is_bad(x); };
    for (auto r = labels.bad.find_first(); r != boost::dynamic_bitset<>::npos; r = labels.bad.find_next(r))
    {
        const Triple tri = unrank_triple(r);
        if (good_cone_apex(tri, labels.n, good))
        {
            report.cond_i_cone = false;
            report.cone_violation = tri;
            break;
        }
    }

    const CascadeResult c = cascade(labels, t);
    report.bad_edges = c.bad_edges.size();
    report.bad_vertices = c.bad_vertices.size();
    return report;
}

nlohmann::json to_json(const ShadyReport& r)
{
    nlohmann::json j = {
        {"condII", r.cond_ii},
        {"condIII", r.cond_iii},
        {"condI_cone", r.cond_i_cone},
        {"condI_scope", "cone triangulations only"},
        {"bad_counts", {{"triples", r.bad_triples}, {"edges", r.bad_edges}, {"vertices", r.bad_vertices}}},
        {"thresholds",
         {{"theta_edge", r.thresholds.theta_edge},
          {"theta_vertex", r.thresholds.theta_vertex},
          {"max_bad_triples", r.thresholds.max_bad_triples}}},
        {"pass", r.pass()},
    };
    auto face = [](const Triple& t) { return nlohmann::json{t[0] + 1, t[1] + 1, t[2] + 1}; };
    if (r.face_violation)
        j["condII_violation"] = face(*r.face_violation);
    if (r.cone_violation)
        j["condI_cone_violation"] = face(*r.cone_violation);
    return j;
}

std::vector<Triple> claim_three_good_edges(const PartitionLabels& labels, const CascadeResult& c)
{
    std::vector<Triple> out;
    auto good = [&](const Triple& x) { return !labels.is_bad(x); };
    for (auto r = labels.bad.find_first(); r != boost::dynamic_bitset<>::npos; r = labels.bad.find_next(r))
    {
        const Triple t = unrank_triple(r);
        bool edges_good = true;
        for (Rank e : triple_edges(t))
            edges_good = edges_good && !c.bad_edge_mask.test(e);
        if (edges_good && good_cone_apex(t, labels.n, good))
            out.push_back(t);
    }
    return out;
}

Certifier::Certifier(const PartitionLabels& labels, const Complex& y)
    : labels_(labels), y_(y), certified_(labels.bad.size())
{
    if (y.n() != labels.n || y.dim() != 2)
        throw std::invalid_argument("certifier needs a 2-complex on the labels' vertex set");
}

bool Certifier::good(const Triple& t) const
{
    const Rank r = rank_triple(t, labels_.n);
    return !labels_.bad.test(r) || certified_.test(r);
}

bool Certifier::cone_move(const Triple& xyz)
{
    if (good(xyz))
        return true;
    if (!good_cone_apex(xyz, labels_.n, [&](const Triple& t) { return good(t); }))
        return false;
    certify(xyz);
    return true;
}

bool Certifier::five_triangle_move(Vertex x, Vertex y, Vertex z, Vertex v, Vertex w)
{
    std::array<Vertex, 5> ids{x, y, z, v, w};
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end() || ids.back() >= labels_.n)
        throw std::invalid_argument("five-triangle move needs five distinct vertices in range");
    const Triple target(x, y, z);
    if (good(target))
        return true;
    const bool ok = good(Triple(x, y, v)) && good(Triple(v, x, w)) && good(Triple(x, z, w)) &&
                    good(Triple(z, y, w)) && good(Triple(y, v, w));
    if (ok)
        certify(target);
    return ok;
}

bool Certifier::fan_triangulation_good(Vertex v, Vertex x, Vertex y, const std::vector<Vertex>& path)
{
    if (path.size() < 2 || path.front() != x || path.back() != y)
        throw std::invalid_argument("fan path must run from x to y");
    for (std::size_t i = 0; i < path.size(); ++i)
    {
        if (path[i] == v || path[i] >= labels_.n)
            throw std::invalid_argument("fan path vertex invalid");
        if (i + 1 < path.size() && path[i] == y)
            throw std::invalid_argument("fan path reaches y before its end");
        if (i + 1 < path.size() && (path[i] == path[i + 1] || !y_.contains(Triple(v, path[i], path[i + 1]))))
            throw std::invalid_argument("fan path step is not an edge of the link");
    }
    const Triple target(v, x, y);
    if (good(target))
        return true;
    for (std::size_t i = 0; i + 2 < path.size(); ++i)
        if (!good(Triple(y, path[i], path[i + 1])))
            return false;
    certify(target);
    return true;
}

std::size_t Certifier::fan_closure(Vertex v, Vertex y)
{
    const Vertex n = labels_.n;
    if (v == y || v >= n || y >= n)
        throw std::invalid_argument("fan closure needs distinct apex and endpoint");
    // walk backwards from y: u is reached once some fan path u ... y exists
    std::vector<char> reached(n, 0);
    std::deque<Vertex> queue;
    for (Vertex u = 0; u < n; ++u)
        if (u != v && u != y && y_.contains(Triple(v, u, y)))
        {
            reached[u] = 1;
            queue.push_back(u);
        }
    while (!queue.empty())
    {
        const Vertex u = queue.front();
        queue.pop_front();
        for (Vertex t = 0; t < n; ++t)
            if (!reached[t] && t != v && t != y && t != u && y_.contains(Triple(v, t, u)) && good(Triple(y, t, u)))
            {
                reached[t] = 1;
                queue.push_back(t);
            }
    }
    std::size_t fresh = 0;
    for (Vertex x = 0; x < n; ++x)
        if (reached[x])
        {
            const Triple target(v, x, y);
            if (!good(target))
            {
                certify(target);
                ++fresh;
            }
        }
    return fresh;
}

void write_labels(std::ostream& os, const PartitionLabels& labels)
{
    os << labels.n << ' ' << labels.count_bad() << '\n';
    for (std::size_t i = 0; i < labels.bad.size(); ++i)
        os << (labels.bad.test(i) ? '1' : '0');
    os << '\n';
}

PartitionLabels read_labels(std::istream& is)
{
    std::string line;
    long long n = -1, count = -1;
    if (!std::getline(is, line))
        throw ParseError("labels file is empty", 1);
    {
        std::istringstream ls(line);
        std::string extra;
        if (!(ls >> n >> count) || n < 0 || count < 0 || n > kMaxVertices || (ls >> extra))
            throw ParseError("expected header \"n count_bad\"", 1);
    }
    PartitionLabels labels = PartitionLabels::all_good(static_cast<Vertex>(n));
    std::string bits;
    std::getline(is, bits);
    while (!bits.empty() && (bits.back() == '\r' || bits.back() == ' '))
        bits.pop_back();
    if (bits.size() != labels.bad.size())
        throw ParseError("expected " + std::to_string(labels.bad.size()) + " label characters", 2);
    for (std::size_t i = 0; i < bits.size(); ++i)
    {
        if (bits[i] != '0' && bits[i] != '1')
            throw ParseError("label characters must be 0 or 1", 2);
        if (bits[i] == '1')
            labels.bad.set(i);
    }
    if (labels.count_bad() != static_cast<std::size_t>(count))
        throw ParseError("count_bad does not match the label line", 1);
    return labels;
}

} // namespace homoforge
