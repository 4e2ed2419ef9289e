#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "homoforge/errors.hpp"
#include "homoforge/homology.hpp"
#include "homoforge/shady.hpp"

using namespace homoforge;

namespace {

PartitionLabels random_labels(SeededRng& rng, Vertex n, double bad_rate)
{
    PartitionLabels l = PartitionLabels::all_good(n);
    for (std::size_t r = 0; r < l.bad.size(); ++r)
        if (rng.unit() < bad_rate)
            l.bad.set(r);
    return l;
}

// Recount of the cascade by direct enumeration over vertex triples.
struct Recount
{
    std::vector<std::vector<int>> edge_bad;   // symmetric, per vertex pair
    std::vector<bool> vertex_bad;
    std::vector<std::pair<Vertex, Vertex>> bad_edges;
};

Recount recount(const PartitionLabels& l, const Thresholds& t)
{
    const Vertex n = l.n;
    Recount out;
    out.edge_bad.assign(n, std::vector<int>(n, 0));
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                if (l.is_bad(Triple(a, b, c)))
                {
                    ++out.edge_bad[a][b], ++out.edge_bad[b][a];
                    ++out.edge_bad[a][c], ++out.edge_bad[c][a];
                    ++out.edge_bad[b][c], ++out.edge_bad[c][b];
                }
    std::vector<int> deg(n, 0);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (static_cast<std::uint64_t>(out.edge_bad[a][b]) > t.theta_edge)
            {
                out.bad_edges.emplace_back(a, b);
                ++deg[a], ++deg[b];
            }
    for (Vertex v = 0; v < n; ++v)
        out.vertex_bad.push_back(static_cast<std::uint64_t>(deg[v]) > t.theta_vertex);
    return out;
}

Thresholds make_thresholds(std::uint64_t edge, std::uint64_t vertex, std::uint64_t budget)
{
    Thresholds t;
    t.theta_edge = edge;
    t.theta_vertex = vertex;
    t.max_bad_triples = budget;
    return t;
}

} // namespace

TEST_CASE("default thresholds")
{
    const Thresholds t = Thresholds::defaults(16);
    CHECK(t.theta_edge == 4);
    CHECK(t.theta_vertex == 4);
    CHECK(t.max_bad_triples == static_cast<std::uint64_t>(std::ceil(560.0 / std::log(std::log(16.0)))));
    CHECK(Thresholds::defaults(3).max_bad_triples == 1);
    CHECK_THROWS_AS(make_thresholds(0, 1, 1).validate(), std::invalid_argument);
}

TEST_CASE("cascade edge cases")
{
    const auto none = cascade(PartitionLabels::all_good(8), make_thresholds(1, 1, 1));
    CHECK(none.bad_edges.empty());
    CHECK(none.bad_vertices.empty());

    const Vertex n = 8;
    const auto all = cascade(PartitionLabels::all_bad(n), make_thresholds(n - 3, n - 2, 1));
    CHECK(all.bad_edges.size() == binomial(n, 2));
    CHECK(all.bad_vertices.size() == n);
}

TEST_CASE("cascade for triples through one edge")
{
    const Vertex n = 8;
    PartitionLabels l = PartitionLabels::all_good(n);
    for (Vertex c = 2; c < n; ++c)
        l.mark_bad(Triple(0, 1, c));
    const Thresholds t = make_thresholds(3, 4, 100);
    const auto c = cascade(l, t);
    CHECK(c.edge_is_bad(0, 1));
    const auto ref = recount(l, t);
    REQUIRE(c.bad_edges.size() == ref.bad_edges.size());
    CHECK(c.bad_edges.size() == 1);
    CHECK(c.bad_vertices.empty());
}

TEST_CASE("cascade matches recount on random labels")
{
    SeededRng rng(19);
    for (int trial = 0; trial < 100; ++trial)
    {
        const Vertex n = static_cast<Vertex>(5 + rng.below(10));
        const auto l = random_labels(rng, n, rng.unit() * 0.6);
        const auto t = make_thresholds(1 + rng.below(n), 1 + rng.below(n), 1);
        const auto c = cascade(l, t);
        const auto ref = recount(l, t);
        REQUIRE(c.bad_edges.size() == ref.bad_edges.size());
        for (std::size_t i = 0; i < ref.bad_edges.size(); ++i)
            CHECK(c.edge_is_bad(ref.bad_edges[i].first, ref.bad_edges[i].second));
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                CHECK(c.edge_bad_triples[rank_edge(a, b)] == static_cast<std::uint32_t>(ref.edge_bad[a][b]));
        std::vector<Vertex> bad_vertices;
        for (Vertex v = 0; v < n; ++v)
            if (ref.vertex_bad[v])
                bad_vertices.push_back(v);
        CHECK(c.bad_vertices == bad_vertices);
    }
}

TEST_CASE("elementary and complete partitions")
{
    CascadeResult c;
    CHECK(is_elementary(c));
    c.bad_edges = {{0, 1}, {2, 3}};
    CHECK(is_elementary(c));
    c.bad_edges = {{0, 1}, {0, 2}};
    CHECK_FALSE(is_elementary(c));

    PartitionLabels l = PartitionLabels::all_good(6);
    CHECK(is_complete(l));
    l.mark_bad(Triple(0, 1, 2));
    CHECK_FALSE(is_complete(l));
    CHECK(is_complete(PartitionLabels::from_shadow(shadow(Complex::full(6), 2))));
}

TEST_CASE("verify shady on hand-built labels")
{
    const Vertex n = 6;
    Complex y(n);
    y.add_face(Triple(0, 1, 3));
    const auto t = make_thresholds(2, 2, binomial(n, 3));

    const auto complete = verify_shady(y, PartitionLabels::all_good(n), t);
    CHECK(complete.pass());

    PartitionLabels face_bad = PartitionLabels::all_good(n);
    face_bad.mark_bad(Triple(0, 1, 3));
    const auto r2 = verify_shady(y, face_bad, t);
    CHECK_FALSE(r2.cond_ii);
    REQUIRE(r2.face_violation.has_value());
    CHECK(*r2.face_violation == Triple(0, 1, 3));

    // only {1,2,3} bad: apex 4 gives a good cone
    PartitionLabels one = PartitionLabels::all_good(n);
    one.mark_bad(Triple(0, 1, 2));
    const auto r1 = verify_shady(Complex(n), one, t);
    CHECK_FALSE(r1.cond_i_cone);
    CHECK(r1.cone_violation == Triple(0, 1, 2));

    const auto over = verify_shady(Complex(n), PartitionLabels::all_bad(n), make_thresholds(2, 2, 5));
    CHECK_FALSE(over.cond_iii);
    CHECK(over.cond_i_cone);

    const auto j = to_json(r1);
    CHECK(j["condI_cone"] == false);
    CHECK(j["condI_cone_violation"] == nlohmann::json{1, 2, 3});
    CHECK(j["pass"] == false);
    CHECK(j["bad_counts"]["triples"] == 1);
    CHECK_THROWS_AS(verify_shady(Complex(7), one, t), std::invalid_argument);
}

TEST_CASE("shadow-derived labels pass on random complexes")
{
    SeededRng rng(31);
    for (int trial = 0; trial < 40; ++trial)
    {
        const Vertex n = static_cast<Vertex>(5 + rng.below(8));
        const Complex y = sample_binomial(n, rng.unit() * 0.5, rng.next());
        for (std::uint64_t p : {2u, 3u})
        {
            const auto l = PartitionLabels::from_shadow(shadow(y, p));
            const auto r = verify_shady(y, l, make_thresholds(1, 1, binomial(n, 3)));
            CHECK(r.pass());
        }
    }
}

TEST_CASE("three good edges claim")
{
    const Vertex n = 8;
    const auto t = make_thresholds(1, 1, 1);
    const auto good = PartitionLabels::all_good(n);
    CHECK(claim_three_good_edges(good, cascade(good, t)).empty());
    const auto bad = PartitionLabels::all_bad(n);
    CHECK(claim_three_good_edges(bad, cascade(bad, t)).empty());

    PartitionLabels one = PartitionLabels::all_good(n);
    one.mark_bad(Triple(0, 1, 2));
    const auto found = claim_three_good_edges(one, cascade(one, make_thresholds(3, 3, 1)));
    CHECK(found == std::vector<Triple>{Triple(0, 1, 2)});
}

TEST_CASE("cone and five-triangle moves")
{
    const Vertex n = 7;
    PartitionLabels l = PartitionLabels::all_bad(n);
    const Complex y(n);
    {
        Certifier c(l, y);
        CHECK_FALSE(c.cone_move(Triple(0, 1, 2)));
        CHECK_FALSE(c.five_triangle_move(0, 1, 2, 3, 4));
    }
    // the five triangles xyv, vxw, xzw, zyw, yvw with x,y,z,v,w = 0..4
    const std::vector<Triple> five{Triple(0, 1, 3), Triple(3, 0, 4), Triple(0, 2, 4), Triple(2, 1, 4), Triple(1, 3, 4)};
    for (const auto& t : five)
        l.bad.reset(rank_triple(t, n));
    {
        Certifier c(l, y);
        CHECK(c.five_triangle_move(0, 1, 2, 3, 4));
        CHECK(c.certified(Triple(0, 1, 2)));
        CHECK(c.good(Triple(0, 1, 2)));
        CHECK_THROWS_AS(c.five_triangle_move(0, 1, 2, 3, 3), std::invalid_argument);
    }
    for (const auto& t : five)
    {
        PartitionLabels missing = l;
        missing.mark_bad(t);
        Certifier c(missing, y);
        CHECK_FALSE(c.five_triangle_move(0, 1, 2, 3, 4));
    }
}

TEST_CASE("fan triangulations along link paths")
{
    const Vertex n = 6;
    Complex y(n);
    // link of v = 0 contains the path 1 - 2 - 3
    y.add_face(Triple(0, 1, 2));
    y.add_face(Triple(0, 2, 3));
    PartitionLabels l = PartitionLabels::all_bad(n);
    for (Rank r : y.face_ranks())
        l.bad.reset(r);
    {
        Certifier c(l, y);
        CHECK(c.fan_triangulation_good(0, 2, 3, {2, 3}));
        CHECK_FALSE(c.fan_triangulation_good(0, 1, 3, {1, 2, 3}));
        CHECK_THROWS_AS(c.fan_triangulation_good(0, 1, 3, {1, 3}), std::invalid_argument);
        CHECK_THROWS_AS(c.fan_triangulation_good(0, 1, 3, {1, 4, 3}), std::invalid_argument);
        CHECK_THROWS_AS(c.fan_triangulation_good(0, 1, 3, {2, 3}), std::invalid_argument);
    }
    l.bad.reset(rank_triple(Triple(3, 1, 2), n));
    {
        Certifier c(l, y);
        CHECK(c.fan_triangulation_good(0, 1, 3, {1, 2, 3}));
        CHECK(c.certified(Triple(0, 1, 3)));
    }
    {
        Certifier c(l, y);
        CHECK(c.fan_closure(0, 3) == 1);
        CHECK(c.certified(Triple(0, 1, 3)));
    }
}

TEST_CASE("certified triangles have boundaries spanned by good triangles")
{
    SeededRng rng(4);
    for (int trial = 0; trial < 30; ++trial)
    {
        const Vertex n = static_cast<Vertex>(6 + rng.below(4));
        const Complex y = sample_binomial(n, 0.35, rng.next());
        PartitionLabels l = random_labels(rng, n, 0.5);
        for (Rank r : y.face_ranks())
            l.bad.reset(r);
        Certifier c(l, y);
        for (int round = 0; round < 2; ++round)
            for (Rank r = 0; r < l.bad.size(); ++r)
            {
                const Triple t = unrank_triple(r);
                c.cone_move(t);
                c.fan_closure(t[0], t[1]);
                c.fan_closure(t[2], t[0]);
                if (n >= 5)
                {
                    std::vector<Vertex> rest;
                    for (Vertex v = 0; v < n && rest.size() < 2; ++v)
                        if (!t.contains(v))
                            rest.push_back(v);
                    c.five_triangle_move(t[0], t[1], t[2], rest[0], rest[1]);
                }
            }
        for (std::uint64_t p : {2u, 3u})
        {
            EchelonBasis span(binomial(n, 2), p);
            for (Rank r = 0; r < l.bad.size(); ++r)
                if (!l.bad.test(r))
                    span.insert(simplex_boundary_mod_p(unrank_triple(r).vertices(), p));
            const auto& cert = c.certified_set();
            for (auto r = cert.find_first(); r != boost::dynamic_bitset<>::npos; r = cert.find_next(r))
                CHECK(span.in_span(simplex_boundary_mod_p(unrank_triple(r).vertices(), p)));
        }
    }
}

TEST_CASE("labels file round trip")
{
    SeededRng rng(2);
    const auto l = random_labels(rng, 9, 0.3);
    std::stringstream buf;
    write_labels(buf, l);
    const auto back = read_labels(buf);
    CHECK(back.n == 9);
    CHECK(back.bad == l.bad);

    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try
        {
            read_labels(in);
        }
        catch (const ParseError& e)
        {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("4\n0000\n") == 1);
    CHECK(line_of("4 0\n000\n") == 2);
    CHECK(line_of("4 0\n0020\n") == 2);
    CHECK(line_of("4 2\n0010\n") == 1);
    CHECK(line_of("4 1\n0010\n") == 0);
}
