#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "homoforge/complex.hpp"
#include "homoforge/errors.hpp"

using namespace homoforge;

namespace {

std::vector<Rank> drain(ProcessStream s)
{
    std::vector<Rank> out;
    while (auto r = s.next())
        out.push_back(*r);
    return out;
}

} // namespace

TEST_CASE("complex construction and membership")
{
    Complex y(5);
    CHECK(y.face_capacity() == 10);
    CHECK(y.empty());
    CHECK(y.add_face(Triple(0, 1, 2)));
    CHECK_FALSE(y.add_face(Triple(2, 1, 0)));
    CHECK(y.size() == 1);
    CHECK(y.contains(Triple(0, 1, 2)));
    CHECK_FALSE(y.contains(Triple(0, 1, 3)));
    CHECK(y.face_ranks() == std::vector<Rank>{0});
    CHECK_THROWS_AS(y.add_rank(10), std::invalid_argument);
    const std::vector<Vertex> wrong{0, 1};
    CHECK_THROWS_AS(y.add_face(wrong), std::invalid_argument);
    CHECK_THROWS_AS(y.add_face(Triple(0, 1, 7)), std::invalid_argument);
    CHECK_THROWS_AS(Complex(kMaxVertices + 1), std::invalid_argument);
}

TEST_CASE("faces keep insertion order")
{
    Complex y(6);
    y.add_face(Triple(3, 4, 5));
    y.add_face(Triple(0, 1, 2));
    const auto f = y.faces();
    REQUIRE(f.size() == 2);
    CHECK(f[0] == Simplex{3, 4, 5});
    CHECK(f[1] == Simplex{0, 1, 2});
}

TEST_CASE("process stream emits a permutation")
{
    const auto one = drain(ProcessStream(3, 99));
    CHECK(one == std::vector<Rank>{0});

    const auto five = drain(ProcessStream(5, 7));
    CHECK(five.size() == 10);
    CHECK(std::set<Rank>(five.begin(), five.end()).size() == 10);

    // larger than one shuffle block
    for (std::uint64_t seed : {1u, 2u, 3u})
    {
        const auto all = drain(ProcessStream(14, seed));
        CHECK(all.size() == 364);
        CHECK(std::set<Rank>(all.begin(), all.end()).size() == 364);
    }
    CHECK(drain(ProcessStream(12, 5)) == drain(ProcessStream(12, 5)));
    CHECK(drain(ProcessStream(12, 5)) != drain(ProcessStream(12, 6)));
    CHECK_THROWS_AS(ProcessStream(2, 1), std::invalid_argument);

    const auto tets = drain(ProcessStream(7, 3, 3));
    CHECK(tets.size() == 35);
}

TEST_CASE("process prefix agrees with the stream")
{
    auto s = sample_process(10, 42);
    const Complex y = sample_process_prefix(10, 30, 42);
    for (Rank r : y.face_ranks())
        CHECK(r == *s.next());
    CHECK(s.emitted() == 30);
    CHECK_THROWS(sample_process_prefix(5, 11, 1));
}

TEST_CASE("binomial model endpoints and mean")
{
    CHECK(sample_binomial(9, 0.0, 3).empty());
    CHECK(sample_binomial(9, 1.0, 3).size() == 84);
    CHECK_THROWS_AS(sample_binomial(9, 1.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(sample_binomial(9, -0.1, 3), std::invalid_argument);

    // Binomial(C(20,3), 1/2): mean 570, variance 285
    const int seeds = 10000;
    double total = 0.0;
    for (int s = 0; s < seeds; ++s)
        total += static_cast<double>(sample_binomial(20, 0.5, static_cast<std::uint64_t>(s)).size());
    const double mean = total / seeds;
    const double stderr_ = std::sqrt(285.0 / seeds);
    CHECK(std::fabs(mean - 570.0) < 3 * stderr_);
}

TEST_CASE("edge cover counts")
{
    Complex a(3);
    a.add_face(Triple(0, 1, 2));
    CHECK(min_edge_degree(a) == 1);
    CHECK(uncovered_edges(a).empty());

    Complex b(4);
    b.add_face(Triple(0, 1, 2));
    CHECK(min_edge_degree(b) == 0);
    const auto unc = uncovered_edges(b);
    CHECK(unc == std::vector<std::array<Vertex, 2>>{{0, 3}, {1, 3}, {2, 3}});
    CHECK(b.uncovered_count() == 3);

    CHECK(min_edge_degree(Complex::full(4)) == 2);
    CHECK(uncovered_edges(Complex::full(8)).empty());
    CHECK(uncovered_edges(fixture::projective_plane()).empty());

    Complex tets(5, 3);
    CHECK_THROWS_AS(tets.uncovered_count(), std::logic_error);
}

TEST_CASE("fixtures are closed surfaces")
{
    CHECK(fixture::surface_euler_characteristic(6, fixture::tris(fixture::projective_plane())) == 1);
    CHECK(fixture::surface_euler_characteristic(7, fixture::tris(fixture::torus())) == 0);
    CHECK(fixture::torus().size() == 14);
}

TEST_CASE("link subgraph small cases")
{
    const std::vector<Vertex> w{1, 2, 3, 4};
    const LinkGraph full = link_subgraph(Complex::full(5), 0, w);
    CHECK(full.edges.size() == 6);
    CHECK(full.component_sizes == std::vector<std::size_t>{4});

    Complex y(5);
    y.add_face(Triple(0, 1, 2));
    const std::vector<Vertex> w3{1, 2, 3};
    const LinkGraph g = link_subgraph(y, 0, w3);
    CHECK(g.edges == std::vector<std::array<Vertex, 2>>{{1, 2}});
    CHECK(g.component_sizes == std::vector<std::size_t>{2, 1});
    CHECK(g.largest_component() == 2);

    const std::vector<Vertex> with_apex{0, 1};
    CHECK_THROWS_AS(link_subgraph(y, 0, with_apex), std::invalid_argument);
}

TEST_CASE("link components match breadth-first search")
{
    const Vertex n = 20;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        // sparse enough to leave several components
        const Complex y = sample_binomial(n, seed < 10 ? 0.9 : 0.08, seed);
        const Vertex v = static_cast<Vertex>(seed % n);
        std::vector<Vertex> w;
        for (Vertex x = 0; x < n; ++x)
            if (x != v)
                w.push_back(x);
        const LinkGraph g = link_subgraph(y, v, w);

        std::vector<std::vector<bool>> adj(w.size(), std::vector<bool>(w.size(), false));
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j)
                if (i != j && y.contains(Triple(v, w[i], w[j])))
                    adj[i][j] = true;
        const auto comp = oracle::components(adj);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j)
                CHECK((comp[i] == comp[j]) == (g.component[i] == g.component[j]));
        std::vector<std::size_t> sizes(*std::max_element(comp.begin(), comp.end()) + 1, 0);
        for (int c : comp)
            ++sizes[static_cast<std::size_t>(c)];
        CHECK(sizes == g.component_sizes);
    }
}

TEST_CASE("complex text and JSON round trip")
{
    const Complex y = sample_binomial(9, 0.3, 17);
    std::ostringstream js, tx;
    write_complex_json(js, y);
    write_complex_text(tx, y);
    std::istringstream jin(js.str()), tin(tx.str());
    const Complex a = read_complex(jin), b = read_complex(tin);
    CHECK(a.n() == 9);
    CHECK(b.n() == 9);
    CHECK(a.face_ranks() == y.face_ranks());
    CHECK(b.face_ranks() == y.face_ranks());
    CHECK(js.str().find("\"faces\"") != std::string::npos);

    const Complex t = sample_process_prefix(7, 10, 4, 3);
    std::ostringstream t3;
    write_complex_text(t3, t);
    std::istringstream t3in(t3.str());
    const Complex back = read_complex(t3in);
    CHECK(back.dim() == 3);
    CHECK(back.face_ranks() == t.face_ranks());
}

TEST_CASE("text complex without header infers n")
{
    std::istringstream in("1 2 3\n\n2 3 5\n");
    const Complex y = read_complex(in);
    CHECK(y.n() == 5);
    CHECK(y.size() == 2);
}

TEST_CASE("malformed complex files report the line")
{
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try
        {
            read_complex(in);
        }
        catch (const ParseError& e)
        {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("# n 5\n1 2 3\n1 2 x\n") == 3);
    CHECK(line_of("# n 5\n1 2 3\n1 1 2\n") == 3);
    CHECK(line_of("# n 5\n1 2 3\n0 1 2\n") == 3);
    CHECK(line_of("# n 5\n1 2 3\n1 2 3 4\n") == 3);
    CHECK(line_of("# n zero\n") == 1);

    std::istringstream bad_json("{\"n\": 4, \"faces\": [[1, 2, 9]]}");
    CHECK_THROWS_AS(read_complex(bad_json), ParseError);
    std::istringstream broken("{\"n\": 4, \"faces\": [");
    CHECK_THROWS_AS(read_complex(broken), ParseError);
    CHECK_THROWS_AS(read_complex_file("/nonexistent/complex.txt"), std::runtime_error);
}
