#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "homoforge/errors.hpp"
#include "homoforge/homology.hpp"

using namespace homoforge;

namespace {

Complex random_small(SeededRng& rng, Vertex n, std::size_t max_faces)
{
    Complex y(n);
    const std::size_t target = std::min<std::size_t>(rng.below(max_faces + 1), y.face_capacity());
    while (y.size() < target)
        y.add_rank(rng.below(y.face_capacity()));
    return y;
}

} // namespace

TEST_CASE("betti numbers of simple complexes")
{
    for (Vertex n : {3u, 5u, 9u})
        for (std::uint64_t p : {2u, 3u, 7u})
            CHECK(betti_mod_p(Complex(n), p) == binomial(n - 1, 2));
    Complex one(3);
    one.add_face(Triple(0, 1, 2));
    CHECK(betti1_mod_p(one, 2) == 0);
    CHECK(homology_Z(Complex::full(5)).trivial());
    CHECK(cycle_space_dim(10, 2) == 36);
    CHECK_THROWS_AS(betti1_mod_p(Complex(6, 3), 2), std::logic_error);
}

TEST_CASE("projective plane")
{
    const Complex y = fixture::projective_plane();
    CHECK(betti_mod_p(y, 2) == 1);
    CHECK(betti_mod_p(y, 3) == 0);
    const auto h = homology_Z(y);
    CHECK(h.betti == 0);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 2);
    CHECK(h.log_torsion_order() == doctest::Approx(std::log(2.0)));
    CHECK_FALSE(is_H1_trivial_Z(y));
}

TEST_CASE("torus")
{
    const Complex y = fixture::torus();
    const auto d = oracle::boundary_dense(7, fixture::tris(y));
    const std::size_t rank = oracle::rank_q(d);
    CHECK(rank == 13);
    const auto h = homology_Z(y);
    CHECK(h.betti == 21 - 6 - rank);
    CHECK(h.betti == 2);
    CHECK(h.torsion_free());
    for (std::uint64_t p : {2u, 3u, 5u})
        CHECK(betti_mod_p(y, p) == 2);
}

TEST_CASE("integral triviality")
{
    Complex y = Complex::full(6);
    CHECK(is_H1_trivial_Z(y));
    Complex gap(6);
    for (Rank r = 1; r < gap.face_capacity(); ++r)
        gap.add_rank(r);
    CHECK(is_H1_trivial_Z(gap));   // one missing face leaves every edge covered
    Complex uncovered(6);
    uncovered.add_face(Triple(0, 1, 2));
    CHECK_FALSE(is_H1_trivial_Z(uncovered));
    CHECK(is_H1_trivial_Z(Complex(2)));
}

TEST_CASE("F_p Betti numbers match dense elimination")
{
    SeededRng rng(41);
    for (int trial = 0; trial < 150; ++trial)
    {
        const Vertex n = static_cast<Vertex>(4 + rng.below(6));
        const Complex y = random_small(rng, n, 3 * n);
        for (std::uint64_t p : {2u, 3u, 5u})
            CHECK(betti_mod_p(y, p) == oracle::betti1(static_cast<int>(n), fixture::tris(y), p));
    }
}

TEST_CASE("integral homology agrees with coefficients in every small prime")
{
    // with a free H_0, dim H_1(Y; F_p) = betti + #{torsion factors divisible by p}
    SeededRng rng(5);
    for (int trial = 0; trial < 150; ++trial)
    {
        const Vertex n = static_cast<Vertex>(5 + rng.below(4));
        const Complex y = random_small(rng, n, 2 * n + 4);
        const auto h = homology_Z(y);
        CHECK(h.betti == oracle::betti1(static_cast<int>(n), fixture::tris(y), 0));
        for (std::uint64_t p : {2u, 3u, 5u, 7u})
        {
            std::uint64_t divisible = 0;
            for (const auto& t : h.torsion)
                divisible += mpz_divisible_ui_p(t.get_mpz_t(), p) != 0;
            CHECK(betti_mod_p(y, p) == h.betti + divisible);
        }
        CHECK(is_H1_trivial_Z(y) == h.trivial());
    }
}

TEST_CASE("shadow examples")
{
    const auto full = shadow(Complex::full(7), 2);
    CHECK(full.size() == 35);
    CHECK(full.deficit() == 0);
    CHECK(shadow(Complex(7), 3).size() == 0);
    CHECK(shadow_size_deficit(Complex(7), 3) == 35);

    Complex y(4);
    y.add_face(Triple(0, 1, 3));
    y.add_face(Triple(0, 2, 3));
    y.add_face(Triple(1, 2, 3));
    const auto s = shadow(y, 2);
    CHECK(s.contains(Triple(0, 1, 2)));
    CHECK(s.size() == 4);
    CHECK(shadow_summary(s)["deficit"] == 0);
    CHECK_THROWS_AS(shadow(y, 9), std::invalid_argument);
}

TEST_CASE("shadow is the set of triples that leave the Betti number unchanged")
{
    SeededRng rng(13);
    for (int trial = 0; trial < 60; ++trial)
    {
        const Vertex n = static_cast<Vertex>(4 + rng.below(5));
        const Complex y = random_small(rng, n, 10);
        const auto faces = fixture::tris(y);
        for (std::uint64_t p : {2u, 3u, 5u})
        {
            const auto s = shadow(y, p);
            const std::size_t base = oracle::betti1(static_cast<int>(n), faces, p);
            for (Rank r = 0; r < y.face_capacity(); ++r)
            {
                const Triple t = unrank_triple(r);
                auto more = faces;
                more.push_back({static_cast<int>(t[0]), static_cast<int>(t[1]), static_cast<int>(t[2])});
                CHECK(s.contains(r) == (oracle::betti1(static_cast<int>(n), more, p) == base));
            }
            for (Rank r : y.face_ranks())
                CHECK(s.contains(r));
        }
    }
}

TEST_CASE("shadow is monotone along the process")
{
    auto stream = sample_process(9, 21);
    Complex y(9);
    auto prev = shadow(y, 2);
    while (auto r = stream.next())
    {
        y.add_rank(*r);
        const auto cur = shadow(y, 2);
        CHECK(prev.bits().is_subset_of(cur.bits()));
        prev = cur;
    }
    CHECK(prev.deficit() == 0);
}

TEST_CASE("prime bound")
{
    CHECK(prime_bound_log(2) == 0.0);
    CHECK(prime_bound_log(4) == doctest::Approx(1.6479).epsilon(1e-4));
    CHECK(std::exp(prime_bound_log(4)) == doctest::Approx(5.196).epsilon(1e-3));
    CHECK(prime_bound_log(10) == doctest::Approx(19.775).epsilon(1e-4));
    CHECK_THROWS_AS(prime_bound_log(1), std::invalid_argument);
}

TEST_CASE("bitset file round trip")
{
    SeededRng rng(1);
    for (std::size_t len : {0u, 1u, 7u, 8u, 9u, 364u})
    {
        boost::dynamic_bitset<> bits(len);
        for (std::size_t i = 0; i < len; ++i)
            bits[i] = rng.below(2) == 1;
        std::stringstream buf;
        write_bitset(buf, bits);
        CHECK(buf.str().size() == 8 + (len + 7) / 8);
        CHECK(read_bitset(buf) == bits);
    }
    std::istringstream truncated(std::string("\x10\0\0\0\0\0\0\0\x01", 9));
    CHECK_THROWS_AS(read_bitset(truncated), ParseError);
    std::istringstream short_header(std::string("\x01\0", 2));
    CHECK_THROWS_AS(read_bitset(short_header), ParseError);
}

TEST_CASE("joined factors")
{
    CHECK(join_integers({Integer(2), Integer(12)}, ";") == "2;12");
    CHECK(join_integers({}, ";").empty());
}
