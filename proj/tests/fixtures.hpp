#ifndef HOMOFORGE_TESTS_FIXTURES_HPP
#define HOMOFORGE_TESTS_FIXTURES_HPP

#include <map>
#include <string>
#include <utility>

#include "homoforge/complex.hpp"
#include "oracles.hpp"

#ifndef HOMOFORGE_TEST_DATA
#error "HOMOFORGE_TEST_DATA must point at tests/data"
#endif

namespace fixture {

inline std::string path(const std::string& name) { return std::string(HOMOFORGE_TEST_DATA) + "/" + name; }

/// Six-vertex projective plane, ten faces.
inline homoforge::Complex projective_plane() { return homoforge::read_complex_file(path("rp2.txt")); }

/// Seven-vertex torus, fourteen faces.
inline homoforge::Complex torus() { return homoforge::read_complex_file(path("torus.json")); }

inline std::vector<oracle::Tri> tris(const homoforge::Complex& y)
{
    std::vector<oracle::Tri> out;
    for (const auto& f : y.faces())
        out.push_back({static_cast<int>(f[0]), static_cast<int>(f[1]), static_cast<int>(f[2])});
    return out;
}

/// A closed surface with full 1-skeleton: every edge in exactly two faces.
/// Returns the Euler characteristic, or a sentinel of 100 when some edge is
/// not in exactly two faces.
inline int surface_euler_characteristic(int n, const std::vector<oracle::Tri>& faces)
{
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : faces)
    {
        int v[3] = {t.a, t.b, t.c};
        std::sort(v, v + 3);
        ++count[{v[0], v[1]}];
        ++count[{v[0], v[2]}];
        ++count[{v[1], v[2]}];
    }
    const int edges = n * (n - 1) / 2;
    if (static_cast<int>(count.size()) != edges)
        return 100;
    for (const auto& [e, c] : count)
        if (c != 2)
            return 100;
    return n - edges + static_cast<int>(faces.size());
}

} // namespace fixture

#endif
