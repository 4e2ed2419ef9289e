/**
 * Homology of complexes with a full (d-1)-skeleton, over Z and over F_p,
 * and the F_p-shadow of a 2-complex.
 */
#ifndef HOMOFORGE_HOMOLOGY_HPP
#define HOMOFORGE_HOMOLOGY_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "homoforge/complex.hpp"
#include "homoforge/echelon.hpp"
#include "homoforge/snf.hpp"

namespace homoforge {

/// H_{d-1}(Y; Z) = Z^betti + sum Z/t_i.
struct HomologySummary
{
    std::uint64_t betti = 0;
    std::vector<Integer> torsion;   ///< invariant factors > 1, divisibility ordered

    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool torsion_free() const { return torsion.empty(); }
    /// ln |torsion subgroup|; 0 when torsion-free.
    double log_torsion_order() const;
};

/// dim of the (d-1)-cycle space of the full (d-1)-skeleton: C(n-1, d).
std::uint64_t cycle_space_dim(Vertex n, unsigned dim);

/// dim H_{d-1}(Y; F_p) = C(n-1, d) - rank_p(boundary).
std::uint64_t betti_mod_p(const Complex& y, std::uint64_t p);
/// As betti_mod_p, restricted to 2-complexes.
std::uint64_t betti1_mod_p(const Complex& y, std::uint64_t p);

/**
 * H_{d-1}(Y; Z) from the Smith form of the top boundary matrix.
 *
 * The cokernel C_{d-1} / im d_d has the same torsion as
 * ker d_{d-1} / im d_d because C_{d-1} / ker d_{d-1} embeds in the free
 * group C_{d-2}. So no change to cycle coordinates is needed.
 */
HomologySummary homology_Z(const Complex& y);

/// Same as homology_Z, given the Smith form of boundary_matrix(y).
HomologySummary homology_from_snf(const Complex& y, const SnfResult& snf);

/// H_1(Y; Z) = 0, checked as delta > 0, then F_2 Betti, then Smith form.
bool is_H1_trivial_Z(const Complex& y);

/**
 * The F_p-shadow: triples whose addition leaves H_1(Y; F_p) unchanged,
 * i.e. whose boundary lies in the column span of the boundary matrix.
 * Faces of Y are members.
 */
class ShadowSet
{
  public:
    ShadowSet(Vertex n, std::uint64_t p, boost::dynamic_bitset<> member);

    Vertex n() const { return n_; }
    std::uint64_t prime() const { return p_; }
    std::size_t size() const { return member_.count(); }
    std::uint64_t deficit() const { return member_.size() - member_.count(); }
    bool contains(Rank r) const { return member_.test(r); }
    bool contains(const Triple& t) const { return member_.test(rank_triple(t, n_)); }
    const boost::dynamic_bitset<>& bits() const { return member_; }

  private:
    Vertex n_;
    std::uint64_t p_;
    boost::dynamic_bitset<> member_;
};

/// F_p echelon basis spanned by the boundaries of y's faces.
EchelonBasis boundary_basis(const Complex& y, std::uint64_t p);

ShadowSet shadow(const Complex& y, std::uint64_t p);
/// Shadow membership scan over a prebuilt boundary basis of y.
ShadowSet shadow_from_basis(Vertex n, const EchelonBasis& basis);

/// C(n,3) - |shadow(y, p)|.
std::uint64_t shadow_size_deficit(const Complex& y, std::uint64_t p);

/// ln sqrt(3)^C(n-1,2): the log of the bound on |H_1(T; Z)| for Q-acyclic T.
double prime_bound_log(Vertex n);

// Shadow files: a little-endian uint64 bit count followed by ceil(count/8)
// bytes, bit i of the payload (byte i/8, LSB first) set iff colex rank i is
// a member. The JSON summary is {n, p, size, deficit}.
void write_bitset(std::ostream& os, const boost::dynamic_bitset<>& bits);
boost::dynamic_bitset<> read_bitset(std::istream& is);
nlohmann::json shadow_summary(const ShadowSet& s);

/// Decimal rendering of invariant factors joined by `sep`.
std::string join_integers(const std::vector<Integer>& values, const char* sep);

} // namespace homoforge

#endif
