#include "homoforge/homology.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "homoforge/errors.hpp"

namespace homoforge {

namespace {

double log_integer(const Integer& x)
{
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
    return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

void require_dim2(const Complex& y, const char* what)
{
    if (y.dim() != 2)
        throw std::logic_error(std::string(what) + " requires a 2-dimensional complex");
}

} // namespace

double HomologySummary::log_torsion_order() const
{
    double total = 0.0;
    for (const auto& t : torsion)
        total += log_integer(t);
    return total;
}

std::uint64_t cycle_space_dim(Vertex n, unsigned dim)
{
    return n == 0 ? 0 : binomial(n - 1, dim);
}

std::uint64_t betti_mod_p(const Complex& y, std::uint64_t p)
{
    return cycle_space_dim(y.n(), y.dim()) - boundary_basis(y, p).rank();
}

std::uint64_t betti1_mod_p(const Complex& y, std::uint64_t p)
{
    require_dim2(y, "betti1_mod_p");
    return betti_mod_p(y, p);
}

HomologySummary homology_from_snf(const Complex& y, const SnfResult& snf)
{
    HomologySummary h;
    h.betti = cycle_space_dim(y.n(), y.dim()) - snf.rank();
    h.torsion = snf.torsion();
    return h;
}

HomologySummary homology_Z(const Complex& y)
{
    return homology_from_snf(y, smith_normal_form(boundary_matrix(y)));
}

bool is_H1_trivial_Z(const Complex& y)
{
    require_dim2(y, "is_H1_trivial_Z");
    if (y.n() < 3)
        return true;
    if (y.uncovered_count() > 0)
        return false;
    if (betti_mod_p(y, 2) != 0)
        return false;
    return homology_Z(y).trivial();
}

ShadowSet::ShadowSet(Vertex n, std::uint64_t p, boost::dynamic_bitset<> member)
    : n_(n), p_(p), member_(std::move(member))
{
    if (member_.size() != binomial(n, 3))
        throw std::invalid_argument("shadow bitset length must be C(n,3)");
}

EchelonBasis boundary_basis(const Complex& y, std::uint64_t p)
{
    EchelonBasis basis(binomial(y.n(), y.dim()), p);
    for (Rank r : y.face_ranks())
    {
        if (basis.rank() == basis.dim())
            break;
        basis.insert(simplex_boundary_mod_p(unrank_subset(r, y.dim() + 1), p));
    }
    return basis;
}

ShadowSet shadow_from_basis(Vertex n, const EchelonBasis& basis)
{
    boost::dynamic_bitset<> member(binomial(n, 3));
    for (Rank r = 0; r < member.size(); ++r)
    {
        const Triple t = unrank_triple(r);
        if (basis.in_span(simplex_boundary_mod_p(t.vertices(), basis.modulus())))
            member.set(r);
    }
    return ShadowSet(n, basis.modulus(), std::move(member));
}

ShadowSet shadow(const Complex& y, std::uint64_t p)
{
    require_dim2(y, "shadow");
    return shadow_from_basis(y.n(), boundary_basis(y, p));
}

std::uint64_t shadow_size_deficit(const Complex& y, std::uint64_t p)
{
    return shadow(y, p).deficit();
}

double prime_bound_log(Vertex n)
{
    if (n < 2)
        throw std::invalid_argument("prime_bound_log needs n >= 2");
    return static_cast<double>(binomial(n - 1, 2)) * std::log(3.0) / 2.0;
}

void write_bitset(std::ostream& os, const boost::dynamic_bitset<>& bits)
{
    std::uint64_t count = bits.size();
    for (int i = 0; i < 8; ++i)
        os.put(static_cast<char>((count >> (8 * i)) & 0xff));
    std::vector<unsigned char> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits.test(i))
            bytes[i / 8] |= static_cast<unsigned char>(1u << (i % 8));
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

boost::dynamic_bitset<> read_bitset(std::istream& is)
{
    unsigned char header[8];
    if (!is.read(reinterpret_cast<char*>(header), 8))
        throw ParseError("bitset file truncated in length prefix");
    std::uint64_t count = 0;
    for (int i = 0; i < 8; ++i)
        count |= static_cast<std::uint64_t>(header[i]) << (8 * i);
    if (count > (1ULL << 36))
        throw ParseError("bitset length implausibly large");
    std::vector<unsigned char> bytes((count + 7) / 8);
    if (!is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
        throw ParseError("bitset file truncated in payload");
    boost::dynamic_bitset<> bits(count);
    for (std::size_t i = 0; i < count; ++i)
        if (bytes[i / 8] >> (i % 8) & 1u)
            bits.set(i);
    return bits;
}

nlohmann::json shadow_summary(const ShadowSet& s)
{
    return {{"n", s.n()}, {"p", s.prime()}, {"size", s.size()}, {"deficit", s.deficit()}};
}

std::string join_integers(const std::vector<Integer>& values, const char* sep)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? sep : "") << values[i];
    return os.str();
}

} // namespace homoforge
