#include "homoforge/complex.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "homoforge/errors.hpp"

namespace homoforge {

namespace {

constexpr std::size_t kShuffleBlock = 256;

// Union-find with path halving.
struct DisjointSets
{
    std::vector<std::uint32_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

} // namespace

Complex::Complex(Vertex n, unsigned dim) : n_(n), dim_(dim)
{
    if (dim < 1)
        throw std::invalid_argument("complex dimension must be at least 1");
    if (n > kMaxVertices)
        throw std::invalid_argument("vertex count exceeds " + std::to_string(kMaxVertices));
    capacity_ = binomial(n, dim + 1);
    member_.resize(capacity_);
    if (dim == 2)
    {
        edge_cover_.assign(binomial(n, 2), 0);
        uncovered_ = edge_cover_.size();
    }
}

bool Complex::add_rank(Rank r)
{
    if (r >= capacity_)
        throw std::invalid_argument("face rank out of range");
    if (member_.test(r))
        return false;
    member_.set(r);
    ranks_.push_back(r);
    if (dim_ == 2)
        for (Rank e : triple_edges(unrank_triple(r)))
            if (edge_cover_[e]++ == 0)
                --uncovered_;
    return true;
}

bool Complex::add_face(std::span<const Vertex> vertices)
{
    if (vertices.size() != dim_ + 1)
        throw std::invalid_argument("face has " + std::to_string(vertices.size()) + " vertices, expected " +
                                    std::to_string(dim_ + 1));
    Simplex s(vertices.begin(), vertices.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("face has repeated vertices");
    if (s.back() >= n_)
        throw std::invalid_argument("face vertex out of range");
    return add_rank(rank_subset(s));
}

bool Complex::contains(const Triple& t) const
{
    return dim_ == 2 && t[2] < n_ && member_.test(rank_triple(t, n_));
}

std::vector<Simplex> Complex::faces() const
{
    std::vector<Simplex> out;
    out.reserve(ranks_.size());
    for (Rank r : ranks_)
        out.push_back(unrank_subset(r, dim_ + 1));
    return out;
}

void Complex::require_dim2(const char* what) const
{
    if (dim_ != 2)
        throw std::logic_error(std::string(what) + " requires a 2-dimensional complex");
}

std::uint32_t Complex::edge_cover_count(Rank edge) const
{
    require_dim2("edge_cover_count");
    return edge_cover_.at(edge);
}

const std::vector<std::uint32_t>& Complex::edge_cover_counts() const
{
    require_dim2("edge_cover_counts");
    return edge_cover_;
}

std::size_t Complex::uncovered_count() const
{
    require_dim2("uncovered_count");
    return uncovered_;
}

Complex Complex::full(Vertex n, unsigned dim)
{
    Complex y(n, dim);
    for (Rank r = 0; r < y.face_capacity(); ++r)
        y.add_rank(r);
    return y;
}

ProcessStream::ProcessStream(Vertex n, std::uint64_t seed, unsigned dim)
    : n_(n), dim_(dim), seed_(seed), rng_(seed)
{
    if (n <= dim)
        throw std::invalid_argument("process needs n > dim (n >= 3 for 2-complexes)");
    order_.resize(binomial(n, dim + 1));
    std::iota(order_.begin(), order_.end(), Rank{0});
}

void ProcessStream::shuffle_block()
{
    const std::size_t total = order_.size();
    const std::size_t end = std::min(total, shuffled_ + kShuffleBlock);
    for (std::size_t i = shuffled_; i < end; ++i)
    {
        const std::size_t j = i + rng_.below(total - i);
        std::swap(order_[i], order_[j]);
    }
    shuffled_ = end;
}

std::optional<Rank> ProcessStream::next()
{
    if (cursor_ == order_.size())
        return std::nullopt;
    if (cursor_ == shuffled_)
        shuffle_block();
    return order_[cursor_++];
}

ProcessStream sample_process(Vertex n, std::uint64_t seed, unsigned dim)
{
    return ProcessStream(n, seed, dim);
}

Complex sample_process_prefix(Vertex n, Rank m, std::uint64_t seed, unsigned dim)
{
    ProcessStream stream(n, seed, dim);
    if (m > stream.total())
        throw std::invalid_argument("M exceeds the number of faces");
    Complex y(n, dim);
    for (Rank i = 0; i < m; ++i)
        y.add_rank(*stream.next());
    return y;
}

Complex sample_binomial(Vertex n, double p, std::uint64_t seed, unsigned dim)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("probability must lie in [0, 1]");
    Complex y(n, dim);
    SeededRng rng(seed);
    for (Rank r = 0; r < y.face_capacity(); ++r)
        if (rng.unit() < p)
            y.add_rank(r);
    return y;
}

std::uint32_t min_edge_degree(const Complex& y)
{
    const auto& counts = y.edge_cover_counts();
    if (counts.empty())
        return 0;
    return *std::min_element(counts.begin(), counts.end());
}

std::vector<std::array<Vertex, 2>> uncovered_edges(const Complex& y)
{
    const auto& counts = y.edge_cover_counts();
    std::vector<std::array<Vertex, 2>> out;
    for (Rank e = 0; e < counts.size(); ++e)
        if (counts[e] == 0)
            out.push_back(unrank_edge(e));
    return out;
}

std::size_t LinkGraph::largest_component() const
{
    return component_sizes.empty() ? 0 : *std::max_element(component_sizes.begin(), component_sizes.end());
}

std::vector<std::vector<Vertex>> LinkGraph::adjacency() const
{
    std::vector<std::vector<Vertex>> adj(vertices.size());
    auto index = [&](Vertex x) {
        return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), x) - vertices.begin());
    };
    for (auto [x, z] : edges)
    {
        adj[index(x)].push_back(z);
        adj[index(z)].push_back(x);
    }
    return adj;
}

LinkGraph link_subgraph(const Complex& y, Vertex v, std::span<const Vertex> w)
{
    if (y.dim() != 2)
        throw std::logic_error("link_subgraph requires a 2-dimensional complex");
    if (v >= y.n())
        throw std::invalid_argument("apex out of range");
    LinkGraph g;
    g.apex = v;
    g.vertices.assign(w.begin(), w.end());
    std::sort(g.vertices.begin(), g.vertices.end());
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
    for (Vertex x : g.vertices)
    {
        if (x == v)
            throw std::invalid_argument("apex must not belong to W");
        if (x >= y.n())
            throw std::invalid_argument("W vertex out of range");
    }

    const std::size_t k = g.vertices.size();
    DisjointSets sets(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (y.contains(Triple(v, g.vertices[i], g.vertices[j])))
            {
                g.edges.push_back({g.vertices[i], g.vertices[j]});
                sets.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
            }

    // relabel roots as 0, 1, ... in order of first appearance
    std::vector<std::int64_t> label(k, -1);
    g.component.resize(k);
    for (std::size_t i = 0; i < k; ++i)
    {
        const auto root = sets.find(static_cast<std::uint32_t>(i));
        if (label[root] < 0)
        {
            label[root] = static_cast<std::int64_t>(g.component_sizes.size());
            g.component_sizes.push_back(0);
        }
        g.component[i] = static_cast<std::uint32_t>(label[root]);
        ++g.component_sizes[g.component[i]];
    }
    return g;
}

void write_complex_json(std::ostream& os, const Complex& y)
{
    nlohmann::json j;
    j["n"] = y.n();
    j["dim"] = y.dim();
    auto faces = nlohmann::json::array();
    for (const auto& f : y.faces())
    {
        auto face = nlohmann::json::array();
        for (Vertex v : f)
            face.push_back(v + 1);
        faces.push_back(face);
    }
    j["faces"] = faces;
    os << j.dump() << '\n';
}

void write_complex_text(std::ostream& os, const Complex& y)
{
    os << "# n " << y.n() << '\n';
    if (y.dim() != 2)
        os << "# dim " << y.dim() << '\n';
    for (const auto& f : y.faces())
    {
        for (std::size_t i = 0; i < f.size(); ++i)
            os << (i ? " " : "") << f[i] + 1;
        os << '\n';
    }
}

namespace {

Complex complex_from_faces(Vertex n, unsigned dim, const std::vector<std::pair<std::size_t, Simplex>>& faces)
{
    Complex y(n, dim);
    for (const auto& [line, f] : faces)
    {
        try
        {
            y.add_face(f);
        }
        catch (const std::invalid_argument& e)
        {
            throw ParseError(e.what(), line);
        }
    }
    return y;
}

Complex read_complex_json(const std::string& text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("faces") || !j["n"].is_number_unsigned() || !j["faces"].is_array())
        throw ParseError("complex JSON needs unsigned \"n\" and array \"faces\"");
    const auto n = j["n"].get<std::uint64_t>();
    if (j.contains("dim") && !j["dim"].is_number_unsigned())
        throw ParseError("\"dim\" must be an unsigned integer");
    const unsigned dim = j.contains("dim") ? j["dim"].get<unsigned>() : 2u;
    if (n > kMaxVertices)
        throw ParseError("n too large");
    std::vector<std::pair<std::size_t, Simplex>> faces;
    for (const auto& face : j["faces"])
    {
        if (!face.is_array())
            throw ParseError("face entries must be arrays");
        Simplex s;
        for (const auto& v : face)
        {
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 || v.get<std::uint64_t>() > n)
                throw ParseError("face labels must be integers in [1, n]");
            s.push_back(static_cast<Vertex>(v.get<std::uint64_t>() - 1));
        }
        faces.emplace_back(0, std::move(s));
    }
    return complex_from_faces(static_cast<Vertex>(n), dim, faces);
}

Complex read_complex_plain(std::istream& is)
{
    std::optional<Vertex> n;
    unsigned dim = 2;
    bool dim_declared = false;
    Vertex max_label = 0;
    std::vector<std::pair<std::size_t, Simplex>> faces;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first))
            continue;
        if (first[0] == '#')
        {
            std::string key = first.size() > 1 ? first.substr(1) : "";
            if (key.empty())
                ls >> key;
            long long value = 0;
            if (key == "n" || key == "dim")
            {
                if (!(ls >> value) || value < 1)
                    throw ParseError("bad header value for " + key, lineno);
                if (key == "n")
                    n = static_cast<Vertex>(value);
                else
                    dim = static_cast<unsigned>(value), dim_declared = true;
            }
            continue;
        }
        Simplex s;
        ls.clear();
        ls.str(line);
        long long label;
        while (ls >> label)
        {
            if (label < 1 || label > static_cast<long long>(kMaxVertices))
                throw ParseError("vertex label out of range", lineno);
            s.push_back(static_cast<Vertex>(label - 1));
            max_label = std::max(max_label, static_cast<Vertex>(label));
        }
        if (!ls.eof())
            throw ParseError("non-numeric token", lineno);
        faces.emplace_back(lineno, std::move(s));
    }
    if (!faces.empty() && !dim_declared)
        dim = static_cast<unsigned>(faces.front().second.size() - 1);
    const Vertex count = n.value_or(max_label);
    if (count < max_label)
        throw ParseError("face label exceeds declared n");
    return complex_from_faces(count, dim, faces);
}

} // namespace

Complex read_complex(std::istream& is)
{
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return read_complex_json(text);
    std::istringstream ss(text);
    return read_complex_plain(ss);
}

Complex read_complex_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_complex(in);
}

} // namespace homoforge
