#ifndef DECOMP_COMPLEX_HPP
#define DECOMP_COMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "face.hpp"

namespace decomp {

/// A simplicial complex stored by its facets (inclusion-maximal faces).
///
/// Facets are kept in canonical lexicographic order, so two complexes with
/// the same face set compare equal. Vertex ids are never compacted: deleting
/// every face through a vertex leaves its id in the table, unused.
///
/// A complex with no facets at all is the void complex. The complex whose only
/// facet is the empty face is the (-1)-simplex.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    [[nodiscard]] int vertex_count() const { return vertex_count_; }
    [[nodiscard]] const std::vector<Face>& facets() const { return facets_; }
    [[nodiscard]] std::size_t facet_count() const { return facets_.size(); }
    [[nodiscard]] bool is_void() const { return facets_.empty(); }

    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] bool has_labels() const { return !labels_.empty(); }
    void set_labels(std::vector<std::string> labels)
    {
        require_input(labels.empty() || static_cast<int>(labels.size()) == vertex_count_,
                      "label count does not match vertex count");
        labels_ = std::move(labels);
    }
    [[nodiscard]] std::string label(VertexId v) const
    {
        return labels_.empty() ? std::to_string(v) : labels_[static_cast<std::size_t>(v)];
    }

    /// Largest facet dimension; -1 for the (-1)-simplex and for the void complex.
    [[nodiscard]] int dim() const
    {
        int d = -1;
        for (Face f : facets_) d = std::max(d, f.dim());
        return d;
    }

    [[nodiscard]] bool is_pure() const
    {
        if (facets_.empty()) return true;
        const int s = facets_.front().size();
        return std::all_of(facets_.begin(), facets_.end(), [s](Face f) { return f.size() == s; });
    }

    [[nodiscard]] bool is_simplex() const { return facets_.size() == 1; }

    [[nodiscard]] bool is_face(Face tau) const
    {
        return std::any_of(facets_.begin(), facets_.end(), [tau](Face f) { return tau.subset_of(f); });
    }

    /// Vertices that appear in at least one facet.
    [[nodiscard]] Face support() const
    {
        Face s;
        for (Face f : facets_) s = s | f;
        return s;
    }

    bool operator==(const SimplicialComplex& o) const
    {
        return vertex_count_ == o.vertex_count_ && facets_ == o.facets_;
    }

    friend SimplicialComplex make_complex(std::vector<Face> facet_list, int vertex_count);

private:
    int vertex_count_ = 0;
    std::vector<Face> facets_;
    std::vector<std::string> labels_;
};

/// Keeps only inclusion-maximal sets, sorted canonically. Input order is irrelevant.
inline std::vector<Face> maximal_faces(std::vector<Face> faces)
{
    // Larger sets first, so a set can only be swallowed by one already kept.
    std::sort(faces.begin(), faces.end(), [](Face a, Face b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.bits() < b.bits();
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::vector<Face> kept;
    for (Face f : faces) {
        bool covered = std::any_of(kept.begin(), kept.end(), [f](Face g) { return f.subset_of(g); });
        if (!covered) kept.push_back(f);
    }
    std::sort(kept.begin(), kept.end(), lex_less);
    return kept;
}

inline SimplicialComplex make_complex(std::vector<Face> facet_list, int vertex_count)
{
    require_input(vertex_count >= 0 && vertex_count <= max_vertices,
                  "vertex_count " + std::to_string(vertex_count) + " outside [0, 64]");
    for (Face f : facet_list) {
        require_input(f.empty() || f.max_vertex() < vertex_count,
                      "facet " + to_string(f) + " references a vertex id >= " + std::to_string(vertex_count));
    }
    SimplicialComplex c;
    c.vertex_count_ = vertex_count;
    c.facets_ = maximal_faces(std::move(facet_list));
    return c;
}

inline SimplicialComplex make_complex(const std::vector<std::vector<VertexId>>& facet_list, int vertex_count)
{
    std::vector<Face> faces;
    faces.reserve(facet_list.size());
    for (const auto& ids : facet_list) {
        for (VertexId v : ids) {
            require_input(v >= 0 && v < vertex_count,
                          "vertex id " + std::to_string(v) + " out of range for vertex_count " +
                              std::to_string(vertex_count));
        }
        faces.push_back(Face::from_ids(ids));
    }
    return make_complex(std::move(faces), vertex_count);
}

namespace detail {
inline SimplicialComplex with_labels_of(SimplicialComplex c, const SimplicialComplex& src)
{
    if (src.has_labels()) c.set_labels(src.labels());
    return c;
}
} // namespace detail

/// del(Δ, τ): all faces of Δ that do not contain τ.
inline SimplicialComplex deletion(const SimplicialComplex& cx, Face tau)
{
    require_input(cx.is_face(tau), "deletion: " + to_string(tau) + " is not a face");
    std::vector<Face> out;
    for (Face f : cx.facets()) {
        if (!tau.subset_of(f)) {
            out.push_back(f);
            continue;
        }
        // Maximal subsets of f avoiding tau drop exactly one vertex of tau.
        tau.for_each([&](VertexId v) { out.push_back(f.without(v)); });
    }
    return detail::with_labels_of(make_complex(std::move(out), cx.vertex_count()), cx);
}

/// lk(Δ, τ): faces disjoint from τ whose union with τ is a face.
inline SimplicialComplex link(const SimplicialComplex& cx, Face tau)
{
    require_input(cx.is_face(tau), "link: " + to_string(tau) + " is not a face");
    std::vector<Face> out;
    for (Face f : cx.facets())
        if (tau.subset_of(f)) out.push_back(f.without(tau));
    return detail::with_labels_of(make_complex(std::move(out), cx.vertex_count()), cx);
}

struct RankResult {
    int rank = 0;
    int corank = 0;
    Face witness;
};

/// rank(S) = size of the largest face inside S. Every face lies in a facet, so
/// the maximum of |F ∩ S| over facets F is attained by a face, namely F ∩ S.
inline RankResult rank_of(const SimplicialComplex& cx, Face s)
{
    require_input(s.empty() || s.max_vertex() < cx.vertex_count(), "rank_of: set outside vertex table");
    RankResult r;
    for (Face f : cx.facets()) {
        Face meet = f & s;
        if (meet.size() > r.rank || (meet.size() == r.rank && lex_less(meet, r.witness))) {
            r.rank = meet.size();
            r.witness = meet;
        }
    }
    r.corank = s.size() - r.rank;
    return r;
}

/// All faces of the given dimension, deduplicated, in lexicographic order.
inline std::vector<Face> faces_of_dim(const SimplicialComplex& cx, int k)
{
    std::unordered_set<Face, FaceHash> seen;
    for (Face f : cx.facets()) for_each_subset_of_size(f, k + 1, [&](Face sub) { seen.insert(sub); });
    std::vector<Face> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

/// f_k(Δ), the number of k-dimensional faces.
inline std::int64_t f_count(const SimplicialComplex& cx, int k)
{
    require_input(k >= -1 && k <= cx.dim(),
                  "f_count: k=" + std::to_string(k) + " outside [-1, " + std::to_string(cx.dim()) + "]");
    if (k == -1) return cx.is_void() ? 0 : 1;
    return static_cast<std::int64_t>(faces_of_dim(cx, k).size());
}

/// Facets as sorted id lists, in canonical order.
inline std::vector<std::vector<VertexId>> facet_lists(const SimplicialComplex& cx)
{
    std::vector<std::vector<VertexId>> out;
    out.reserve(cx.facet_count());
    for (Face f : cx.facets()) out.push_back(f.vertices());
    return out;
}

/// Full simplex on `n` vertices and its boundary; handy fixtures.
inline SimplicialComplex simplex(int n)
{
    Face all;
    for (int v = 0; v < n; ++v) all.insert(v);
    return make_complex(std::vector<Face>{all}, n);
}

inline SimplicialComplex simplex_boundary(int n)
{
    Face all;
    for (int v = 0; v < n; ++v) all.insert(v);
    std::vector<Face> out;
    for (int v = 0; v < n; ++v) out.push_back(all.without(v));
    return make_complex(std::move(out), n);
}

inline SimplicialComplex cycle(int n)
{
    std::vector<Face> out;
    for (int v = 0; v < n; ++v) out.push_back(Face{v, (v + 1) % n});
    return make_complex(std::move(out), n);
}

} // namespace decomp

#endif // DECOMP_COMPLEX_HPP
