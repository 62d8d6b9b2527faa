#ifndef DECOMP_DELTA_FAMILY_HPP
#define DECOMP_DELTA_FAMILY_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "complex.hpp"
#include "decomposability.hpp"
#include "diameter.hpp"
#include "error.hpp"
#include "transportation.hpp"

namespace decomp {

/// Vertex scheme of Δ(a,b): u_1..u_n get ids 0..n-1, v_1..v_n get ids n..2n-1,
/// with n = a + b + 1. u_nu is polar to F_{1,nu}, v_nu to F_{2,nu}.
struct DeltaLabeling {
    int a = 1;
    int b = 1;

    [[nodiscard]] int n() const { return a + b + 1; }
    [[nodiscard]] int vertex_count() const { return 2 * n(); }
    [[nodiscard]] VertexId u(int nu) const { return nu - 1; }
    [[nodiscard]] VertexId v(int nu) const { return n() + nu - 1; }
    [[nodiscard]] bool in_u(VertexId x) const { return x < n(); }
    [[nodiscard]] int index(VertexId x) const { return in_u(x) ? x + 1 : x - n() + 1; }

    [[nodiscard]] Face u_side() const
    {
        Face f;
        for (int nu = 1; nu <= n(); ++nu) f.insert(u(nu));
        return f;
    }
    [[nodiscard]] Face v_side() const
    {
        Face f;
        for (int nu = 1; nu <= n(); ++nu) f.insert(v(nu));
        return f;
    }

    /// The set of indices nu touched by a face (u_nu or v_nu present).
    [[nodiscard]] std::uint64_t index_mask(Face f) const
    {
        return (f.bits() | (f.bits() >> n())) & ((std::uint64_t{1} << n()) - 1);
    }

    [[nodiscard]] std::vector<std::string> labels() const
    {
        std::vector<std::string> out;
        for (int nu = 1; nu <= n(); ++nu) out.push_back("u" + std::to_string(nu));
        for (int nu = 1; nu <= n(); ++nu) out.push_back("v" + std::to_string(nu));
        return out;
    }
};

struct DeltaComplex {
    SimplicialComplex complex;
    DeltaLabeling labeling;
};

inline void check_delta_params(int a, int b)
{
    require_input(a >= 1 && b >= 1, "Δ(a,b) needs a, b >= 1");
    require_input(2 * (a + b + 1) <= max_vertices, "Δ(a,b) with more than 64 vertices");
}

/// (a+b+1)! / (a! b!)
inline std::int64_t delta_facet_count(int a, int b)
{
    const int n = a + b + 1;
    return static_cast<std::int64_t>(n) * binomial(n - 1, a);
}

/// Δ(a,b) built directly: facets A ∪ B with A ⊆ V of size a, B ⊆ U of size b,
/// never holding both u_nu and v_nu.
inline DeltaComplex delta_complex(int a, int b)
{
    check_delta_params(a, b);
    DeltaLabeling lab{a, b};
    const int n = lab.n();
    std::vector<Face> facets;
    for (int free = 1; free <= n; ++free) {
        Face others;
        for (int nu = 1; nu <= n; ++nu)
            if (nu != free) others.insert(nu);
        // Choose the a indices that go to V; the remaining b go to U.
        for_each_subset_of_size(others, a, [&](Face a_idx) {
            Face f;
            others.for_each([&](int nu) { f.insert(a_idx.contains(nu) ? lab.v(nu) : lab.u(nu)); });
            facets.push_back(f);
        });
    }
    DeltaComplex out{make_complex(std::move(facets), lab.vertex_count()), lab};
    out.complex.set_labels(lab.labels());
    return out;
}

/// Margins (2a+1, 2b+1) and (2, ..., 2) with a+b+1 columns.
inline Margins delta_margins(int a, int b)
{
    check_delta_params(a, b);
    Margins mg;
    mg.row = {Rational(2 * a + 1), Rational(2 * b + 1)};
    mg.col.assign(static_cast<std::size_t>(a + b + 1), Rational(2));
    return mg;
}

/// Δ(a,b) as the polar boundary of P(delta_margins(a,b)). Row-major cell ids
/// coincide with the u/v scheme, so only the labels change.
inline DeltaComplex delta_complex_via_polar(int a, int b)
{
    DeltaLabeling lab{a, b};
    DeltaComplex out{polar_boundary_complex(delta_margins(a, b)), lab};
    out.complex.set_labels(lab.labels());
    return out;
}

using RationalPoint = std::vector<Rational>;

/// Points where the hyperplane sum x_i = 2a+1 crosses an edge of [0,2]^(a+b+1).
/// Checked to correspond one-to-one with the vertices of P(delta_margins(a,b))
/// under x_nu -> (x_nu, 2 - x_nu).
inline std::vector<RationalPoint> cube_slice_vertices(int a, int b)
{
    check_delta_params(a, b);
    const int n = a + b + 1;
    const Rational level(2 * a + 1);
    std::vector<RationalPoint> pts;
    for (int free = 0; free < n; ++free) {
        for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
            RationalPoint p(static_cast<std::size_t>(n), Rational(0));
            Rational fixed_sum(0);
            int bit = 0;
            for (int i = 0; i < n; ++i) {
                if (i == free) continue;
                if ((mask >> bit++) & 1U) {
                    p[static_cast<std::size_t>(i)] = Rational(2);
                    fixed_sum += Rational(2);
                }
            }
            Rational t = level - fixed_sum;
            if (t < Rational(0) || t > Rational(2)) continue;
            p[static_cast<std::size_t>(free)] = t;
            pts.push_back(std::move(p));
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<RationalPoint> lifted;
    for (const auto& v : enumerate_vertices(delta_margins(a, b))) lifted.push_back(v.matrix[0]);
    std::sort(lifted.begin(), lifted.end());
    require_invariant(lifted == pts, "cube slice does not match the transportation polytope vertices");
    for (const auto& v : enumerate_vertices(delta_margins(a, b)))
        for (int j = 0; j < n; ++j)
            require_invariant(v.matrix[1][static_cast<std::size_t>(j)] == Rational(2) - v.matrix[0][static_cast<std::size_t>(j)],
                              "second row is not 2 - first row");
    return pts;
}

struct CrossValidation {
    bool equal = false;
    std::size_t direct_facets = 0;
    std::size_t polar_facets = 0;
    std::int64_t formula = 0;
    bool count_matches = false;

    [[nodiscard]] bool ok() const { return equal && count_matches; }
};

inline CrossValidation cross_validate(int a, int b)
{
    auto direct = delta_complex(a, b);
    auto polar = delta_complex_via_polar(a, b);
    CrossValidation r;
    r.direct_facets = direct.complex.facet_count();
    r.polar_facets = polar.complex.facet_count();
    r.equal = direct.complex == polar.complex;
    r.formula = delta_facet_count(a, b);
    r.count_matches = static_cast<std::int64_t>(r.direct_facets) == r.formula &&
                      static_cast<std::int64_t>(r.polar_facets) == r.formula;
    return r;
}

/// Hirsch-type parameters of the simple polytope behind Δ(a,b).
inline PolytopeParams delta_polytope_params(int a, int b)
{
    return PolytopeParams{2 * (a + b + 1), a + b, 2, a + b + 1};
}

/// Automorphisms of Δ(a,b) that permute the indices nu (acting on u and v
/// together), composed with the u <-> v swap when a == b. (a+b+1)! elements,
/// doubled for a == b; only practical for small n.
inline std::vector<VertexPermutation> delta_symmetry_group(int a, int b)
{
    check_delta_params(a, b);
    DeltaLabeling lab{a, b};
    const int n = lab.n();
    require_input(n <= 8, "symmetry group enumeration limited to a+b+1 <= 8");
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::vector<VertexPermutation> out;
    do {
        VertexPermutation p(static_cast<std::size_t>(2 * n));
        for (int nu = 1; nu <= n; ++nu) {
            p[static_cast<std::size_t>(lab.u(nu))] = lab.u(sigma[static_cast<std::size_t>(nu - 1)]);
            p[static_cast<std::size_t>(lab.v(nu))] = lab.v(sigma[static_cast<std::size_t>(nu - 1)]);
        }
        out.push_back(p);
        if (a == b) {
            VertexPermutation q(p.size());
            for (int nu = 1; nu <= n; ++nu) {
                q[static_cast<std::size_t>(lab.u(nu))] = p[static_cast<std::size_t>(lab.v(nu))];
                q[static_cast<std::size_t>(lab.v(nu))] = p[static_cast<std::size_t>(lab.u(nu))];
            }
            out.push_back(q);
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

} // namespace decomp

#endif // DECOMP_DELTA_FAMILY_HPP
