#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <decomp/complex.hpp>
#include <decomp/delta_family.hpp>

#include "oracles.hpp"

using namespace decomp;

namespace {

SimplicialComplex random_complex(std::mt19937_64& rng, int n, int max_facets)
{
    std::uniform_int_distribution<int> count(1, max_facets);
    std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << n) - 1);
    std::vector<Face> fs;
    int c = count(rng);
    for (int i = 0; i < c; ++i) fs.push_back(Face(mask(rng)));
    return make_complex(std::move(fs), n);
}

} // namespace

TEST_CASE("make_complex drops duplicates and non-maximal sets")
{
    auto cx = make_complex(std::vector<std::vector<VertexId>>{{0, 1}, {1, 2}, {0, 1}}, 3);
    REQUIRE(facet_lists(cx) == std::vector<std::vector<VertexId>>{{0, 1}, {1, 2}});

    auto with_sub = make_complex(std::vector<std::vector<VertexId>>{{1}, {0, 1, 2}, {0, 2}}, 3);
    REQUIRE(with_sub.facet_count() == 1);
    REQUIRE(with_sub.dim() == 2);
}

TEST_CASE("make_complex on a single simplex")
{
    auto cx = make_complex(std::vector<std::vector<VertexId>>{{0, 1, 2}}, 3);
    REQUIRE(cx.is_simplex());
    REQUIRE(cx.dim() == 2);
    REQUIRE(cx.is_pure());
}

TEST_CASE("make_complex rejects out-of-range ids")
{
    REQUIRE_THROWS_AS(make_complex(std::vector<std::vector<VertexId>>{{0, 3}}, 3), InputError);
    REQUIRE_THROWS_AS(make_complex(std::vector<std::vector<VertexId>>{{-1}}, 3), InputError);
    REQUIRE_THROWS_AS(make_complex(std::vector<Face>{}, 65), InputError);
}

TEST_CASE("void complex and the (-1)-simplex are distinct")
{
    auto v = make_complex(std::vector<Face>{}, 4);
    REQUIRE(v.is_void());
    REQUIRE_FALSE(v.is_face(Face{}));

    auto e = make_complex(std::vector<Face>{Face{}}, 4);
    REQUIRE_FALSE(e.is_void());
    REQUIRE(e.is_simplex());
    REQUIRE(e.dim() == -1);
    REQUIRE(e.is_face(Face{}));
}

TEST_CASE("make_complex is order independent and idempotent")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        auto cx = random_complex(rng, 8, 10);
        auto again = make_complex(cx.facets(), cx.vertex_count());
        REQUIRE(again == cx);
        auto shuffled = cx.facets();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        REQUIRE(make_complex(shuffled, cx.vertex_count()) == cx);
        // No facet inside another.
        for (Face f : cx.facets())
            for (Face g : cx.facets())
                if (f != g) REQUIRE_FALSE(f.subset_of(g));
    }
}

TEST_CASE("lexicographic facet order")
{
    REQUIRE(lex_less(Face{0}, Face{0, 1}));
    REQUIRE(lex_less(Face{0, 1}, Face{0, 2}));
    REQUIRE(lex_less(Face{0, 2}, Face{1}));
    REQUIRE_FALSE(lex_less(Face{1}, Face{1}));
    REQUIRE(lex_less(Face{}, Face{0}));
}

TEST_CASE("deletion of a vertex from the hexagon leaves a path")
{
    auto c6 = cycle(6);
    auto del = deletion(c6, Face{0});
    REQUIRE(facet_lists(del) == std::vector<std::vector<VertexId>>{{1, 2}, {2, 3}, {3, 4}, {4, 5}});
    REQUIRE(del.is_pure());
    REQUIRE(del.dim() == 1);
    REQUIRE(del.vertex_count() == 6);
}

TEST_CASE("deletion of an edge from a triangle")
{
    auto del = deletion(simplex(3), Face{0, 1});
    REQUIRE(facet_lists(del) == std::vector<std::vector<VertexId>>{{0, 2}, {1, 2}});
    REQUIRE(oracle::facet_masks(del) == oracle::maximal(oracle::deletion(simplex(3), Face{0, 1})));
}

TEST_CASE("deletion of u1 from Δ(2,2) stays pure")
{
    auto d = delta_complex(2, 2);
    auto del = deletion(d.complex, Face{d.labeling.u(1)});
    REQUIRE(del.is_pure());
    REQUIRE(del.dim() == 3);
    REQUIRE(oracle::facet_masks(del) == oracle::maximal(oracle::deletion(d.complex, Face{d.labeling.u(1)})));
    REQUIRE(del.facet_count() == 18);
}

TEST_CASE("deletion and link reject non-faces")
{
    auto c6 = cycle(6);
    REQUIRE_THROWS_AS(deletion(c6, Face{0, 2}), InputError);
    REQUIRE_THROWS_AS(link(c6, Face{0, 3}), InputError);
}

TEST_CASE("link examples")
{
    REQUIRE(facet_lists(link(simplex(3), Face{0})) == std::vector<std::vector<VertexId>>{{1, 2}});
    REQUIRE(facet_lists(link(cycle(6), Face{0})) == std::vector<std::vector<VertexId>>{{1}, {5}});

    auto d = delta_complex(2, 2);
    const auto& lab = d.labeling;
    auto lk = link(d.complex, Face{lab.u(1), lab.u(2)});
    REQUIRE(lk.is_pure());
    REQUIRE(lk.dim() == 1);
    std::vector<Face> expected{Face{lab.v(3), lab.v(4)}, Face{lab.v(3), lab.v(5)}, Face{lab.v(4), lab.v(5)}};
    REQUIRE(lk.facets() == make_complex(expected, 10).facets());
    REQUIRE(oracle::facet_masks(lk) == oracle::maximal(oracle::link(d.complex, Face{lab.u(1), lab.u(2)})));
}

TEST_CASE("rank and corank examples on Δ(2,2)")
{
    auto d = delta_complex(2, 2);
    const auto& lab = d.labeling;
    auto r = rank_of(d.complex, Face{lab.u(1), lab.v(2)});
    REQUIRE(r.rank == 2);
    REQUIRE(r.corank == 0);

    r = rank_of(d.complex, Face{lab.u(1), lab.u(2), lab.u(3)});
    REQUIRE(r.rank == 2);
    REQUIRE(r.corank == 1);

    r = rank_of(d.complex, Face{lab.u(1), lab.v(1)});
    REQUIRE(r.rank == 1);
    REQUIRE(r.corank == 1);

    r = rank_of(d.complex, Face{});
    REQUIRE(r.rank == 0);
    REQUIRE(r.corank == 0);
}

TEST_CASE("f-vector of Δ(2,2)")
{
    auto d = delta_complex(2, 2);
    REQUIRE(f_count(d.complex, 0) == 10);
    REQUIRE(f_count(d.complex, 1) == 40);
    REQUIRE(f_count(d.complex, 3) == 30);
    REQUIRE(f_count(d.complex, 1) == oracle::f_count(d.complex, 1));
    REQUIRE(f_count(d.complex, 2) == oracle::f_count(d.complex, 2));
    REQUIRE(f_count(d.complex, -1) == 1);
    REQUIRE_THROWS_AS(f_count(d.complex, 4), InputError);
    REQUIRE_THROWS_AS(f_count(d.complex, -2), InputError);
}

TEST_CASE("deletion, link, rank and f-counts agree with brute force on random complexes")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        auto cx = random_complex(rng, 7, 8);
        auto all = oracle::faces(cx);
        for (auto bits : all) {
            Face tau(bits);
            auto del = deletion(cx, tau);
            auto lk = link(cx, tau);
            REQUIRE(oracle::faces(del) == oracle::deletion(cx, tau));
            REQUIRE(oracle::faces(lk) == oracle::link(cx, tau));
            // Consistency: link faces joined with tau are faces; no deletion face holds tau.
            for (auto s : oracle::faces(lk)) REQUIRE(all.count(s | bits));
            for (auto s : oracle::faces(del)) REQUIRE((bits & ~s) != 0);
            // Closure soundness: every face has corank 0 on its own vertex set.
            REQUIRE(rank_of(cx, tau).corank == 0);
        }
        std::uniform_int_distribution<std::uint64_t> mask(0, 127);
        for (int q = 0; q < 20; ++q) {
            Face s(mask(rng));
            auto r = rank_of(cx, s);
            REQUIRE(r.rank == oracle::rank(cx, s));
            REQUIRE(r.rank + r.corank == s.size());
            REQUIRE(r.witness.subset_of(s));
            REQUIRE(cx.is_face(r.witness));
            REQUIRE(r.witness.size() == r.rank);
        }
        for (int k = -1; k <= cx.dim(); ++k) REQUIRE(f_count(cx, k) == oracle::f_count(cx, k));
        if (cx.is_pure()) REQUIRE(f_count(cx, cx.dim()) == static_cast<std::int64_t>(cx.facet_count()));
    }
}
