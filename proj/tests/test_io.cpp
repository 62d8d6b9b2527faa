#include <catch2/catch_amalgamated.hpp>

#include <decomp/delta_family.hpp>
#include <decomp/io.hpp>

using namespace decomp;
using io::Json;

TEST_CASE("complex JSON is canonical")
{
    auto cx = io::complex_from_json(io::parse_json_text(R"({"vertex_count": 4, "facets": [[2, 1], [0, 1], [1, 2, 0], [3]]})"));
    REQUIRE(io::complex_to_json(cx).dump() == R"({"vertex_count":4,"facets":[[0,1,2],[3]]})");
}

TEST_CASE("Δ(1,1) golden output")
{
    auto d = delta_complex(1, 1);
    REQUIRE(io::complex_to_json(d.complex).dump() ==
            R"({"vertex_count":6,"vertex_labels":["u1","u2","u3","v1","v2","v3"],)"
            R"("facets":[[0,4],[0,5],[1,3],[1,5],[2,3],[2,4]]})");
}

TEST_CASE("complex round trip")
{
    auto d = delta_complex(2, 1);
    auto back = io::complex_from_json(io::complex_to_json(d.complex));
    REQUIRE(back == d.complex);
    REQUIRE(back.labels() == d.complex.labels());
}

TEST_CASE("malformed complexes are input errors")
{
    REQUIRE_THROWS_AS(io::complex_from_json(io::parse_json_text(R"({"facets": [[0]]})")), InputError);
    REQUIRE_THROWS_AS(io::complex_from_json(io::parse_json_text(R"({"vertex_count": 2, "facets": [[0, 5]]})")), InputError);
    REQUIRE_THROWS_AS(io::complex_from_json(io::parse_json_text(R"([1, 2])")), InputError);
    REQUIRE_THROWS_AS(io::parse_json_text("{"), InputError);
}

TEST_CASE("faces by id or label")
{
    auto d = delta_complex(1, 1);
    auto seq = io::sequence_from_json(io::parse_json_text(R"({"faces": [["u1"], [4], ["u3", "v1"]]})"), d.complex);
    REQUIRE(seq == std::vector<Face>{Face{0}, Face{4}, Face{2, 3}});
    REQUIRE(io::sequence_to_json(seq, d.complex).dump() == R"({"faces":[["u1"],["v2"],["u3","v1"]]})");
    REQUIRE_THROWS_AS(io::face_from_json(io::parse_json_text(R"(["w9"])"), d.complex), InputError);
    REQUIRE_THROWS_AS(io::face_from_json(io::parse_json_text(R"([6])"), d.complex), InputError);
}

TEST_CASE("certificate round trip")
{
    auto c6 = cycle(6);
    auto v = find_strong_decomposition(c6, 0);
    REQUIRE(v.certificate);
    auto j = io::certificate_to_json(*v.certificate);
    auto back = io::certificate_from_json(j);
    REQUIRE(io::certificate_to_json(back) == j);
    REQUIRE(verify_certificate(c6, back));

    auto w = find_weak_decomposition(delta_complex(1, 1).complex, 0);
    REQUIRE(io::certificate_to_json(*w.certificate).dump() ==
            R"({"mode":"weak","k":0,"steps":[{"face":[0],"facets_after":4},{"face":[4],"facets_after":3},)"
            R"({"face":[2],"facets_after":2},{"face":[3],"facets_after":1}],"terminal":[1,5]})");
    REQUIRE_THROWS_AS(io::certificate_from_json(io::parse_json_text(R"({"mode":"odd","k":0,"steps":[]})")), InputError);
}

TEST_CASE("margins round trip with rationals")
{
    auto mg = io::margins_from_json(io::parse_json_text(R"({"row": ["3/2", 2], "col": [1, "5/2"]})"));
    REQUIRE(mg.row[0] == Rational(3, 2));
    REQUIRE(io::margins_to_json(mg).dump() == R"({"row":["3/2","2"],"col":["1","5/2"]})");
    REQUIRE_THROWS_AS(io::margins_from_json(io::parse_json_text(R"({"row": [0], "col": [1]})")), InputError);
    REQUIRE_THROWS_AS(io::margins_from_json(io::parse_json_text(R"({"row": [true], "col": [1]})")), InputError);
}

TEST_CASE("vertex JSON uses 1-based supports")
{
    auto verts = enumerate_vertices(Margins::from_ints({3, 3}, {2, 2, 2}));
    auto j = io::vertices_to_json(verts);
    REQUIRE(j.size() == 6);
    REQUIRE(j[0]["support"][0][0].get<int>() >= 1);
    REQUIRE(j.dump() == io::vertices_to_json(enumerate_vertices(Margins::from_ints({3, 3}, {2, 2, 2}))).dump());
}

TEST_CASE("extraction JSON")
{
    auto ex = minimal_empty_intersection({{{1, 2}, {2, 3}, {3, 1}}, 1});
    REQUIRE(io::extraction_to_json(ex, 1).dump() ==
            R"({"k":1,"indices":[0,1,2],"subcollection":[[1,2],[2,3],[1,3]],"witnesses":[3,1,2],)"
            R"("union_size":3,"chain_bound":3,"square_bound":"16/4"})");
}

TEST_CASE("theorem audit JSON")
{
    auto d = delta_complex(3, 3);
    auto seq = complete_to_simplex(d, {});
    auto a = audit_sequence_against_theorem(3, 3, 0, seq);
    auto j = io::theorem_audit_to_json(a, d, 0);
    REQUIRE(j["result"] == "witness");
    REQUIRE(j["witness"]["checks_pass"] == true);
    REQUIRE(j["witness"]["A_extends_to_facet"] == false);
}
