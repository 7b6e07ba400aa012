#include <catch_amalgamated.hpp>

#include "ancilla/json_io.hpp"
#include "ancilla/random.hpp"

using namespace ancilla;

TEST_CASE("matrix JSON round trip preserves every bit") {
    Rng rng(181);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t rows = 1 + rng.raw() % 5, cols = 1 + rng.raw() % 5;
        CMatrix m(rows, cols);
        for (auto& z : m.data()) z = rng.complex_gaussian();

        JsonWriter w;
        write_matrix(w, m);
        const nlohmann::json j = nlohmann::json::parse(w.str());
        const CMatrix back = matrix_from_json(j, "m");
        REQUIRE(back.rows() == rows);
        REQUIRE(back.cols() == cols);
        CHECK((back - m).max_abs() == 0.0);
    }
}

TEST_CASE("writer output is deterministic") {
    auto render = [] {
        JsonWriter w;
        w.begin_object();
        w.key("x").value(1.0 / 3.0);
        w.key("names").begin_array().value(std::string("a")).value(std::string("b")).end_array();
        w.key("flag").value(true);
        w.key("none").null();
        w.end_object();
        return w.str();
    };
    CHECK(render() == render());
    CHECK(render() == "{\"x\":0.33333333333333331,\"names\":[\"a\",\"b\"],\"flag\":true,\"none\":null}");
}

TEST_CASE("matrix parsing rejects malformed input") {
    auto parse = [](const char* text) {
        return matrix_from_json(nlohmann::json::parse(text), "m");
    };
    CHECK_THROWS_AS(parse("{\"rows\": 2, \"cols\": 2}"), validation_error);
    CHECK_THROWS_AS(parse("{\"rows\": 2, \"cols\": 2, \"data\": [[1, 0]]}"), validation_error);
    CHECK_THROWS_AS(parse("{\"rows\": 1, \"cols\": 1, \"data\": [[1]]}"), validation_error);
    CHECK_THROWS_AS(parse("{\"rows\": 1, \"cols\": 1, \"data\": [1]}"), validation_error);
    CHECK_THROWS_AS(parse("{\"rows\": -1, \"cols\": 1, \"data\": []}"), validation_error);
    CHECK_NOTHROW(parse("{\"rows\": 1, \"cols\": 1, \"data\": [[1, 0]]}"));
}

TEST_CASE("unitary parsing validates structure and unitarity") {
    const char* good = R"({"d_a": 1, "d_b": 2, "u": {"rows": 2, "cols": 2,
        "data": [[0,0],[1,0],[1,0],[0,0]]}})";
    const BipartiteUnitary bu = unitary_from_json(nlohmann::json::parse(good));
    CHECK(bu.d_b == 2);

    const char* not_unitary = R"({"d_a": 1, "d_b": 2, "u": {"rows": 2, "cols": 2,
        "data": [[2,0],[0,0],[0,0],[1,0]]}})";
    CHECK_THROWS_AS(unitary_from_json(nlohmann::json::parse(not_unitary)), unitarity_error);

    const char* missing = R"({"d_a": 1, "u": {"rows": 1, "cols": 1, "data": [[1,0]]}})";
    CHECK_THROWS_AS(unitary_from_json(nlohmann::json::parse(missing)), validation_error);
}

TEST_CASE("vector JSON rejects bad pairs") {
    CHECK_THROWS_AS(vector_from_json(nlohmann::json::parse("[[1, 2, 3]]"), "v"),
                    validation_error);
    CHECK_THROWS_AS(vector_from_json(nlohmann::json::parse("[\"x\"]"), "v"), validation_error);
    const CVector v = vector_from_json(nlohmann::json::parse("[[1, 0], [0, -1]]"), "v");
    CHECK(v[1] == cx(0.0, -1.0));
}

TEST_CASE("parse_json_file reports the offending file") {
    CHECK_THROWS_AS(parse_json_file("/tmp/ancilla_missing.json"), validation_error);
    {
        std::ofstream bad("/tmp/ancilla_bad.json");
        bad << "{ not json";
    }
    try {
        parse_json_file("/tmp/ancilla_bad.json");
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("ancilla_bad.json") != std::string::npos);
    }
}
