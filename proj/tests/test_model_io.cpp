#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "rpboost/bench.hpp"
#include "rpboost/errors.hpp"
#include "rpboost/model_io.hpp"
#include "rpboost/rng.hpp"
#include "support.hpp"

using namespace rpboost;

namespace {

std::string temp_path(const std::string& name) {
    const auto dir =
        std::filesystem::temp_directory_path() / "rpboost_model_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string p = temp_path(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

Ensemble linear_ensemble() {
    Rng rng(60);
    Ensemble e;
    e.method = "rpboost";
    e.dim = 5;
    e.config.rounds = 7;
    e.config.lambda = 0.3;
    e.config.subspace_dim = 3;
    e.config.projections = 3;
    e.config.seed = 42;
    for (int k = 0; k < 3; ++k) {
        LinearClassifier c;
        c.beta = Vector(5);
        for (double& v : c.beta) v = rng.normal(0, 1);
        c.lambda = 0.3;
        e.members.push_back({rng.normal(0, 1), Learner(c)});
    }
    return e;
}

Ensemble stump_ensemble() {
    Ensemble e;
    e.method = "stump-boost";
    e.dim = 4;
    e.config.rounds = 3;
    Stump s1;
    s1.feature = 2;
    s1.threshold = 0.125;
    s1.polarity = 1.0;
    Stump s2;
    s2.feature = 0;
    s2.threshold = -std::numeric_limits<double>::infinity();
    s2.polarity = -1.0;
    e.members.push_back({1.5, Learner(s1)});
    e.members.push_back({0.25, Learner(s2)});
    return e;
}

}  // namespace

TEST_CASE("method tokens are the five CLI names, aligned with bench") {
    const auto& tokens = method_tokens();
    REQUIRE(tokens.size() == 5);
    CHECK(tokens[0] == "rrc");
    CHECK(tokens[1] == "rrc-boost");
    CHECK(tokens[2] == "rpboost");
    CHECK(tokens[3] == "rprrc");
    CHECK(tokens[4] == "stump-boost");

    for (const std::string& t : tokens) {
        CHECK(is_method_token(t));
        // bench's enum round-trips through the same names.
        CHECK(method_name(method_from_name(t)) == t);
    }
    CHECK_FALSE(is_method_token("adaboost"));
    CHECK_THROWS_AS(method_from_name("adaboost"), ValueError);
}

TEST_CASE("save/load round-trips a linear ensemble bit for bit") {
    const Ensemble e = linear_ensemble();
    const std::string path = temp_path("linear.model");
    save_model(e, path);
    const Ensemble back = load_model(path);

    CHECK(back.method == e.method);
    CHECK(back.dim == e.dim);
    CHECK(back.config.rounds == e.config.rounds);
    CHECK(back.config.lambda == e.config.lambda);
    CHECK(back.config.subspace_dim == e.config.subspace_dim);
    CHECK(back.config.projections == e.config.projections);
    CHECK(back.config.seed == e.config.seed);
    REQUIRE(back.members.size() == e.members.size());
    for (std::size_t k = 0; k < e.members.size(); ++k) {
        CHECK(back.members[k].alpha == e.members[k].alpha);
        const auto& orig = std::get<LinearClassifier>(e.members[k].learner);
        const auto& got = std::get<LinearClassifier>(back.members[k].learner);
        REQUIRE(got.beta.size() == orig.beta.size());
        for (std::size_t j = 0; j < orig.beta.size(); ++j) {
            CHECK(got.beta[j] == orig.beta[j]);  // bitwise
        }
    }
}

TEST_CASE("save/load round-trips stumps including infinite thresholds") {
    const Ensemble e = stump_ensemble();
    const std::string path = temp_path("stump.model");
    save_model(e, path);
    const Ensemble back = load_model(path);

    REQUIRE(back.members.size() == 2);
    const auto& s1 = std::get<Stump>(back.members[0].learner);
    CHECK(s1.feature == 2);
    CHECK(s1.threshold == 0.125);
    CHECK(s1.polarity == 1.0);
    const auto& s2 = std::get<Stump>(back.members[1].learner);
    CHECK(s2.feature == 0);
    CHECK(s2.threshold == -std::numeric_limits<double>::infinity());
    CHECK(s2.polarity == -1.0);
    CHECK(back.members[0].alpha == 1.5);
    CHECK(back.members[1].alpha == 0.25);
}

TEST_CASE("saving the same ensemble twice produces identical bytes") {
    const Ensemble e = linear_ensemble();
    const std::string p1 = temp_path("bytes1.model");
    const std::string p2 = temp_path("bytes2.model");
    save_model(e, p1);
    save_model(e, p2);
    std::ifstream f1(p1, std::ios::binary);
    std::ifstream f2(p2, std::ios::binary);
    const std::string s1((std::istreambuf_iterator<char>(f1)),
                         std::istreambuf_iterator<char>());
    const std::string s2((std::istreambuf_iterator<char>(f2)),
                         std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(s1.rfind("rpboost-model 1 rpboost ", 0) == 0);
}

TEST_CASE("save_model validates before writing") {
    Ensemble empty = linear_ensemble();
    empty.members.clear();
    CHECK_THROWS_AS(save_model(empty, temp_path("bad1.model")), ValueError);

    Ensemble unknown = linear_ensemble();
    unknown.method = "mystery";
    CHECK_THROWS_AS(save_model(unknown, temp_path("bad2.model")), ValueError);

    Ensemble mismatched = linear_ensemble();
    mismatched.dim = 9;  // members carry 5 coefficients
    CHECK_THROWS_AS(save_model(mismatched, temp_path("bad3.model")),
                    DimensionError);
}

TEST_CASE("load_model error kinds") {
    SUBCASE("missing file") {
        try {
            load_model("/nonexistent/no.model");
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.kind() == DataError::Kind::MissingFile);
        }
    }
    SUBCASE("empty file") {
        const auto p = write_temp("empty.model", "");
        try {
            load_model(p);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.kind() == DataError::Kind::EmptyFile);
        }
    }
    SUBCASE("wrong magic") {
        const auto p = write_temp("magic.model",
                                  "other-model 1 rpboost 1 0.3 3 3 0 2\n1 1 1\n");
        try {
            load_model(p);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.kind() == DataError::Kind::BadFormat);
        }
    }
    SUBCASE("unsupported version") {
        const auto p = write_temp(
            "version.model", "rpboost-model 9 rpboost 1 0.3 3 3 0 2\n1 1 1\n");
        CHECK_THROWS_AS(load_model(p), DataError);
    }
    SUBCASE("unknown method token") {
        const auto p = write_temp(
            "method.model", "rpboost-model 1 sorcery 1 0.3 3 3 0 2\n1 1 1\n");
        CHECK_THROWS_AS(load_model(p), DataError);
    }
    SUBCASE("short header") {
        const auto p =
            write_temp("short.model", "rpboost-model 1 rpboost 1 0.3\n");
        CHECK_THROWS_AS(load_model(p), DataError);
    }
    SUBCASE("header without members") {
        const auto p = write_temp("nomembers.model",
                                  "rpboost-model 1 rpboost 1 0.3 3 3 0 2\n");
        try {
            load_model(p);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.kind() == DataError::Kind::BadFormat);
        }
    }
    SUBCASE("linear member with the wrong coefficient count") {
        const auto p = write_temp(
            "shortrow.model", "rpboost-model 1 rpboost 1 0.3 3 3 0 3\n1 1 1\n");
        CHECK_THROWS_AS(load_model(p), DataError);
    }
    SUBCASE("unparseable number") {
        const auto p = write_temp(
            "badnum.model",
            "rpboost-model 1 rpboost 1 0.3 3 3 0 2\n1 x 1\n");
        try {
            load_model(p);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.kind() == DataError::Kind::BadNumber);
        }
    }
    SUBCASE("stump feature index out of range") {
        const auto p = write_temp(
            "stumpidx.model",
            "rpboost-model 1 stump-boost 1 0.3 3 3 0 2\n1 stump 2 0.5 1\n");
        CHECK_THROWS_AS(load_model(p), DataError);
    }
    SUBCASE("stump polarity outside +/-1") {
        const auto p = write_temp(
            "stumppol.model",
            "rpboost-model 1 stump-boost 1 0.3 3 3 0 2\n1 stump 0 0.5 2\n");
        CHECK_THROWS_AS(load_model(p), DataError);
    }
    SUBCASE("stump line with missing fields") {
        const auto p = write_temp(
            "stumpshort.model",
            "rpboost-model 1 stump-boost 1 0.3 3 3 0 2\n1 stump 0 0.5\n");
        CHECK_THROWS_AS(load_model(p), DataError);
    }
}

TEST_CASE("loaded models predict identically to the ensemble they came from") {
    const Ensemble e = linear_ensemble();
    const std::string path = temp_path("predict.model");
    save_model(e, path);
    const Ensemble back = load_model(path);

    Rng probe(61);
    for (int i = 0; i < 25; ++i) {
        Vector x(5);
        for (double& v : x) v = probe.normal(0, 3);
        CHECK(predict_ensemble(e, x) == predict_ensemble(back, x));
    }
}
