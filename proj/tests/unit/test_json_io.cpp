#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <domcone/json_io.hpp>
#include <domcone/random.hpp>

using namespace domcone;

TEST(JsonNumbers, NonFiniteAsStrings) {
    EXPECT_EQ(number_to_json(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(number_to_json(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(number_to_json(std::nan("")), "nan");
    EXPECT_TRUE(std::isinf(number_from_json(json("inf"))));
    EXPECT_TRUE(std::isnan(number_from_json(json("nan"))));
    EXPECT_EQ(number_from_json(json(2.5)), 2.5);
    EXPECT_THROW(number_from_json(json("two")), Error);
}

TEST(JsonNumbers, RoundTripExactly) {
    RandomStream rng(110, 0);
    for (int k = 0; k < 1000; ++k) {
        const double v = rng.normal() * std::pow(10.0, rng.uniform(-300.0, 300.0));
        EXPECT_EQ(number_from_json(json::parse(number_to_json(v).dump())), v);
    }
}

TEST(JsonMatrix, RoundTrip) {
    for (std::size_t i = 0; i < 50; ++i) {
        RandomStream rng(111, i);
        const SymMatrix x = sample_goe(rng, 2 + i % 6);
        EXPECT_EQ(sym_matrix_from_json(json::parse(to_json(x).dump())), x);
        const SquareMatrix q = sample_orthogonal(rng, 3);
        const SquareMatrix back = square_matrix_from_json(to_json(q));
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(back(r, c), q(r, c));
    }
}

TEST(JsonMatrix, Malformed) {
    const auto code = [](const std::string& text) {
        try {
            sym_matrix_from_json(json::parse(text));
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::io_failure;
    };
    EXPECT_EQ(code(R"({"n": 2, "entries": [[1, 2]]})"), ErrorCode::malformed_input);
    EXPECT_EQ(code(R"({"entries": [[1, 2], [2, 1]]})"), ErrorCode::malformed_input);
    EXPECT_EQ(code(R"({"n": 2, "entries": [[1, "x"], [2, 1]]})"), ErrorCode::malformed_input);
    EXPECT_EQ(code(R"([1, 2, 3])"), ErrorCode::malformed_input);
}

TEST(JsonExponent, Forms) {
    EXPECT_TRUE(parse_exponent("inf").is_infinite());
    EXPECT_TRUE(parse_exponent("infinity").is_infinite());
    EXPECT_EQ(parse_exponent("2.5"), Exponent::finite(2.5));
    EXPECT_THROW(parse_exponent("1.5"), Error);
    EXPECT_THROW(parse_exponent("abc"), Error);
    EXPECT_EQ(to_json(Exponent::infinity()), "inf");
    EXPECT_EQ(exponent_from_json(to_json(Exponent::finite(3.0))), Exponent::finite(3.0));
}

TEST(JsonOperator, RoundTripPreservesValues) {
    for (std::size_t i = 0; i < 30; ++i) {
        RandomStream rng(112, i);
        const std::size_t n = 2 + i % 4;
        const std::vector<OperatorSpec> ops{
            OperatorSpec::dominative(n, Exponent::finite(3.0)),
            OperatorSpec::dominative(n, Exponent::infinity()),
            OperatorSpec::pucci(n, 0.5, 2.0),
            OperatorSpec::linear(sample_psd_unit_trace(rng, n), 0.25),
            OperatorSpec::ensemble(ConvexBody({sample_psd_unit_trace(rng, n)})),
            OperatorSpec::shifted(OperatorSpec::pucci(n, 1.0, 3.0), sample_goe(rng, n)),
            OperatorSpec::conjugated(OperatorSpec::dominative(n, Exponent::finite(4.0)), sample_invertible(rng, n)),
        };
        const SymMatrix x = sample_goe(rng, n);
        for (const auto& op : ops) {
            const OperatorSpec back = operator_from_json(json::parse(to_json(op).dump()));
            EXPECT_EQ(back.describe(), op.describe());
            EXPECT_NEAR(evaluate(back, x).value, evaluate(op, x).value, 1e-13) << op.describe();
        }
    }
    EXPECT_EQ(operator_from_json(json{{"type", "example"}}).dim(), 2u);
}

TEST(JsonOperator, ShorthandsAndErrors) {
    EXPECT_EQ(parse_operator_shorthand("dominative:n=3,p=4").describe(), "dominative(n=3,p=4)");
    EXPECT_EQ(parse_operator_shorthand("dominative:n=3,p=inf").describe(), "dominative(n=3,p=inf)");
    EXPECT_NEAR(eval_pucci(SymMatrix::diagonal({2.0, -1.0}), 1.0, 3.0),
                evaluate(parse_operator_shorthand("pucci:n=2,lam=1,Lam=3"), SymMatrix::diagonal({2.0, -1.0})).value, 0.0);
    EXPECT_EQ(parse_operator_shorthand("example").dim(), 2u);
    EXPECT_EQ(parse_body_shorthand("pucci:n=2,lam=1,Lam=3").generators().size(), 3u);
    EXPECT_THROW(parse_operator_shorthand("laplace:n=3"), Error);
    EXPECT_THROW(parse_operator_shorthand("dominative:n=3"), Error);
    EXPECT_THROW(operator_from_json(json{{"type", "mystery"}}), Error);
    EXPECT_THROW(operator_from_json(json{{"type", "pucci"}, {"n", 2}, {"lam", 3}, {"Lam", 1}}), Error);
}

TEST(JsonBody, RoundTrip) {
    RandomStream rng(113, 0);
    const ConvexBody b({sample_psd_unit_trace(rng, 3), sample_psd_unit_trace(rng, 3)}, false);
    const ConvexBody back = body_from_json(json::parse(to_json(b).dump()));
    EXPECT_FALSE(back.rot_closed());
    ASSERT_EQ(back.generators().size(), 2u);
    EXPECT_EQ(back.generators()[1], b.generators()[1]);
    json j = to_json(b);
    j.erase("rot_closed");
    EXPECT_TRUE(body_from_json(j).rot_closed());
}

TEST(JsonReports, RoundTrips) {
    PropertyReport r;
    r.name = "lipschitz";
    r.samples = 7;
    r.worst = std::numeric_limits<double>::infinity();
    r.violations.push_back({3, "bad", 0.5});
    r.note = "note";
    const PropertyReport back = property_report_from_json(json::parse(to_json(r).dump()));
    EXPECT_EQ(back.name, r.name);
    EXPECT_EQ(back.samples, 7u);
    EXPECT_TRUE(std::isinf(back.worst));
    EXPECT_EQ(back.violations, r.violations);
    EXPECT_FALSE(to_json(r).at("passed").get<bool>());

    const ApertureResult ap = body_cone_aperture(pucci_body(2, 1.0, 3.0));
    const ApertureResult ap2 = aperture_result_from_json(json::parse(to_json(ap).dump()));
    EXPECT_EQ(ap2.alpha, ap.alpha);
    EXPECT_EQ(ap2.p, ap.p);
    EXPECT_EQ(ap2.c, ap.c);

    const SobolevResult s = sobolev_integral(3, Exponent::finite(2.0), 1.0, 1e-3);
    const SobolevResult s2 = sobolev_result_from_json(json::parse(to_json(s).dump()));
    EXPECT_EQ(s2.value, s.value);
    EXPECT_EQ(s2.diverges, s.diverges);

    InclusionReport inc;
    inc.n = 2;
    inc.p = Exponent::finite(2.5);
    inc.radii = {1e2, 1e4, 1e6};
    inc.worst_fp = {0.1, 0.05, -std::numeric_limits<double>::infinity()};
    inc.verdict = InclusionVerdict::violated;
    const InclusionReport inc2 = inclusion_report_from_json(json::parse(to_json(inc).dump()));
    EXPECT_EQ(inc2.verdict, InclusionVerdict::violated);
    EXPECT_EQ(inc2.worst_fp[1], 0.05);
    EXPECT_TRUE(std::isinf(inc2.worst_fp[2]));
    EXPECT_EQ(to_json(inc).at("verdict"), "violated");
}

TEST(JsonFiles, ReadErrors) {
    const auto dir = std::filesystem::temp_directory_path();
    try {
        read_json_file(dir / "domcone-no-such-file.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::io_failure);
    }
    const auto bad = dir / "domcone-bad.json";
    std::ofstream(bad) << "{not json";
    try {
        read_json_file(bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::malformed_input);
    }
    std::filesystem::remove(bad);
}
