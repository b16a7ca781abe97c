#include "hpds/decomposition.hpp"
#include "hpds/errors.hpp"
#include "hpds/generators.hpp"
#include "hpds/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <sstream>

using namespace hpds;

namespace {

bool bit_identical(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST_CASE("model files round-trip bit-exactly") {
    ModelFile f = generate_almost_symmetric(3, 4, 2, 1, 99);
    f.V = Matrix::Identity(5, 3) * (1.0 / 3.0);
    const std::string text = serialize_model(f);
    const ModelFile g = parse_model(text);
    CHECK(f.model.A() == g.model.A());
    REQUIRE(g.model.B());
    REQUIRE(g.model.C());
    CHECK(bit_identical(*f.model.B(), *g.model.B()));
    CHECK(bit_identical(*f.model.C(), *g.model.C()));
    REQUIRE(g.V);
    CHECK(bit_identical(*f.V, *g.V));
    CHECK(g.metadata.seed == 99u);
    CHECK(g.metadata.generator == "almost_symmetric");
    CHECK(g.metadata.rng == "mt19937_64/box-muller");
    CHECK(serialize_model(g) == text);
}

TEST_CASE("generators are deterministic") {
    CHECK(serialize_model(generate_almost_symmetric(3, 4, 0, 0, 7)) == serialize_model(generate_almost_symmetric(3, 4, 0, 0, 7)));
    CHECK(serialize_model(generate_almost_symmetric(3, 4, 0, 0, 7)) != serialize_model(generate_almost_symmetric(3, 4, 0, 0, 8)));
}

TEST_CASE("odeco generator") {
    OdecoSpec spec;
    spec.n = 2;
    spec.k = 4;
    spec.r = 2;
    const ModelFile f = generate_odeco(spec, 1);
    CHECK(is_odeco(f.model.A()));
    spec.n = 4;
    spec.r = 2;
    spec.negative_only = true;
    const OdecoDecomposition d = odeco_decompose(generate_odeco(spec, 2).model.A());
    CHECK(std::count(d.lambdas.begin(), d.lambdas.end(), 0.0) == 2);
    for (double l : d.lambdas) CHECK(l <= 0.0);
    for (double l : d.lambdas)
        if (l != 0.0) CHECK((-l >= 0.5 && -l <= 3.0));
    spec.r = 5;
    CHECK_THROWS_AS((void)generate_odeco(spec, 3), InputError);
}

TEST_CASE("example generators") {
    const ModelFile e1 = generate_example1();
    CHECK(e1.model.n() == 6);
    CHECK(e1.model.k() == 4);
    std::vector<double> l = odeco_decompose(e1.model.A()).lambdas;
    std::sort(l.begin(), l.end());
    const std::vector<double> want{-9.7615, -8.2880, -3.2248, 0, 0, 0};
    for (std::size_t i = 0; i < 6; ++i) CHECK(l[i] == doctest::Approx(want[i]).epsilon(1e-10));
    // the polar factor differs from the printed basis only at print precision
    CHECK((example1::basis() - example1::printed_basis()).cwiseAbs().maxCoeff() < 5e-4);

    const ModelFile e2 = generate_example2(4);
    CHECK(e2.model.n() == 12);
    CHECK(e2.model.m() == 5);
    CHECK(e2.model.l() == 0);
    CHECK(param_count(12, 4, 5, 0) == 20796);
}

TEST_CASE("malformed model documents") {
    CHECK_THROWS_AS((void)parse_model("not json"), InputError);
    CHECK_THROWS_AS((void)parse_model("{}"), InputError);
    const std::string base = serialize_model(generate_almost_symmetric(2, 3, 0, 0, 1));
    std::string wrong_layout = base;
    const auto pos = wrong_layout.find("first-index-fastest");
    REQUIRE(pos != std::string::npos);
    wrong_layout.replace(pos, std::strlen("first-index-fastest"), "row-major");
    CHECK_THROWS_AS((void)parse_model(wrong_layout), InputError);
    const std::string short_data =
        R"({"schema_version":1,"order":2,"dim":2,"dynamic_tensor":{"dims":[2,2],"layout":"first-index-fastest","data":[1,2,3]}})";
    CHECK_THROWS_AS((void)parse_model(short_data), InputError);
    const std::string bad_version =
        R"({"schema_version":9,"order":2,"dim":1,"dynamic_tensor":{"dims":[1,1],"layout":"first-index-fastest","data":[1]}})";
    CHECK_THROWS_AS((void)parse_model(bad_version), InputError);
    const std::string not_almost_symmetric =
        R"({"schema_version":1,"order":3,"dim":2,"dynamic_tensor":{"dims":[2,2,2],"layout":"first-index-fastest","data":[0,1,0,0,0,0,0,0]}})";
    CHECK_THROWS_AS((void)parse_model(not_almost_symmetric), PreconditionError);
    const std::string bad_b =
        R"({"schema_version":1,"order":2,"dim":1,"dynamic_tensor":{"dims":[1,1],"layout":"first-index-fastest","data":[1]},
            "input_matrix":{"rows":1,"cols":2,"data_row_major":[1]}})";
    CHECK_THROWS_AS((void)parse_model(bad_b), InputError);
}

TEST_CASE("trajectory csv") {
    Trajectory tr;
    tr.times = {0.0, 0.1};
    tr.states = {Vector::Ones(2), Vector::Constant(2, 1.0 / 3.0)};
    tr.outputs = {Vector::Ones(1), Vector::Zero(1)};
    std::ostringstream out;
    write_trajectory_csv(out, tr);
    const std::string csv = out.str();
    CHECK(csv.rfind("t,x_1,x_2,y_1\n", 0) == 0);
    CHECK(csv.find("0.33333333333333331") != std::string::npos);
    CHECK(csv.find("0.10000000000000001") != std::string::npos);
}
