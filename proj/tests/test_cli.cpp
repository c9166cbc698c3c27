#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include <cobord/cli.hpp>

using namespace cobord;

namespace
{

struct run_result {
    int code;
    std::string out;
    std::string err;
};

run_result run(std::vector<const char *> args)
{
    args.insert(args.begin(), "cobord");
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("gdpr build")
{
    const auto r = run({"gdpr", "build", "GX", "-n", "2", "-m", "1", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "X[1] + X[2] - X[1]*X[2]*U[1][1] + X[1]*X[2]*Y[1]*U[2][2] - X[1]*X[2]*Y[1]*U[3][2]\n");
    const auto j = json::parse(run({"gdpr", "build", "GY", "-n", "1", "-m", "2"}).out);
    CHECK(polynomial_from_json(j) == build_GY(1, 2));
}

TEST_CASE("fgl divide")
{
    const auto r = run({"fgl", "divide", "-n", "2", "--order", "1"});
    REQUIRE(r.code == 0);
    const auto s = series_from_json(json::parse(r.out));
    CHECK(s.coeffs().size() == 1u);
    CHECK(s.coeff(1) == polynomial(rational(1, 2), coeff_ring{2}));
    const auto p = json::parse(run({"fgl", "divide", "-n", "3", "--order", "4", "--denominator-profile"}).out);
    CHECK(p["denominator_profile"][0]["k"] == 1);
}

TEST_CASE("other fgl commands")
{
    CHECK(run({"fgl", "show", "--mode", "additive", "--order", "5", "--format", "text"}).out == "u + v + O(deg 6)\n");
    CHECK(run({"fgl", "show", "--mode", "multiplicative", "--order", "3", "--format", "text"}).out
          == "u + v + (beta)*u*v + O(deg 4)\n");
    CHECK(run({"fgl", "inverse", "--mode", "additive", "--order", "3", "--format", "text"}).out == "(-1)*u + O(deg 4)\n");
    CHECK(run({"fgl", "nfold", "-n", "3", "--mode", "additive", "--order", "2", "--format", "text"}).out
          == "(3)*u + O(deg 3)\n");
    CHECK(json::parse(run({"fgl", "relations", "--order", "3"}).out).empty());
    CHECK(run({"fgl", "show", "--mode", "weird", "--order", "3"}).code == 2);
}

TEST_CASE("fixedpoint commands")
{
    const auto r = run({"fixedpoint", "claim1", "--case", "5"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["equal"] == true);
    CHECK(j["lhs"] == 1);
    CHECK(j["rhs"] == 1);
    CHECK(json::parse(run({"fixedpoint", "allbad", "-n", "2", "-m", "1"}).out)["lhs"] == 1);
    CHECK(json::parse(run({"fixedpoint", "guard", "--group", "Z/2xZ/2"}).out)["contexts"] == 16);
}

TEST_CASE("verify commands")
{
    const auto a = run({"verify", "full", "-n", "2", "-m", "2", "--seed", "5", "--trials", "3"});
    const auto b = run({"verify", "full", "-n", "2", "-m", "2", "--seed", "5", "--trials", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out)["pass"] == true);
    CHECK(run({"verify", "step", "-n", "3", "--seed", "1"}).code == 0);
}

TEST_CASE("gdpr checks")
{
    for (const char *c : {"multilinear", "bounds", "weight", "mirror"}) {
        CHECK(run({"gdpr", "check", c, "-n", "3", "-m", "2"}).code == 0);
    }
    CHECK(run({"gdpr", "check", "padding", "-N", "4", "-M", "3", "-n", "2", "-m", "1"}).code == 0);
}

TEST_CASE("exit codes and errors")
{
    const auto missing_seed = run({"verify", "full", "-n", "2", "-m", "2"});
    CHECK(missing_seed.code == 2);
    CHECK(json::parse(missing_seed.err)["error"] == "usage");
    CHECK(run({}).code == 2);
    CHECK(run({"gdpr", "build", "QX", "-n", "1"}).code == 2);
    const auto bad_group = run({"fixedpoint", "guard", "--group", "0"});
    CHECK(bad_group.code == 2);
    CHECK(json::parse(bad_group.err)["error"] == "parse_error");
    CHECK(run({"gdpr", "build", "GX", "-n", "0", "-m", "1"}).code == 2);
    // Padding to a larger case is not a valid request.
    CHECK(run({"gdpr", "check", "padding", "-N", "1", "-M", "1", "-n", "2", "-m", "1"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
