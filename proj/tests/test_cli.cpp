#include "lqf/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace lqf {
namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

// A real-valued sandwich whose two reduction paths round differently in
// the last bits, so they disagree at tolerance zero.
constexpr const char* kUlpSensitiveProgram =
    "(0.0075130995646142118,0.50864146094529095,-0.23368028730674828,"
    "0.024786469617584572)*q*(0.75954807897935894,-0.35348274694290971,"
    "-0.54395394543904474,0.074224490773535434)";

TEST(CliReduce, PrintsTheCanonicalForm) {
    const CliResult r = run_cli({"reduce", "i*q*j"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "{ (0,0,0,0); (0,0,0,0); (0,1,0,0); (0,0,0,0) }\n");
    EXPECT_EQ(r.err, "");

    const CliResult conj =
        run_cli({"reduce", "-0.5*q - 0.5*i*q*i - 0.5*j*q*j - 0.5*k*q*k"});
    EXPECT_EQ(conj.code, cli::kExitOk);
    EXPECT_EQ(conj.out, "{ (-0.5,0,0,0); (0,-0.5,0,0); (0,0,-0.5,0); (0,0,0,-0.5) }\n");

    const CliResult json = run_cli({"reduce", "--json", "i*q*j"});
    EXPECT_EQ(json.code, cli::kExitOk);
    EXPECT_EQ(json.out,
              "{\"A\":[0,0,0,0],\"B\":[0,0,0,0],\"C\":[0,1,0,0],\"D\":[0,0,0,0]}\n");
}

TEST(CliReduce, LeadingMinusIsAnExpressionNotAnOption) {
    const CliResult r = run_cli({"reduce", "-i*q*i"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "{ (0,0,0,0); (0,-1,0,0); (0,0,0,0); (0,0,0,0) }\n");
}

TEST(CliEval, EvaluatesTheProgramAtThePoint) {
    const CliResult twice = run_cli({"eval", "f = q*i; f(f(q))", "--at", "(1,0,0,0)"});
    EXPECT_EQ(twice.code, cli::kExitOk);
    EXPECT_EQ(twice.out, "(-1,0,0,0)\n");

    const CliResult cartesian = run_cli({"eval", "i*q*j", "--at", "1+2i-k"});
    EXPECT_EQ(cartesian.code, cli::kExitOk);
    EXPECT_EQ(cartesian.out, "(-1,0,-2,1)\n");

    const CliResult json = run_cli({"eval", "--json", "q*i", "--at", "(0,0,1,0)"});
    EXPECT_EQ(json.code, cli::kExitOk);
    EXPECT_EQ(json.out, "[0,0,0,-1]\n");

    const CliResult minus = run_cli({"eval", "-q", "--at", "-k"});
    EXPECT_EQ(minus.code, cli::kExitOk);
    EXPECT_EQ(minus.out, "(0,0,0,1)\n");
}

TEST(CliMatrix, PrintsTheOperatorMatrix) {
    const CliResult r = run_cli({"matrix", "k*q*i"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "[0,0,1,0]\n[0,0,0,-1]\n[1,0,0,0]\n[0,-1,0,0]\n");

    const CliResult json = run_cli({"matrix", "--json", "k*q*i"});
    EXPECT_EQ(json.code, cli::kExitOk);
    EXPECT_EQ(json.out, "[0,0,1,0,0,0,0,-1,1,0,0,0,0,-1,0,0]\n");

    const CliResult right = run_cli({"matrix", "--method", "both", "q*i"});
    EXPECT_EQ(right.code, cli::kExitOk);
    EXPECT_EQ(right.out, "[0,-1,0,0]\n[1,0,0,0]\n[0,0,0,1]\n[0,0,-1,0]\n");
}

TEST(CliEquiv, ReportsEquivalenceWithExitCodes) {
    const CliResult same = run_cli({"equiv", "q*i*i", "-q"});
    EXPECT_EQ(same.code, cli::kExitOk);
    EXPECT_EQ(same.out, "equivalent\n");

    const CliResult differ = run_cli({"equiv", "q*i", "i*q"});
    EXPECT_EQ(differ.code, cli::kExitNotEquivalent);
    EXPECT_EQ(differ.out, "not equivalent\n");

    const CliResult json = run_cli({"equiv", "--json", "q*i", "i*q"});
    EXPECT_EQ(json.code, cli::kExitNotEquivalent);
    EXPECT_EQ(json.out, "{\"equivalent\":false}\n");

    EXPECT_EQ(run_cli({"equiv", "--tol", "0.5", "q", "1.25*q"}).code, cli::kExitOk);
    EXPECT_EQ(run_cli({"equiv", "--tol", "0.1", "q", "1.25*q"}).code,
              cli::kExitNotEquivalent);
}

TEST(CliStdin, DashReadsTheProgramFromStandardInput) {
    const CliResult r = run_cli({"reduce", "-"}, "f = q*i; f(f(q))");
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "{ (-1,0,0,0); (0,0,0,0); (0,0,0,0); (0,0,0,0) }\n");

    const CliResult eval = run_cli({"eval", "-", "--at", "1+2i-k"}, "i*q*j");
    EXPECT_EQ(eval.code, cli::kExitOk);
    EXPECT_EQ(eval.out, "(-1,0,-2,1)\n");

    const CliResult twice = run_cli({"equiv", "-", "-"}, "q");
    EXPECT_EQ(twice.code, cli::kExitUsage);
    EXPECT_TRUE(twice.err.starts_with(
        "error: only one expression may be read from standard input\n"))
        << twice.err;
}

TEST(CliMethod, SelectsAndCrossChecksTheReductionAlgorithm) {
    const CliResult involution = run_cli({"reduce", "--method", "involution", "i*q*j"});
    EXPECT_EQ(involution.code, cli::kExitOk);
    EXPECT_EQ(involution.out, "{ (0,0,0,0); (0,0,0,0); (0,1,0,0); (0,0,0,0) }\n");

    const CliResult both = run_cli({"reduce", "--method", "both", "f = q*i; f(q)*j + 2*q"});
    EXPECT_EQ(both.code, cli::kExitOk);
    EXPECT_EQ(both.out, "{ (2,0,0,0); (0,0,0,0); (0,0,0,0); (1,0,0,0) }\n");

    const CliResult eval = run_cli(
        {"eval", "--method", "involution", "f = q*i; f(f(q))", "--at", "(1,0,0,0)"});
    EXPECT_EQ(eval.code, cli::kExitOk);
    EXPECT_EQ(eval.out, "(-1,0,0,0)\n");
}

TEST(CliMethod, BothFlagsUlpLevelDisagreementAtZeroTolerance) {
    const CliResult strict =
        run_cli({"reduce", "--method", "both", "--tol", "0", kUlpSensitiveProgram});
    EXPECT_EQ(strict.code, cli::kExitMethodsDisagree);
    EXPECT_EQ(strict.out, "");
    EXPECT_EQ(strict.err,
              "error: the matrix and involution methods disagree beyond tolerance 0\n");

    // At the default tolerance the same program is accepted.
    const CliResult relaxed = run_cli({"reduce", "--method", "both", kUlpSensitiveProgram});
    EXPECT_EQ(relaxed.code, cli::kExitOk);
    EXPECT_NE(relaxed.out, "");
}

TEST(CliUsage, RejectsMalformedInvocations) {
    const struct {
        std::vector<std::string> args;
        std::string message;
    } cases[] = {
        {{}, "missing command"},
        {{"frobnicate", "q"}, "unknown command 'frobnicate'"},
        {{"reduce"}, "reduce takes one expression"},
        {{"reduce", "q", "q*i"}, "reduce takes one expression"},
        {{"equiv", "q"}, "equiv takes two expressions"},
        {{"reduce", "--at", "(1,0,0,0)", "q"}, "--at is only valid with eval"},
        {{"eval", "q"}, "eval needs --at <quaternion>"},
        {{"eval", "q", "--at"}, "--at needs a quaternion literal"},
        {{"eval", "q", "--at", "garbage"},
         "invalid quaternion literal for --at: 'garbage'"},
        {{"reduce", "--method", "fast", "q"}, "--method must be matrix, involution, or both"},
        {{"reduce", "--method"}, "--method needs a value"},
        {{"reduce", "--tol", "-1", "q"}, "--tol must be a nonnegative real"},
        {{"reduce", "--tol", "abc", "q"}, "--tol must be a nonnegative real"},
        {{"reduce", "--tol"}, "--tol needs a value"},
        {{"reduce", "--frobnicate", "q"}, "unknown option '--frobnicate'"},
    };
    for (const auto& c : cases) {
        const CliResult r = run_cli(c.args);
        EXPECT_EQ(r.code, cli::kExitUsage) << c.message;
        EXPECT_EQ(r.out, "") << c.message;
        EXPECT_TRUE(r.err.starts_with("error: " + c.message + "\n")) << r.err;
        EXPECT_NE(r.err.find("usage: lqf"), std::string::npos) << c.message;
    }
}

TEST(CliUsage, ParseErrorsCarryPositionsWithoutUsageText) {
    const CliResult nonlinear = run_cli({"reduce", "q*2*q"});
    EXPECT_EQ(nonlinear.code, cli::kExitUsage);
    EXPECT_EQ(nonlinear.err,
              "error: line 1, column 5: nonlinear term: more than one factor depends on q\n");

    const CliResult mixed = run_cli({"eval", "1 + q", "--at", "(1,0,0,0)"});
    EXPECT_EQ(mixed.code, cli::kExitUsage);
    EXPECT_EQ(mixed.err,
              "error: line 1, column 5: sum mixes a constant term with a term that "
              "depends on q\n");
}

TEST(CliUsage, HelpPrintsTheUsageText) {
    const CliResult bare = run_cli({"--help"});
    EXPECT_EQ(bare.code, cli::kExitOk);
    EXPECT_EQ(bare.out, std::string(cli::kUsage));
    EXPECT_EQ(bare.err, "");

    const CliResult sub = run_cli({"reduce", "--help"});
    EXPECT_EQ(sub.code, cli::kExitOk);
    EXPECT_EQ(sub.out, std::string(cli::kUsage));
}

TEST(CliJson, OutputsAreWellFormedAndTyped) {
    const nlohmann::json form =
        nlohmann::json::parse(run_cli({"reduce", "--json", "f = q*i; f(f(q))"}).out);
    ASSERT_TRUE(form.is_object());
    for (const char* key : {"A", "B", "C", "D"}) {
        ASSERT_TRUE(form.contains(key)) << key;
        ASSERT_TRUE(form[key].is_array()) << key;
        ASSERT_EQ(form[key].size(), 4u) << key;
        for (const auto& entry : form[key]) EXPECT_TRUE(entry.is_number());
    }
    EXPECT_EQ(form["A"], nlohmann::json::array({-1, 0, 0, 0}));
    EXPECT_EQ(form["B"], nlohmann::json::array({0, 0, 0, 0}));

    const nlohmann::json point =
        nlohmann::json::parse(run_cli({"eval", "--json", "q*i", "--at", "(0,0,1,0)"}).out);
    ASSERT_TRUE(point.is_array());
    ASSERT_EQ(point.size(), 4u);
    EXPECT_EQ(point, nlohmann::json::array({0, 0, 0, -1}));

    const nlohmann::json matrix =
        nlohmann::json::parse(run_cli({"matrix", "--json", "k*q*i"}).out);
    ASSERT_TRUE(matrix.is_array());
    ASSERT_EQ(matrix.size(), 16u);
    for (const auto& entry : matrix) EXPECT_TRUE(entry.is_number());

    const nlohmann::json verdict =
        nlohmann::json::parse(run_cli({"equiv", "--json", "q*i", "i*q"}).out);
    ASSERT_TRUE(verdict.is_object());
    ASSERT_TRUE(verdict.contains("equivalent"));
    EXPECT_TRUE(verdict["equivalent"].is_boolean());
    EXPECT_EQ(verdict["equivalent"], false);
}

}  // namespace
}  // namespace lqf
