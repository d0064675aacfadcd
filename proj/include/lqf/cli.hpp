#pragma once

#include <charconv>
#include <iostream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lqf/canonical.hpp"
#include "lqf/expr.hpp"
#include "lqf/matrix.hpp"
#include "lqf/quaternion.hpp"

namespace lqf::cli {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotEquivalent = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMethodsDisagree = 3;

inline constexpr std::string_view kUsage =
    R"usage(usage: lqf <command> [options] <expression> [<expression2>]

commands:
  reduce <expr>          print the canonical form of the program
  eval <expr> --at <q>   evaluate the reduced program at a point
  matrix <expr>          print the 4x4 matrix of the reduced program
  equiv <expr> <expr>    test whether two programs define the same function

options:
  --at <quaternion>      evaluation point, e.g. "(1,0,0,0)" or "1+2i-k"
  --method <name>        matrix | involution | both   (default matrix)
  --tol <real>           comparison tolerance (default 1e-12)
  --json                 machine readable output
  --help                 show this message

An expression of "-" is read from standard input.  A program is one or
more statements separated by ";"; a statement is either "name = expr" or
a bare expression, and the last statement is the program's value.

exit codes: 0 success (equiv: equivalent), 1 not equivalent, 2 usage or
parse error, 3 the two reduction methods disagree beyond the tolerance.
)usage";

namespace detail {

enum class MethodChoice { Matrix, Involution, Both };

struct Options {
    std::string command;
    std::vector<std::string> exprs;
    std::optional<std::string> at;
    MethodChoice method = MethodChoice::Matrix;
    double tol = 1e-12;
    bool json = false;
    bool help = false;
};

inline bool parse_double(const std::string& text, double& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

/// Both reductions of one program source.  secondary is meaningful only
/// under MethodChoice::Both.
struct Reduction {
    CanonicalForm<double> primary;
    CanonicalForm<double> secondary;
};

inline Reduction reduce_source(const std::string& text, MethodChoice method) {
    const Program<double> prog = parse_program<double>(text);
    Reduction out;
    switch (method) {
        case MethodChoice::Matrix:
            out.primary = reduce_program(prog, ReduceMethod::Matrix).principal;
            break;
        case MethodChoice::Involution:
            out.primary = reduce_program(prog, ReduceMethod::Involution).principal;
            break;
        case MethodChoice::Both:
            out.primary = reduce_program(prog, ReduceMethod::Matrix).principal;
            out.secondary = reduce_program(prog, ReduceMethod::Involution).principal;
            break;
    }
    return out;
}

}  // namespace detail

/// Runs the command line given argv[1..] and streams.  Returns the
/// process exit code; diagnostics go to err, results to out.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
    using detail::MethodChoice;
    detail::Options opt;

    const auto usage_error = [&err](const std::string& message) {
        err << "error: " << message << '\n' << kUsage;
        return kExitUsage;
    };

    std::size_t a = 0;
    if (a < args.size() && args[a] == "--help") {
        out << kUsage;
        return kExitOk;
    }
    if (a >= args.size()) return usage_error("missing command");
    opt.command = args[a++];
    if (opt.command != "reduce" && opt.command != "eval" && opt.command != "matrix" &&
        opt.command != "equiv")
        return usage_error("unknown command '" + opt.command + "'");

    for (; a < args.size(); ++a) {
        const std::string& arg = args[a];
        if (arg == "--help") {
            opt.help = true;
        } else if (arg == "--json") {
            opt.json = true;
        } else if (arg == "--at") {
            if (++a >= args.size()) return usage_error("--at needs a quaternion literal");
            opt.at = args[a];
        } else if (arg == "--method") {
            if (++a >= args.size()) return usage_error("--method needs a value");
            if (args[a] == "matrix")
                opt.method = MethodChoice::Matrix;
            else if (args[a] == "involution")
                opt.method = MethodChoice::Involution;
            else if (args[a] == "both")
                opt.method = MethodChoice::Both;
            else
                return usage_error("--method must be matrix, involution, or both");
        } else if (arg == "--tol") {
            if (++a >= args.size()) return usage_error("--tol needs a value");
            if (!detail::parse_double(args[a], opt.tol) || opt.tol < 0.0)
                return usage_error("--tol must be a nonnegative real");
        } else if (arg.size() > 2 && arg[0] == '-' && arg[1] == '-') {
            return usage_error("unknown option '" + arg + "'");
        } else {
            opt.exprs.push_back(arg);
        }
    }
    if (opt.help) {
        out << kUsage;
        return kExitOk;
    }

    const std::size_t want = opt.command == "equiv" ? 2 : 1;
    if (opt.exprs.size() != want)
        return usage_error(opt.command + " takes " + (want == 2 ? "two expressions" : "one expression"));
    if (opt.at && opt.command != "eval") return usage_error("--at is only valid with eval");
    if (opt.command == "eval" && !opt.at) return usage_error("eval needs --at <quaternion>");

    std::size_t stdin_uses = 0;
    for (std::string& text : opt.exprs) {
        if (text == "-") {
            if (++stdin_uses > 1)
                return usage_error("only one expression may be read from standard input");
            text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
    }

    std::optional<Quat> at;
    if (opt.at) {
        at = parse_quaternion<double>(*opt.at);
        if (!at) return usage_error("invalid quaternion literal for --at: '" + *opt.at + "'");
    }

    try {
        std::vector<detail::Reduction> reduced;
        reduced.reserve(opt.exprs.size());
        for (const std::string& text : opt.exprs)
            reduced.push_back(detail::reduce_source(text, opt.method));

        if (opt.method == MethodChoice::Both) {
            for (const detail::Reduction& r : reduced) {
                if (!equivalent(r.primary, r.secondary, opt.tol)) {
                    err << "error: the matrix and involution methods disagree beyond tolerance "
                        << lqf::detail::format_real(opt.tol) << '\n';
                    return kExitMethodsDisagree;
                }
            }
        }

        if (opt.command == "reduce") {
            out << (opt.json ? to_json(reduced[0].primary) : to_string(reduced[0].primary))
                << '\n';
            return kExitOk;
        }
        if (opt.command == "eval") {
            const Quat value = evaluate(reduced[0].primary, *at);
            out << (opt.json ? to_json(value) : to_string(value)) << '\n';
            return kExitOk;
        }
        if (opt.command == "matrix") {
            const Mat4 m = operator_matrix(reduced[0].primary);
            out << (opt.json ? to_json(m) : to_string(m)) << '\n';
            return kExitOk;
        }
        const bool same = equivalent(reduced[0].primary, reduced[1].primary, opt.tol);
        if (opt.json)
            out << (same ? "{\"equivalent\":true}" : "{\"equivalent\":false}") << '\n';
        else
            out << (same ? "equivalent" : "not equivalent") << '\n';
        return same ? kExitOk : kExitNotEquivalent;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace lqf::cli
