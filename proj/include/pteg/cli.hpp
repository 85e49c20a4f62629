#ifndef PTEG_CLI_HPP
#define PTEG_CLI_HPP

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pteg/json_io.hpp"
#include "pteg/precedence.hpp"

namespace pteg {

// Exit codes: 0 consistent / valid / no inf-weight path, 1 the opposite
// finding, 2 malformed input or usage error.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int negative = 1;
inline constexpr int input_error = 2;
}  // namespace exit_code

namespace detail {

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": invalid JSON: " + e.what());
    }
}

inline json circuit_to_json(const Circuit& c) {
    json nodes = json::array();
    for (int v : c.nodes) nodes.push_back(v + 1);
    return json{{"nodes", std::move(nodes)}, {"weight", rational_to_json(c.weight)}};
}

inline json diverging_entries_to_json(const std::vector<std::pair<int, int>>& entries) {
    json out = json::array();
    for (auto [i, j] : entries) out.push_back(json::array({i + 1, j + 1}));
    return out;
}

inline json periodic_certificate(const PeriodicVerdict& v) {
    switch (v.kind) {
        case PeriodicKind::NoInfPath:
            return json{{"kind", "converged"}, {"pi", matrix_to_json(*v.pi_limit)}};
        case PeriodicKind::PositiveCircuit: {
            json cert{{"kind", "positive-circuit"},
                      {"shift_bound", *v.shift_bound},
                      {"node", *v.witness_node + 1}};
            if (auto c = find_positive_circuit(*v.failing_matrix)) cert["circuit"] = circuit_to_json(*c);
            return cert;
        }
        case PeriodicKind::Divergence:
            return json{{"kind", "divergence"},
                        {"entries", diverging_entries_to_json(v.diverging_entries)}};
    }
    return json();
}

inline const char* strict_stage_name(StrictStage s) {
    switch (s) {
        case StrictStage::CenterCircuit: return "center";
        case StrictStage::IterationCircuit: return "iteration";
        case StrictStage::NoFixpoint: return "no-fixpoint";
        case StrictStage::CombinedCircuit: return "combined";
        case StrictStage::Converged: return "converged";
    }
    return "";
}

inline json consistency_certificate(const ConsistencyReport& rep) {
    if (rep.semantics == Semantics::Loose) return periodic_certificate(*rep.periodic);
    const StrictResult& sr = *rep.strict_result;
    switch (sr.stage) {
        case StrictStage::Converged:
            return json{{"kind", "converged"}, {"fixpoint_h", sr.h}};
        case StrictStage::NoFixpoint:
            return json{{"kind", "no-fixpoint"}};
        default: {
            json cert{{"kind", "positive-circuit"},
                      {"stage", strict_stage_name(sr.stage)},
                      {"node", *sr.witness_node + 1}};
            if (sr.stage != StrictStage::CenterCircuit) cert["h"] = sr.h;
            if (rep.circuit) cert["circuit"] = circuit_to_json(*rep.circuit);
            return cert;
        }
    }
}

inline std::string circuit_summary(const Circuit& c, const std::vector<std::string>& labels) {
    std::string s = "weight " + format_rational(c.weight) + " through ";
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        if (i) s += " -> ";
        s += labels[c.nodes[i]];
    }
    return s;
}

inline long elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
}

}  // namespace detail

// Runs the command line given as plain arguments (no program name). Streams
// are injectable so tests can capture output.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"Consistency verifier for P-time event graphs"};
    app.require_subcommand(1);

    std::string file, trajectory_file, lcr_file, ultimate_file, matrix_file;
    std::string semantics_str = "loose";
    std::string t0_str = "0";
    int length = 1;
    int max_iters = -1;
    bool as_json = false;

    auto* check = app.add_subcommand("check", "Decide consistency of a net");
    check->add_option("--file", file, "net JSON file")->required();
    check->add_option("--semantics", semantics_str, "loose|strict")->required();
    check->add_option("--t0", t0_str, "initial time (the verdict does not depend on it)");
    check->add_flag("--json", as_json, "emit a JSON report");

    auto* witness = app.add_subcommand("witness", "Emit a feasible firing prefix");
    witness->add_option("--file", file, "net JSON file")->required();
    witness->add_option("--semantics", semantics_str, "loose|strict")->required();
    witness->add_option("--length", length, "number of events")->required();
    witness->add_option("--t0", t0_str, "initial time (strict)");
    witness->add_flag("--json", as_json, "emit the trajectory as JSON");

    auto* validate = app.add_subcommand("validate", "Check a trajectory against a net");
    validate->add_option("--file", file, "net JSON file")->required();
    validate->add_option("--trajectory", trajectory_file, "trajectory JSON file")->required();
    validate->add_option("--semantics", semantics_str, "loose|strict")->required();
    validate->add_flag("--json", as_json, "emit a JSON report");

    auto* analyze = app.add_subcommand("analyze", "Inf-weight-path analysis of a static graph");
    analyze->add_option("--lcr", lcr_file, "static graph JSON file (L, C, R)")->required();
    analyze->add_option("--ultimate", ultimate_file,
                        "negative part + transient JSON; makes the --lcr graph the positive part");
    analyze->add_flag("--json", as_json, "emit a JSON report");

    auto* phi = app.add_subcommand("phi", "Iterated Phi closure of a matrix");
    phi->add_option("--matrix", matrix_file, "matrix JSON file")->required();
    phi->add_option("--max-iters", max_iters, "iteration cap");
    phi->add_flag("--json", as_json, "emit the closure as JSON");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return exit_code::input_error;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        Semantics semantics;
        if (semantics_str == "loose")
            semantics = Semantics::Loose;
        else if (semantics_str == "strict")
            semantics = Semantics::Strict;
        else
            throw ParseError("--semantics must be 'loose' or 'strict'");

        if (*check) {
            PTEG net = net_from_json(detail::load_json_file(file));
            ConsistencyReport rep =
                semantics == Semantics::Loose ? check_loose(net) : check_strict(net);
            if (as_json) {
                json doc{{"certificate", detail::consistency_certificate(rep)},
                         {"semantics", semantics_str},
                         {"timings", detail::elapsed_ms(start)},
                         {"verdict", rep.consistent ? "consistent" : "inconsistent"}};
                out << doc.dump(2) << "\n";
            } else {
                out << (rep.consistent ? "consistent" : "inconsistent") << " (" << semantics_str
                    << " initial conditions)\n";
                if (rep.circuit)
                    out << "positive-weight circuit: "
                        << detail::circuit_summary(*rep.circuit, net.transitions()) << "\n";
                else if (rep.periodic && rep.periodic->kind == PeriodicKind::Divergence)
                    out << "diverging supremal path weights at "
                        << detail::diverging_entries_to_json(rep.periodic->diverging_entries).dump()
                        << "\n";
            }
            return rep.consistent ? exit_code::ok : exit_code::negative;
        }

        if (*witness) {
            PTEG net = net_from_json(detail::load_json_file(file));
            if (length < 1) throw ParseError("--length must be at least 1");
            // the witness works on a dense (length x transitions)^2 closure
            long dim = static_cast<long>(length + 1) * normalize_marking(net).size();
            if (dim > 600)
                throw ParseError("witness prefix too large (" + std::to_string(dim) +
                                 " unrolled events, cap 600): shorten --length");
            Rational t0 = parse_rational(t0_str);
            ConsistencyReport rep =
                semantics == Semantics::Loose ? check_loose(net) : check_strict(net);
            if (!rep.consistent) {
                err << "net is inconsistent under " << semantics_str
                    << " initial conditions; no witness exists\n";
                return exit_code::negative;
            }
            Trajectory traj = witness_prefix(net, semantics, length, t0);
            if (as_json) {
                out << trajectory_to_json(traj).dump(2) << "\n";
            } else {
                if (traj.t0) out << "t0 = " << format_rational(*traj.t0) << "\n";
                for (int k = 0; k < traj.length(); ++k) {
                    out << "x(" << k + 1 << ") =";
                    for (const Rational& v : traj.steps[k]) out << " " << format_rational(v);
                    out << "\n";
                }
            }
            return exit_code::ok;
        }

        if (*validate) {
            PTEG net = net_from_json(detail::load_json_file(file));
            Trajectory traj = parse_trajectory(detail::load_json_file(trajectory_file), net.size());
            std::vector<Violation> violations = validate_trajectory(net, semantics, traj);
            if (as_json) {
                json list = json::array();
                for (const Violation& v : violations)
                    list.push_back(json{{"description", describe(v, net)},
                                        {"slack", rational_to_json(v.slack())}});
                json doc{{"timings", detail::elapsed_ms(start)},
                         {"valid", violations.empty()},
                         {"violations", std::move(list)}};
                out << doc.dump(2) << "\n";
            } else if (violations.empty()) {
                out << "valid: all " << traj.length() << "-event constraints hold\n";
            } else {
                out << violations.size() << " violated constraint(s):\n";
                for (const Violation& v : violations) out << "  " << describe(v, net) << "\n";
            }
            return violations.empty() ? exit_code::ok : exit_code::negative;
        }

        if (*analyze) {
            StaticGraph g = parse_static_graph(detail::load_json_file(lcr_file));
            json cert;
            bool clean;
            std::string verdict_detail;
            if (ultimate_file.empty()) {
                PeriodicVerdict v = detect_inf_weight_paths(g);
                clean = v.no_inf_path();
                cert = detail::periodic_certificate(v);
            } else {
                json uj = detail::load_json_file(ultimate_file);
                if (!uj.is_object() || !uj.contains("neg") || !uj.contains("transient"))
                    throw ParseError("ultimate document: expected {\"neg\": {L,C,R}, \"transient\": ...}");
                json nj = uj["neg"];
                nj["n"] = g.dim();
                UltimateSpec spec(parse_static_graph(nj),
                                  matrix_entries_from_json(uj["transient"], g.dim(), "transient"),
                                  g);
                UltimateVerdict v = detect_inf_weight_paths(spec);
                clean = v.no_inf_path();
                switch (v.kind) {
                    case UltimateKind::NoInfPath:
                        cert = json{{"kind", "converged"},
                                    {"pi_neg", matrix_to_json(*v.neg_verdict->pi_limit)},
                                    {"pi_pos", matrix_to_json(*v.pos_verdict->pi_limit)}};
                        break;
                    case UltimateKind::NegPartDiverges:
                        cert = json{{"kind", "negative-part"},
                                    {"detail", detail::periodic_certificate(*v.neg_verdict)}};
                        break;
                    case UltimateKind::PosPartDiverges:
                        cert = json{{"kind", "positive-part"},
                                    {"detail", detail::periodic_certificate(*v.pos_verdict)}};
                        break;
                    case UltimateKind::TransientPositiveCircuit:
                        cert = json{{"kind", "transient-circuit"},
                                    {"node", *v.witness_node + 1},
                                    {"combined", matrix_to_json(*v.combined)}};
                        if (auto c = find_positive_circuit(*v.combined))
                            cert["circuit"] = detail::circuit_to_json(*c);
                        break;
                }
            }
            if (as_json) {
                json doc{{"certificate", std::move(cert)},
                         {"timings", detail::elapsed_ms(start)},
                         {"verdict", clean ? "no-inf-path" : "inf-path"}};
                out << doc.dump(2) << "\n";
            } else {
                out << (clean ? "no inf-weight path" : "inf-weight path found") << "\n";
            }
            return clean ? exit_code::ok : exit_code::negative;
        }

        if (*phi) {
            Matrix m = parse_matrix(detail::load_json_file(matrix_file));
            Matrix closure(1);
            try {
                closure = phi_closure(m, cantor_order(),
                                      max_iters > 0 ? std::optional<int>(max_iters) : std::nullopt);
            } catch (const std::invalid_argument& e) {
                // a positive-weight circuit is a finding about the graph, not
                // a malformed input
                err << e.what() << "\n";
                return exit_code::negative;
            }
            if (as_json) {
                out << matrix_to_json(closure).dump(2) << "\n";
            } else {
                for (int i = 0; i < closure.dim(); ++i) {
                    for (int j = 0; j < closure.dim(); ++j)
                        out << (j ? " " : "") << closure.at(i, j).str();
                    out << "\n";
                }
            }
            return exit_code::ok;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    } catch (const std::exception& e) {
        // anything else a well-formed command can raise is an input problem
        // (dimension mismatches, conflicting duplicate places, ...)
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }
    return exit_code::input_error;
}

}  // namespace pteg

#endif  // PTEG_CLI_HPP
