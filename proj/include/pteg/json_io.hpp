#ifndef PTEG_JSON_IO_HPP
#define PTEG_JSON_IO_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pteg/pteg.hpp"

namespace pteg {

using nlohmann::json;

// Anything wrong with an input document; the CLI maps it to exit code 2.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---- rationals and extended reals ---------------------------------------

inline Rational rational_from_json(const json& j, const char* what) {
    try {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
        if (j.is_number_float()) return rational_from_double(j.get<double>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
    throw ParseError(std::string(what) + ": expected a number or a numeric string");
}

inline json rational_to_json(const Rational& r) {
    if (is_integer(r) && r.get_num().fits_slong_p())
        return json(static_cast<std::int64_t>(r.get_num().get_si()));
    return json(format_rational(r));
}

inline Tropical tropical_from_json(const json& j, const char* what) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "-inf") return Tropical::neg_inf();
        if (s == "inf" || s == "+inf") return Tropical::pos_inf();
    }
    return Tropical(rational_from_json(j, what));
}

inline json tropical_to_json(const Tropical& t) {
    if (t.is_neg_inf()) return json("-inf");
    if (t.is_pos_inf()) return json("inf");
    return rational_to_json(t.value());
}

// ---- matrices -------------------------------------------------------------

inline Matrix matrix_entries_from_json(const json& j, int n, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " rows");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError(std::string(what) + ": row " + std::to_string(i + 1) + " must have " +
                             std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k) m.at(i, k) = tropical_from_json(row[k], what);
    }
    return m;
}

inline json matrix_entries_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(tropical_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// MatrixDocument: {"n": N, "entries": [[...], ...]}.
inline Matrix parse_matrix(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw ParseError("matrix document: expected {\"n\": ..., \"entries\": ...}");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
        throw ParseError("matrix document: n must be a positive integer");
    return matrix_entries_from_json(j["entries"], j["n"].get<int>(), "matrix entries");
}

inline json matrix_to_json(const Matrix& m) {
    return json{{"n", m.dim()}, {"entries", matrix_entries_to_json(m)}};
}

// Static-graph document: {"n": N, "L": entries, "C": entries, "R": entries}.
inline StaticGraph parse_static_graph(const json& j) {
    if (!j.is_object() || !j.contains("n"))
        throw ParseError("static graph document: expected {\"n\", \"L\", \"C\", \"R\"}");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
        throw ParseError("static graph document: n must be a positive integer");
    const int n = j["n"].get<int>();
    for (const char* key : {"L", "C", "R"})
        if (!j.contains(key))
            throw ParseError(std::string("static graph document: missing matrix ") + key);
    try {
        return StaticGraph(matrix_entries_from_json(j["L"], n, "L"),
                           matrix_entries_from_json(j["C"], n, "C"),
                           matrix_entries_from_json(j["R"], n, "R"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

// ---- nets -------------------------------------------------------------------

// NetDocument:
//   {"transitions": ["t1", ...],
//    "places": [{"from": "t1", "to": "t2", "tokens": 1, "lb": 2, "ub": 3}, ...]}
// "ub" accepts "inf"; lb/ub accept numbers, decimal strings, and "p/q".
inline PTEG net_from_json(const json& j) {
    if (!j.is_object() || !j.contains("transitions") || !j.contains("places"))
        throw ParseError("net document: expected {\"transitions\": ..., \"places\": ...}");
    const json& ts = j["transitions"];
    if (!ts.is_array() || ts.empty())
        throw ParseError("net document: need a nonempty array of transition labels");

    PTEG net;
    std::map<std::string, int> index;
    for (const json& t : ts) {
        if (!t.is_string()) throw ParseError("net document: transition labels must be strings");
        std::string label = t.get<std::string>();
        if (index.count(label))
            throw ParseError("net document: duplicate transition label '" + label + "'");
        index[label] = net.add_transition(label);
    }

    const json& ps = j["places"];
    if (!ps.is_array()) throw ParseError("net document: places must be an array");
    for (const json& p : ps) {
        if (!p.is_object() || !p.contains("from") || !p.contains("to") || !p.contains("tokens") ||
            !p.contains("lb") || !p.contains("ub"))
            throw ParseError("net document: each place needs from, to, tokens, lb, ub");
        auto ref = [&](const json& v, const char* side) {
            if (!v.is_string())
                throw ParseError(std::string("net document: place '") + side + "' must be a label");
            auto it = index.find(v.get<std::string>());
            if (it == index.end())
                throw ParseError("net document: unknown transition '" + v.get<std::string>() + "'");
            return it->second;
        };
        int from = ref(p["from"], "from");
        int to = ref(p["to"], "to");
        if (!p["tokens"].is_number_integer() || p["tokens"].get<long>() < 0)
            throw ParseError("net document: tokens must be a nonnegative integer");
        Rational lb = rational_from_json(p["lb"], "place lb");
        Tropical ub = tropical_from_json(p["ub"], "place ub");
        if (ub.is_neg_inf()) throw ParseError("net document: ub cannot be -inf");
        try {
            net.add_place(from, to, p["tokens"].get<long>(), Interval(std::move(lb), std::move(ub)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("net document: ") + e.what());
        }
    }
    return net;
}

inline PTEG parse_net(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return net_from_json(j);
}

inline json net_to_json(const PTEG& net) {
    json ts = json::array();
    for (const std::string& label : net.transitions()) ts.push_back(label);
    json ps = json::array();
    for (const Place& p : net.places()) {
        ps.push_back(json{{"from", net.transitions()[p.source]},
                          {"to", net.transitions()[p.target]},
                          {"tokens", p.tokens},
                          {"lb", rational_to_json(p.interval.lower)},
                          {"ub", tropical_to_json(p.interval.upper)}});
    }
    return json{{"transitions", std::move(ts)}, {"places", std::move(ps)}};
}

// ---- trajectories -----------------------------------------------------------

// {"t0": 0, "x": [[...], ...]}; "t0" is optional (strict runs carry it).
inline Trajectory parse_trajectory(const json& j, int n) {
    if (!j.is_object() || !j.contains("x"))
        throw ParseError("trajectory document: expected {\"x\": [[...], ...]}");
    Trajectory traj;
    if (j.contains("t0") && !j["t0"].is_null())
        traj.t0 = rational_from_json(j["t0"], "trajectory t0");
    const json& x = j["x"];
    if (!x.is_array() || x.empty())
        throw ParseError("trajectory document: x must be a nonempty array of steps");
    for (const json& row : x) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("trajectory document: each step needs one entry per transition");
        std::vector<Rational> step;
        step.reserve(row.size());
        for (const json& v : row) step.push_back(rational_from_json(v, "trajectory entry"));
        traj.steps.push_back(std::move(step));
    }
    return traj;
}

inline json trajectory_to_json(const Trajectory& traj) {
    json steps = json::array();
    for (const auto& step : traj.steps) {
        json row = json::array();
        for (const Rational& v : step) row.push_back(rational_to_json(v));
        steps.push_back(std::move(row));
    }
    json out;
    if (traj.t0) out["t0"] = rational_to_json(*traj.t0);
    out["x"] = std::move(steps);
    return out;
}

}  // namespace pteg

#endif  // PTEG_JSON_IO_HPP
