#include "accinfo/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace accinfo::io {

namespace {

void dump_to(const Json& j, int indent, int depth, std::string& out) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_real(v) : "null";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                dump_to(v, indent, depth + 1, out);
            }
            newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [key, v] : j.items()) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(key).dump();
                out += indent < 0 ? ":" : ": ";
                dump_to(v, indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string format_real(double v) {
    if (!std::isfinite(v)) return v != v ? "nan" : v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dump(const Json& j, int indent) {
    std::string out;
    dump_to(j, indent, 0, out);
    return out;
}

std::vector<double> parse_reals(std::string_view text) {
    std::vector<double> out;
    std::string token;
    const auto flush = [&] {
        if (token.empty()) return;
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v))
            throw DomainError("cannot parse '" + token + "' as a real number");
        out.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == ';')
            flush();
        else
            token += c;
    }
    flush();
    return out;
}

JointDist parse_joint(std::string_view text) {
    const auto v = parse_reals(text);
    if (v.size() != 4)
        throw DomainError("a joint needs 4 reals p00,p01,p10,p11; got " + std::to_string(v.size()));
    return JointDist(v[0], v[1], v[2], v[3]);
}

QubitState parse_state(std::string_view text) {
    const auto v = parse_reals(text);
    if (v.size() == 3) return QubitState::from_bloch({v[0], v[1], v[2]});
    if (v.size() == 8) {
        Matrix2 m;
        for (std::size_t k = 0; k < 4; ++k) m[k] = {v[2 * k], v[2 * k + 1]};
        return QubitState::from_matrix(m);
    }
    throw DomainError("a state needs 3 reals (Bloch vector) or 8 reals (complex 2x2 matrix); got " +
                      std::to_string(v.size()));
}

std::pair<double, double> parse_prior(std::string_view text) {
    const auto v = parse_reals(text);
    if (v.size() == 1) return {v[0], 1.0 - v[0]};
    if (v.size() == 2) return {v[0], v[1]};
    throw DomainError("a prior needs 1 or 2 reals; got " + std::to_string(v.size()));
}

Json to_json(const JointDist& p) {
    return Json::array({p(0, 0), p(0, 1), p(1, 0), p(1, 1)});
}

Json to_json(const ParamCoords& c) {
    return Json{{"a", c.a}, {"b", c.b}, {"lambda", c.lambda}};
}

Json to_json(const SolverConfig& cfg) {
    return Json{{"tol_lambda", cfg.tol_lambda}, {"fd_step", cfg.fd_step},
                {"max_iter", cfg.max_iter}};
}

Json to_json(const SolveReport& r) {
    Json trace = Json::array();
    for (const auto& s : r.derivative_trace) trace.push_back(Json::array({s.lambda, s.derivative}));
    Json j{{"lambda_opt", r.lambda_opt},   {"acc_info", r.acc_info},
           {"iterations", r.iterations},   {"lambda_star", r.lambda_star},
           {"final_width", r.final_width}, {"derivative_trace", std::move(trace)}};
    j["oracle_gap"] = r.oracle_gap ? Json(*r.oracle_gap) : Json(nullptr);
    return j;
}

Json to_json(const ConcavityReport& r) {
    Json grid = Json::array();
    for (const auto& [l, v] : r.grid) grid.push_back(Json::array({l, v}));
    return Json{{"grid", std::move(grid)},
                {"stationary_points", r.stationary_points},
                {"quasi_concave", r.quasi_concave},
                {"pseudo_concave", r.pseudo_concave}};
}

Json to_json(const MonotonicityResult& r) {
    Json j{{"status", to_string(r.status)},
           {"trace_condition", r.trace_condition},
           {"guessing_condition", r.guessing_condition},
           {"info", r.info},
           {"guess", r.guess}};
    if (r.witness) {
        j["witness"] = to_json(*r.witness);
        j["witness_coords"] = to_json(coords_from_joint(*r.witness));
        j["witness_info"] = r.witness_info;
        j["witness_guess"] = r.witness_guess;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const QubitState& s) {
    return Json::array({s.bloch()[0], s.bloch()[1], s.bloch()[2]});
}

Json matrix_json(const Matrix2& m) {
    Json j = Json::array();
    for (const auto& z : m) j.push_back(Json::array({z.real(), z.imag()}));
    return j;
}

std::string joint_csv(const JointDist& p) {
    return format_real(p(0, 0)) + ',' + format_real(p(0, 1)) + ',' + format_real(p(1, 0)) + ',' +
           format_real(p(1, 1));
}

std::string lorenz_csv_row(const LorenzPoint& pt) {
    return format_real(pt.lambda) + ',' + format_real(pt.q_rho) + ',' + format_real(pt.q_sigma);
}

std::string scan_csv_row(const ScanRow& row) {
    return std::to_string(row.seed) + ',' + std::to_string(row.index) + ',' +
           format_real(row.lambda_opt) + ',' + format_real(row.acc_info) + ',' +
           format_real(row.oracle_gap) + ',' + (row.quasi ? "1" : "0") + ',' +
           (row.pseudo ? "1" : "0");
}

}  // namespace accinfo::io
