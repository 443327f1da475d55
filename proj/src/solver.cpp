#include "accinfo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <tuple>

namespace accinfo {

namespace {

constexpr double kNoiseFloor = 1e-9;
constexpr double kGoldenTol = 1e-10;
constexpr double kGapThreshold = 1e-6;

/// Maximizes f on [lo, hi] by golden-section search; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

/// Grid of n points over [lo, hi] followed by golden-section refinement
/// around the best sample. For a periodic f with period hi - lo the bracket
/// may extend past either end.
template <class F>
std::pair<double, double> grid_then_golden(F&& f, double lo, double hi, int n, bool periodic = false) {
    const auto at = [&](int i) { return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1); };
    int best = 0;
    double best_val = f(at(0));
    for (int i = 1; i < n; ++i) {
        const double v = f(at(i));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double step = (hi - lo) / (n - 1);
    const double a = periodic || best > 0 ? at(best) - step : lo;
    const double b = periodic || best < n - 1 ? at(best) + step : hi;
    const auto refined = golden_max(f, a, b, kGoldenTol);
    if (refined.second > best_val) return refined;
    return {at(best), best_val};
}

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

/// H(X) + H(Y) - H(X,Y) for a row-major 2x2 joint; kept separate from the
/// library's mutual_information so the oracle shares no code with the solver.
double info_from_probs(const std::array<double, 4>& p) {
    const double hx = -plogp(p[0] + p[1]) - plogp(p[2] + p[3]);
    const double hy = -plogp(p[0] + p[2]) - plogp(p[1] + p[3]);
    const double hxy = -(plogp(p[0]) + plogp(p[1]) + plogp(p[2]) + plogp(p[3]));
    return std::max(0.0, hx + hy - hxy);
}

Matrix2 matmul(const Matrix2& a, const Matrix2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Vec3 unit(const Vec3& v) {
    const double n = norm(v);
    return {v[0] / n, v[1] / n, v[2] / n};
}

/// Orthonormal basis of a plane containing both Bloch vectors.
std::pair<Vec3, Vec3> state_plane(const Dichotomy& d) {
    const Vec3& r = d.rho().bloch();
    const Vec3& s = d.sigma().bloch();
    const Vec3 e1 = unit({r[0] - s[0], r[1] - s[1], r[2] - s[2]});
    // Component of the longer state vector orthogonal to e1.
    const Vec3& base = norm(r) >= norm(s) ? r : s;
    const double k = dot(base, e1);
    Vec3 perp{base[0] - k * e1[0], base[1] - k * e1[1], base[2] - k * e1[2]};
    if (norm(perp) < 1e-9) {
        // Collinear states: any plane through the common axis.
        const Vec3 seed = std::abs(e1[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
        perp = cross(e1, seed);
    }
    return {e1, unit(perp)};
}

}  // namespace

void SolverConfig::validate() const {
    if (!(tol_lambda > 0.0)) throw DomainError("tol_lambda must be positive");
    if (!(fd_step > 0.0)) throw DomainError("fd_step must be positive");
    if (max_iter < 1) throw DomainError("max_iter must be at least 1");
}

double info_of_lambda(const Dichotomy& d, double lambda) {
    return mutual_information(induced_joint(d, lambda));
}

DerivativeEstimate info_derivative(const Dichotomy& d, double lambda, const SolverConfig& cfg) {
    cfg.validate();
    const double h = cfg.fd_step;
    const double ls = lambda_star(d);
    if (lambda - h < -ls)
        return {(info_of_lambda(d, lambda + h) - info_of_lambda(d, lambda)) / h, true};
    if (lambda + h > ls)
        return {(info_of_lambda(d, lambda) - info_of_lambda(d, lambda - h)) / h, true};
    return {(info_of_lambda(d, lambda + h) - info_of_lambda(d, lambda - h)) / (2.0 * h), false};
}

SolveReport bisect_accessible_info(const Dichotomy& d, const SolverConfig& cfg) {
    cfg.validate();
    SolveReport rep;
    const double ls = lambda_star(d);
    rep.lambda_star = ls;

    // The bracket is kept in units of l*, where every endpoint is a dyadic
    // rational and each halving is exact.
    double t_min = -1.0;
    double t_max = 1.0;
    double t = 0.0;
    while (ls * (t_max - t_min) >= cfg.tol_lambda) {
        if (rep.iterations >= cfg.max_iter)
            throw ConvergenceError("bisection did not reach tol_lambda within max_iter = " +
                                   std::to_string(cfg.max_iter) + " iterations");
        const double lambda = ls * t;
        const double slope = info_derivative(d, lambda, cfg).value;
        rep.derivative_trace.push_back({lambda, slope});
        if (slope < 0.0)
            t_max = t;
        else
            t_min = t;
        t = 0.5 * (t_min + t_max);
        ++rep.iterations;
    }
    rep.final_width = ls * (t_max - t_min);
    rep.lambda_opt = ls * t;
    rep.acc_info = info_of_lambda(d, rep.lambda_opt);
    return rep;
}

double info_of_axis(const Dichotomy& d, const Vec3& axis) {
    using C = std::complex<double>;
    const Vec3 n = unit(axis);
    // (1 + n . sigma) / 2 assembled from the Pauli matrices.
    const Matrix2 projector{C(0.5 * (1.0 + n[2]), 0.0), C(0.5 * n[0], -0.5 * n[1]),
                            C(0.5 * n[0], 0.5 * n[1]), C(0.5 * (1.0 - n[2]), 0.0)};
    std::array<double, 4> p{};
    for (int x = 0; x < 2; ++x) {
        const Matrix2 prod = matmul(projector, d.state(x).matrix());
        const double q = std::clamp((prod[0] + prod[3]).real(), 0.0, 1.0);
        p[2 * x] = d.prior(x) * q;
        p[2 * x + 1] = d.prior(x) * (1.0 - q);
    }
    return info_from_probs(p);
}

OracleResult brute_force_accessible_info(const Dichotomy& d, int n_grid) {
    if (n_grid < 10) throw DomainError("oracle grid needs at least 10 points");
    OracleResult out;
    const double ls = lambda_star(d);
    std::tie(out.lambda_best, out.info_best) =
        grid_then_golden([&](double l) { return info_of_lambda(d, l); }, -ls, ls, n_grid);

    const auto [e1, e2] = state_plane(d);
    const auto axis_info = [&](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return info_of_axis(d, {c * e1[0] + s * e2[0], c * e1[1] + s * e2[1],
                                c * e1[2] + s * e2[2]});
    };
    // Axes n and -n give the same measurement, so [0, pi] covers all of them.
    std::tie(out.theta_best, out.theta_info) =
        grid_then_golden(axis_info, 0.0, std::numbers::pi, 2 * n_grid, true);
    out.theta_best -= std::numbers::pi * std::floor(out.theta_best / std::numbers::pi);
    return out;
}

ConcavityReport concavity_scan(const Dichotomy& d, int n_grid) {
    if (n_grid < 100) throw DomainError("concavity scan needs at least 100 points");
    ConcavityReport rep;
    const double ls = lambda_star(d);
    rep.grid.reserve(static_cast<std::size_t>(n_grid));
    double peak = -1.0;
    for (int i = 0; i < n_grid; ++i) {
        const double l = ls * ((2.0 * i - (n_grid - 1)) / (n_grid - 1));
        const double v = info_of_lambda(d, l);
        rep.grid.emplace_back(l, v);
        peak = std::max(peak, v);
    }

    // Signs of the forward differences, with steps below the noise floor flat.
    int last_sign = 0;
    int last_index = 0;  // grid index right after the last significant step
    bool fell = false;
    for (int i = 0; i + 1 < n_grid; ++i) {
        const double step = rep.grid[i + 1].second - rep.grid[i].second;
        const int sign = step > kNoiseFloor ? 1 : step < -kNoiseFloor ? -1 : 0;
        if (sign == 0) continue;
        if (sign > 0 && fell) rep.quasi_concave = false;
        if (sign < 0) fell = true;
        if (last_sign != 0 && sign != last_sign) {
            // The turn lies on the flat run between the two significant steps.
            const int turn = (last_index + i) / 2;
            rep.stationary_points.push_back(rep.grid[turn].first);
            if (rep.grid[turn].second < peak - kNoiseFloor) rep.pseudo_concave = false;
        }
        last_sign = sign;
        last_index = i + 1;
    }
    return rep;
}

Dichotomy scan_dichotomy(std::uint64_t seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
    for (;;) {
        const Vec3 r = random_bloch_ball(rng);
        const Vec3 s = random_bloch_ball(rng);
        const double p0 = unit_interval(rng);
        const Vec3 diff{r[0] - s[0], r[1] - s[1], r[2] - s[2]};
        if (0.5 * dot(diff, diff) > kDichotomyTolerance)
            return Dichotomy(QubitState::from_bloch(r), QubitState::from_bloch(s), p0);
    }
}

ScanSummary conjecture_scan(const ScanConfig& cfg) {
    if (cfg.count < 1) throw DomainError("scan count must be at least 1");
    cfg.solver.validate();
    ScanSummary sum;
    sum.rows.resize(static_cast<std::size_t>(cfg.count));

    const auto run_one = [&](int i) {
        const Dichotomy d = scan_dichotomy(cfg.seed, i);
        const SolveReport rep = bisect_accessible_info(d, cfg.solver);
        const OracleResult oracle = brute_force_accessible_info(d, cfg.oracle_grid);
        const ConcavityReport conc = concavity_scan(d, cfg.concavity_grid);
        const double best = std::max(oracle.info_best, oracle.theta_info);
        sum.rows[static_cast<std::size_t>(i)] = {cfg.seed,         i,
                                                 rep.lambda_opt,   rep.acc_info,
                                                 best - rep.acc_info, conc.quasi_concave,
                                                 conc.pseudo_concave};
    };

    unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    threads = std::clamp(threads, 1u, static_cast<unsigned>(cfg.count));
    if (threads == 1) {
        for (int i = 0; i < cfg.count; ++i) run_one(i);
    } else {
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (int i = static_cast<int>(t); i < cfg.count;
                         i += static_cast<int>(threads))
                        run_one(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    for (const auto& row : sum.rows) {
        sum.quasi_violations += row.quasi ? 0 : 1;
        sum.pseudo_violations += row.pseudo ? 0 : 1;
        sum.gap_violations += row.oracle_gap > kGapThreshold ? 1 : 0;
    }
    return sum;
}

}  // namespace accinfo
