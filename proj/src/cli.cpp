#include "accinfo/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "accinfo/io.hpp"

namespace accinfo {

namespace {

enum class Format { Json, Csv, Human };

struct RunConfig {
    std::string subcommand;
    std::string format;  // empty: per-subcommand default
    std::uint64_t seed = 0;
    double p0 = 0.5;
    double cap = 1.0;
    std::string joint;
    std::string rho;
    std::string sigma;
    std::string prior = "0.5";
    std::optional<double> lambda;
    int n = 101;
    int count = 100;
    bool oracle = false;
    int oracle_grid = 400;
    SolverConfig solver;
};

Format resolve_format(const RunConfig& rc, Format fallback) {
    if (rc.format.empty()) return fallback;
    if (rc.format == "json") return Format::Json;
    if (rc.format == "csv") return Format::Csv;
    return Format::Human;
}

/// Six significant digits for human-readable output.
std::string h6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string joint_human(const JointDist& p) {
    return "[[" + h6(p(0, 0)) + ", " + h6(p(0, 1)) + "], [" + h6(p(1, 0)) + ", " + h6(p(1, 1)) +
           "]]";
}

Dichotomy read_dichotomy(const RunConfig& rc) {
    if (rc.rho.empty() || rc.sigma.empty()) throw DomainError("--rho and --sigma are required");
    const QubitState rho = io::parse_state(rc.rho);
    const QubitState sigma = io::parse_state(rc.sigma);
    const auto [p0, p1] = io::parse_prior(rc.prior);
    return Dichotomy(rho, sigma, p0, p1);
}

JointDist read_joint(const RunConfig& rc) {
    if (rc.joint.empty()) throw DomainError("--joint is required");
    return io::parse_joint(rc.joint);
}

int cmd_tradeoff(const RunConfig& rc, std::ostream& out) {
    const MarginalX px = MarginalX::from_p0(rc.p0);
    const JointDist best = tradeoff_max(px, rc.cap);
    const ParamCoords c = coords_from_joint(best);
    const double info = mutual_information(best);
    const double guess = guessing_probability(best);
    switch (resolve_format(rc, Format::Json)) {
        case Format::Json:
            out << io::dump(io::Json{{"subcommand", "tradeoff"},
                                     {"p0", px.p0},
                                     {"cap", rc.cap},
                                     {"joint", io::to_json(best)},
                                     {"coords", io::to_json(c)},
                                     {"info", info},
                                     {"guess", guess}})
                << '\n';
            break;
        case Format::Csv:
            out << "p00,p01,p10,p11,a,b,lambda,info,guess\n"
                << io::joint_csv(best) << ',' << io::format_real(c.a) << ','
                << io::format_real(c.b) << ',' << io::format_real(c.lambda) << ','
                << io::format_real(info) << ',' << io::format_real(guess) << '\n';
            break;
        case Format::Human:
            out << "optimal joint     " << joint_human(best)
                << "   (information-guessing tradeoff maximizer)\n"
                << "coords (a, b, l)  (" << h6(c.a) << ", " << h6(c.b) << ", " << h6(c.lambda)
                << ")   (a* = 2 p0 - 1, l* = 2 P - 1, b* = l* + a* - 1)\n"
                << "I(X:Y)            " << h6(info) << " bits   (maximal mutual information)\n"
                << "P(X|Y)            " << h6(guess) << "   (guessing probability, <= cap)\n";
            break;
    }
    return kExitOk;
}

void human_monotonicity(const MonotonicityResult& r, std::ostream& out) {
    out << "I(X:Y) = " << h6(r.info) << " bits, P(X|Y) = " << h6(r.guess) << '\n';
    switch (r.status) {
        case MonotonicityStatus::Vacuous:
            out << "vacuous: P(X|Y) equals max p_X, so no competitor can guess worse while "
                   "informing more (trivially monotone)\n";
            return;
        case MonotonicityStatus::Holds:
            out << "monotone: Tr p >= p(X=0) and P(X|Y) = p(Y=0) + 1 - p(X=0) both hold "
                   "(non-monotonicity characterization)\n";
            return;
        case MonotonicityStatus::Violated:
            out << "violated: " << (r.trace_condition ? "" : "Tr p >= p(X=0) fails; ")
                << (r.guessing_condition ? "" : "P(X|Y) = p(Y=0) + 1 - p(X=0) fails; ")
                << "witness p(X,Z) = " << joint_human(*r.witness) << " with I(X:Z) = "
                << h6(r.witness_info) << " bits > I(X:Y) and P(X|Z) = " << h6(r.witness_guess)
                << " <= P(X|Y)\n";
            return;
    }
}

int cmd_monotonicity(const RunConfig& rc, std::ostream& out, bool counterexample) {
    const JointDist p = read_joint(rc);
    const MonotonicityResult r = monotonicity_holds(p);
    switch (resolve_format(rc, Format::Json)) {
        case Format::Json: {
            io::Json j{{"subcommand", rc.subcommand}, {"joint", io::to_json(p)},
                       {"coords", io::to_json(coords_from_joint(p))}};
            j.update(io::to_json(r));
            out << io::dump(j) << '\n';
            break;
        }
        case Format::Csv:
            out << "status,info,guess,trace_condition,guessing_condition,w00,w01,w10,w11,"
                   "witness_info,witness_guess\n"
                << to_string(r.status) << ',' << io::format_real(r.info) << ','
                << io::format_real(r.guess) << ',' << (r.trace_condition ? 1 : 0) << ','
                << (r.guessing_condition ? 1 : 0) << ',';
            if (r.witness)
                out << io::joint_csv(*r.witness) << ',' << io::format_real(r.witness_info) << ','
                    << io::format_real(r.witness_guess) << '\n';
            else
                out << ",,,,,\n";
            break;
        case Format::Human:
            if (counterexample && r.status == MonotonicityStatus::Holds)
                out << "certificate: no counterexample exists for this joint\n";
            human_monotonicity(r, out);
            break;
    }
    return kExitOk;
}

int cmd_check_bounds(const RunConfig& rc, std::ostream& out) {
    const JointDist p = read_joint(rc);
    const double hxy = conditional_entropy(p);
    const double guess = guessing_probability(p);
    const double fano = fano_upper_bound(guess, 2);
    const double fano_strong = fano_upper_bound(guess, 2, FanoVariant::Strengthened);
    const double hr = hellman_raviv_lower_bound(guess);
    const bool sandwich = hr <= hxy + 1e-12 && hxy <= fano + 1e-12;
    switch (resolve_format(rc, Format::Json)) {
        case Format::Json:
            out << io::dump(io::Json{{"subcommand", "check-bounds"},
                                     {"joint", io::to_json(p)},
                                     {"conditional_entropy", hxy},
                                     {"guess", guess},
                                     {"fano_upper", fano},
                                     {"fano_upper_strengthened", fano_strong},
                                     {"hellman_raviv_lower", hr},
                                     {"sandwich_holds", sandwich}})
                << '\n';
            break;
        case Format::Csv:
            out << "conditional_entropy,guess,fano_upper,fano_upper_strengthened,"
                   "hellman_raviv_lower,sandwich_holds\n"
                << io::format_real(hxy) << ',' << io::format_real(guess) << ','
                << io::format_real(fano) << ',' << io::format_real(fano_strong) << ','
                << io::format_real(hr) << ',' << (sandwich ? 1 : 0) << '\n';
            break;
        case Format::Human:
            out << "H(X|Y)              " << h6(hxy) << " bits\n"
                << "P(X|Y)              " << h6(guess) << '\n'
                << "Hellman-Raviv lower " << h6(hr) << "   (2 (1 - P))\n"
                << "Fano upper          " << h6(fano) << "   (h(P) + (1 - P) log2 |X|)\n"
                << "Fano strengthened   " << h6(fano_strong)
                << "   (h(P) + (1 - P) log2 (|X| - 1))\n"
                << "sandwich " << (sandwich ? "holds" : "VIOLATED") << '\n';
            break;
    }
    return kExitOk;
}

int cmd_accinfo(const RunConfig& rc, std::ostream& out) {
    const Dichotomy d = read_dichotomy(rc);
    SolveReport rep = bisect_accessible_info(d, rc.solver);
    std::optional<OracleResult> oracle;
    if (rc.oracle) {
        oracle = brute_force_accessible_info(d, rc.oracle_grid);
        rep.oracle_gap = std::max(oracle->info_best, oracle->theta_info) - rep.acc_info;
    }
    std::optional<double> lambda_h;
    try {
        lambda_h = lambda_helstrom(d);
    } catch (const DomainError&) {
    }

    switch (resolve_format(rc, Format::Json)) {
        case Format::Json:
        case Format::Csv: {
            io::Json j{{"subcommand", "accinfo"},
                       {"seed", rc.seed},
                       {"config", io::to_json(rc.solver)},
                       {"rho", io::to_json(d.rho())},
                       {"sigma", io::to_json(d.sigma())},
                       {"prior", io::Json::array({d.p0(), d.p1()})},
                       {"mu", mu(d)},
                       {"omega_purity", omega_purity(d)}};
            j["lambda_helstrom"] = lambda_h ? io::Json(*lambda_h) : io::Json(nullptr);
            j.update(io::to_json(rep));
            if (oracle)
                j["oracle"] = io::Json{{"lambda_best", oracle->lambda_best},
                                       {"info_best", oracle->info_best},
                                       {"theta_best", oracle->theta_best},
                                       {"theta_info", oracle->theta_info},
                                       {"grid", rc.oracle_grid}};
            if (rc.lambda) {
                const Povm m = povm_from_lambda(d, *rc.lambda);
                j["at_lambda"] = io::Json{{"lambda", *rc.lambda},
                                          {"info", info_of_lambda(d, *rc.lambda)},
                                          {"joint", io::to_json(induced_joint(d, m))},
                                          {"effect_plus", io::matrix_json(m.plus.matrix())}};
            }
            out << io::dump(j) << '\n';
            break;
        }
        case Format::Human:
            out << "lambda* (window half-width) " << h6(rep.lambda_star) << '\n'
                << "lambda_H (Helstrom)         " << (lambda_h ? h6(*lambda_h) : "undefined")
                << '\n'
                << "lambda_opt (bisection)      " << h6(rep.lambda_opt) << " after "
                << rep.iterations << " iterations\n"
                << "accessible information      " << h6(rep.acc_info)
                << " bits   (exact if I(lambda) is pseudo-concave)\n";
            if (rep.oracle_gap) out << "oracle gap                  " << h6(*rep.oracle_gap) << '\n';
            if (rc.lambda)
                out << "I(" << h6(*rc.lambda) << ")                     "
                    << h6(info_of_lambda(d, *rc.lambda)) << " bits\n";
            break;
    }
    return kExitOk;
}

int cmd_lorenz(const RunConfig& rc, std::ostream& out) {
    const Dichotomy d = read_dichotomy(rc);
    const auto curve = lorenz_curve(d, rc.n);
    // The Pi_+ sweep traces one half of the boundary; the complementary
    // effects Pi_- = 1 - Pi_+ trace the other.
    std::vector<LorenzPoint> both = curve;
    for (const auto& pt : curve) both.push_back({pt.lambda, 1.0 - pt.q_rho, 1.0 - pt.q_sigma});

    switch (resolve_format(rc, Format::Csv)) {
        case Format::Csv:
            out << io::kLorenzHeader << '\n';
            for (const auto& pt : both) out << io::lorenz_csv_row(pt) << '\n';
            break;
        case Format::Json: {
            io::Json rows = io::Json::array();
            for (std::size_t i = 0; i < both.size(); ++i)
                rows.push_back(io::Json{{"lambda", both[i].lambda},
                                        {"q_rho", both[i].q_rho},
                                        {"q_sigma", both[i].q_sigma},
                                        {"effect", i < curve.size() ? "plus" : "minus"}});
            out << io::dump(io::Json{{"subcommand", "lorenz"},
                                     {"lambda_star", lambda_star(d)},
                                     {"n", rc.n},
                                     {"points", std::move(rows)}})
                << '\n';
            break;
        }
        case Format::Human:
            out << "lambda      Tr[E rho]   Tr[E sigma]   (testing-region boundary)\n";
            for (const auto& pt : both)
                out << h6(pt.lambda) << "  " << h6(pt.q_rho) << "  " << h6(pt.q_sigma) << '\n';
            break;
    }
    return kExitOk;
}

int cmd_scan(const RunConfig& rc, std::ostream& out) {
    if (rc.count < 1) throw DomainError("--count must be at least 1");
    ScanConfig cfg;
    cfg.seed = rc.seed;
    cfg.count = rc.count;
    cfg.solver = rc.solver;
    cfg.oracle_grid = rc.oracle_grid;
    cfg.concavity_grid = std::max(100, rc.oracle_grid);
    const ScanSummary sum = conjecture_scan(cfg);

    switch (resolve_format(rc, Format::Csv)) {
        case Format::Csv:
            out << io::kScanHeader << '\n';
            for (const auto& row : sum.rows) out << io::scan_csv_row(row) << '\n';
            out << "# seed=" << rc.seed << " count=" << rc.count
                << " tol_lambda=" << io::format_real(rc.solver.tol_lambda)
                << " fd_step=" << io::format_real(rc.solver.fd_step)
                << " max_iter=" << rc.solver.max_iter << " grid=" << cfg.oracle_grid
                << " quasi_violations=" << sum.quasi_violations
                << " pseudo_violations=" << sum.pseudo_violations
                << " gap_violations=" << sum.gap_violations << '\n';
            break;
        case Format::Json: {
            io::Json rows = io::Json::array();
            for (const auto& r : sum.rows)
                rows.push_back(io::Json{{"index", r.index},
                                        {"lambda_opt", r.lambda_opt},
                                        {"acc_info", r.acc_info},
                                        {"oracle_gap", r.oracle_gap},
                                        {"quasi", r.quasi},
                                        {"pseudo", r.pseudo}});
            out << io::dump(io::Json{{"subcommand", "scan"},
                                     {"seed", rc.seed},
                                     {"count", rc.count},
                                     {"config", io::to_json(rc.solver)},
                                     {"grid", cfg.oracle_grid},
                                     {"quasi_violations", sum.quasi_violations},
                                     {"pseudo_violations", sum.pseudo_violations},
                                     {"gap_violations", sum.gap_violations},
                                     {"rows", std::move(rows)}})
                << '\n';
            break;
        }
        case Format::Human:
            out << "scanned " << rc.count << " random dichotomies (seed " << rc.seed << ")\n"
                << "quasi-concavity violations  " << sum.quasi_violations << '\n'
                << "pseudo-concavity violations " << sum.pseudo_violations << '\n'
                << "oracle gaps above 1e-6      " << sum.gap_violations << '\n';
            break;
    }
    return kExitOk;
}

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"Mutual information, guessing probability and accessible information of "
                 "binary distributions and qubit dichotomies"};
    app.require_subcommand(1, 1);

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", rc.format, "Output format")
            ->check(CLI::IsMember({"json", "csv", "human"}));
    };
    const auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--tol", rc.solver.tol_lambda, "Bisection interval width to stop at");
        sub->add_option("--fd-step", rc.solver.fd_step, "Finite-difference step for dI/dl");
        sub->add_option("--max-iter", rc.solver.max_iter, "Bisection iteration limit");
        sub->add_option("--seed", rc.seed, "Seed recorded in the report");
    };
    const auto add_states = [&](CLI::App* sub) {
        sub->add_option("--rho", rc.rho, "State rho: Bloch x,y,z or 8 reals (re,im row-major)")
            ->required();
        sub->add_option("--sigma", rc.sigma, "State sigma, same forms as --rho")->required();
        sub->add_option("--prior", rc.prior, "Prior p0 or p0,p1 (default 0.5)");
    };

    auto* tradeoff = app.add_subcommand("tradeoff", "Information-maximizing joint under a guessing cap");
    tradeoff->add_option("--p0", rc.p0, "X-marginal p(X=0)")->required();
    tradeoff->add_option("--cap", rc.cap, "Upper bound on the guessing probability")->required();
    add_format(tradeoff);

    auto* mono = app.add_subcommand("monotonicity", "Test whether information is monotone in guessing");
    mono->add_option("--joint", rc.joint, "Joint p00,p01,p10,p11")->required();
    add_format(mono);

    auto* counter = app.add_subcommand("counterexample", "Construct a violating p(X,Z) if one exists");
    counter->add_option("--joint", rc.joint, "Joint p00,p01,p10,p11")->required();
    add_format(counter);

    auto* bounds = app.add_subcommand("check-bounds", "Evaluate the Fano and Hellman-Raviv bounds");
    bounds->add_option("--joint", rc.joint, "Joint p00,p01,p10,p11")->required();
    add_format(bounds);

    auto* acc = app.add_subcommand("accinfo", "Accessible information of a qubit dichotomy");
    add_states(acc);
    acc->add_flag("--oracle", rc.oracle, "Also run the brute-force oracle and report the gap");
    acc->add_option("--n", rc.oracle_grid, "Oracle grid size")->check(CLI::Range(10, 10000000));
    acc->add_option("--lambda", rc.lambda, "Also evaluate the measurement at this lambda");
    add_solver(acc);
    add_format(acc);

    auto* lorenz = app.add_subcommand("lorenz", "Sample the Lorenz curve of a dichotomy");
    add_states(lorenz);
    lorenz->add_option("--n", rc.n, "Number of lambda samples (>= 2)");
    add_format(lorenz);

    auto* scan = app.add_subcommand("scan", "Probe the concavity conjectures on random dichotomies");
    scan->add_option("--count", rc.count, "Number of random dichotomies");
    scan->add_option("--n", rc.oracle_grid, "Oracle and concavity grid size")
        ->check(CLI::Range(100, 10000000));
    add_solver(scan);
    add_format(scan);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kExitInput;
    }
    rc.subcommand = app.get_subcommands().front()->get_name();

    try {
        if (rc.subcommand == "tradeoff") return cmd_tradeoff(rc, out);
        if (rc.subcommand == "monotonicity") return cmd_monotonicity(rc, out, false);
        if (rc.subcommand == "counterexample") return cmd_monotonicity(rc, out, true);
        if (rc.subcommand == "check-bounds") return cmd_check_bounds(rc, out);
        if (rc.subcommand == "accinfo") return cmd_accinfo(rc, out);
        if (rc.subcommand == "lorenz") return cmd_lorenz(rc, out);
        if (rc.subcommand == "scan") return cmd_scan(rc, out);
    } catch (const InfeasibleError& e) {
        err << "error: infeasible: " << one_line(e.what()) << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kExitFailure;
    }
    err << "error: unknown subcommand\n";
    return kExitInput;
}

}  // namespace accinfo
