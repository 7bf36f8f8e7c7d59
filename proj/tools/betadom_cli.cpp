// Command-line front end: ensemble samplers, coupling verifiers, operator
// Tracy-Widom sampling, LPP identity checks, and dominance tests. CSV sample
// files and JSON reports; exit 0 pass, 1 verdict fail, 2 usage error,
// 3 numerical error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "betadom/ensembles.hpp"
#include "betadom/lpp.hpp"
#include "betadom/stats.hpp"
#include "betadom/stochastic_operator.hpp"

using json = nlohmann::ordered_json;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BETADOM_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw betadom::parameter_error("BETADOM_SEED is not a valid integer");
        }
    }
    return 12345;
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw betadom::parameter_error("cannot open output file: " + path);
    f << text;
}

struct CommonOpts {
    std::size_t reps = 1000;
    std::uint64_t seed = default_seed();
    unsigned workers = 1;
    double alpha_level = 0.001;
    std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--reps", o.reps, "number of Monte Carlo replicas");
    cmd->add_option("--seed", o.seed, "base seed (env BETADOM_SEED overrides the default)");
    cmd->add_option("--workers", o.workers, "worker thread count (output independent of it)");
    cmd->add_option("--alpha-level", o.alpha_level, "test level for verdicts");
    cmd->add_option("--out", o.out, "output path, '-' for stdout");
}

std::string csv_samples(const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& cols) {
    std::ostringstream os;
    os << "replica";
    for (const auto& h : header) os << ',' << h;
    os << '\n';
    for (std::size_t r = 0; r < cols.front().size(); ++r) {
        os << r;
        for (const auto& col : cols) os << ',' << fmt17(col[r]);
        os << '\n';
    }
    return os.str();
}

json report_json(const std::string& test, json params, std::size_t n, std::size_t m,
                 double statistic, double p_value, bool verdict, std::uint64_t seed) {
    return json{{"test", test},   {"params", std::move(params)},
                {"n", n},         {"m", m},
                {"statistic", statistic}, {"p_value", p_value},
                {"verdict", verdict ? "pass" : "fail"}, {"seed", seed}};
}

int emit_report(const json& rep, const std::string& out) {
    write_text(out, rep.dump(2) + "\n");
    return rep.at("verdict") == "pass" ? 0 : 1;
}

std::vector<double> read_csv_last_column(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw betadom::parameter_error("cannot open input file: " + path);
    std::string line;
    if (!std::getline(f, line)) throw betadom::parameter_error("empty CSV: " + path);
    std::vector<double> values;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto pos = line.find_last_of(',');
        values.push_back(std::stod(pos == std::string::npos ? line : line.substr(pos + 1)));
    }
    if (values.empty()) throw betadom::parameter_error("no data rows in CSV: " + path);
    return values;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"beta-ensemble domination toolkit"};
    app.require_subcommand(1);

    // hermite
    auto* hermite = app.add_subcommand("hermite", "sample Hermite beta-ensemble lambda1");
    int h_n = 50;
    double h_beta = 2.0;
    CommonOpts h_opts;
    hermite->add_option("--n", h_n, "matrix size")->required();
    hermite->add_option("--beta", h_beta, "beta parameter")->required();
    add_common(hermite, h_opts);

    // laguerre
    auto* laguerre = app.add_subcommand("laguerre", "sample Laguerre beta-ensemble lambda1");
    int l_n = 4;
    double l_kappa = 4.0, l_beta = 2.0;
    CommonOpts l_opts;
    laguerre->add_option("--n", l_n, "matrix size")->required();
    laguerre->add_option("--kappa", l_kappa, "kappa parameter (> n-1)")->required();
    laguerre->add_option("--beta", l_beta, "beta parameter")->required();
    add_common(laguerre, l_opts);

    // couple-hermite
    auto* ch = app.add_subcommand("couple-hermite", "pathwise Hermite domination check");
    int ch_m = 3, ch_n = 2;
    double ch_beta1 = 2.0, ch_tol = 1e-10;
    CommonOpts ch_opts;
    ch->add_option("--m", ch_m, "dominating matrix size")->required();
    ch->add_option("--n", ch_n, "dominated matrix size")->required();
    ch->add_option("--beta1", ch_beta1, "beta of the dominating ensemble (beta2 = m*beta1/n)")->required();
    ch->add_option("--tol", ch_tol, "pathwise violation tolerance");
    add_common(ch, ch_opts);

    // couple-laguerre
    auto* cl = app.add_subcommand("couple-laguerre", "pathwise Laguerre domination check");
    int cl_m = 4, cl_n = 2;
    double cl_kappa = 3.0, cl_beta1 = 1.0, cl_tol = 1e-10;
    CommonOpts cl_opts;
    cl->add_option("--m", cl_m, "dominating matrix size")->required();
    cl->add_option("--n", cl_n, "dominated matrix size")->required();
    cl->add_option("--kappa", cl_kappa, "kappa of the dominated ensemble")->required();
    cl->add_option("--beta1", cl_beta1, "beta of the dominating ensemble (beta2 = m*beta1/n)")->required();
    cl->add_option("--tol", cl_tol, "pathwise violation tolerance");
    add_common(cl, cl_opts);

    // tw
    auto* tw = app.add_subcommand("tw", "sample TW_{beta,k} from the discretized operator");
    int tw_k = 0;
    double tw_beta = 2.0, tw_L = 20.0, tw_h = 0.02;
    CommonOpts tw_opts;
    tw->add_option("--k", tw_k, "operator order");
    tw->add_option("--beta", tw_beta, "beta parameter")->required();
    tw->set_help_flag("--help", "print help");
    tw->add_option("--L", tw_L, "domain truncation length");
    tw->add_option("--h", tw_h, "grid step");
    add_common(tw, tw_opts);

    // tw-couple
    auto* twc = app.add_subcommand("tw-couple", "shared-noise Loewner domination check");
    int twc_k = 0;
    double twc_beta1 = 2.0, twc_beta2 = 4.0, twc_L = 20.0, twc_h = 0.02, twc_tol = 1e-9;
    double twc_p = 0.0, twc_s = 0.0;
    CommonOpts twc_opts;
    twc->add_option("--k", twc_k, "operator order");
    twc->add_option("--beta1", twc_beta1, "smaller beta")->required();
    twc->add_option("--beta2", twc_beta2, "larger beta")->required();
    auto* p_opt = twc->add_option("--p", twc_p, "rescaling coefficient");
    auto* s_opt = twc->add_option("--s", twc_s, "exponent with alpha = (beta2/beta1)^s");
    p_opt->excludes(s_opt);
    twc->set_help_flag("--help", "print help");
    twc->add_option("--L", twc_L, "domain truncation length");
    twc->add_option("--h", twc_h, "grid step");
    twc->add_option("--tol", twc_tol, "pathwise violation tolerance");
    add_common(twc, twc_opts);

    // tw-range
    auto* twr = app.add_subcommand("tw-range", "print admissible p and alpha ranges");
    int twr_k = 0;
    double twr_beta1 = 2.0, twr_beta2 = 4.0;
    std::string twr_out = "-";
    twr->add_option("--k", twr_k, "operator order");
    twr->add_option("--beta1", twr_beta1, "smaller beta")->required();
    twr->add_option("--beta2", twr_beta2, "larger beta")->required();
    twr->add_option("--out", twr_out, "output path, '-' for stdout");

    // lpp
    auto* lpp = app.add_subcommand("lpp", "sample last-passage times");
    std::string lpp_model = "point_to_point";
    int lpp_n = 4;
    CommonOpts lpp_opts;
    lpp->add_option("--model", lpp_model, "point_to_point | point_to_line | symmetrized")
        ->check(CLI::IsMember({"point_to_point", "point_to_line", "symmetrized"}));
    lpp->add_option("--n", lpp_n, "target index")->required();
    add_common(lpp, lpp_opts);

    // identity-check
    auto* idc = app.add_subcommand("identity-check", "LPP vs Laguerre distributional identity");
    std::string idc_which = "johansson";
    int idc_n = 0;
    CommonOpts idc_opts;
    idc->add_option("--which", idc_which, "johansson | flat | baik")
        ->check(CLI::IsMember({"johansson", "flat", "baik"}))
        ->required();
    idc->add_option("--n", idc_n, "model size (default: 4 johansson, 3 flat/baik)");
    add_common(idc, idc_opts);

    // dominance
    auto* dom = app.add_subcommand("dominance", "one-sided KS between two CSV sample files");
    std::string dom_x, dom_y;
    std::vector<double> dom_scale_x, dom_scale_y;
    double dom_alpha = 0.001;
    std::string dom_out = "-";
    dom->add_option("file_x", dom_x, "CSV of the dominating sample (last column)")->required();
    dom->add_option("file_y", dom_y, "CSV of the dominated sample (last column)")->required();
    dom->add_option("--scale-x", dom_scale_x, "affine map a b applied as a*x+b")->expected(2);
    dom->add_option("--scale-y", dom_scale_y, "affine map a b applied as a*y+b")->expected(2);
    dom->add_option("--alpha-level", dom_alpha, "test level");
    dom->add_option("--out", dom_out, "output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (hermite->parsed()) {
        auto vals = betadom::mc_collect(h_opts.reps, h_opts.seed, h_opts.workers,
                                        [&](betadom::RngStream& s) {
                                            return betadom::hermite_lambda1(
                                                betadom::sample_hermite(h_n, h_beta, s));
                                        });
        std::vector<double> scaled(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i)
            scaled[i] = betadom::scale_hermite(vals[i], h_n);
        write_text(h_opts.out, csv_samples({"lambda1", "scaled"}, {vals, scaled}));
        return 0;
    }
    if (laguerre->parsed()) {
        auto vals = betadom::mc_collect(l_opts.reps, l_opts.seed, l_opts.workers,
                                        [&](betadom::RngStream& s) {
                                            return betadom::laguerre_lambda1(
                                                betadom::sample_laguerre(l_n, l_kappa, l_beta, s));
                                        });
        std::vector<double> scaled(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i)
            scaled[i] = betadom::scale_laguerre(vals[i], l_n, l_kappa);
        write_text(l_opts.out, csv_samples({"lambda1", "scaled"}, {vals, scaled}));
        return 0;
    }
    if (ch->parsed()) {
        betadom::HermiteCoupleSpec spec(ch_m, ch_n, ch_beta1);
        auto pairs = betadom::mc_collect_pairs(
            ch_opts.reps, ch_opts.seed, ch_opts.workers, [&](betadom::RngStream& s) {
                auto pair = betadom::sample_coupled_hermite(spec, s);
                return std::pair{betadom::extremal_eigenvalue(pair.upper.matrix(),
                                                              betadom::Extremal::largest),
                                 betadom::extremal_eigenvalue(pair.lower.matrix(),
                                                              betadom::Extremal::largest)};
            });
        auto rep = betadom::pathwise_report(pairs, ch_tol);
        json params{{"m", ch_m}, {"n", ch_n}, {"beta1", ch_beta1}, {"beta2", spec.beta2},
                    {"tol", ch_tol}, {"pathwise_violations", rep.pathwise_violations},
                    {"workers", ch_opts.workers}, {"reps", ch_opts.reps}};
        return emit_report(report_json("couple-hermite", params, ch_opts.reps, ch_opts.reps,
                                       rep.d_plus, rep.p_value_one_sided, rep.pass,
                                       ch_opts.seed),
                           ch_opts.out);
    }
    if (cl->parsed()) {
        betadom::LaguerreCoupleSpec spec(cl_m, cl_n, cl_kappa, cl_beta1);
        auto pairs = betadom::mc_collect_pairs(
            cl_opts.reps, cl_opts.seed, cl_opts.workers, [&](betadom::RngStream& s) {
                auto pair = betadom::sample_coupled_laguerre(spec, s);
                return std::pair{
                    betadom::extremal_eigenvalue(betadom::gram_tridiagonal(pair.upper),
                                                 betadom::Extremal::largest),
                    betadom::extremal_eigenvalue(betadom::gram_tridiagonal(pair.lower),
                                                 betadom::Extremal::largest)};
            });
        auto rep = betadom::pathwise_report(pairs, cl_tol);
        json params{{"m", cl_m}, {"n", cl_n}, {"kappa", cl_kappa},
                    {"kappa_upper", spec.kappa_upper}, {"beta1", cl_beta1},
                    {"beta2", spec.beta2}, {"tol", cl_tol},
                    {"pathwise_violations", rep.pathwise_violations},
                    {"workers", cl_opts.workers}, {"reps", cl_opts.reps}};
        return emit_report(report_json("couple-laguerre", params, cl_opts.reps, cl_opts.reps,
                                       rep.d_plus, rep.p_value_one_sided, rep.pass,
                                       cl_opts.seed),
                           cl_opts.out);
    }
    if (tw->parsed()) {
        betadom::OperatorGrid grid(tw_k, tw_L, tw_h);
        auto vals = betadom::mc_collect(tw_opts.reps, tw_opts.seed, tw_opts.workers,
                                        [&](betadom::RngStream& s) {
                                            return betadom::sample_tw(grid, tw_beta, s);
                                        });
        write_text(tw_opts.out, csv_samples({"tw"}, {vals}));
        return 0;
    }
    if (twc->parsed()) {
        double p = twc_p;
        if (s_opt->count() > 0) {
            // alpha = r^s = r^{1/2} p^{(4k+1)/(4k+2)}  =>  solve for p
            double r = twc_beta2 / twc_beta1;
            p = std::pow(std::pow(r, twc_s - 0.5), (4.0 * twc_k + 2.0) / (4.0 * twc_k + 1.0));
        } else if (p_opt->count() == 0) {
            p = 1.0;
        }
        betadom::OperatorGrid grid(twc_k, twc_L, twc_h);
        betadom::OperatorCouplingSpec spec(twc_k, twc_beta1, twc_beta2, p);
        auto pairs = betadom::mc_collect_pairs(
            twc_opts.reps, twc_opts.seed, twc_opts.workers, [&](betadom::RngStream& s) {
                auto [lo, hi] = betadom::coupled_tw_pair(spec, grid, s);
                return std::pair{hi, lo};
            });
        auto rep = betadom::pathwise_report(pairs, twc_tol);
        json params{{"k", twc_k}, {"beta1", twc_beta1}, {"beta2", twc_beta2},
                    {"p", p}, {"gamma", spec.gamma}, {"alpha", spec.alpha}, {"s", spec.s},
                    {"L", twc_L}, {"h", twc_h}, {"tol", twc_tol},
                    {"pathwise_violations", rep.pathwise_violations}, {"reps", twc_opts.reps}};
        return emit_report(report_json("tw-couple", params, twc_opts.reps, twc_opts.reps,
                                       rep.d_plus, rep.p_value_one_sided, rep.pass,
                                       twc_opts.seed),
                           twc_opts.out);
    }
    if (twr->parsed()) {
        auto [plo, phi] = betadom::admissible_p_range(twr_k, twr_beta1, twr_beta2);
        auto [alo, ahi] = betadom::alpha_range(twr_k, twr_beta1, twr_beta2);
        json rep{{"test", "tw-range"},
                 {"params", {{"k", twr_k}, {"beta1", twr_beta1}, {"beta2", twr_beta2}}},
                 {"p_range", {plo, phi}},
                 {"alpha_range", {alo, ahi}},
                 {"s_range", {1.0 / (4.0 * twr_k + 3.0), (4.0 * twr_k + 2.0) / (4.0 * twr_k + 3.0)}}};
        write_text(twr_out, rep.dump(2) + "\n");
        return 0;
    }
    if (lpp->parsed()) {
        auto vals = betadom::mc_collect(
            lpp_opts.reps, lpp_opts.seed, lpp_opts.workers, [&](betadom::RngStream& s) {
                if (lpp_model == "point_to_point") return betadom::lpp_point_to_point(lpp_n, s);
                if (lpp_model == "point_to_line") return betadom::lpp_point_to_line(lpp_n, s);
                return betadom::lpp_symmetrized(lpp_n, s);
            });
        write_text(lpp_opts.out, csv_samples({"value"}, {vals}));
        return 0;
    }
    if (idc->parsed()) {
        int n = idc_n > 0 ? idc_n : (idc_which == "johansson" ? 4 : 3);
        std::vector<double> lpp_vals, eig_vals;
        if (idc_which == "johansson") {
            lpp_vals = betadom::mc_collect(idc_opts.reps, idc_opts.seed, idc_opts.workers,
                                           [&](betadom::RngStream& s) {
                                               return betadom::lpp_point_to_point(n, s);
                                           });
            eig_vals = betadom::mc_collect(
                idc_opts.reps, idc_opts.seed + 1, idc_opts.workers, [&](betadom::RngStream& s) {
                    return betadom::laguerre_lambda1(betadom::sample_laguerre(n, n, 2.0, s));
                });
        } else if (idc_which == "flat") {
            lpp_vals = betadom::mc_collect(idc_opts.reps, idc_opts.seed, idc_opts.workers,
                                           [&](betadom::RngStream& s) {
                                               return betadom::lpp_point_to_line(n, s);
                                           });
            eig_vals = betadom::mc_collect(
                idc_opts.reps, idc_opts.seed + 1, idc_opts.workers, [&](betadom::RngStream& s) {
                    return 0.5 * betadom::laguerre_lambda1(
                                     betadom::sample_laguerre(2 * n - 1, 2 * n, 1.0, s));
                });
        } else { // baik
            lpp_vals = betadom::mc_collect(idc_opts.reps, idc_opts.seed, idc_opts.workers,
                                           [&](betadom::RngStream& s) {
                                               return betadom::lpp_symmetrized(n, s);
                                           });
            eig_vals = betadom::mc_collect(
                idc_opts.reps, idc_opts.seed + 1, idc_opts.workers, [&](betadom::RngStream& s) {
                    return 2.0 * betadom::laguerre_lambda1(
                                     betadom::sample_laguerre(n, n - 0.5, 4.0, s));
                });
        }
        auto ks = betadom::two_sample_ks(betadom::EmpiricalDistribution(lpp_vals),
                                         betadom::EmpiricalDistribution(eig_vals));
        bool pass = ks.p_value > idc_opts.alpha_level;
        json params{{"which", idc_which}, {"n", n}, {"alpha_level", idc_opts.alpha_level},
                    {"reps", idc_opts.reps}};
        return emit_report(report_json("identity-check", params, idc_opts.reps, idc_opts.reps,
                                       ks.statistic, ks.p_value, pass, idc_opts.seed),
                           idc_opts.out);
    }
    if (dom->parsed()) {
        auto xs = read_csv_last_column(dom_x);
        auto ys = read_csv_last_column(dom_y);
        if (!dom_scale_x.empty())
            for (double& v : xs) v = dom_scale_x[0] * v + dom_scale_x[1];
        if (!dom_scale_y.empty())
            for (double& v : ys) v = dom_scale_y[0] * v + dom_scale_y[1];
        std::size_t nx = xs.size(), ny = ys.size();
        auto ks = betadom::one_sided_ks(betadom::EmpiricalDistribution(std::move(xs)),
                                        betadom::EmpiricalDistribution(std::move(ys)));
        bool pass = ks.statistic < betadom::one_sided_critical_value(dom_alpha, nx, ny);
        json params{{"file_x", dom_x}, {"file_y", dom_y}, {"alpha_level", dom_alpha},
                    {"critical_value", betadom::one_sided_critical_value(dom_alpha, nx, ny)}};
        return emit_report(report_json("dominance", params, nx, ny, ks.statistic, ks.p_value,
                                       pass, 0),
                           dom_out);
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const betadom::parameter_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const betadom::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
