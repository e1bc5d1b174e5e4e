#include "levy/cli.hpp"

#include "levy/budget.hpp"
#include "levy/contour.hpp"
#include "levy/density.hpp"
#include "levy/pricer.hpp"
#include "levy/quadrature.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace levy {
namespace {

// Raised when a pricing cross-check exceeds its tolerance (exit code 4).
struct CrossCheckBreach : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_number(const std::string& value, const std::string& where) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected a number, got '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument(where + ": trailing characters in number '" + value + "'");
    return parsed;
}

std::vector<double> parse_number_list(const std::string& value,
                                      const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(parse_number(item, where));
    }
    if (out.empty())
        throw std::invalid_argument(where + ": expected a nonempty number list");
    return out;
}

ContourKind contour_kind_from_name(const std::string& name) {
    if (name == "flat")
        return ContourKind::Flat;
    if (name == "parabola")
        return ContourKind::Parabola;
    if (name == "cosh")
        return ContourKind::CoshBump;
    throw std::invalid_argument("unknown contour '" + name +
                                "' (expected flat, parabola, or cosh)");
}

// --- resolved model ---------------------------------------------------------

struct ResolvedModel {
    CharExponent psi;
    double lambda_plus; // strip edge used for plan construction
    double mu;          // resolved drift (KoBoL) or b (Gaussian)
};

ResolvedModel resolve_model(const RunConfig& config) {
    ResolvedModel m;
    if (config.model_type == "kobol") {
        KoBoLParams p = config.kobol;
        if (config.mu_auto)
            p.mu = calibrate_drift(p, config.r);
        m.psi = make_kobol_exponent(p);
        m.lambda_plus = p.lambda_plus;
        m.mu = p.mu;
    } else if (config.model_type == "gaussian") {
        GaussianParams p = config.gauss;
        if (config.mu_auto)
            p.b = config.r - 0.5 * p.a;
        m.psi = make_gaussian_exponent(p);
        // The Gaussian exponent is entire; any damping line is admissible.
        m.lambda_plus = std::numeric_limits<double>::infinity();
        m.mu = p.b;
    } else {
        throw std::invalid_argument("unknown model type '" + config.model_type +
                                    "' (expected kobol or gaussian)");
    }
    return m;
}

double resolved_alpha(const RunConfig& config, const ResolvedModel& model) {
    if (config.alpha_plus)
        return *config.alpha_plus;
    if (config.model_type == "gaussian")
        return 2.0;
    return 1.0 + (model.lambda_plus + 1.0) / 3.0; // heuristic default
}

nlohmann::json config_to_json(const RunConfig& config,
                              const ResolvedModel& model, double alpha) {
    nlohmann::json j;
    j["model"]["type"] = config.model_type;
    if (config.model_type == "kobol") {
        j["model"]["nu"] = config.kobol.nu;
        j["model"]["c_plus"] = config.kobol.c_plus;
        j["model"]["c_minus"] = config.kobol.c_minus;
        j["model"]["lambda_plus"] = config.kobol.lambda_plus;
        j["model"]["lambda_minus"] = config.kobol.lambda_minus;
        j["model"]["mu"] = model.mu;
        j["model"]["mu_auto"] = config.mu_auto;
    } else {
        j["model"]["a"] = config.gauss.a;
        j["model"]["b"] = model.mu;
        j["model"]["b_auto"] = config.mu_auto;
    }
    j["market"]["S0"] = config.S0;
    j["market"]["strikes"] = config.strikes;
    j["market"]["r"] = config.r;
    j["market"]["T"] = config.T;
    j["numerics"]["contour"] = config.contour;
    j["numerics"]["alpha_plus"] = alpha;
    j["numerics"]["alpha_plus_heuristic"] = !config.alpha_plus.has_value();
    j["numerics"]["epsilon"] = config.epsilon;
    j["numerics"]["A"] = config.A;
    j["numerics"]["tol"] = config.tol;
    j["output"]["format"] = config.format;
    return j;
}

std::string config_csv_comment(const nlohmann::json& config) {
    std::ostringstream out;
    out << "# config " << config.dump() << '\n';
    return out.str();
}

std::string format_sig10(double v) {
    std::ostringstream out;
    out << std::setprecision(10) << v;
    return out.str();
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
    if (config.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.out_path);
    if (!file)
        throw std::invalid_argument("cannot open output file '" + config.out_path + "'");
    file << text;
}

int thread_budget() {
    const char* env = std::getenv("LEVY_PRICER_THREADS");
    if (!env)
        return 1;
    int n = 0;
    try {
        n = std::stoi(env);
    } catch (const std::exception&) {
        throw std::invalid_argument("LEVY_PRICER_THREADS must be an integer");
    }
    if (n < 0)
        throw std::invalid_argument("LEVY_PRICER_THREADS must be >= 0");
    if (n == 0)
        n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return n;
}

// --- subcommands -------------------------------------------------------------

int run_price(const RunConfig& config, bool check, double check_tol,
              std::ostream& out) {
    const ResolvedModel model = resolve_model(config);
    const double alpha = resolved_alpha(config, model);
    const auto [plan, budget] =
        make_plan(model.psi, config.T, model.lambda_plus, alpha, config.epsilon,
                  config.A);
    const ContourSpec contour =
        make_contour(contour_kind_from_name(config.contour), alpha);

    struct Row {
        double strike;
        PriceResult series;
        std::optional<double> check_price;
    };
    const std::size_t n = config.strikes.size();
    std::vector<Row> rows(n);

    auto work = [&](std::size_t i) {
        MarketSpec market{config.S0, config.strikes[i], config.r, config.T};
        Row row;
        row.strike = market.K;
        row.series = price_series(model.psi, contour, market, plan);
        if (check)
            row.check_price =
                price_quadrature(model.psi, market, alpha, config.A, config.tol)
                    .price;
        return row;
    };

    const int threads = std::min<int>(thread_budget(), static_cast<int>(n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            rows[i] = work(i);
    } else {
        std::vector<std::future<Row>> futures;
        futures.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            futures.push_back(std::async(std::launch::async, work, i));
        for (std::size_t i = 0; i < n; ++i)
            rows[i] = futures[i].get(); // fixed collection order: deterministic
    }

    bool breach = false;
    const nlohmann::json config_echo = config_to_json(config, model, alpha);
    if (config.format == "csv") {
        std::ostringstream text;
        text << config_csv_comment(config_echo);
        text << "strike,price,residue,method";
        if (check)
            text << ",check_price,check_delta";
        text << '\n';
        for (const Row& row : rows) {
            text << format_sig10(row.strike) << ',' << format_sig10(row.series.price)
                 << ',' << format_sig10(row.series.residue) << ",series";
            if (row.check_price) {
                const double delta = row.series.price - *row.check_price;
                if (std::abs(delta) > check_tol)
                    breach = true;
                text << ',' << format_sig10(*row.check_price) << ','
                     << format_sig10(delta);
            }
            text << '\n';
        }
        emit(config, text.str(), out);
    } else {
        nlohmann::json j;
        j["config"] = config_echo;
        j["results"] = nlohmann::json::array();
        for (const Row& row : rows) {
            nlohmann::json rj = nlohmann::json::parse(row.series.to_json());
            rj["strike"] = row.strike;
            if (row.check_price) {
                const double delta = row.series.price - *row.check_price;
                if (std::abs(delta) > check_tol)
                    breach = true;
                rj["check"]["price"] = *row.check_price;
                rj["check"]["delta"] = delta;
                rj["check"]["tolerance"] = check_tol;
            }
            j["results"].push_back(rj);
        }
        emit(config, j.dump(2) + "\n", out);
    }
    if (breach)
        throw CrossCheckBreach("price cross-check exceeded tolerance");
    return 0;
}

int run_density(const RunConfig& config, const std::string& method,
                double y_min, double y_max, int points, std::ostream& out) {
    if (points < 2)
        throw std::invalid_argument("density: --points must be at least 2");
    const ResolvedModel model = resolve_model(config);
    const double alpha = resolved_alpha(config, model);
    const ContourSpec contour =
        make_contour(contour_kind_from_name(config.contour), alpha);

    DensityCurve curve;
    if (method == "quadrature") {
        curve.method = DensityMethod::Quadrature;
        curve.error_estimate = config.tol;
    } else if (method == "contour") {
        curve.method = DensityMethod::Contour;
        curve.error_estimate = config.tol;
    } else if (method == "approximant") {
        curve.method = DensityMethod::Approximant;
    } else {
        throw std::invalid_argument("density: unknown method '" + method + "'");
    }

    SamplingPlan plan;
    if (curve.method == DensityMethod::Approximant) {
        auto [p, budget] = make_plan(model.psi, config.T, model.lambda_plus,
                                     alpha, config.epsilon, config.A);
        plan = p;
        curve.error_estimate = budget.eps_total;
    }

    for (int i = 0; i < points; ++i) {
        const double y = y_min + (y_max - y_min) * i / (points - 1);
        double p = 0.0;
        switch (curve.method) {
        case DensityMethod::Quadrature:
            p = density_quadrature(model.psi, config.T, y, alpha, config.A,
                                   config.tol);
            break;
        case DensityMethod::Contour:
            p = density_contour(model.psi, contour, std::nullopt, config.T, y,
                                config.A, config.tol);
            break;
        case DensityMethod::Approximant:
            p = density_approximant(model.psi, contour, config.T, y, plan);
            break;
        }
        curve.y.push_back(y);
        curve.p.push_back(p);
    }

    const nlohmann::json config_echo = config_to_json(config, model, alpha);
    if (config.format == "csv") {
        emit(config, config_csv_comment(config_echo) + curve.to_csv(), out);
    } else {
        nlohmann::json j;
        j["config"] = config_echo;
        j["curve"] = nlohmann::json::parse(curve.to_json());
        emit(config, j.dump(2) + "\n", out);
    }
    return 0;
}

int run_budget(const RunConfig& config, std::ostream& out) {
    const ResolvedModel model = resolve_model(config);
    const double alpha = resolved_alpha(config, model);
    const auto [plan, budget] =
        make_plan(model.psi, config.T, model.lambda_plus, alpha, config.epsilon,
                  config.A);
    const nlohmann::json config_echo = config_to_json(config, model, alpha);
    if (config.format == "csv") {
        std::ostringstream text;
        text << config_csv_comment(config_echo)
             << "sigma,h,A,N,alpha_plus,delta,eps_interp,eps_tail,eps_total,strip_bound\n"
             << format_sig10(plan.sigma) << ',' << format_sig10(plan.h) << ','
             << format_sig10(plan.A) << ',' << plan.terms << ','
             << format_sig10(plan.alpha_plus) << ',' << format_sig10(plan.delta)
             << ',' << format_sig10(budget.eps_interp) << ','
             << format_sig10(budget.eps_tail) << ','
             << format_sig10(budget.eps_total) << ','
             << format_sig10(budget.strip_bound) << '\n';
        emit(config, text.str(), out);
    } else {
        nlohmann::json j;
        j["config"] = config_echo;
        j["plan"] = {{"sigma", plan.sigma},
                     {"h", plan.h},
                     {"A", plan.A},
                     {"N", plan.terms},
                     {"alpha_plus", plan.alpha_plus},
                     {"delta", plan.delta},
                     {"epsilon", plan.epsilon}};
        j["budget"] = {{"eps_interp", budget.eps_interp},
                       {"eps_tail", budget.eps_tail},
                       {"eps_total", budget.eps_total},
                       {"strip_bound", budget.strip_bound}};
        emit(config, j.dump(2) + "\n", out);
    }
    return 0;
}

int run_tables(const RunConfig& config, std::ostream& out) {
    const ResolvedModel model = resolve_model(config);
    const double alpha = resolved_alpha(config, model);
    const double delta = model.lambda_plus - alpha;
    const double M = compute_M(model.psi, alpha, delta, config.T);

    std::ostringstream text;
    text << config_csv_comment(config_to_json(config, model, alpha));
    text << "eps,sigma,h\n";
    for (int e = 3; e <= 10; ++e) {
        const double eps = std::pow(10.0, -e);
        const SigmaStep ss = sigma_for_eps(M, delta, eps);
        text << "1e-" << (e < 10 ? "0" : "") << e << ','
             << format_sig10(ss.sigma) << ',' << format_sig10(ss.h) << '\n';
    }
    text << "\nA,eps_tail\n";
    for (int A = 10; A <= 130; A += 10)
        text << A << ',' << format_sig10(tail_eps(model.psi, config.T, A, alpha))
             << '\n';
    emit(config, text.str(), out);
    return 0;
}

int run_verify(const RunConfig& config, double y, std::ostream& out) {
    const ResolvedModel model = resolve_model(config);
    const double alpha = resolved_alpha(config, model);
    const ContourSpec contour =
        make_contour(contour_kind_from_name(config.contour), alpha);
    const ArcDecayReport report =
        verify_arc_decay(model.psi, contour, y, config.T, {10.0, 20.0, 40.0, 80.0});

    nlohmann::json j;
    j["config"] = config_to_json(config, model, alpha);
    j["radii"] = report.radii;
    j["right_magnitudes"] = report.right_magnitudes;
    j["left_magnitudes"] = report.left_magnitudes;
    j["right_decreasing"] = report.right_decreasing;
    j["left_decreasing"] = report.left_decreasing;
    j["threshold"] = report.threshold;
    j["verdict"] = report.verified ? "verified" : "unverified";
    emit(config, j.dump(2) + "\n", out);
    return 0;
}

} // namespace

void apply_config_text(RunConfig& config, const std::string& text,
                       const std::string& source_name) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto where = source_name + ":" + std::to_string(line_no);
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "market" &&
                section != "numerics" && section != "output")
                throw std::invalid_argument(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty())
            throw std::invalid_argument(where + ": empty key or value");

        if (section == "model") {
            if (key == "type")
                config.model_type = value;
            else if (key == "nu")
                config.kobol.nu = parse_number(value, where);
            else if (key == "c_plus")
                config.kobol.c_plus = parse_number(value, where);
            else if (key == "c_minus")
                config.kobol.c_minus = parse_number(value, where);
            else if (key == "lambda_plus")
                config.kobol.lambda_plus = parse_number(value, where);
            else if (key == "lambda_minus")
                config.kobol.lambda_minus = parse_number(value, where);
            else if (key == "mu") {
                if (value == "auto") {
                    config.mu_auto = true;
                } else {
                    config.mu_auto = false;
                    config.kobol.mu = parse_number(value, where);
                }
            } else if (key == "a")
                config.gauss.a = parse_number(value, where);
            else if (key == "b") {
                if (value == "auto") {
                    config.mu_auto = true;
                } else {
                    config.mu_auto = false;
                    config.gauss.b = parse_number(value, where);
                }
            } else
                throw std::invalid_argument(where + ": unknown model key '" + key + "'");
        } else if (section == "market") {
            if (key == "S0")
                config.S0 = parse_number(value, where);
            else if (key == "K" || key == "strikes")
                config.strikes = parse_number_list(value, where);
            else if (key == "r")
                config.r = parse_number(value, where);
            else if (key == "T")
                config.T = parse_number(value, where);
            else
                throw std::invalid_argument(where + ": unknown market key '" + key + "'");
        } else if (section == "numerics") {
            if (key == "contour")
                config.contour = value;
            else if (key == "alpha_plus") {
                if (value == "auto")
                    config.alpha_plus.reset();
                else
                    config.alpha_plus = parse_number(value, where);
            } else if (key == "epsilon")
                config.epsilon = parse_number(value, where);
            else if (key == "A")
                config.A = parse_number(value, where);
            else if (key == "tol")
                config.tol = parse_number(value, where);
            else
                throw std::invalid_argument(where + ": unknown numerics key '" + key + "'");
        } else if (section == "output") {
            if (key == "format")
                config.format = value;
            else if (key == "path")
                config.out_path = value;
            else
                throw std::invalid_argument(where + ": unknown output key '" + key + "'");
        } else {
            throw std::invalid_argument(where + ": key outside any section");
        }
    }
    if (config.format != "json" && config.format != "csv")
        throw std::invalid_argument(source_name + ": output format must be json or csv");
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
    CLI::App app{"European call pricer for tempered-stable (KoBoL) models via "
                 "contour-deformed Fourier inversion and band-limited sampling"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Config file (sectioned key=value)")
        ->capture_default_str();

    // Flag overlays; only applied when the user passed them (flags win).
    std::string strikes_flag; // comma-separated, parsed after the overlay
    std::string contour_flag, format_flag, out_flag, alpha_flag, mu_flag;
    double eps_flag = 0.0, A_flag = 0.0, tol_flag = 0.0;
    double S0_flag = 0.0, r_flag = 0.0, T_flag = 0.0;

    auto add_common = [&](CLI::App* sub) {
        // Also registered on the parent; repeating it here lets the flag
        // appear after the subcommand name.
        sub->add_option("--config", config_path,
                        "Config file (sectioned key=value)");
        sub->add_option("--strike", strikes_flag, "Strike(s)");
        sub->add_option("--contour", contour_flag, "Contour: flat|parabola|cosh");
        sub->add_option("--alpha-plus", alpha_flag, "Damping offset or 'auto'");
        sub->add_option("--epsilon", eps_flag, "Interpolation error target");
        sub->add_option("--A", A_flag, "Frequency truncation radius");
        sub->add_option("--tol", tol_flag, "Quadrature tolerance");
        sub->add_option("--S0", S0_flag, "Spot");
        sub->add_option("--r", r_flag, "Riskless rate");
        sub->add_option("--T", T_flag, "Maturity (years)");
        sub->add_option("--mu", mu_flag, "Drift or 'auto'");
        sub->add_option("--format", format_flag, "Output format: json|csv");
        sub->add_option("--out", out_flag, "Output path (default stdout)");
    };

    CLI::App* price = app.add_subcommand("price", "Price European calls");
    bool check = false;
    double check_tol = 5e-3;
    price->add_flag("--check", check, "Cross-check against the quadrature oracle");
    price->add_option("--check-tol", check_tol, "Cross-check tolerance");
    add_common(price);

    CLI::App* density = app.add_subcommand("density", "Transition density curve");
    std::string method = "approximant";
    double y_min = -3.0, y_max = 3.0;
    int points = 21;
    density->add_option("--method", method,
                        "quadrature|contour|approximant");
    density->add_option("--ymin", y_min, "Grid start");
    density->add_option("--ymax", y_max, "Grid end");
    density->add_option("--points", points, "Grid size");
    add_common(density);

    CLI::App* budget = app.add_subcommand("budget", "Sampling plan and error budget");
    add_common(budget);

    CLI::App* tables = app.add_subcommand("tables", "Band-limit and tail tables as CSV");
    add_common(tables);

    CLI::App* verify = app.add_subcommand("verify", "Arc-decay verification");
    double verify_y = 0.5;
    verify->add_option("--y", verify_y, "Log-return used in the arc integrand");
    add_common(verify);

    std::vector<const char*> argv;
    argv.push_back("levy_pricer");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        RunConfig config;
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file)
                throw std::invalid_argument("cannot open config file '" + config_path + "'");
            std::stringstream buffer;
            buffer << file.rdbuf();
            apply_config_text(config, buffer.str(), config_path);
        }

        // Flags win over config values.
        auto* sub = app.get_subcommands().front();
        auto passed = [&](const std::string& name) {
            return sub->count(name) > 0;
        };
        if (passed("--strike"))
            config.strikes = parse_number_list(strikes_flag, "--strike");
        if (passed("--contour"))
            config.contour = contour_flag;
        if (passed("--alpha-plus")) {
            if (alpha_flag == "auto")
                config.alpha_plus.reset();
            else
                config.alpha_plus = parse_number(alpha_flag, "--alpha-plus");
        }
        if (passed("--epsilon"))
            config.epsilon = eps_flag;
        if (passed("--A"))
            config.A = A_flag;
        if (passed("--tol"))
            config.tol = tol_flag;
        if (passed("--S0"))
            config.S0 = S0_flag;
        if (passed("--r"))
            config.r = r_flag;
        if (passed("--T"))
            config.T = T_flag;
        if (passed("--mu")) {
            if (mu_flag == "auto") {
                config.mu_auto = true;
            } else {
                config.mu_auto = false;
                config.kobol.mu = parse_number(mu_flag, "--mu");
                config.gauss.b = config.kobol.mu;
            }
        }
        if (passed("--format"))
            config.format = format_flag;
        if (passed("--out"))
            config.out_path = out_flag;
        if (config.format != "json" && config.format != "csv")
            throw std::invalid_argument("output format must be json or csv");
        if (config.strikes.empty())
            throw std::invalid_argument("strike list must be nonempty");

        if (sub == price)
            return run_price(config, check, check_tol, out);
        if (sub == density)
            return run_density(config, method, y_min, y_max, points, out);
        if (sub == budget)
            return run_budget(config, out);
        if (sub == tables)
            return run_tables(config, out);
        return run_verify(config, verify_y, out);
    } catch (const CrossCheckBreach& e) {
        err << "cross-check breach: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        err << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const QuadratureError& e) {
        err << "numerical failure: " << e.what()
            << " (achieved error " << e.achieved_error << ")\n";
        return 3;
    } catch (const std::runtime_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}

} // namespace levy
