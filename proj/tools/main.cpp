// Command-line front end.  Every verb reads JSON files, prints deterministic
// JSON (or CSV/SVG for `pl render`) to stdout or --out, and reports failures
// as machine-readable error objects.  Exit codes: 0 success, 1 usage or I/O,
// 2 validation error, 3 computation error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "adicpl/adicpl.hpp"
#include "adicpl/selftest.hpp"

namespace {

using adicpl::error;
using adicpl::errc;
using Json = adicpl::Json;

struct Config {
    std::string matrix_path;
    int digits = 12;
    uint64_t seed = 1;
    std::string out_path;
    std::string format = "json";
};

int exit_code_for(errc c) {
    switch (c) {
        case errc::bad_index:
        case errc::bad_depth:
        case errc::out_of_domain:
        case errc::division_by_zero:
        case errc::generation_failed:
        case errc::check_failed:
            return 3;
        default:
            return 2;
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json load_json(const std::string& path) {
    try {
        return Json::parse(slurp(path));
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::bad_format, std::string("malformed JSON in ") + path + ": " + e.what());
    }
}

void emit(const Config& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
    }
}

void emit_json(const Config& cfg, const Json& j) { emit(cfg, j.dump(2)); }

adicpl::TransitionMatrix load_matrix(const Config& cfg) {
    if (cfg.matrix_path.empty())
        throw error(errc::bad_format, "--matrix <path> is required for this command");
    return adicpl::matrix_from_json(load_json(cfg.matrix_path));
}

adicpl::AdicTable load_table(const adicpl::TransitionMatrix& a, const std::string& path) {
    return adicpl::table_from_json(a, load_json(path));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation in the continuous full group of a topological Markov shift"};
    app.require_subcommand(1);

    Config cfg;
    app.add_option("--matrix", cfg.matrix_path, "path to the transition matrix JSON");
    app.add_option("--digits", cfg.digits, "decimal digits in approximations")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for randomized commands");
    app.add_option("--out", cfg.out_path, "write output to this file instead of stdout");
    app.add_option("--format", cfg.format, "pl render format: csv or svg");

    auto* c_validate = app.add_subcommand("validate", "validate a transition matrix");

    int words_len = 0;
    auto* c_words = app.add_subcommand("words", "admissible words of a given length");
    c_words->add_option("length", words_len, "word length")->required();

    auto* c_perron = app.add_subcommand("perron", "minimal polynomial and eigenvector data");

    int intervals_len = 0;
    auto* c_intervals = app.add_subcommand("intervals", "cylinder intervals of a given depth");
    c_intervals->add_option("depth", intervals_len, "word length")->required();

    auto* c_table = app.add_subcommand("table", "operations on adic tables");
    c_table->require_subcommand(1);
    std::string t_path, t_path2, t_point;
    auto* tc_check = c_table->add_subcommand("check", "validate a table");
    tc_check->add_option("table", t_path)->required();
    auto* tc_reduce = c_table->add_subcommand("reduce", "canonical reduction");
    tc_reduce->add_option("table", t_path)->required();
    auto* tc_compose = c_table->add_subcommand("compose", "product (second applied first)");
    tc_compose->add_option("table", t_path)->required();
    tc_compose->add_option("table2", t_path2)->required();
    auto* tc_invert = c_table->add_subcommand("invert", "inverse table");
    tc_invert->add_option("table", t_path)->required();
    auto* tc_equal = c_table->add_subcommand("equal", "equivalence of two tables");
    tc_equal->add_option("table", t_path)->required();
    tc_equal->add_option("table2", t_path2)->required();
    auto* tc_classify = c_table->add_subcommand("classify", "order classification");
    tc_classify->add_option("table", t_path)->required();
    auto* tc_apply = c_table->add_subcommand("apply", "apply to an eventually periodic point");
    tc_apply->add_option("table", t_path)->required();
    tc_apply->add_option("point", t_point)->required();
    auto* tc_derivative = c_table->add_subcommand("derivative", "derivative step function");
    tc_derivative->add_option("table", t_path)->required();
    auto* tc_random = c_table->add_subcommand("random", "seeded random table");
    int t_depth = 3;
    tc_random->add_option("--depth", t_depth, "maximum word depth");

    auto* c_pl = app.add_subcommand("pl", "piecewise linear rendering");
    c_pl->require_subcommand(1);
    std::string pl_path, pl_arg;
    auto* plc_render = c_pl->add_subcommand("render", "render a table as CSV or SVG");
    plc_render->add_option("table", pl_path)->required();
    auto* plc_eval = c_pl->add_subcommand("eval", "evaluate the PL function at an exact point");
    plc_eval->add_option("table", pl_path)->required();
    plc_eval->add_option("value", pl_arg, "rational such as 3/10")->required();

    std::string rho_point;
    auto* c_rho = app.add_subcommand("rho", "interval value of an eventually periodic point");
    c_rho->add_option("point", rho_point)->required();

    auto* c_invariants = app.add_subcommand("invariants", "K0 presentation and determinant");

    std::string compare_path;
    auto* c_compare = app.add_subcommand("compare", "compare invariants with a second matrix");
    c_compare->add_option("matrixB", compare_path)->required();

    auto* c_selftest = app.add_subcommand("selftest", "run the acceptance suite on built-ins");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_validate) {
            adicpl::TransitionMatrix a = load_matrix(cfg);
            emit_json(cfg, Json{{"n", a.size()},
                                {"valid", true},
                                {"irreducible", true},
                                {"condition_I", true}});
        } else if (*c_words) {
            adicpl::TransitionMatrix a = load_matrix(cfg);
            Json out = Json::array();
            for (const auto& w : adicpl::enumerate_words(a, words_len))
                out.push_back(adicpl::word_to_json(w));
            emit_json(cfg, out);
        } else if (*c_perron) {
            adicpl::PerronData p = adicpl::PerronData::compute(load_matrix(cfg));
            Json pv = Json::array();
            for (const auto& e : p.eigenvector())
                pv.push_back(adicpl::algebraic_to_json(e, cfg.digits));
            emit_json(cfg, Json{{"min_poly", adicpl::min_poly_to_json(p.min_poly())},
                                {"beta_approx", p.beta().decimal(cfg.digits)},
                                {"p", pv}});
        } else if (*c_intervals) {
            adicpl::PerronData p = adicpl::PerronData::compute(load_matrix(cfg));
            Json out = Json::array();
            for (const auto& [w, l, r] : adicpl::adic_intervals(p, intervals_len))
                out.push_back(Json{{"word", adicpl::word_to_json(w)},
                                   {"l", adicpl::algebraic_to_json(l, cfg.digits)},
                                   {"r", adicpl::algebraic_to_json(r, cfg.digits)}});
            emit_json(cfg, out);
        } else if (*c_table) {
            adicpl::TransitionMatrix a = load_matrix(cfg);
            if (*tc_check) {
                adicpl::AdicTable t = load_table(a, t_path);
                emit_json(cfg, Json{{"valid", true}, {"rows", t.size()}});
            } else if (*tc_reduce) {
                emit_json(cfg, adicpl::table_to_json(adicpl::reduce(load_table(a, t_path))));
            } else if (*tc_compose) {
                emit_json(cfg, adicpl::table_to_json(adicpl::compose(load_table(a, t_path),
                                                                     load_table(a, t_path2))));
            } else if (*tc_invert) {
                emit_json(cfg, adicpl::table_to_json(adicpl::inverse(load_table(a, t_path))));
            } else if (*tc_equal) {
                emit_json(cfg, Json{{"equal", adicpl::tables_equivalent(
                                                  load_table(a, t_path),
                                                  load_table(a, t_path2))}});
            } else if (*tc_classify) {
                emit_json(cfg, Json{{"class", adicpl::order_class_name(adicpl::classify_order(
                                                  load_table(a, t_path)))}});
            } else if (*tc_apply) {
                adicpl::AdicTable t = load_table(a, t_path);
                adicpl::EppPoint x = adicpl::point_from_json(a, load_json(t_point));
                emit_json(cfg, adicpl::point_to_json(adicpl::apply(t, x)));
            } else if (*tc_derivative) {
                adicpl::PerronData p = adicpl::PerronData::compute(a);
                adicpl::AdicTable t = load_table(a, t_path);
                Json steps = Json::array();
                for (const auto& step : adicpl::cocycle(t))
                    steps.push_back(
                        Json{{"word", adicpl::word_to_json(step.domain)},
                             {"exponent", step.exponent},
                             {"value", adicpl::algebraic_to_json(
                                           p.beta_pow(step.exponent), cfg.digits)}});
                emit_json(cfg,
                          Json{{"steps", steps},
                               {"kms_expectation",
                                adicpl::algebraic_to_json(
                                    adicpl::kms_expectation(p, adicpl::derivative(p, t)),
                                    cfg.digits)}});
            } else if (*tc_random) {
                emit_json(cfg, adicpl::table_to_json(adicpl::random_table(a, cfg.seed, t_depth)));
            }
        } else if (*c_pl) {
            adicpl::TransitionMatrix a = load_matrix(cfg);
            adicpl::PerronData p = adicpl::PerronData::compute(a);
            adicpl::PLMap f = adicpl::table_to_pl(p, load_table(a, pl_path));
            if (*plc_render) {
                if (cfg.format == "svg") {
                    emit(cfg, adicpl::export_pl_svg(f, cfg.digits));
                } else if (cfg.format == "csv" || cfg.format == "json") {
                    emit(cfg, adicpl::export_pl_csv(f, cfg.digits));
                } else {
                    throw error(errc::bad_format, "unknown format: " + cfg.format);
                }
            } else if (*plc_eval) {
                adicpl::AlgebraicNumber t = p.rational(adicpl::parse_rational(pl_arg));
                emit_json(cfg, adicpl::algebraic_to_json(adicpl::pl_eval(f, t), cfg.digits));
            }
        } else if (*c_rho) {
            adicpl::TransitionMatrix a = load_matrix(cfg);
            adicpl::PerronData p = adicpl::PerronData::compute(a);
            adicpl::EppPoint x = adicpl::point_from_json(a, load_json(rho_point));
            emit_json(cfg, adicpl::algebraic_to_json(adicpl::rho(p, x), cfg.digits));
        } else if (*c_invariants) {
            emit_json(cfg, adicpl::invariants_to_json(load_matrix(cfg)));
        } else if (*c_compare) {
            adicpl::TransitionMatrix a = load_matrix(cfg);
            adicpl::TransitionMatrix b = adicpl::matrix_from_json(load_json(compare_path));
            adicpl::InvariantComparison v = adicpl::compare_invariants(a, b);
            emit_json(cfg,
                      Json{{"verdict", v == adicpl::InvariantComparison::Distinguished
                                           ? "distinguished"
                                           : "necessary_conditions_pass"},
                           {"a", adicpl::invariants_to_json(a)},
                           {"b", adicpl::invariants_to_json(b)}});
        } else if (*c_selftest) {
            Json criteria = Json::array();
            bool all = true;
            auto results = adicpl::run_acceptance(cfg.seed, [&](const adicpl::CriterionResult& r) {
                std::cerr << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": "
                          << r.name << " (" << r.detail << ")\n";
            });
            for (const auto& r : results) {
                criteria.push_back(Json{{"id", r.id},
                                        {"name", r.name},
                                        {"pass", r.pass},
                                        {"detail", r.detail}});
                all = all && r.pass;
            }
            emit_json(cfg, Json{{"criteria", criteria}, {"all_pass", all}});
            if (!all) return 3;
        }
    } catch (const error& e) {
        std::cout << adicpl::error_to_json(e).dump(2) << std::endl;
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cout << Json{{"error", Json{{"code", "io"}, {"message", e.what()}}}}.dump(2)
                  << std::endl;
        return 1;
    }
    return 0;
}
