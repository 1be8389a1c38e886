#include <iostream>

#include <CLI11.hpp>

#include "hnv/cli.hpp"

int main(int argc, char** argv) {
    using namespace hnv::cli;
    CLI::App app{"Herglotz-Nevanlinna functions on the poly cut-plane"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON run configuration");
        sub->add_option("--seed", o.seed, "sampling seed");
        sub->add_option("--out", o.out, "output file (directory for reproduce-tables)");
    };
    auto fn_option = [&o](CLI::App* sub) {
        sub->add_option("--fn", o.fn, "catalogue:ID | cauchy:NAME | herglotz:{a:..,b:[..],mu:..} | descriptor.json")->required();
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate a function at a point");
    fn_option(eval);
    eval->add_option("--point", o.point, "comma-separated complex coordinates")->required();
    common(eval);

    CLI::App* kernel = app.add_subcommand("kernel", "evaluate K_n(z, t) (and P_n on the upper poly half-plane)");
    kernel->add_option("--point", o.point, "comma-separated complex coordinates")->required();
    kernel->add_option("--t", o.t, "comma-separated real coordinates")->required();
    kernel->add_option("--out", o.out, "JSON record");

    CLI::App* reconstruct = app.add_subcommand("reconstruct", "value off C^{+n} from upper half-plane data");
    fn_option(reconstruct);
    reconstruct->add_option("--point", o.point, "point with at least one lower coordinate")->required();
    common(reconstruct);

    CLI::App* measure = app.add_subcommand("measure", "growth integral and Nevanlinna residuals of a measure");
    measure->add_option("--measure", o.measure, "built-in name or measure.json")->required();
    measure->add_option("--point", o.point, "evaluate the residual here instead of the default grid");
    common(measure);

    CLI::App* check = app.add_subcommand("check", "symmetry | nondep | positivity | characterize");
    fn_option(check);
    check->add_option("which", o.which, "check to run")
        ->required()
        ->check(CLI::IsMember({"symmetry", "nondep", "positivity", "characterize"}));
    check->add_option("--tol", o.tol, "tolerance override");
    common(check);

    CLI::App* invert = app.add_subcommand("invert", "Stieltjes inversion against a test function");
    fn_option(invert);
    invert->add_option("--phi", o.phi, "cauchy1d | cauchy2d | cauchy_sq1d | cauchy_sq2d | gauss1d | gauss2d");
    invert->add_option("--mode", o.mode, "classic | alternating")->check(CLI::IsMember({"classic", "alternating"}));
    invert->add_option("--tol", o.tol, "extrapolation tolerance");
    common(invert);

    CLI::App* tables = app.add_subcommand("reproduce-tables", "write table1.json and table2.json");
    common(tables);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval) return cmd_eval(o, std::cout);
        if (*kernel) return cmd_kernel(o, std::cout);
        if (*reconstruct) return cmd_reconstruct(o, std::cout);
        if (*measure) return cmd_measure(o, std::cout);
        if (*check) return cmd_check(o, std::cout);
        if (*invert) return cmd_invert(o, std::cout);
        if (*tables) return cmd_reproduce_tables(o, std::cout, std::cerr);
    } catch (const hnv::AccuracyError& e) {
        std::cerr << "error: " << e.what() << " (best estimate " << hnv::io::format_complex(e.estimate()) << ")\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
