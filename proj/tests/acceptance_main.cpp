// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance [--quick] [--jobs N] [--seed S] [ids...]

#include "dmldc/acceptance.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    dmldc::acceptance::Options opt;
    opt.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<int> ids;
    app.add_flag("--quick", opt.quick, "reduced sample sizes");
    app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "base seed")->envname("MLDC_SEED");
    app.add_option("ids", ids, "criteria to run (default all)")->check(CLI::Range(1, 7));
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (int id : ids.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7} : ids) {
        dmldc::acceptance::CriterionResult r;
        try {
            r = dmldc::acceptance::run(opt, {id}).front();
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion";
            r.detail = std::string("exception: ") + e.what();
        }
        std::cout << dmldc::acceptance::format_line(r) << std::endl;
        all = all && r.pass;
    }
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
